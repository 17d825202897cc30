#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace fext {

/// A natural number of unbounded size.
///
/// Values below 2^64 are stored inline; larger ones spill into a shared,
/// immutable big integer. All arithmetic is exact, which keeps the pairing
/// bijection honest no matter how deeply tuples are nested.
class Nat {
public:
    constexpr Nat() noexcept = default;
    constexpr Nat(std::uint64_t v) noexcept : small_(v) {}

    static Nat parse(std::string_view digits);

    bool is_small() const noexcept { return !big_; }
    std::optional<std::uint64_t> to_u64() const noexcept {
        if (big_) return std::nullopt;
        return small_;
    }
    static Nat from_u128(unsigned __int128 v);
    std::optional<unsigned __int128> to_u128() const noexcept;
    /// Saturating conversion: anything that does not fit becomes UINT64_MAX.
    std::uint64_t clamp_u64() const noexcept;

    bool is_zero() const noexcept { return !big_ && small_ == 0; }

    std::string to_string() const;
    std::size_t hash() const noexcept;

    friend Nat operator+(const Nat& a, const Nat& b);
    friend Nat operator*(const Nat& a, const Nat& b);
    /// Truncated subtraction: max(a - b, 0).
    friend Nat monus(const Nat& a, const Nat& b);
    /// Floor division; `b` must be nonzero.
    friend Nat div(const Nat& a, const Nat& b);
    friend Nat mod(const Nat& a, const Nat& b);
    /// floor(sqrt(a))
    friend Nat isqrt(const Nat& a);

    friend bool operator==(const Nat& a, const Nat& b) noexcept;
    friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) noexcept;

private:
    struct Big;
    friend struct NatAccess;

    std::uint64_t small_ = 0;
    std::shared_ptr<const Big> big_;
};

Nat operator+(const Nat& a, const Nat& b);
Nat operator*(const Nat& a, const Nat& b);
Nat monus(const Nat& a, const Nat& b);
Nat div(const Nat& a, const Nat& b);
Nat mod(const Nat& a, const Nat& b);
Nat isqrt(const Nat& a);

}  // namespace fext

template <>
struct std::hash<fext::Nat> {
    std::size_t operator()(const fext::Nat& n) const noexcept { return n.hash(); }
};
