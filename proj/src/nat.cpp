#include "fext/nat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fext {

using BigInt = boost::multiprecision::cpp_int;

struct Nat::Big {
    BigInt value;
};

struct NatAccess {
    static BigInt widen(const Nat& n) {
        if (n.big_) return n.big_->value;
        return BigInt(n.small_);
    }

    static Nat narrow(BigInt v) {
        if (v <= std::numeric_limits<std::uint64_t>::max()) {
            return Nat(static_cast<std::uint64_t>(v));
        }
        Nat out;
        out.big_ = std::make_shared<const Nat::Big>(Nat::Big{std::move(v)});
        return out;
    }

    static Nat from_u128(unsigned __int128 v) {
        if (v >> 64 == 0) return Nat(static_cast<std::uint64_t>(v));
        BigInt b = static_cast<std::uint64_t>(v >> 64);
        b <<= 64;
        b += static_cast<std::uint64_t>(v);
        return narrow(std::move(b));
    }
};

Nat Nat::from_u128(unsigned __int128 v) { return NatAccess::from_u128(v); }

std::optional<unsigned __int128> Nat::to_u128() const noexcept {
    if (!big_) return small_;
    const auto& v = big_->value;
    if (boost::multiprecision::msb(v) >= 128) return std::nullopt;
    auto hi = static_cast<std::uint64_t>(v >> 64);
    auto lo = static_cast<std::uint64_t>(v & std::numeric_limits<std::uint64_t>::max());
    return (static_cast<unsigned __int128>(hi) << 64) | lo;
}

Nat Nat::parse(std::string_view digits) {
    if (digits.empty()) throw std::invalid_argument("empty natural number literal");
    BigInt v = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad digit in natural number literal");
        v *= 10;
        v += c - '0';
    }
    return NatAccess::narrow(std::move(v));
}

std::uint64_t Nat::clamp_u64() const noexcept {
    return big_ ? std::numeric_limits<std::uint64_t>::max() : small_;
}

std::string Nat::to_string() const {
    if (!big_) return std::to_string(small_);
    return big_->value.str();
}

std::size_t Nat::hash() const noexcept {
    if (!big_) return std::hash<std::uint64_t>{}(small_);
    return std::hash<std::string>{}(big_->value.str());
}

Nat operator+(const Nat& a, const Nat& b) {
    if (!a.big_ && !b.big_) {
        std::uint64_t r;
        if (!__builtin_add_overflow(a.small_, b.small_, &r)) return Nat(r);
        return NatAccess::from_u128(static_cast<unsigned __int128>(a.small_) + b.small_);
    }
    return NatAccess::narrow(NatAccess::widen(a) + NatAccess::widen(b));
}

Nat operator*(const Nat& a, const Nat& b) {
    if (!a.big_ && !b.big_) {
        std::uint64_t r;
        if (!__builtin_mul_overflow(a.small_, b.small_, &r)) return Nat(r);
        return NatAccess::from_u128(static_cast<unsigned __int128>(a.small_) * b.small_);
    }
    return NatAccess::narrow(NatAccess::widen(a) * NatAccess::widen(b));
}

Nat monus(const Nat& a, const Nat& b) {
    if (!a.big_ && !b.big_) return Nat(a.small_ > b.small_ ? a.small_ - b.small_ : 0);
    if (a <= b) return Nat(0);
    return NatAccess::narrow(NatAccess::widen(a) - NatAccess::widen(b));
}

Nat div(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_) return Nat(a.small_ / b.small_);
    return NatAccess::narrow(NatAccess::widen(a) / NatAccess::widen(b));
}

Nat mod(const Nat& a, const Nat& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    if (!a.big_ && !b.big_) return Nat(a.small_ % b.small_);
    return NatAccess::narrow(NatAccess::widen(a) % NatAccess::widen(b));
}

Nat isqrt(const Nat& a) {
    if (!a.big_) {
        // float estimate, corrected to the exact floor
        auto v = static_cast<unsigned __int128>(a.small_);
        auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(a.small_)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        return Nat(static_cast<std::uint64_t>(r));
    }
    // Newton's method from an upper bound seeded by the leading bits;
    // boost's integer sqrt works bit by bit and dominates unpairing of big tuples.
    const auto& v = a.big_->value;
    std::size_t bits = boost::multiprecision::msb(v) + 1;
    std::size_t shift = bits > 100 ? (bits - 100) & ~std::size_t{1} : 0;
    long double top = static_cast<BigInt>(v >> shift).convert_to<long double>();
    BigInt x = BigInt(static_cast<std::uint64_t>(std::sqrt(top)) + 2) << (shift / 2);
    for (;;) {
        BigInt y = (x + v / x) >> 1;
        if (y >= x) break;
        x = std::move(y);
    }
    return NatAccess::narrow(std::move(x));
}

bool operator==(const Nat& a, const Nat& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ == b.small_;
    if (a.big_ && b.big_) return a.big_->value == b.big_->value;
    return false;  // big values are always >= 2^64
}

std::strong_ordering operator<=>(const Nat& a, const Nat& b) noexcept {
    if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
    if (!a.big_) return std::strong_ordering::less;
    if (!b.big_) return std::strong_ordering::greater;
    int c = a.big_->value.compare(b.big_->value);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

}  // namespace fext
