#include "fext/pairing.hpp"

#include <cmath>
#include <cstdint>

namespace fext {

Nat pair(const Nat& x, const Nat& y) {
    if (auto a = x.to_u64(), b = y.to_u64(); a && b) {
        unsigned __int128 s = static_cast<unsigned __int128>(*a) + *b;
        // 128-bit fast path while s * (s + 1) cannot overflow
        if (s >> 63 == 0) {
            unsigned __int128 t = s * (s + 1) / 2 + *b;
            if (t >> 64 == 0) return Nat(static_cast<std::uint64_t>(t));
        }
    }
    Nat s = x + y;
    return div(s * (s + Nat(1)), Nat(2)) + y;
}

std::pair<Nat, Nat> unpair(const Nat& z) {
    if (auto small = z.to_u64()) {
        unsigned __int128 v = static_cast<unsigned __int128>(*small) * 8 + 1;
        auto r = static_cast<unsigned __int128>(std::sqrt(static_cast<long double>(v)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        unsigned __int128 w = (r - 1) / 2;
        auto y = static_cast<std::uint64_t>(*small - w * (w + 1) / 2);
        return {Nat(static_cast<std::uint64_t>(w) - y), Nat(y)};
    }
    // w = floor((sqrt(8z + 1) - 1) / 2) is the index of the diagonal holding z.
    Nat w = div(monus(isqrt(Nat(8) * z + Nat(1)), Nat(1)), Nat(2));
    Nat t = div(w * (w + Nat(1)), Nat(2));
    Nat y = monus(z, t);
    Nat x = monus(w, y);
    return {std::move(x), std::move(y)};
}

}  // namespace fext
