#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace cvstab {

// Engine-wide cap on qudit dimension. Keeps every modular product inside
// 32 bits so the Lemire reduction below stays valid.
inline constexpr std::uint32_t kMaxDimension = 1u << 15;

struct ExtGcd {
    std::int64_t g;  // gcd(a, b) >= 0
    std::int64_t s;  // s*a + t*b == g
    std::int64_t t;
};

inline ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b;
    std::int64_t old_s = 1, s = 0;
    std::int64_t old_t = 0, t = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_tuple(r, old_r - q * r);
        std::tie(old_s, s) = std::make_tuple(s, old_s - q * s);
        std::tie(old_t, t) = std::make_tuple(t, old_t - q * t);
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

// Fixed-divisor reduction (Lemire). Valid for x < 2^32, 1 <= d < 2^32.
struct FastMod {
    std::uint32_t d = 1;
    std::uint64_t magic = 0;

    FastMod() = default;
    explicit FastMod(std::uint32_t div) : d(div) {
        if (div == 0) throw std::invalid_argument("FastMod: zero divisor");
        magic = UINT64_MAX / div + 1;
    }

    std::uint32_t reduce(std::uint64_t x) const {
        // caller guarantees x < 2^32
        std::uint64_t low = magic * x;
        return static_cast<std::uint32_t>(
            (static_cast<unsigned __int128>(low) * d) >> 64);
    }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return reduce(std::uint64_t(a) * b);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t s = a + b;
        return s >= d ? s - d : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        return a >= b ? a - b : a + d - b;
    }
    std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : d - a; }
};

inline std::uint32_t mod_u32(std::int64_t x, std::uint32_t m) {
    std::int64_t r = x % static_cast<std::int64_t>(m);
    if (r < 0) r += m;
    return static_cast<std::uint32_t>(r);
}

// Inverse of a modulo m; requires gcd(a, m) == 1.
inline std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t m) {
    auto e = ext_gcd(a, m);
    if (e.g != 1) throw std::invalid_argument("mod_inverse: not a unit");
    return mod_u32(e.s, m);
}

// A unit u (gcd(u, m) == 1) with u*a == gcd(a, m) (mod m). Standard lemma:
// such a unit always exists; found by lifting the inverse of a/g mod m/g.
inline std::uint32_t unit_multiplier(std::uint32_t a, std::uint32_t m) {
    std::uint32_t g = std::gcd(a, m);
    if (g == m) return 1;  // a == 0 mod m
    std::uint32_t a1 = a / g, m1 = m / g;
    std::uint32_t u = mod_inverse(a1 % m1, m1);
    while (std::gcd(u, m) != 1) u += m1;
    return u % m == 0 ? m : u % m;  // keep nonzero representative
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN)
        throw std::overflow_error("integer overflow");
    return static_cast<std::int64_t>(p);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    __int128 s = static_cast<__int128>(a) + b;
    if (s > INT64_MAX || s < INT64_MIN)
        throw std::overflow_error("integer overflow");
    return static_cast<std::int64_t>(s);
}

}  // namespace cvstab
