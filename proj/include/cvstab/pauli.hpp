#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cvstab/intmath.hpp"

namespace cvstab {

// Phase ring of the d-dimensional Pauli group: exponents of omega_D with
// D = d (odd d) or D = 2d (even d). omega_d = omega_D^r with r = D/d.
// No root of unity is ever stored as a float inside the engine.
struct PauliRing {
    std::uint32_t d = 2;
    std::uint32_t D = 4;
    std::uint32_t r = 2;
    FastMod fd;
    FastMod fD;

    PauliRing() : PauliRing(2) {}
    explicit PauliRing(std::uint32_t dim) {
        if (dim < 2) throw std::invalid_argument("qudit dimension must be >= 2");
        if (dim > kMaxDimension)
            throw std::invalid_argument("qudit dimension too large");
        d = dim;
        D = (dim % 2 == 0) ? 2 * dim : dim;
        r = D / d;
        fd = FastMod(d);
        fD = FastMod(D);
    }

    friend bool operator==(const PauliRing& a, const PauliRing& b) {
        return a.d == b.d;
    }
    friend bool operator!=(const PauliRing& a, const PauliRing& b) {
        return a.d != b.d;
    }
};

// omega_D^phase * prod_k X_k^{x_k} Z_k^{z_k}, with per-qudit X written to the
// left of Z. Exponents live in Z_d, the phase in Z_D. Layout: xz[0..n) are
// X exponents, xz[n..2n) are Z exponents.
struct PauliWord {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> xz;
    std::uint32_t phase = 0;

    PauliWord() = default;
    explicit PauliWord(std::uint32_t n_qudits)
        : n(n_qudits), xz(2 * std::size_t(n_qudits), 0) {}

    std::uint32_t x(std::uint32_t k) const { return xz[k]; }
    std::uint32_t z(std::uint32_t k) const { return xz[n + k]; }
    std::uint32_t& x(std::uint32_t k) { return xz[k]; }
    std::uint32_t& z(std::uint32_t k) { return xz[n + k]; }

    bool exponents_zero() const {
        for (auto v : xz)
            if (v != 0) return false;
        return true;
    }

    bool is_identity() const { return phase == 0 && exponents_zero(); }

    friend bool operator==(const PauliWord& a, const PauliWord& b) {
        return a.n == b.n && a.phase == b.phase && a.xz == b.xz;
    }
};

inline PauliWord make_pauli(const PauliRing& ring, std::uint32_t n,
                            std::uint32_t qudit, std::int64_t x_exp,
                            std::int64_t z_exp, std::int64_t phase_exp = 0) {
    PauliWord w(n);
    w.x(qudit) = mod_u32(x_exp, ring.d);
    w.z(qudit) = mod_u32(z_exp, ring.d);
    w.phase = mod_u32(phase_exp, ring.D);
    return w;
}

// a <- a * b^t. Uses Z_d X_d = omega_d X_d Z_d and, per qudit,
// (X^x Z^z)^t = omega_d^{x z t(t-1)/2} X^{tx} Z^{tz}.
inline void mul_pow_inplace(const PauliRing& ring, PauliWord& a,
                            const PauliWord& b, std::uint32_t t) {
    if (t == 0) return;
    const std::uint32_t d = ring.d, n = a.n;
    const FastMod& fd = ring.fd;
    // t(t-1)/2 mod d; t(t-1) is even so the integer division is exact.
    const std::uint32_t tri =
        static_cast<std::uint32_t>((std::uint64_t(t) * (t - 1) / 2) % d);
    const std::uint32_t tmod = static_cast<std::uint32_t>(t % d);

    std::uint64_t cross = 0;  // each summand < d <= 2^15
    for (std::uint32_t k = 0; k < n; ++k) {
        const std::uint32_t bx = b.xz[k], bz = b.xz[n + k];
        if (bx) {
            cross += fd.mul(fd.mul(bx, bz), tri);       // b^t internal phase
            const std::uint32_t txb = fd.mul(bx, tmod);
            cross += fd.mul(a.xz[n + k], txb);          // move X of b past Z of a
            a.xz[k] = fd.add(a.xz[k], txb);
        }
        if (bz) a.xz[n + k] = fd.add(a.xz[n + k], fd.mul(bz, tmod));
    }
    const std::uint32_t crossd = static_cast<std::uint32_t>(cross % d);
    const std::uint64_t ph = a.phase +
                             (std::uint64_t(t) % ring.D) * b.phase % ring.D +
                             std::uint64_t(ring.r) * crossd;
    a.phase = static_cast<std::uint32_t>(ph % ring.D);
}

inline PauliWord word_mul(const PauliRing& ring, const PauliWord& a,
                          const PauliWord& b) {
    PauliWord out = a;
    mul_pow_inplace(ring, out, b, 1);
    return out;
}

// b^t for t possibly negative; taken mod D (every word's order divides D).
inline PauliWord word_pow(const PauliRing& ring, const PauliWord& b,
                          std::int64_t t) {
    PauliWord out(b.n);
    mul_pow_inplace(ring, out, b, mod_u32(t, ring.D));
    return out;
}

inline PauliWord word_inverse(const PauliRing& ring, const PauliWord& b) {
    return word_pow(ring, b, static_cast<std::int64_t>(ring.D) - 1);
}

// Symplectic commutation exponent c with A B = omega_d^c B A.
inline std::uint32_t commutation_exponent(const PauliRing& ring,
                                          const PauliWord& a,
                                          const PauliWord& b) {
    std::uint64_t acc = 0;
    const std::uint32_t n = a.n, d = ring.d;
    for (std::uint32_t k = 0; k < n; ++k) {
        acc += std::uint64_t(a.xz[n + k]) * b.xz[k] % d;
        acc += d - std::uint64_t(a.xz[k]) * b.xz[n + k] % d;
    }
    return static_cast<std::uint32_t>(acc % d);
}

inline bool words_commute(const PauliRing& ring, const PauliWord& a,
                          const PauliWord& b) {
    return commutation_exponent(ring, a, b) == 0;
}

}  // namespace cvstab
