#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cvstab/pauli.hpp"

namespace cvstab {

// Inverse conjugation frame of the circuit unitary U: stores U^dag X_k U and
// U^dag Z_k U as Pauli words, updated in O(n) per gate. Pulling a measured
// observable back through the circuit this way turns the terminal-outcome
// support question into a membership test against the (product-form) input
// stabilizer, with no linear algebra over the generator matrix.
class InverseFrame {
  public:
    InverseFrame(std::uint32_t n, std::uint32_t d) : ring_(d), n_(n) {
        vx_.reserve(n);
        vz_.reserve(n);
        for (std::uint32_t k = 0; k < n; ++k) {
            vx_.push_back(make_pauli(ring_, n, k, 1, 0));
            vz_.push_back(make_pauli(ring_, n, k, 0, 1));
        }
    }

    const PauliRing& ring() const { return ring_; }
    const PauliWord& x_image(std::uint32_t k) const { return vx_[k]; }
    const PauliWord& z_image(std::uint32_t k) const { return vz_[k]; }

    // U <- F_q U:  F^dag X F = Z^{-1}, F^dag Z F = X.
    void apply_fourier(std::uint32_t q) {
        PauliWord nx = word_inverse(ring_, vz_[q]);
        vz_[q] = vx_[q];
        vx_[q] = std::move(nx);
    }
    // U <- F_q^dag U:  F X F^dag = Z, F Z F^dag = X^{-1}.
    void apply_fourier_inv(std::uint32_t q) {
        PauliWord nz = word_inverse(ring_, vx_[q]);
        vx_[q] = vz_[q];
        vz_[q] = std::move(nz);
    }
    // U <- S_q^e U:  S^{-e} X S^{e} = (w_D^{-e} for even d) X Z^{-e}.
    void apply_phase_power(std::uint32_t q, std::int64_t e) {
        const std::uint32_t em = mod_u32(e, ring_.D);
        if (em == 0) return;
        PauliWord zinv = word_pow(ring_, vz_[q], ring_.D - em % ring_.D);
        mul_pow_inplace(ring_, vx_[q], zinv, 1);
        if (ring_.d % 2 == 0)
            vx_[q].phase = static_cast<std::uint32_t>(
                (vx_[q].phase + ring_.D - em) % ring_.D);
    }
    // U <- SUM^{(c,t)} U:  X_c -> X_c X_t^{-1}, Z_t -> Z_t Z_c.
    void apply_sum(std::uint32_t c, std::uint32_t t) {
        PauliWord xinv = word_inverse(ring_, vx_[t]);
        mul_pow_inplace(ring_, vx_[c], xinv, 1);
        mul_pow_inplace(ring_, vz_[t], vz_[c], 1);
    }
    // U <- (X^a Z^b)_q U: phases only.
    void apply_pauli_pow(std::uint32_t q, std::int64_t xe, std::int64_t ze) {
        const std::uint32_t a = mod_u32(xe, ring_.d);
        const std::uint32_t b = mod_u32(ze, ring_.d);
        vx_[q].phase = static_cast<std::uint32_t>(
            (vx_[q].phase +
             std::uint64_t(ring_.r) * ((ring_.d - b) % ring_.d)) %
            ring_.D);
        vz_[q].phase = static_cast<std::uint32_t>(
            (vz_[q].phase + std::uint64_t(ring_.r) * a) % ring_.D);
    }

  private:
    PauliRing ring_;
    std::uint32_t n_;
    std::vector<PauliWord> vx_, vz_;
};

// Input coset description per mode: the uniform superposition over
// offset + stride*Z_d (stride == d is a plain basis state, stride == 1 the
// uniform |+>-type state).
struct InitCoset {
    std::uint32_t offset = 0;
    std::uint32_t stride = 1;
};

// Phase of the unique input-stabilizer element with the exponents of `w`,
// or no value when the exponents leave the stabilizer lattice.
inline std::optional<std::uint32_t> init_stabilizer_phase(
    const PauliRing& ring, const std::vector<InitCoset>& init,
    const PauliWord& w) {
    const std::uint32_t d = ring.d;
    std::uint64_t phase = 0;
    for (std::uint32_t q = 0; q < init.size(); ++q) {
        const std::uint32_t stride = init[q].stride;
        const std::uint32_t zexp = d / stride;
        const std::uint32_t x = w.x(q), z = w.z(q);
        if (x % stride != 0 || z % zexp != 0) return std::nullopt;
        const std::uint32_t v = z / zexp;
        // the X generator carries phase 0 and the per-mode product is in
        // X-before-Z order, so only the phased Z generator contributes
        const std::uint32_t zgen_phase = mod_u32(
            -std::int64_t(ring.r) * zexp * std::int64_t(init[q].offset % d),
            ring.D);
        phase += std::uint64_t(v % ring.D) * zgen_phase % ring.D;
    }
    return static_cast<std::uint32_t>(phase % ring.D);
}

}  // namespace cvstab
