#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cvstab/circuit.hpp"
#include "cvstab/rational.hpp"
#include "cvstab/rsb.hpp"

namespace cvstab {

// Truncated Fock-space oracle (1-2 modes) for rotation-code circuits.
struct FockState {
    using Cx = std::complex<double>;
    std::uint32_t modes = 1;
    std::uint32_t n_max = 0;  // per-mode cutoff, inclusive
    std::vector<Cx> amp;      // (n_max+1)^modes

    static FockState single(std::uint32_t n_max) {
        FockState s;
        s.modes = 1;
        s.n_max = n_max;
        s.amp.assign(n_max + 1, Cx{0, 0});
        return s;
    }
    static FockState two_mode(std::uint32_t n_max) {
        FockState s;
        s.modes = 2;
        s.n_max = n_max;
        s.amp.assign(std::size_t(n_max + 1) * (n_max + 1), Cx{0, 0});
        return s;
    }

    std::size_t dim() const { return amp.size(); }
    std::uint32_t level(std::size_t idx, std::uint32_t mode) const {
        return modes == 1 ? static_cast<std::uint32_t>(idx)
                          : (mode == 0 ? static_cast<std::uint32_t>(idx / (n_max + 1))
                                       : static_cast<std::uint32_t>(idx % (n_max + 1)));
    }

    double norm2() const {
        double s = 0;
        for (const auto& a : amp) s += std::norm(a);
        return s;
    }
    void normalize() {
        double n = std::sqrt(norm2());
        if (n < 1e-300) throw std::runtime_error("zero-norm Fock state");
        for (auto& a : amp) a /= n;
    }
};

inline FockState::Cx fock_overlap(const FockState& a, const FockState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("shape mismatch");
    FockState::Cx acc{0, 0};
    for (std::size_t i = 0; i < a.dim(); ++i)
        acc += std::conj(a.amp[i]) * b.amp[i];
    return acc;
}

// exp(i 2 pi (u n^2 + v n)) on one mode; rotation is the u = 0 case.
inline void fock_apply_kerr(FockState& s, std::uint32_t mode, const Rational& u,
                            const Rational& v) {
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        double n = s.level(idx, mode);
        double ang = 2.0 * M_PI * (u.to_double() * n * n + v.to_double() * n);
        s.amp[idx] *= FockState::Cx{std::cos(ang), std::sin(ang)};
    }
}
inline void fock_apply_rotation(FockState& s, std::uint32_t mode,
                                const Rational& r) {
    fock_apply_kerr(s, mode, Rational(0), r);
}
// exp(i 2 pi w n_k n_l) on a two-mode state.
inline void fock_apply_cross_kerr(FockState& s, const Rational& w) {
    if (s.modes != 2) throw std::invalid_argument("cross-Kerr needs 2 modes");
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        double n1 = s.level(idx, 0), n2 = s.level(idx, 1);
        double ang = 2.0 * M_PI * w.to_double() * n1 * n2;
        s.amp[idx] *= FockState::Cx{std::cos(ang), std::sin(ang)};
    }
}

// Coherent-state amplitudes <n|alpha> for real alpha.
inline std::vector<double> coherent_amplitudes(double alpha,
                                               std::uint32_t n_max) {
    std::vector<double> c(n_max + 1);
    c[0] = std::exp(-alpha * alpha / 2.0);
    for (std::uint32_t n = 1; n <= n_max; ++n)
        c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    return c;
}

// Fock data of a codeword: the symbolic support always, amplitudes only for
// a concrete (Coherent) primitive. norm_constant is N_j = (dM)^2 <phi|P|phi>.
struct RsbCodewordFock {
    std::vector<std::uint32_t> support;
    std::optional<FockState> state;
    double norm_constant = 0.0;
};

inline RsbCodewordFock rsb_codeword_fock(const RsbCodewordSpec& spec,
                                         std::uint32_t n_max) {
    RsbCodewordFock out;
    out.support = rsb_codeword_support(spec, n_max);
    if (spec.primitive.kind == Primitive::Kind::IdealOrthogonal) return out;

    const double alpha = spec.primitive.alpha;
    auto c = coherent_amplitudes(alpha, n_max);
    const std::uint64_t period = std::uint64_t(spec.d) * spec.M;
    // total projector mass, extended past the cutoff until terms vanish
    double total = 0, truncated = 0;
    double logfact = 0;
    for (std::uint64_t n = 0;; ++n) {
        if (n > 0) logfact += std::log(static_cast<double>(n));
        if (n % period != std::uint64_t(spec.j) * spec.M % period) {
            if (n > n_max && n > alpha * alpha + 20 * alpha + 60) break;
            continue;
        }
        double logp = -alpha * alpha + 2.0 * n * std::log(std::max(alpha, 1e-300)) -
                      logfact;
        double p = alpha == 0.0 ? (n == 0 ? 1.0 : 0.0) : std::exp(logp);
        total += p;
        if (n <= n_max) truncated += p;
        if (n > n_max && n > alpha * alpha + 20 * alpha + 60) break;
    }
    if (total <= 0 || truncated / total < 1.0 - 1e-8)
        throw std::invalid_argument("Fock truncation insufficient for codeword");

    FockState s = FockState::single(n_max);
    for (std::uint32_t n : out.support) s.amp[n] = c[n];
    out.norm_constant = static_cast<double>(period) * period * s.norm2();
    s.normalize();
    out.state = std::move(s);
    return out;
}

// Orthogonality defect eps = max_{0<s<L} |<phi| e^{i 2 pi s n/L} |phi>| for
// the L = d*M rotation lattice. Coherent primitive: closed form
// exp(-|alpha|^2 (1 - cos(2 pi s/L))), maximal at s = 1.
inline double orthogonality_defect(const Primitive& prim, std::uint32_t L) {
    if (prim.kind == Primitive::Kind::IdealOrthogonal) return 0.0;
    if (L <= 1) return 0.0;
    double a2 = prim.alpha * prim.alpha;
    return std::exp(-a2 * (1.0 - std::cos(2.0 * M_PI / L)));
}

// X-basis state |u^k_{d2}; M2>: the rotation sum collapses to the projector
// onto levels n = 0 mod M2 with the extra phase e^{-i 2 pi k n/(d2 M2)} —
// a form independent of d2 at k = 0, which is what makes the method-two
// reinterpretation exact.
inline FockState xbasis_state_fock(std::uint32_t d2, std::uint32_t M2,
                                   const Primitive& prim, std::uint32_t k,
                                   std::uint32_t n_max) {
    if (prim.kind != Primitive::Kind::Coherent)
        throw std::invalid_argument("x-basis state needs a concrete primitive");
    auto c = coherent_amplitudes(prim.alpha, n_max);
    FockState acc = FockState::single(n_max);
    for (std::uint32_t n = 0; n <= n_max; n += M2) {
        double ang = -2.0 * M_PI * double(k) * n / (double(d2) * M2);
        acc.amp[n] = c[n] * FockState::Cx{std::cos(ang), std::sin(ang)};
    }
    acc.normalize();
    return acc;
}

// Logical superposition sum_j alpha_j |j_{d2}; M2>.
inline FockState logical_state_fock(std::uint32_t d2, std::uint32_t M2,
                                    const Primitive& prim,
                                    const std::vector<FockState::Cx>& alpha,
                                    std::uint32_t n_max) {
    FockState acc = FockState::single(n_max);
    for (std::uint32_t j = 0; j < d2; ++j) {
        auto cw = rsb_codeword_fock(RsbCodewordSpec{d2, M2, j, prim}, n_max);
        for (std::size_t i = 0; i < acc.dim(); ++i)
            acc.amp[i] += alpha[j] * cw.state->amp[i];
    }
    acc.normalize();
    return acc;
}

// Phase measurement modeled by codeword-subspace projectors: probability of
// class j is the mass on Fock levels congruent to j*M2 mod d2*M2.
inline std::vector<double> fock_phase_measure_distribution(
    const FockState& s, std::uint32_t mode, std::uint32_t d2,
    std::uint32_t M2) {
    std::vector<double> p(d2, 0.0);
    const std::uint64_t period = std::uint64_t(d2) * M2;
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        std::uint32_t n = s.level(idx, mode);
        if (n % M2 != 0) continue;  // outside every codeword class
        p[(n / M2) % d2] += std::norm(s.amp[idx]);
    }
    (void)period;
    return p;
}

// Teleported Fourier gadget: CZ between the input mode and an X-basis
// ancilla, then projection of the input mode onto each |u^k>. Post-selection
// on k = 0 leaves the ancilla in the logical DFT of the input.
struct GadgetResult {
    std::vector<double> projection_probs;  // per ancilla-basis outcome k
    FockState output;                      // normalized, k = 0 branch
};

inline GadgetResult teleported_fourier_gadget(
    std::uint32_t d2, std::uint32_t M2, const Primitive& prim,
    const std::vector<FockState::Cx>& alpha, std::uint32_t n_max) {
    FockState input = logical_state_fock(d2, M2, prim, alpha, n_max);
    FockState anc = xbasis_state_fock(d2, M2, prim, 0, n_max);
    FockState two = FockState::two_mode(n_max);
    const std::size_t D1 = n_max + 1;
    for (std::size_t i = 0; i < D1; ++i)
        for (std::size_t j = 0; j < D1; ++j)
            two.amp[i * D1 + j] = input.amp[i] * anc.amp[j];
    fock_apply_cross_kerr(two, Rational(1, std::int64_t(d2) * M2 * M2));

    GadgetResult res;
    res.projection_probs.assign(d2, 0.0);
    for (std::uint32_t k = 0; k < d2; ++k) {
        FockState uk = xbasis_state_fock(d2, M2, prim, k, n_max);
        FockState reduced = FockState::single(n_max);
        for (std::size_t j = 0; j < D1; ++j) {
            FockState::Cx acc{0, 0};
            for (std::size_t i = 0; i < D1; ++i)
                acc += std::conj(uk.amp[i]) * two.amp[i * D1 + j];
            reduced.amp[j] = acc;
        }
        res.projection_probs[k] = reduced.norm2();
        if (k == 0) {
            reduced.normalize();
            res.output = std::move(reduced);
        }
    }
    return res;
}

enum class Method1Normalization { CommonIdeal, PerCodeword };

// Fidelity between the order-N codeword |j_{d1}; N> and its reinterpretation
// (1/sqrt a) sum_t |(a j + a d1 t)_{d2}; N/a>, d2 = d1 a^2. With the common
// ideal normalization the two sides are the same projected primitive; the
// per-codeword variant exposes the orthogonality defect.
inline double method1_identity_check(
    std::uint32_t d1, std::uint32_t N, std::uint32_t a, std::uint32_t j,
    const Primitive& prim, std::uint32_t n_max,
    Method1Normalization norm = Method1Normalization::CommonIdeal) {
    if (a == 0 || N % a != 0)
        throw std::invalid_argument("method one requires a | N");
    if (prim.kind != Primitive::Kind::Coherent)
        throw std::invalid_argument("fidelity check needs a concrete primitive");
    auto lhs = rsb_codeword_fock(RsbCodewordSpec{d1, N, j, prim}, n_max);
    const std::uint32_t d2 = d1 * a * a, M2 = N / a;
    FockState rhs = FockState::single(n_max);
    for (std::uint32_t t = 0; t < a; ++t) {
        auto cw = rsb_codeword_fock(
            RsbCodewordSpec{d2, M2, (a * j + a * d1 * t) % d2, prim}, n_max);
        if (norm == Method1Normalization::CommonIdeal) {
            // undo the per-codeword normalization: weight by sqrt of mass
            double w = std::sqrt(cw.norm_constant);
            for (std::size_t i = 0; i < rhs.dim(); ++i)
                rhs.amp[i] += w * cw.state->amp[i];
        } else {
            for (std::size_t i = 0; i < rhs.dim(); ++i)
                rhs.amp[i] += cw.state->amp[i];
        }
    }
    rhs.normalize();
    auto ov = fock_overlap(*lhs.state, rhs);
    return std::norm(ov);
}

}  // namespace cvstab
