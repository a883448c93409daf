#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cvstab/circuit.hpp"

namespace cvstab {

// Uniform position grid, symmetric about 0, self-reciprocal under the
// Fourier gate: h = sqrt(2 pi / N), so the centered unitary DFT maps the
// grid onto itself. N = 64 m^2 d2 keeps the code lattice sqrt(2 pi/d2)
// grid-aligned (the lattice step is exactly 8m samples).
struct GridSpec {
    std::uint32_t samples = 0;
    double h = 0.0;

    double q(std::uint32_t i) const {
        return (static_cast<double>(i) - samples / 2) * h;
    }
    double extent() const { return samples * h; }

    static GridSpec for_code(std::uint32_t d2, std::uint32_t min_samples) {
        for (std::uint32_t m = 1;; ++m) {
            std::uint64_t n = 64ull * m * m * d2;
            if (n >= min_samples) {
                GridSpec s;
                s.samples = static_cast<std::uint32_t>(n);
                s.h = std::sqrt(2.0 * M_PI / static_cast<double>(n));
                return s;
            }
            if (m > 64) throw std::invalid_argument("grid too large");
        }
    }
    // lattice step sqrt(2 pi/d2) in samples
    std::uint32_t lattice_step(std::uint32_t d2) const {
        double step = std::sqrt(2.0 * M_PI / d2) / h;
        auto s = static_cast<std::uint32_t>(std::llround(step));
        if (std::abs(step - s) > 1e-9)
            throw std::logic_error("code lattice is not grid aligned");
        return s;
    }
};

// 1-2 mode sampled wave function; norm convention sum |psi|^2 h^modes = 1.
struct GridState {
    using Cx = std::complex<double>;
    std::uint32_t modes = 1;
    GridSpec spec;
    std::vector<Cx> amp;  // modes==2: amp[i*N+j] = psi(q_i, q_j)

    double norm2() const {
        double s = 0;
        for (const auto& a : amp) s += std::norm(a);
        for (std::uint32_t m = 0; m < modes; ++m) s *= spec.h;
        return s;
    }
    void normalize() {
        double n = std::sqrt(norm2());
        if (n < 1e-300) throw std::runtime_error("zero-norm grid state");
        for (auto& a : amp) a /= n;
    }
    double edge_mass() const {
        const std::uint32_t N = spec.samples;
        double m = 0;
        double cell = 1;
        for (std::uint32_t k = 0; k < modes; ++k) cell *= spec.h;
        for (std::size_t idx = 0; idx < amp.size(); ++idx) {
            bool edge = false;
            std::size_t rest = idx;
            for (std::uint32_t k = 0; k < modes; ++k) {
                std::uint32_t i = rest % N;
                rest /= N;
                if (i < N / 16 || i >= N - N / 16) edge = true;
            }
            if (edge) m += std::norm(amp[idx]) * cell;
        }
        return m;
    }
};

inline GridState::Cx grid_overlap(const GridState& a, const GridState& b) {
    if (a.amp.size() != b.amp.size())
        throw std::invalid_argument("grid shape mismatch");
    GridState::Cx acc{0, 0};
    for (std::size_t i = 0; i < a.amp.size(); ++i)
        acc += std::conj(a.amp[i]) * b.amp[i];
    double cell = 1;
    for (std::uint32_t m = 0; m < a.modes; ++m) cell *= a.spec.h;
    return acc * cell;
}

// Finite-squeezing codeword: Gaussian peaks of width Delta at the lattice
// points sqrt(2 pi/d)(j + d s), under the envelope exp(-x^2 delta^2/2).
inline std::vector<GridState::Cx> gkp_wavefunction_samples(
    const GridSpec& spec, std::uint32_t d, std::uint32_t j, double Delta,
    double delta) {
    std::vector<GridState::Cx> out(spec.samples, {0, 0});
    const double unit = std::sqrt(2.0 * M_PI / d);
    const double half = spec.extent() / 2.0;
    const long smax =
        static_cast<long>(std::ceil((half + 8 * Delta) / (unit * d))) + 1;
    for (long s = -smax; s <= smax; ++s) {
        double x = unit * (static_cast<double>(j) + static_cast<double>(d) * s);
        if (std::abs(x) > half + 8 * Delta) continue;
        double env = std::exp(-x * x * delta * delta / 2.0);
        for (std::uint32_t i = 0; i < spec.samples; ++i) {
            double q = spec.q(i);
            double dq = q - x;
            if (std::abs(dq) > 10 * Delta) continue;
            out[i] += env * std::exp(-dq * dq / (2.0 * Delta * Delta));
        }
    }
    return out;
}

inline GridState make_gkp_state(const GridSpec& spec, std::uint32_t d,
                                std::uint32_t j, double Delta, double delta) {
    GridState s;
    s.modes = 1;
    s.spec = spec;
    s.amp = gkp_wavefunction_samples(spec, d, j, Delta, delta);
    s.normalize();
    return s;
}

inline GridState make_gkp_two_mode(const GridSpec& spec, std::uint32_t d,
                                   std::uint32_t j0, std::uint32_t j1,
                                   double Delta, double delta) {
    auto a = gkp_wavefunction_samples(spec, d, j0, Delta, delta);
    auto b = gkp_wavefunction_samples(spec, d, j1, Delta, delta);
    GridState s;
    s.modes = 2;
    s.spec = spec;
    const std::uint32_t N = spec.samples;
    s.amp.assign(std::size_t(N) * N, {0, 0});
    for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t k = 0; k < N; ++k)
            s.amp[std::size_t(i) * N + k] = a[i] * b[k];
    s.normalize();
    return s;
}

namespace detail {

template <typename Fn>
inline void for_each_sample(GridState& s, std::uint32_t mode, Fn&& fn) {
    const std::uint32_t N = s.spec.samples;
    if (s.modes == 1) {
        for (std::uint32_t i = 0; i < N; ++i) fn(s.amp[i], i);
    } else {
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t k = 0; k < N; ++k)
                fn(s.amp[std::size_t(i) * N + k], mode == 0 ? i : k);
    }
}

}  // namespace detail

// exp(i amount * q): pointwise phase (momentum kick).
inline void grid_apply_momentum_kick(GridState& s, std::uint32_t mode,
                                     double amount) {
    detail::for_each_sample(s, mode, [&](GridState::Cx& a, std::uint32_t i) {
        double ang = amount * s.spec.q(i);
        a *= GridState::Cx{std::cos(ang), std::sin(ang)};
    });
}

// exp(-i amount * p): position shift; must land on whole grid steps.
inline void grid_apply_position_shift(GridState& s, std::uint32_t mode,
                                      double amount) {
    double steps = amount / s.spec.h;
    long k = std::lround(steps);
    if (std::abs(steps - k) > 1e-9)
        throw std::invalid_argument("displacement is not grid aligned");
    const std::uint32_t N = s.spec.samples;
    std::vector<GridState::Cx> out(s.amp.size(), {0, 0});
    if (s.modes == 1) {
        for (std::uint32_t i = 0; i < N; ++i) {
            long src = static_cast<long>(i) - k;
            if (src >= 0 && src < static_cast<long>(N)) out[i] = s.amp[src];
        }
    } else {
        for (std::uint32_t i = 0; i < N; ++i)
            for (std::uint32_t j = 0; j < N; ++j) {
                long src = (mode == 0 ? static_cast<long>(i)
                                      : static_cast<long>(j)) -
                           k;
                if (src < 0 || src >= static_cast<long>(N)) continue;
                std::size_t from = mode == 0 ? std::size_t(src) * N + j
                                             : std::size_t(i) * N + src;
                out[std::size_t(i) * N + j] = s.amp[from];
            }
    }
    s.amp = std::move(out);
}

// exp(i (q^2 - 2 c q)/2); c = 0 is the plain shear.
inline void grid_apply_shear(GridState& s, std::uint32_t mode, double c = 0.0) {
    detail::for_each_sample(s, mode, [&](GridState::Cx& a, std::uint32_t i) {
        double q = s.spec.q(i);
        double ang = (q * q - 2.0 * c * q) / 2.0;
        a *= GridState::Cx{std::cos(ang), std::sin(ang)};
    });
}

// exp(i q_0 q_1) on a two-mode state.
inline void grid_apply_cz(GridState& s) {
    if (s.modes != 2) throw std::invalid_argument("CZ needs two modes");
    const std::uint32_t N = s.spec.samples;
    for (std::uint32_t i = 0; i < N; ++i)
        for (std::uint32_t j = 0; j < N; ++j) {
            double ang = s.spec.q(i) * s.spec.q(j);
            s.amp[std::size_t(i) * N + j] *=
                GridState::Cx{std::cos(ang), std::sin(ang)};
        }
}

// Centered unitary DFT, (F psi)_j = (1/sqrt N) sum_k w^{(j-C)(k-C)} psi_k,
// which is the Fourier gate exactly when h = sqrt(2 pi/N).
inline void grid_apply_fourier(GridState& s, std::uint32_t mode,
                               bool inverse = false) {
    const std::uint32_t N = s.spec.samples;
    if (std::abs(s.spec.h - std::sqrt(2.0 * M_PI / N)) > 1e-12)
        throw std::logic_error("grid is not self-reciprocal");
    if (s.edge_mass() > 1e-6)
        throw std::runtime_error("grid aliasing: significant edge mass");
    std::vector<GridState::Cx> tw(N);
    for (std::uint32_t t = 0; t < N; ++t) {
        double ang = 2.0 * M_PI * t / N * (inverse ? -1.0 : 1.0);
        tw[t] = {std::cos(ang), std::sin(ang)};
    }
    const double inv = 1.0 / std::sqrt(static_cast<double>(N));
    const std::uint32_t C = N / 2;
    auto transform = [&](GridState::Cx* fiber, std::size_t stride) {
        std::vector<GridState::Cx> out(N);
        for (std::uint32_t j = 0; j < N; ++j) {
            GridState::Cx acc{0, 0};
            const std::int64_t jc = static_cast<std::int64_t>(j) - C;
            for (std::uint32_t k = 0; k < N; ++k) {
                std::int64_t e = jc * (static_cast<std::int64_t>(k) - C);
                std::uint32_t em = static_cast<std::uint32_t>(((e % N) + N) % N);
                acc += tw[em] * fiber[stride * k];
            }
            out[j] = acc * inv;
        }
        for (std::uint32_t j = 0; j < N; ++j) fiber[stride * j] = out[j];
    };
    if (s.modes == 1) {
        transform(s.amp.data(), 1);
    } else {
        if (mode == 0) {
            for (std::uint32_t j = 0; j < N; ++j)
                transform(s.amp.data() + j, N);
        } else {
            for (std::uint32_t i = 0; i < N; ++i)
                transform(s.amp.data() + std::size_t(i) * N, 1);
        }
    }
}

// Binned homodyne: assign each sample to the nearest sqrt(2 pi/d2) lattice
// class. Mass farther than a quarter lattice spacing from every lattice
// point counts as unresolved; too much of it means the squeezing cannot
// support the readout.
struct HomodyneDistribution {
    std::vector<double> probs;   // per class, renormalized
    double interstitial = 0.0;   // mass outside the +-1/4-spacing windows
};

inline HomodyneDistribution grid_homodyne(const GridState& s,
                                          std::uint32_t mode, std::uint32_t d2,
                                          double interstitial_tolerance = 5e-2) {
    HomodyneDistribution dist;
    dist.probs.assign(d2, 0.0);
    const double unit = std::sqrt(2.0 * M_PI / d2);
    double cell = 1;
    for (std::uint32_t m = 0; m < s.modes; ++m) cell *= s.spec.h;
    const std::uint32_t N = s.spec.samples;
    for (std::size_t idx = 0; idx < s.amp.size(); ++idx) {
        std::uint32_t i = s.modes == 1
                              ? static_cast<std::uint32_t>(idx)
                              : (mode == 0 ? static_cast<std::uint32_t>(idx / N)
                                           : static_cast<std::uint32_t>(idx % N));
        double x = s.spec.q(i) / unit;
        long cls = std::lround(x);
        double p = std::norm(s.amp[idx]) * cell;
        if (std::abs(x - cls) > 0.25) {
            dist.interstitial += p;
            continue;
        }
        dist.probs[static_cast<std::uint32_t>(((cls % d2) + d2) % d2)] += p;
    }
    if (dist.interstitial > interstitial_tolerance)
        throw std::runtime_error(
            "homodyne binning: squeezing insufficient for this lattice");
    double total = 0;
    for (double p : dist.probs) total += p;
    if (total > 0)
        for (double& p : dist.probs) p /= total;
    return dist;
}

}  // namespace cvstab
