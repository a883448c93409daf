#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cvstab {

// Uniformly sampled single-mode wave function for phase-space work. The grid
// is symmetric about zero; N must be a power of two (the Wigner transform
// runs one FFT per position row).
struct WaveSamples {
    std::uint32_t n = 0;
    double h = 0.0;
    std::vector<std::complex<double>> psi;

    double q(std::uint32_t i) const {
        return (static_cast<double>(i) - n / 2) * h;
    }
    double norm2() const {
        double s = 0;
        for (const auto& a : psi) s += std::norm(a);
        return s * h;
    }
    void normalize() {
        double nn = std::sqrt(norm2());
        if (nn < 1e-300) throw std::runtime_error("zero-norm wave function");
        for (auto& a : psi) a /= nn;
    }
};

inline std::complex<double> wave_overlap(const WaveSamples& a,
                                         const WaveSamples& b) {
    if (a.n != b.n) throw std::invalid_argument("grid mismatch");
    std::complex<double> acc{0, 0};
    for (std::uint32_t i = 0; i < a.n; ++i)
        acc += std::conj(a.psi[i]) * b.psi[i];
    return acc * a.h;
}

// Finite-squeezing codeword sampler (peaks of width Delta on the
// sqrt(2 pi/d) lattice under a 1/delta envelope).
inline WaveSamples sample_gkp_wavefunction(std::uint32_t n, double h,
                                           std::uint32_t d, std::uint32_t j,
                                           double Delta, double delta) {
    WaveSamples w;
    w.n = n;
    w.h = h;
    w.psi.assign(n, {0, 0});
    const double unit = std::sqrt(2.0 * M_PI / d);
    const double half = n * h / 2.0;
    const long smax = static_cast<long>(std::ceil(half / (unit * d))) + 2;
    for (long s = -smax; s <= smax; ++s) {
        double x = unit * (static_cast<double>(j) + static_cast<double>(d) * s);
        double env = std::exp(-x * x * delta * delta / 2.0);
        for (std::uint32_t i = 0; i < n; ++i) {
            double dq = w.q(i) - x;
            if (std::abs(dq) > 12 * Delta) continue;
            w.psi[i] += env * std::exp(-dq * dq / (2.0 * Delta * Delta));
        }
    }
    w.normalize();
    return w;
}

// <q|beta> = pi^{-1/4} exp(-|beta|^2/2 - q^2/2 + sqrt2 beta q - beta^2/2);
// the exact form keeps relative phases between rotated components correct.
inline std::complex<double> coherent_position_amplitude(
    std::complex<double> beta, double q) {
    std::complex<double> e = -0.5 * std::norm(beta) - 0.5 * q * q +
                             M_SQRT2 * beta * q - 0.5 * beta * beta;
    return std::pow(M_PI, -0.25) * std::exp(e);
}

// Rotation-code codeword (1/sqrt N_j) sum_m w_d^{-jm} |alpha e^{i 2pi m/dM}>.
inline WaveSamples sample_cat_codeword(std::uint32_t n, double h,
                                       std::uint32_t d, std::uint32_t M,
                                       std::uint32_t j, double alpha) {
    WaveSamples w;
    w.n = n;
    w.h = h;
    w.psi.assign(n, {0, 0});
    const std::uint32_t comps = d * M;
    for (std::uint32_t m = 0; m < comps; ++m) {
        double rot = 2.0 * M_PI * m / comps;
        std::complex<double> beta =
            alpha * std::complex<double>{std::cos(rot), std::sin(rot)};
        double ang = -2.0 * M_PI * double(j) * m / d;
        std::complex<double> coef{std::cos(ang), std::sin(ang)};
        for (std::uint32_t i = 0; i < n; ++i)
            w.psi[i] += coef * coherent_position_amplitude(beta, w.q(i));
    }
    w.normalize();
    return w;
}

// Vacuum (the alpha = 0 coherent state): the Gaussian reference state.
inline WaveSamples sample_vacuum(std::uint32_t n, double h) {
    WaveSamples w;
    w.n = n;
    w.h = h;
    w.psi.assign(n, {0, 0});
    for (std::uint32_t i = 0; i < n; ++i)
        w.psi[i] = coherent_position_amplitude({0, 0}, w.q(i));
    w.normalize();
    return w;
}

// Real W(q,p) on the grid q_i (step h, n points) x p_k (step pi/(2 n h),
// 2n points). Rows integrate to the position density exactly.
struct PhaseSpaceGrid {
    std::uint32_t nq = 0, np = 0;
    double h = 0, dp = 0;
    std::vector<double> w;  // row-major [iq * np + ip]

    double q(std::uint32_t i) const {
        return (static_cast<double>(i) - nq / 2) * h;
    }
    double p(std::uint32_t k) const {
        return (static_cast<double>(k) - np / 2) * dp;
    }
    double cell() const { return h * dp; }

    double integral() const {
        double s = 0;
        for (double v : w) s += v;
        return s * cell();
    }
    double min_value() const {
        double m = w.empty() ? 0.0 : w[0];
        for (double v : w) m = std::min(m, v);
        return m;
    }
    std::vector<double> marginal_q() const {
        std::vector<double> out(nq, 0.0);
        for (std::uint32_t i = 0; i < nq; ++i) {
            double s = 0;
            for (std::uint32_t k = 0; k < np; ++k) s += w[std::size_t(i) * np + k];
            out[i] = s * dp;
        }
        return out;
    }
};

namespace detail {

inline void fft_radix2(std::vector<std::complex<double>>& a, bool inverse) {
    const std::size_t n = a.size();
    if (n & (n - 1)) throw std::invalid_argument("fft size must be 2^k");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? -1 : 1);
        std::complex<double> wl{std::cos(ang), std::sin(ang)};
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> cur{1, 0};
            for (std::size_t k = 0; k < len / 2; ++k) {
                auto u = a[i + k];
                auto v = a[i + k + len / 2] * cur;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                cur *= wl;
            }
        }
    }
}

}  // namespace detail

// W(q,p) = (1/pi) int psi*(q+y) psi(q-y) e^{2ipy} dy, evaluated per row by a
// centered DFT over y. Hermitian symmetry of the autocorrelation in y makes
// each row real up to rounding; the real part is kept.
inline PhaseSpaceGrid wigner_of_wavefunction(const WaveSamples& in) {
    const std::uint32_t n = in.n;
    if (n == 0 || (n & (n - 1)))
        throw std::invalid_argument("wave grid must have 2^k samples");
    const std::uint32_t L = 2 * n;
    PhaseSpaceGrid g;
    g.nq = n;
    g.np = L;
    g.h = in.h;
    g.dp = M_PI / (2.0 * static_cast<double>(n) * in.h);
    g.w.assign(std::size_t(n) * L, 0.0);

    std::vector<std::complex<double>> row(L);
    const double scale = in.h / M_PI;
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t m = 0; m < L; ++m) {
            const std::int64_t off = static_cast<std::int64_t>(m) - n;
            const std::int64_t ip = static_cast<std::int64_t>(i) + off;
            const std::int64_t im = static_cast<std::int64_t>(i) - off;
            std::complex<double> v{0, 0};
            if (ip >= 0 && ip < static_cast<std::int64_t>(n) && im >= 0 &&
                im < static_cast<std::int64_t>(n))
                v = std::conj(in.psi[ip]) * in.psi[im];
            // centered DFT: fold (-1)^m here, (-1)^k after the transform
            row[m] = (m & 1) ? -v : v;
        }
        detail::fft_radix2(row, false);
        for (std::uint32_t k = 0; k < L; ++k) {
            std::complex<double> v = (k & 1) ? -row[k] : row[k];
            g.w[std::size_t(i) * L + k] = scale * v.real();
        }
    }
    return g;
}

// min W, negative volume, and log of the total |W| integral; the three agree
// in sign for any normalized grid.
struct NegativityReport {
    double min_value = 0;
    double negative_volume = 0;
    double log_negativity = 0;
};

inline NegativityReport negativity(const PhaseSpaceGrid& g) {
    double total = g.integral();
    if (std::abs(total - 1.0) > 1e-3)
        throw std::invalid_argument("negativity needs a normalized grid");
    NegativityReport rep;
    rep.min_value = g.min_value();
    double absint = 0;
    for (double v : g.w) absint += std::abs(v);
    absint *= g.cell();
    rep.negative_volume = (absint - total) / 2.0;
    rep.log_negativity = std::log(absint);
    return rep;
}

// (2 pi) int W1 W2 = |<psi1|psi2>|^2 for pure states: the Born rule in phase
// space, used as a cross-check of the transform.
inline double phase_space_overlap(const PhaseSpaceGrid& a,
                                  const PhaseSpaceGrid& b) {
    if (a.w.size() != b.w.size()) throw std::invalid_argument("grid mismatch");
    double s = 0;
    for (std::size_t i = 0; i < a.w.size(); ++i) s += a.w[i] * b.w[i];
    return 2.0 * M_PI * s * a.cell();
}

}  // namespace cvstab
