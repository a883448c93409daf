#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cvstab/pauli.hpp"
#include "cvstab/rng.hpp"

namespace cvstab {

// Brute-force state-vector simulator over (Z_d)^n used as the verification
// oracle for the tableau engine. Gate matrices realize the engine's unitaries
// exactly (same phase conventions), so agreement must be to rounding error.
class DenseQuditState {
  public:
    using Cx = std::complex<double>;

    DenseQuditState(std::uint32_t n, std::uint32_t d)
        : n_(n), d_(d), dim_(checked_dim(n, d)), amp_(dim_, Cx{0.0, 0.0}) {
        amp_[0] = 1.0;
    }

    static DenseQuditState from_amplitudes(std::uint32_t n, std::uint32_t d,
                                           std::vector<Cx> amps) {
        DenseQuditState s(n, d);
        if (amps.size() != s.dim_)
            throw std::invalid_argument("amplitude count mismatch");
        s.amp_ = std::move(amps);
        s.normalize();
        return s;
    }

    std::uint32_t n_qudits() const { return n_; }
    std::uint32_t dim_per_qudit() const { return d_; }
    const std::vector<Cx>& amplitudes() const { return amp_; }

    double norm() const {
        double s = 0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }
    void normalize() {
        double nrm = norm();
        if (nrm < 1e-300) throw std::runtime_error("zero-norm state");
        for (auto& a : amp_) a /= nrm;
    }

    // omega_d^e as a complex number (oracle side only).
    Cx omega(std::int64_t e) const {
        double ang = 2.0 * M_PI * static_cast<double>(mod_u32(e, d_)) / d_;
        return Cx{std::cos(ang), std::sin(ang)};
    }
    Cx omega_D(std::int64_t e) const {
        std::uint32_t D = (d_ % 2 == 0) ? 2 * d_ : d_;
        double ang = 2.0 * M_PI * static_cast<double>(mod_u32(e, D)) / D;
        return Cx{std::cos(ang), std::sin(ang)};
    }

    // F_d = (1/sqrt d) sum omega^{jk} |k><j| on qudit k0.
    void apply_fourier(std::uint32_t k0, bool inverse = false) {
        check(k0);
        const std::size_t stride = stride_of(k0);
        const std::size_t block = stride * d_;
        std::vector<Cx> tmp(d_);
        const double inv = 1.0 / std::sqrt(static_cast<double>(d_));
        for (std::size_t base = 0; base < dim_; base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                for (std::uint32_t k = 0; k < d_; ++k) {
                    Cx acc{0, 0};
                    for (std::uint32_t j = 0; j < d_; ++j) {
                        Cx w = omega(static_cast<std::int64_t>(j) * k *
                                     (inverse ? -1 : 1));
                        acc += w * amp_[base + off + stride * j];
                    }
                    tmp[k] = acc * inv;
                }
                for (std::uint32_t k = 0; k < d_; ++k)
                    amp_[base + off + stride * k] = tmp[k];
            }
        }
    }

    // S_d = sum_j omega_d^{j^2/2} eta_d^{-j} |j><j| with eta_d = w_D w_{2d}^-1.
    // (The beta-form diag exp(i pi (j^2 - beta j)/d) is a derived identity,
    // asserted in tests, not a second code path.)
    void apply_phase_gate(std::uint32_t k0, std::int64_t e = 1) {
        check(k0);
        std::uint32_t D = (d_ % 2 == 0) ? 2 * d_ : d_;
        const double eta_ang = 2.0 * M_PI / D - M_PI / d_;
        std::vector<Cx> diag(d_);
        for (std::uint32_t j = 0; j < d_; ++j) {
            double ang = M_PI * static_cast<double>(j) * j / d_ -
                         eta_ang * static_cast<double>(j);
            double full = ang * static_cast<double>(e);
            diag[j] = Cx{std::cos(full), std::sin(full)};
        }
        apply_diag(k0, diag);
    }

    void apply_sum(std::uint32_t c, std::uint32_t t) {
        check(c);
        check(t);
        if (c == t) throw std::invalid_argument("SUM needs distinct qudits");
        std::vector<Cx> out(dim_, Cx{0, 0});
        for (std::size_t idx = 0; idx < dim_; ++idx) {
            std::uint32_t i = digit(idx, c);
            std::uint32_t j = digit(idx, t);
            std::size_t nidx = with_digit(idx, t, (i + j) % d_);
            out[nidx] += amp_[idx];
        }
        amp_ = std::move(out);
    }

    void apply_pauli(const PauliRing& ring, const PauliWord& w) {
        if (w.n != n_ || ring.d != d_)
            throw std::invalid_argument("pauli arity mismatch");
        std::vector<Cx> out(dim_, Cx{0, 0});
        for (std::size_t idx = 0; idx < dim_; ++idx) {
            std::size_t nidx = idx;
            std::int64_t zphase = 0;
            for (std::uint32_t k = 0; k < n_; ++k) {
                std::uint32_t jk = digit(idx, k);
                zphase += static_cast<std::int64_t>(w.z(k)) * jk;
                nidx = with_digit(nidx, k, (jk + w.x(k)) % d_);
            }
            out[nidx] += omega(zphase) * amp_[idx];
        }
        Cx global = omega_D(w.phase);
        for (auto& a : out) a *= global;
        amp_ = std::move(out);
    }

    void apply_diag(std::uint32_t k0, const std::vector<Cx>& diag) {
        check(k0);
        for (std::size_t idx = 0; idx < dim_; ++idx)
            amp_[idx] *= diag[digit(idx, k0)];
    }

    // exp(i 2 pi /d * j_c * j_t) — qudit controlled-Z (test helper).
    void apply_cz(std::uint32_t c, std::uint32_t t) {
        check(c);
        check(t);
        for (std::size_t idx = 0; idx < dim_; ++idx)
            amp_[idx] *= omega(static_cast<std::int64_t>(digit(idx, c)) *
                               digit(idx, t));
    }

    std::vector<double> measure_probs(std::uint32_t k0) const {
        check(k0);
        std::vector<double> p(d_, 0.0);
        for (std::size_t idx = 0; idx < dim_; ++idx)
            p[digit(idx, k0)] += std::norm(amp_[idx]);
        return p;
    }

    std::vector<double> joint_probs() const {
        std::vector<double> p(dim_);
        for (std::size_t idx = 0; idx < dim_; ++idx) p[idx] = std::norm(amp_[idx]);
        return p;
    }

    void collapse(std::uint32_t k0, std::uint32_t outcome) {
        check(k0);
        for (std::size_t idx = 0; idx < dim_; ++idx)
            if (digit(idx, k0) != outcome) amp_[idx] = 0;
        normalize();
    }

    std::uint32_t sample_and_collapse(std::uint32_t k0, SplitMix64& rng) {
        auto p = measure_probs(k0);
        double u = rng.uniform01();
        double acc = 0;
        std::uint32_t out = d_ - 1;
        for (std::uint32_t j = 0; j < d_; ++j) {
            acc += p[j];
            if (u < acc) {
                out = j;
                break;
            }
        }
        collapse(k0, out);
        return out;
    }

    std::uint32_t digit(std::size_t idx, std::uint32_t k) const {
        return static_cast<std::uint32_t>(idx / stride_of(k) % d_);
    }

    std::size_t index_of(const std::vector<std::uint32_t>& digits) const {
        std::size_t idx = 0;
        for (std::uint32_t k = 0; k < n_; ++k) idx += digits[k] * stride_of(k);
        return idx;
    }

    friend Cx overlap(const DenseQuditState& a, const DenseQuditState& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("dimension mismatch");
        Cx acc{0, 0};
        for (std::size_t i = 0; i < a.dim_; ++i)
            acc += std::conj(a.amp_[i]) * b.amp_[i];
        return acc;
    }

  private:
    static std::size_t checked_dim(std::uint32_t n, std::uint32_t d) {
        if (n == 0 || d < 2) throw std::invalid_argument("bad dense shape");
        std::size_t dim = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            dim *= d;
            if (dim > (1u << 20))
                throw std::invalid_argument("dense oracle dimension overflow");
        }
        return dim;
    }

    // qudit 0 is the most significant digit (matches tensor-product order)
    std::size_t stride_of(std::uint32_t k) const {
        std::size_t s = 1;
        for (std::uint32_t i = k + 1; i < n_; ++i) s *= d_;
        return s;
    }
    std::size_t with_digit(std::size_t idx, std::uint32_t k,
                           std::uint32_t val) const {
        std::size_t st = stride_of(k);
        return idx - digit(idx, k) * st + static_cast<std::size_t>(val) * st;
    }
    void check(std::uint32_t k) const {
        if (k >= n_) throw std::out_of_range("qudit index out of range");
    }

    std::uint32_t n_, d_;
    std::size_t dim_;
    std::vector<Cx> amp_;
};

// Dense vector fixed by every generator of a tableau: apply the group
// projector (1/|S|) sum_W W to a reference vector. Test-side bridge between
// the two representations.
inline DenseQuditState dense_from_generators(
    std::uint32_t n, std::uint32_t d, const std::vector<PauliWord>& gens);

namespace detail {
inline std::vector<PauliWord> enumerate_group(const PauliRing& ring,
                                              std::uint32_t n,
                                              const std::vector<PauliWord>& gens,
                                              std::size_t limit = 1u << 16) {
    std::vector<PauliWord> elems{PauliWord(n)};
    for (const auto& g : gens) {
        std::vector<PauliWord> next;
        for (const auto& e : elems) {
            PauliWord cur = e;
            for (std::uint32_t t = 0; t < ring.D; ++t) {
                if (t > 0) mul_pow_inplace(ring, cur, g, 1);
                next.push_back(cur);
            }
        }
        std::sort(next.begin(), next.end(),
                  [](const PauliWord& a, const PauliWord& b) {
                      if (a.xz != b.xz) return a.xz < b.xz;
                      return a.phase < b.phase;
                  });
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() > limit)
            throw std::length_error("group enumeration exceeds limit");
        elems = std::move(next);
    }
    return elems;
}
}  // namespace detail

inline DenseQuditState dense_from_generators(
    std::uint32_t n, std::uint32_t d, const std::vector<PauliWord>& gens) {
    PauliRing ring(d);
    auto elems = detail::enumerate_group(ring, n, gens);
    std::size_t dim = 1;
    for (std::uint32_t i = 0; i < n; ++i) dim *= d;
    for (std::size_t ref = 0; ref < dim; ++ref) {
        std::vector<DenseQuditState::Cx> amps(dim, {0, 0});
        amps[ref] = 1.0;
        std::vector<DenseQuditState::Cx> total(dim, {0, 0});
        for (const auto& w : elems) {
            DenseQuditState tmp = DenseQuditState::from_amplitudes(n, d, amps);
            tmp.apply_pauli(ring, w);
            for (std::size_t i = 0; i < dim; ++i) total[i] += tmp.amplitudes()[i];
        }
        double nrm = 0;
        for (const auto& a : total) nrm += std::norm(a);
        if (nrm > 1e-9) return DenseQuditState::from_amplitudes(n, d, total);
    }
    throw std::runtime_error("projector annihilated every basis vector");
}

}  // namespace cvstab
