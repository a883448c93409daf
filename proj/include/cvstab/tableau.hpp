#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvstab/intmath.hpp"
#include "cvstab/pauli.hpp"
#include "cvstab/rational.hpp"
#include "cvstab/rng.hpp"

namespace cvstab {

// Thrown when a forced measurement outcome lies outside the coset support,
// or when a generator set fails to describe a pure state.
struct ContradictionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result of a computational-basis (Z) measurement. The supported outcomes
// form the coset offset + stride*Z_d, each carrying probability stride/d.
struct MeasurementRecord {
    std::uint32_t qudit = 0;
    std::uint32_t outcome = 0;
    std::uint32_t offset = 0;  // in [0, stride)
    std::uint32_t stride = 1;  // divides d
    Rational probability{1, 1};

    std::uint32_t support_size(std::uint32_t d) const { return d / stride; }
    bool supports(std::uint32_t j) const { return j % stride == offset; }
};

namespace detail {

// One Howell pivoting pass over the given column order. Rows are Pauli words
// from a mutually commuting set; all row operations are group operations, so
// phases stay consistent. Returns echelon rows (one pivot per column, pivot
// value dividing d, entries above a pivot reduced below it) and leaves in
// `rows` the residual generators with zeros in every processed column.
struct HowellResult {
    std::vector<PauliWord> echelon;
    std::vector<std::uint32_t> pivot_cols;
};

inline HowellResult howell_pass(const PauliRing& ring,
                                std::vector<PauliWord>& rows,
                                const std::vector<std::uint32_t>& cols) {
    const std::uint32_t d = ring.d;
    HowellResult res;
    for (std::uint32_t c : cols) {
        std::optional<std::size_t> pivot_idx;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].xz[c] == 0) continue;
            if (!pivot_idx) {
                pivot_idx = i;
                continue;
            }
            PauliWord& piv = rows[*pivot_idx];
            PauliWord& row = rows[i];
            const std::uint32_t alpha = piv.xz[c], beta = row.xz[c];
            if (beta % alpha == 0) {
                mul_pow_inplace(ring, row, piv,
                                mod_u32(-std::int64_t(beta / alpha), ring.D));
            } else {
                auto e = ext_gcd(alpha, beta);
                PauliWord new_piv = word_pow(ring, piv, e.s);
                mul_pow_inplace(ring, new_piv, row, mod_u32(e.t, ring.D));
                PauliWord new_row =
                    word_pow(ring, piv, -std::int64_t(beta / e.g));
                mul_pow_inplace(ring, new_row, row,
                                mod_u32(std::int64_t(alpha / e.g), ring.D));
                piv = std::move(new_piv);
                row = std::move(new_row);
            }
        }
        if (!pivot_idx) continue;
        PauliWord piv = std::move(rows[*pivot_idx]);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(*pivot_idx));
        // scale by a unit so the pivot value is gcd(value, d); a unit power
        // generates the same cyclic subgroup.
        std::uint32_t u = unit_multiplier(piv.xz[c], d);
        if (u != 1) piv = word_pow(ring, piv, u);
        const std::uint32_t g = piv.xz[c];
        if (d % g != 0)
            throw std::logic_error("howell: pivot does not divide d");
        PauliWord ann = word_pow(ring, piv, d / g);
        if (!ann.exponents_zero()) {
            rows.push_back(std::move(ann));
        } else if (ann.phase != 0) {
            throw ContradictionError(
                "generators do not describe a pure stabilizer state");
        }
        res.echelon.push_back(std::move(piv));
        res.pivot_cols.push_back(c);
    }
    // reduce entries above each pivot into [0, pivot value)
    for (std::size_t i = 0; i < res.echelon.size(); ++i) {
        const std::uint32_t c = res.pivot_cols[i];
        const std::uint32_t g = res.echelon[i].xz[c];
        for (std::size_t j = 0; j < i; ++j) {
            const std::uint32_t v = res.echelon[j].xz[c];
            const std::uint32_t q = v / g;
            if (q)
                mul_pow_inplace(ring, res.echelon[j], res.echelon[i],
                                mod_u32(-std::int64_t(q), ring.D));
        }
    }
    return res;
}

inline void check_residual_identity(const std::vector<PauliWord>& rows) {
    for (const auto& w : rows) {
        if (!w.exponents_zero() || w.phase != 0)
            throw ContradictionError(
                "generators do not describe a pure stabilizer state");
    }
}

}  // namespace detail

// Stabilizer tableau for n qudits of arbitrary dimension d >= 2. Generators
// are mutually commuting Pauli words; composite d may need up to 2n of them.
// Canonical form is the Howell form of the exponent matrix (x block, then z
// block), which is unique for a given stabilizer group.
class Tableau {
  public:
    Tableau(std::uint32_t n, std::uint32_t d, std::vector<PauliWord> gens)
        : ring_(d), n_(n), gens_(std::move(gens)) {
        if (n == 0) throw std::invalid_argument("need at least one qudit");
        for (const auto& g : gens_)
            if (g.n != n_) throw std::invalid_argument("generator arity mismatch");
    }

    static Tableau zero_state(std::uint32_t n, std::uint32_t d) {
        PauliRing ring(d);
        std::vector<PauliWord> gens;
        gens.reserve(n);
        for (std::uint32_t k = 0; k < n; ++k)
            gens.push_back(make_pauli(ring, n, k, 0, 1));
        Tableau t(n, d, std::move(gens));
        t.canonical_ = true;
        return t;
    }

    // Single qudit in the uniform superposition over offset + stride*Z_d
    // (stride | d): stabilized by X^stride and the phased Z^{d/stride}.
    static Tableau coset_superposition(std::uint32_t d, std::uint32_t offset,
                                       std::uint32_t stride) {
        PauliRing ring(d);
        if (stride == 0 || d % stride != 0)
            throw std::invalid_argument("coset stride must divide d");
        std::vector<PauliWord> gens;
        const std::uint32_t zexp = d / stride;
        if (stride < d) gens.push_back(make_pauli(ring, 1, 0, stride, 0));
        if (zexp < d) {
            // phase chosen so the generator has +1 eigenvalue on the coset
            const std::int64_t ph = -std::int64_t(ring.r) *
                                    std::int64_t(zexp) *
                                    std::int64_t(offset % d);
            gens.push_back(make_pauli(ring, 1, 0, 0, zexp, ph));
        }
        Tableau t(1, d, std::move(gens));
        t.canonicalize();
        return t;
    }

    std::uint32_t n_qudits() const { return n_; }
    std::uint32_t dim() const { return ring_.d; }
    const PauliRing& ring() const { return ring_; }
    const std::vector<PauliWord>& generators() const { return gens_; }

    // --- Clifford gates (conjugation action on every generator) ---

    // F: X -> Z, Z -> X^{-1};  F X^x Z^z F^dag = omega_d^{-xz} X^{-z} Z^x.
    void apply_fourier(std::uint32_t k) {
        check_index(k);
        for (auto& w : gens_) fourier_once(w, k, /*inverse=*/false);
        canonical_ = false;
    }
    void apply_fourier_inv(std::uint32_t k) {
        check_index(k);
        for (auto& w : gens_) fourier_once(w, k, /*inverse=*/true);
        canonical_ = false;
    }

    // S^e: X^x Z^z -> (phase) X^x Z^{z+ex}; the phase increment per step is
    // x^2 in Z_{2d} for even d and x(x-1)/2 in Z_d for odd d.
    void apply_phase_power(std::uint32_t k, std::int64_t e) {
        check_index(k);
        const std::uint32_t d = ring_.d, D = ring_.D;
        const std::uint32_t em = mod_u32(e, D);
        if (em == 0) return;
        for (auto& w : gens_) {
            const std::uint32_t x = w.x(k);
            if (x != 0) {
                std::uint64_t dp;
                if (d % 2 == 0)
                    dp = std::uint64_t(em) * (std::uint64_t(x) * x % D) % D;
                else
                    dp = std::uint64_t(em) *
                         ((std::uint64_t(x) * (x - 1) / 2) % d) % d;
                w.phase = static_cast<std::uint32_t>((w.phase + dp) % D);
                w.z(k) = ring_.fd.add(w.z(k),
                                      ring_.fd.mul(x, static_cast<std::uint32_t>(
                                                          em % d)));
            }
        }
        canonical_ = false;
    }
    void apply_phase(std::uint32_t k) { apply_phase_power(k, 1); }

    // SUM (control c, target t): X_c -> X_c X_t, Z_t -> Z_t Z_c^{-1};
    // exponent map (xc,zc,xt,zt) -> (xc, zc-zt, xc+xt, zt), no phase.
    void apply_sum(std::uint32_t c, std::uint32_t t) {
        check_index(c);
        check_index(t);
        if (c == t) throw std::invalid_argument("SUM needs distinct qudits");
        const FastMod& fd = ring_.fd;
        for (auto& w : gens_) {
            w.z(c) = fd.sub(w.z(c), w.z(t));
            w.x(t) = fd.add(w.x(t), w.x(c));
        }
        canonical_ = false;
    }

    // Conjugation by a Pauli only rotates generator phases.
    void apply_pauli(const PauliWord& p) {
        if (p.n != n_) throw std::invalid_argument("pauli arity mismatch");
        const std::uint32_t d = ring_.d, D = ring_.D, r = ring_.r;
        for (auto& w : gens_) {
            std::uint64_t acc = 0;
            for (std::uint32_t k = 0; k < n_; ++k) {
                acc += std::uint64_t(p.z(k)) * w.x(k) % d;
                acc += d - std::uint64_t(p.x(k)) * w.z(k) % d;
            }
            w.phase = static_cast<std::uint32_t>(
                (w.phase + std::uint64_t(r) * (acc % d)) % D);
        }
        canonical_ = false;
    }

    void apply_xpow(std::uint32_t k, std::int64_t e) {
        apply_pauli(make_pauli(ring_, n_, k, e, 0));
    }
    void apply_zpow(std::uint32_t k, std::int64_t e) {
        apply_pauli(make_pauli(ring_, n_, k, 0, e));
    }

    // --- Canonical form and equality ---

    void canonicalize() {
        if (canonical_) return;
        std::vector<std::uint32_t> cols(2 * n_);
        std::iota(cols.begin(), cols.end(), 0);
        auto rows = gens_;
        auto res = detail::howell_pass(ring_, rows, cols);
        detail::check_residual_identity(rows);
        gens_ = std::move(res.echelon);
        canonical_ = true;
    }

    friend bool states_equal(const Tableau& a, const Tableau& b) {
        if (a.n_ != b.n_ || a.ring_ != b.ring_)
            throw std::invalid_argument("states_equal: ring mismatch");
        Tableau ca = a, cb = b;
        ca.canonicalize();
        cb.canonicalize();
        return ca.gens_ == cb.gens_;
    }

    // --- Measurement ---

    // Support stride = gcd(d, X exponents on qudit k over the group); the
    // offset comes from the phase of the pure-Z_k subgroup element. Cited
    // method; the contract is pinned by the dense oracle tests.
    MeasurementRecord measure_z(std::uint32_t k, SplitMix64& rng) {
        return measure_impl(k, &rng, std::nullopt);
    }
    MeasurementRecord measure_z_forced(std::uint32_t k, std::uint32_t outcome) {
        return measure_impl(k, nullptr, outcome);
    }

    struct TerminalMeasurement {
        std::vector<MeasurementRecord> records;
        std::vector<std::uint32_t> joint_offset;        // one valid outcome
        std::vector<std::vector<std::uint32_t>> basis;  // x-parts spanning L
        std::uint32_t d = 2;

        bool joint_supported(const std::vector<std::uint32_t>& j) const;
        std::vector<std::vector<std::uint32_t>> enumerate_support(
            std::size_t limit) const;
    };

    // Joint terminal measurement of every qudit: the outcome distribution is
    // uniform over an affine coset j0 + L of Z_d^n, with L spanned by the
    // generators' X parts. Does not collapse the tableau (callers discard it
    // after a terminal measurement round).
    TerminalMeasurement measure_all(SplitMix64& rng) const;

    // Remove a qudit whose stabilizer contains a full-order pure-Z pin (i.e.
    // it is in a basis state and unentangled), e.g. a measured ancilla.
    void discard_pinned(std::uint32_t k);

    // --- Serialization ---

    std::string serialize() const {
        Tableau c = *this;
        c.canonicalize();
        std::ostringstream os;
        os << "tableau d=" << ring_.d << " n=" << n_ << "\n";
        for (const auto& g : c.gens_) {
            os << g.phase << " |";
            for (std::uint32_t k = 0; k < n_; ++k) os << ' ' << g.x(k);
            os << " |";
            for (std::uint32_t k = 0; k < n_; ++k) os << ' ' << g.z(k);
            os << "\n";
        }
        return os.str();
    }

    static Tableau deserialize(const std::string& text);

    bool generators_mutually_commute() const {
        for (std::size_t i = 0; i < gens_.size(); ++i)
            for (std::size_t j = i + 1; j < gens_.size(); ++j)
                if (!words_commute(ring_, gens_[i], gens_[j])) return false;
        return true;
    }

  private:
    void check_index(std::uint32_t k) const {
        if (k >= n_) throw std::out_of_range("qudit index out of range");
    }

    void fourier_once(PauliWord& w, std::uint32_t k, bool inverse) {
        const std::uint32_t x = w.x(k), z = w.z(k);
        const std::uint32_t d = ring_.d;
        const std::uint32_t xz = ring_.fd.mul(x, z);
        // both directions pick up omega_d^{-xz}
        w.phase = static_cast<std::uint32_t>(
            (w.phase + std::uint64_t(ring_.r) * (xz ? d - xz : 0)) % ring_.D);
        if (!inverse) {
            w.x(k) = ring_.fd.neg(z);
            w.z(k) = x;
        } else {
            w.x(k) = z;
            w.z(k) = ring_.fd.neg(x);
        }
    }

    MeasurementRecord measure_impl(std::uint32_t k, SplitMix64* rng,
                                   std::optional<std::uint32_t> forced);

    PauliRing ring_;
    std::uint32_t n_;
    std::vector<PauliWord> gens_;
    bool canonical_ = false;
};

inline MeasurementRecord Tableau::measure_impl(
    std::uint32_t k, SplitMix64* rng, std::optional<std::uint32_t> forced) {
    check_index(k);
    const std::uint32_t d = ring_.d;
    std::uint32_t gamma = d;
    for (const auto& g : gens_) gamma = std::gcd(gamma, g.x(k));
    if (gamma == 0) gamma = d;

    // Pure-Z_k element: Howell-reduce a copy with column z_k ordered last;
    // the row pivoting there (if any) is supported on z_k alone.
    std::vector<std::uint32_t> cols;
    cols.reserve(2 * n_);
    for (std::uint32_t c = 0; c < n_; ++c) cols.push_back(c);
    for (std::uint32_t c = 0; c < n_; ++c)
        if (c != k) cols.push_back(n_ + c);
    cols.push_back(n_ + k);
    auto rows = gens_;
    auto res = detail::howell_pass(ring_, rows, cols);
    detail::check_residual_identity(rows);

    std::uint32_t offset = 0;
    for (std::size_t i = 0; i < res.echelon.size(); ++i) {
        if (res.pivot_cols[i] != n_ + k) continue;
        const PauliWord& h = res.echelon[i];
        const std::uint32_t e = h.z(k);
        if (e != d / gamma)
            throw std::logic_error("measure: inconsistent support stride");
        if (h.phase % ring_.r != 0)
            throw ContradictionError("measure: non-real pure-Z phase");
        const std::uint32_t v = h.phase / ring_.r;
        if (v % e != 0)
            throw ContradictionError("measure: unsatisfiable Z constraint");
        offset = mod_u32(-std::int64_t(v / e), gamma);
    }

    std::uint32_t outcome;
    if (forced) {
        if (*forced >= d || *forced % gamma != offset)
            throw ContradictionError("forced outcome outside support");
        outcome = *forced;
    } else {
        outcome = offset +
                  gamma * static_cast<std::uint32_t>(rng->below(d / gamma));
    }

    if (gamma < d) {
        // Collapse: concentrate the X weight on qudit k into one generator,
        // replace it by its (d/gamma)-th power, and pin the outcome.
        std::optional<std::size_t> star;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].x(k) == 0) continue;
            if (!star) {
                star = i;
                continue;
            }
            PauliWord& piv = gens_[*star];
            PauliWord& row = gens_[i];
            const std::uint32_t alpha = piv.x(k), beta = row.x(k);
            if (beta % alpha == 0) {
                mul_pow_inplace(ring_, row, piv,
                                mod_u32(-std::int64_t(beta / alpha), ring_.D));
            } else {
                auto e = ext_gcd(alpha, beta);
                PauliWord np = word_pow(ring_, piv, e.s);
                mul_pow_inplace(ring_, np, row, mod_u32(e.t, ring_.D));
                PauliWord nr = word_pow(ring_, piv, -std::int64_t(beta / e.g));
                mul_pow_inplace(ring_, nr, row,
                                mod_u32(std::int64_t(alpha / e.g), ring_.D));
                piv = std::move(np);
                row = std::move(nr);
            }
        }
        PauliWord kept = word_pow(ring_, gens_[*star], d / std::gcd(gens_[*star].x(k), d));
        gens_.erase(gens_.begin() + static_cast<std::ptrdiff_t>(*star));
        if (!kept.exponents_zero())
            gens_.push_back(std::move(kept));
        else if (kept.phase != 0)
            throw ContradictionError("measure: inconsistent generators");
        gens_.push_back(make_pauli(ring_, n_, k, 0, 1,
                                   -std::int64_t(ring_.r) * outcome));
        canonical_ = false;
        canonicalize();
    }

    MeasurementRecord rec;
    rec.qudit = k;
    rec.outcome = outcome;
    rec.offset = offset;
    rec.stride = gamma;
    rec.probability = Rational(gamma, d);
    return rec;
}

inline Tableau::TerminalMeasurement Tableau::measure_all(
    SplitMix64& rng) const {
    const std::uint32_t d = ring_.d;
    TerminalMeasurement out;
    out.d = d;

    std::vector<std::uint32_t> xcols(n_);
    std::iota(xcols.begin(), xcols.end(), 0);
    auto rows = gens_;
    auto xres = detail::howell_pass(ring_, rows, xcols);
    // `rows` now spans the pure-Z subgroup; reduce it over the z block.
    std::vector<std::uint32_t> zcols(n_);
    std::iota(zcols.begin(), zcols.end(), n_);
    auto zres = detail::howell_pass(ring_, rows, zcols);
    detail::check_residual_identity(rows);

    std::vector<std::uint32_t> j0(n_, 0);
    for (std::size_t i = zres.echelon.size(); i-- > 0;) {
        const PauliWord& row = zres.echelon[i];
        const std::uint32_t c = zres.pivot_cols[i] - n_;
        const std::uint32_t g = row.z(c);
        if (row.phase % ring_.r != 0)
            throw ContradictionError("measure: non-real pure-Z phase");
        std::int64_t rhs = -std::int64_t(row.phase / ring_.r);
        for (std::uint32_t c2 = c + 1; c2 < n_; ++c2)
            rhs -= std::int64_t(row.z(c2)) * j0[c2];
        const std::uint32_t rhsm = mod_u32(rhs, d);
        if (rhsm % g != 0)
            throw ContradictionError("measure: unsatisfiable Z constraint");
        j0[c] = (rhsm / g) % (d / g);
    }

    out.joint_offset = j0;
    for (const auto& p : xres.echelon) {
        std::vector<std::uint32_t> xs(n_);
        for (std::uint32_t k = 0; k < n_; ++k) xs[k] = p.x(k);
        out.basis.push_back(std::move(xs));
    }

    std::vector<std::uint32_t> sample = j0;
    for (const auto& b : out.basis) {
        const std::uint32_t c = static_cast<std::uint32_t>(rng.below(d));
        if (c == 0) continue;
        for (std::uint32_t k = 0; k < n_; ++k)
            sample[k] = static_cast<std::uint32_t>(
                (sample[k] + std::uint64_t(c) * b[k]) % d);
    }

    out.records.resize(n_);
    for (std::uint32_t k = 0; k < n_; ++k) {
        std::uint32_t gamma = d;
        for (const auto& b : out.basis) gamma = std::gcd(gamma, b[k]);
        if (gamma == 0) gamma = d;
        MeasurementRecord rec;
        rec.qudit = k;
        rec.outcome = sample[k];
        rec.stride = gamma;
        rec.offset = j0[k] % gamma;
        rec.probability = Rational(gamma, d);
        out.records[k] = rec;
    }
    return out;
}

inline bool Tableau::TerminalMeasurement::joint_supported(
    const std::vector<std::uint32_t>& j) const {
    // Solve j - j0 in span(basis) over Z_d by Howell-style elimination.
    std::vector<std::uint32_t> target(j.size());
    for (std::size_t k = 0; k < j.size(); ++k)
        target[k] = mod_u32(std::int64_t(j[k]) - joint_offset[k], d);
    std::vector<std::vector<std::uint32_t>> rows = basis;
    for (std::size_t c = 0; c < target.size(); ++c) {
        std::size_t piv = SIZE_MAX;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            if (piv == SIZE_MAX) {
                piv = i;
                continue;
            }
            auto e = ext_gcd(rows[piv][c], rows[i][c]);
            std::vector<std::uint32_t> np(target.size()), nr(target.size());
            for (std::size_t k = 0; k < target.size(); ++k) {
                np[k] = mod_u32(e.s * rows[piv][k] + e.t * rows[i][k], d);
                nr[k] = mod_u32(-std::int64_t(rows[i][c] / e.g) * rows[piv][k] +
                                    std::int64_t(rows[piv][c] / e.g) * rows[i][k],
                                d);
            }
            rows[piv] = np;
            rows[i] = nr;
        }
        if (piv == SIZE_MAX) {
            if (target[c] != 0) return false;
            continue;
        }
        const std::uint32_t g = std::gcd(rows[piv][c], d);
        if (target[c] % g != 0) return false;
        // choose multiplier m with m*rows[piv][c] == target[c] (mod d)
        auto e = ext_gcd(rows[piv][c], d);
        const std::uint32_t m =
            mod_u32(e.s * std::int64_t(target[c] / g), d);
        for (std::size_t k = 0; k < target.size(); ++k)
            target[k] = mod_u32(std::int64_t(target[k]) -
                                    std::int64_t(m) * rows[piv][k],
                                d);
        // add annihilator of the pivot row for later columns
        const std::uint32_t ordmul = d / g;
        std::vector<std::uint32_t> ann(target.size());
        for (std::size_t k = 0; k < target.size(); ++k)
            ann[k] = static_cast<std::uint32_t>(
                std::uint64_t(ordmul) * rows[piv][k] % d);
        rows[piv] = ann;
    }
    for (auto v : target)
        if (v != 0) return false;
    return true;
}

inline std::vector<std::vector<std::uint32_t>>
Tableau::TerminalMeasurement::enumerate_support(std::size_t limit) const {
    std::vector<std::vector<std::uint32_t>> out{joint_offset};
    for (const auto& b : basis) {
        std::vector<std::vector<std::uint32_t>> next;
        for (const auto& base : out) {
            for (std::uint32_t c = 0; c < d; ++c) {
                std::vector<std::uint32_t> v(base.size());
                for (std::size_t k = 0; k < base.size(); ++k)
                    v[k] = static_cast<std::uint32_t>(
                        (base[k] + std::uint64_t(c) * b[k]) % d);
                next.push_back(std::move(v));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() > limit)
            throw std::length_error("support enumeration exceeds limit");
        out = std::move(next);
    }
    return out;
}

inline void Tableau::discard_pinned(std::uint32_t k) {
    check_index(k);
    canonicalize();
    std::vector<PauliWord> kept;
    bool saw_pin = false;
    for (const auto& g : gens_) {
        if (g.x(k) == 0 && g.z(k) == 0) {
            PauliWord w(n_ - 1);
            w.phase = g.phase;
            for (std::uint32_t q = 0, q2 = 0; q < n_; ++q) {
                if (q == k) continue;
                w.x(q2) = g.x(q);
                w.z(q2) = g.z(q);
                ++q2;
            }
            kept.push_back(std::move(w));
            continue;
        }
        // must be the full-order pure-Z pin of qudit k
        bool pure = g.x(k) == 0 && g.z(k) == 1;
        for (std::uint32_t q = 0; pure && q < n_; ++q)
            if (q != k && (g.x(q) != 0 || g.z(q) != 0)) pure = false;
        if (!pure)
            throw std::invalid_argument(
                "discard_pinned: qudit is not in an unentangled basis state");
        saw_pin = true;
    }
    if (!saw_pin)
        throw std::invalid_argument(
            "discard_pinned: qudit is not in an unentangled basis state");
    n_ -= 1;
    gens_ = std::move(kept);
    canonical_ = false;
    canonicalize();
}

inline Tableau Tableau::deserialize(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    is >> word;
    if (word != "tableau") throw std::invalid_argument("bad tableau header");
    std::uint32_t d = 0, n = 0;
    is >> word;
    if (word.rfind("d=", 0) != 0) throw std::invalid_argument("bad tableau header");
    d = static_cast<std::uint32_t>(std::stoul(word.substr(2)));
    is >> word;
    if (word.rfind("n=", 0) != 0) throw std::invalid_argument("bad tableau header");
    n = static_cast<std::uint32_t>(std::stoul(word.substr(2)));
    PauliRing ring(d);
    std::vector<PauliWord> gens;
    std::string line;
    std::getline(is, line);
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        for (auto& ch : line)
            if (ch == '|') ch = ' ';
        std::istringstream ls(line);
        PauliWord w(n);
        std::int64_t v;
        if (!(ls >> v)) throw std::invalid_argument("bad tableau row");
        w.phase = mod_u32(v, ring.D);
        for (std::uint32_t k = 0; k < 2 * n; ++k) {
            if (!(ls >> v)) throw std::invalid_argument("bad tableau row");
            w.xz[k] = mod_u32(v, ring.d);
        }
        gens.push_back(std::move(w));
    }
    return Tableau(n, d, std::move(gens));
}

}  // namespace cvstab
