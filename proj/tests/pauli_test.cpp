#include "cvstab/pauli.hpp"

#include <gtest/gtest.h>

#include <complex>
#include <vector>

#include "cvstab/dense.hpp"
#include "cvstab/rng.hpp"

using namespace cvstab;
using Cx = std::complex<double>;
using Mat = std::vector<std::vector<Cx>>;

namespace {

Mat pauli_matrix(std::uint32_t d, const PauliWord& w) {
    // omega_D^phase X^x Z^z on one qudit
    std::uint32_t D = (d % 2 == 0) ? 2 * d : d;
    auto wD = [&](std::int64_t e) {
        double ang = 2.0 * M_PI * (((e % D) + D) % D) / D;
        return Cx{std::cos(ang), std::sin(ang)};
    };
    Mat m(d, std::vector<Cx>(d, Cx{0, 0}));
    std::uint32_t x = w.x(0), z = w.z(0);
    std::uint32_t r = D / d;
    for (std::uint32_t j = 0; j < d; ++j)
        m[(j + x) % d][j] = wD(w.phase + std::int64_t(r) * z * j);
    return m;
}

Mat mat_mul(const Mat& a, const Mat& b) {
    std::size_t n = a.size();
    Mat c(n, std::vector<Cx>(n, Cx{0, 0}));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

double mat_dist(const Mat& a, const Mat& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
            m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

}  // namespace

TEST(PauliWord, MultiplicationMatchesMatrices) {
    SplitMix64 rng(7);
    for (std::uint32_t d = 2; d <= 9; ++d) {
        PauliRing ring(d);
        for (int iter = 0; iter < 50; ++iter) {
            PauliWord a = make_pauli(ring, 1, 0, rng.below(d), rng.below(d),
                                     rng.below(ring.D));
            PauliWord b = make_pauli(ring, 1, 0, rng.below(d), rng.below(d),
                                     rng.below(ring.D));
            PauliWord ab = word_mul(ring, a, b);
            double dist = mat_dist(mat_mul(pauli_matrix(d, a), pauli_matrix(d, b)),
                                   pauli_matrix(d, ab));
            ASSERT_LT(dist, 1e-9) << "d=" << d;
        }
    }
}

TEST(PauliWord, PowerMatchesRepeatedMultiplication) {
    SplitMix64 rng(11);
    for (std::uint32_t d = 2; d <= 9; ++d) {
        PauliRing ring(d);
        for (int iter = 0; iter < 30; ++iter) {
            PauliWord a = make_pauli(ring, 1, 0, rng.below(d), rng.below(d),
                                     rng.below(ring.D));
            PauliWord acc(1);
            for (std::uint32_t t = 0; t <= 2 * ring.D; ++t) {
                PauliWord p = word_pow(ring, a, t);
                ASSERT_EQ(p, acc) << "d=" << d << " t=" << t;
                acc = word_mul(ring, acc, a);
            }
        }
    }
}

TEST(PauliWord, OrderDividesD) {
    SplitMix64 rng(13);
    for (std::uint32_t d = 2; d <= 12; ++d) {
        PauliRing ring(d);
        for (int iter = 0; iter < 40; ++iter) {
            PauliWord a = make_pauli(ring, 1, 0, rng.below(d), rng.below(d), 0);
            PauliWord p = word_pow(ring, a, ring.D);
            EXPECT_TRUE(p.is_identity()) << "d=" << d;
        }
    }
}

TEST(PauliWord, InverseCancels) {
    SplitMix64 rng(17);
    for (std::uint32_t d : {2u, 3u, 4u, 6u, 8u, 9u, 12u}) {
        PauliRing ring(d);
        for (int iter = 0; iter < 30; ++iter) {
            PauliWord a = make_pauli(ring, 2, rng.below(2), rng.below(d),
                                     rng.below(d), rng.below(ring.D));
            EXPECT_TRUE(word_mul(ring, a, word_inverse(ring, a)).is_identity());
        }
    }
}

TEST(PauliWord, CommutationExponentMatchesMatrices) {
    SplitMix64 rng(19);
    for (std::uint32_t d = 2; d <= 7; ++d) {
        PauliRing ring(d);
        for (int iter = 0; iter < 40; ++iter) {
            PauliWord a = make_pauli(ring, 1, 0, rng.below(d), rng.below(d), 0);
            PauliWord b = make_pauli(ring, 1, 0, rng.below(d), rng.below(d), 0);
            std::uint32_t c = commutation_exponent(ring, a, b);
            // A B = omega^c B A
            Mat ab = mat_mul(pauli_matrix(d, a), pauli_matrix(d, b));
            Mat ba = mat_mul(pauli_matrix(d, b), pauli_matrix(d, a));
            double ang = 2.0 * M_PI * c / d;
            Cx w{std::cos(ang), std::sin(ang)};
            for (auto& row : ba)
                for (auto& v : row) v *= w;
            EXPECT_LT(mat_dist(ab, ba), 1e-9);
        }
    }
}

TEST(PauliRing, PhaseModulusFollowsParity) {
    EXPECT_EQ(PauliRing(2).D, 4u);
    EXPECT_EQ(PauliRing(3).D, 3u);
    EXPECT_EQ(PauliRing(8).D, 16u);
    EXPECT_EQ(PauliRing(9).D, 9u);
    EXPECT_THROW(PauliRing(1), std::invalid_argument);
}
