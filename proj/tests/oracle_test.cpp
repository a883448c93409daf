#include "cvstab/dense.hpp"

#include <gtest/gtest.h>

#include "cvstab/tableau.hpp"
#include "test_util.hpp"

using namespace cvstab;
using Cx = std::complex<double>;

namespace {

DenseQuditState basis_state(std::uint32_t n, std::uint32_t d, std::size_t idx) {
    std::size_t dim = 1;
    for (std::uint32_t i = 0; i < n; ++i) dim *= d;
    std::vector<Cx> amps(dim, Cx{0, 0});
    amps[idx] = 1.0;
    return DenseQuditState::from_amplitudes(n, d, std::move(amps));
}

}  // namespace

TEST(DenseOracle, FourierOnQubitZero) {
    DenseQuditState s(1, 2);
    s.apply_fourier(0);
    EXPECT_NEAR(std::abs(s.amplitudes()[0] - Cx{M_SQRT1_2, 0}), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes()[1] - Cx{M_SQRT1_2, 0}), 0, 1e-12);
}

TEST(DenseOracle, FourierOnEncodedZeroD18) {
    // (|0> + |6> + |12>)/sqrt(3) -> uniform over multiples of 3
    std::vector<Cx> amps(18, Cx{0, 0});
    amps[0] = amps[6] = amps[12] = 1.0;
    auto s = DenseQuditState::from_amplitudes(1, 18, std::move(amps));
    s.apply_fourier(0);
    for (std::uint32_t j = 0; j < 18; ++j) {
        double expect = (j % 3 == 0) ? 1.0 / std::sqrt(6.0) : 0.0;
        EXPECT_NEAR(std::abs(s.amplitudes()[j]), expect, 1e-12) << j;
    }
}

TEST(DenseOracle, FourierUnitaryAndOrderFour) {
    SplitMix64 rng(3);
    for (std::uint32_t d : {2u, 3u, 5u, 8u}) {
        auto ops = testutil::random_circuit(1, d, 10, rng);
        DenseQuditState s(1, d);
        testutil::apply_to_dense(s, ops);
        auto ref = s;
        for (int i = 0; i < 4; ++i) s.apply_fourier(0);
        EXPECT_NEAR(std::abs(overlap(ref, s)), 1.0, 1e-10);
        EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    }
}

TEST(DenseOracle, PhaseGateQubitIsDiagOneI) {
    DenseQuditState s(1, 2);
    s.apply_fourier(0);
    s.apply_phase_gate(0);
    EXPECT_NEAR(std::abs(s.amplitudes()[0] - Cx{M_SQRT1_2, 0}), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes()[1] - Cx{0, M_SQRT1_2}), 0, 1e-12);
}

TEST(DenseOracle, PhaseGateBetaFormIdentity) {
    // eta-convention diagonal equals exp(i pi (j^2 - beta j)/d), beta = d%2.
    for (std::uint32_t d = 2; d <= 12; ++d) {
        DenseQuditState s(1, d);
        std::vector<Cx> uniform(d, Cx{1.0, 0});
        s = DenseQuditState::from_amplitudes(1, d, uniform);
        auto t = s;
        t.apply_phase_gate(0);
        std::uint32_t beta = d % 2;
        for (std::uint32_t j = 0; j < d; ++j) {
            double ang = M_PI * (double(j) * j - double(beta) * j) / d;
            Cx expect = Cx{std::cos(ang), std::sin(ang)} * s.amplitudes()[j];
            EXPECT_NEAR(std::abs(t.amplitudes()[j] - expect), 0, 1e-12)
                << "d=" << d << " j=" << j;
        }
    }
}

TEST(DenseOracle, PhaseGateD3Diagonal) {
    std::vector<Cx> uniform(3, Cx{1.0 / std::sqrt(3.0), 0});
    auto s = DenseQuditState::from_amplitudes(1, 3, uniform);
    s.apply_phase_gate(0);
    Cx w{std::cos(2 * M_PI / 3), std::sin(2 * M_PI / 3)};
    EXPECT_NEAR(std::abs(s.amplitudes()[1] - s.amplitudes()[0]), 0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitudes()[2] - w * s.amplitudes()[0]), 0, 1e-12);
}

TEST(DenseOracle, PhaseGateFourthPowerD4IsZSquared) {
    std::vector<Cx> uniform(4, Cx{0.5, 0});
    auto s = DenseQuditState::from_amplitudes(1, 4, uniform);
    auto t = s;
    for (int i = 0; i < 4; ++i) t.apply_phase_gate(0);
    PauliRing ring(4);
    auto z2 = s;
    z2.apply_pauli(ring, make_pauli(ring, 1, 0, 0, 2));
    EXPECT_NEAR(std::abs(overlap(t, z2)), 1.0, 1e-12);
}

TEST(DenseOracle, SumActsAsControlledShift) {
    for (std::uint32_t d : {2u, 3u, 5u}) {
        for (std::uint32_t i = 0; i < d; ++i) {
            for (std::uint32_t j = 0; j < d; ++j) {
                auto s = basis_state(2, d, i * d + j);
                s.apply_sum(0, 1);
                auto expect = basis_state(2, d, i * d + (i + j) % d);
                EXPECT_NEAR(std::abs(overlap(expect, s)), 1.0, 1e-12);
            }
        }
    }
}

TEST(DenseOracle, MeasureBornRule) {
    std::vector<Cx> amps(8, Cx{0, 0});
    amps[0] = amps[4] = 1.0;
    auto s = DenseQuditState::from_amplitudes(1, 8, std::move(amps));
    auto p = s.measure_probs(0);
    EXPECT_NEAR(p[0], 0.5, 1e-12);
    EXPECT_NEAR(p[4], 0.5, 1e-12);
    EXPECT_NEAR(p[1] + p[2] + p[3] + p[5] + p[6] + p[7], 0.0, 1e-12);
}

TEST(DenseOracle, NormPreservationUnderRandomCircuits) {
    SplitMix64 rng(17);
    for (std::uint32_t d : {2u, 6u, 9u}) {
        auto ops = testutil::random_circuit(2, d, 40, rng);
        DenseQuditState s(2, d);
        testutil::apply_to_dense(s, ops);
        EXPECT_NEAR(s.norm(), 1.0, 1e-10);
    }
}

// Conjugation consistency: the tableau's update rule for each generator gate
// agrees with the dense computation of G P G^dag including the phase.
TEST(DenseOracle, ConjugationConsistency) {
    SplitMix64 rng(19);
    for (std::uint32_t d = 2; d <= 9; ++d) {
        PauliRing ring(d);
        const std::uint32_t n = 2;
        for (int iter = 0; iter < 25; ++iter) {
            PauliWord p = make_pauli(ring, n, 0, rng.below(d), rng.below(d),
                                     rng.below(ring.D));
            p.x(1) = static_cast<std::uint32_t>(rng.below(d));
            p.z(1) = static_cast<std::uint32_t>(rng.below(d));

            // pick a gate
            int which = static_cast<int>(rng.below(4));
            // tableau side: wrap P as the sole generator of a fake tableau
            Tableau t(n, d, {p});
            // dense side: apply G P G^dag column by column via basis states
            std::size_t dim = static_cast<std::size_t>(d) * d;
            std::vector<std::vector<Cx>> got(dim);
            for (std::size_t c = 0; c < dim; ++c) {
                auto v = basis_state(n, d, c);
                switch (which) {
                    case 0: v.apply_fourier(0, true); break;
                    case 1: v.apply_phase_gate(0, -1); break;
                    case 2:
                        for (std::uint32_t r = 0; r < d - 1; ++r)
                            v.apply_sum(0, 1);
                        break;
                    default:
                        v.apply_pauli(ring,
                                      word_inverse(ring, make_pauli(ring, n, 0,
                                                                    1, 1, 0)));
                        break;
                }
                v.apply_pauli(ring, p);
                switch (which) {
                    case 0: v.apply_fourier(0); break;
                    case 1: v.apply_phase_gate(0); break;
                    case 2: v.apply_sum(0, 1); break;
                    default:
                        v.apply_pauli(ring, make_pauli(ring, n, 0, 1, 1, 0));
                        break;
                }
                got[c] = v.amplitudes();
            }
            switch (which) {
                case 0: t.apply_fourier(0); break;
                case 1: t.apply_phase(0); break;
                case 2: t.apply_sum(0, 1); break;
                default:
                    t.apply_pauli(make_pauli(ring, n, 0, 1, 1, 0));
                    break;
            }
            const PauliWord& q = t.generators()[0];
            double maxdev = 0;
            for (std::size_t c = 0; c < dim; ++c) {
                auto v = basis_state(n, d, c);
                v.apply_pauli(ring, q);
                for (std::size_t r0 = 0; r0 < dim; ++r0)
                    maxdev = std::max(maxdev,
                                      std::abs(v.amplitudes()[r0] - got[c][r0]));
            }
            ASSERT_LT(maxdev, 1e-9) << "d=" << d << " gate=" << which;
        }
    }
}

TEST(DenseOracle, DimensionOverflowGuard) {
    EXPECT_THROW(DenseQuditState(8, 12), std::invalid_argument);
}
