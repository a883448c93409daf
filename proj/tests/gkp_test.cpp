#include "cvstab/gkp.hpp"

#include <gtest/gtest.h>

#include "cvstab/dense.hpp"
#include "test_util.hpp"

using namespace cvstab;

namespace {

CvCircuit gkp_circuit(std::uint32_t d1, std::vector<GkpGate> gates,
                      std::uint32_t n_modes = 1) {
    CvCircuit c;
    c.family = CodeFamily::Gkp;
    c.d1 = d1;
    c.n_modes = n_modes;
    c.inputs.assign(n_modes, 0);
    c.gkp_gates = std::move(gates);
    return c;
}

GkpGate dispq(std::uint32_t mode, Rational t) {
    return {GkpGate::Kind::DispQ, mode, 0, t, "", 1};
}
GkpGate dispp(std::uint32_t mode, Rational t) {
    return {GkpGate::Kind::DispP, mode, 0, t, "", 1};
}
GkpGate shear(std::uint32_t mode) {
    return {GkpGate::Kind::Shear, mode, 0, Rational(0), "", 1};
}
GkpGate fourier(std::uint32_t mode) {
    return {GkpGate::Kind::Fourier, mode, 0, Rational(0), "", 1};
}
GkpGate cz(std::uint32_t a, std::uint32_t b) {
    return {GkpGate::Kind::CZ, a, b, Rational(0), "", 1};
}
GkpGate homodyne(std::uint32_t mode) {
    return {GkpGate::Kind::HomodyneQ, mode, 0, Rational(0), "", 1};
}

}  // namespace

TEST(GkpResolver, HalfDisplacementNeedsDimensionEight) {
    auto c = gkp_circuit(2, {dispq(0, Rational(1, 2)), homodyne(0)});
    auto plan = resolve_embedding(c);
    EXPECT_EQ(plan.A, 2u);
    EXPECT_EQ(plan.d2, 8u);
    EXPECT_FALSE(plan.parity_fix);
}

TEST(GkpResolver, IntegerCircuitStaysQubit) {
    auto c = gkp_circuit(
        2, {fourier(0), dispq(0, Rational(3)), dispp(0, Rational(-2)),
            homodyne(0)});
    auto plan = resolve_embedding(c);
    EXPECT_EQ(plan.A, 1u);
    EXPECT_EQ(plan.d2, 2u);
}

TEST(GkpResolver, ShearForcesEvenDimension) {
    auto c = gkp_circuit(3, {shear(0)});
    auto plan = resolve_embedding(c);
    EXPECT_TRUE(plan.parity_fix);
    EXPECT_EQ(plan.A, 2u);
    EXPECT_EQ(plan.d2, 12u);

    auto even = gkp_circuit(2, {shear(0), dispq(0, Rational(1, 2))});
    auto plan2 = resolve_embedding(even);
    EXPECT_FALSE(plan2.parity_fix);
    EXPECT_EQ(plan2.d2, 8u);
}

TEST(GkpResolver, RejectsNonClifford) {
    auto c = gkp_circuit(2, {GkpGate{GkpGate::Kind::NonClifford, 0, 0,
                                     Rational(0), "tgate (quartic)", 3}});
    try {
        resolve_embedding(c);
        FAIL() << "expected rejection";
    } catch (const NonCliffordError& e) {
        EXPECT_EQ(e.gate_label, "tgate (quartic)");
        EXPECT_EQ(e.line, 3);
    }
}

TEST(GkpCompiler, DisplacementExponents) {
    GkpEmbeddingPlan plan{2, 2, 8, false};
    auto zs = compile_gate(plan, dispp(0, Rational(1, 2)));
    ASSERT_EQ(zs.size(), 1u);
    EXPECT_EQ(zs[0].kind, Instruction::Kind::PauliPow);
    EXPECT_EQ(zs[0].zexp, 1);  // exp(i q sqrt(2pi/8)) = Z_8
    EXPECT_EQ(zs[0].xexp, 0);

    auto xs = compile_gate(plan, dispq(0, Rational(1, 2)));
    ASSERT_EQ(xs.size(), 1u);
    EXPECT_EQ(xs[0].xexp, 1);
    EXPECT_EQ(xs[0].zexp, 0);

    auto x3 = compile_gate(plan, dispq(0, Rational(-3, 2)));
    EXPECT_EQ(x3[0].xexp, -3);

    EXPECT_THROW(compile_gate(plan, dispq(0, Rational(1, 3))),
                 std::invalid_argument);
}

TEST(GkpCompiler, FixedGates) {
    GkpEmbeddingPlan plan{2, 2, 8, false};
    EXPECT_EQ(compile_gate(plan, fourier(0))[0].kind,
              Instruction::Kind::Fourier);
    EXPECT_EQ(compile_gate(plan, shear(0))[0].kind,
              Instruction::Kind::PhasePow);
    auto czp = compile_gate(plan, cz(0, 1));
    ASSERT_EQ(czp.size(), 3u);
    EXPECT_EQ(czp[0].kind, Instruction::Kind::FourierInv);
    EXPECT_EQ(czp[1].kind, Instruction::Kind::Sum);
    EXPECT_EQ(czp[2].kind, Instruction::Kind::Fourier);
    EXPECT_EQ(compile_gate(plan, homodyne(0))[0].kind,
              Instruction::Kind::Measure);
}

TEST(GkpCompiler, CzMacroMatchesDenseControlledZ) {
    for (std::uint32_t d : {2u, 3u, 5u, 8u}) {
        SplitMix64 rng(d);
        auto ops = testutil::random_circuit(2, d, 12, rng);
        DenseQuditState a(2, d), b(2, d);
        testutil::apply_to_dense(a, ops);
        testutil::apply_to_dense(b, ops);
        a.apply_fourier(1, true);
        a.apply_sum(0, 1);
        a.apply_fourier(1);
        b.apply_cz(0, 1);
        EXPECT_NEAR(std::abs(overlap(a, b)), 1.0, 1e-10) << "d=" << d;
    }
}

TEST(GkpCompiler, ShearDiagonalPhasesMatchPeaks) {
    // exp(i q^2/2) evaluated at q = sqrt(2pi/8) j equals the S_8 diagonal.
    DenseQuditState s(1, 8);
    std::vector<std::complex<double>> uniform(8, {1.0, 0});
    s = DenseQuditState::from_amplitudes(1, 8, uniform);
    auto t = s;
    t.apply_phase_gate(0);
    for (std::uint32_t j = 0; j < 8; ++j) {
        double q = std::sqrt(2.0 * M_PI / 8) * j;
        double ang = q * q / 2.0;
        std::complex<double> expect{std::cos(ang), std::sin(ang)};
        EXPECT_NEAR(std::abs(t.amplitudes()[j] / s.amplitudes()[j] - expect), 0,
                    1e-12)
            << j;
    }
}

TEST(Gkp, LatticePhaseConsistency) {
    // Compiled diagonal gates must assign the same phase (mod 2pi) to every
    // peak q = sqrt(2pi/d2)(j + d2 s) of a class, s in {-2..2}.
    for (std::uint32_t d2 : {2u, 8u, 12u, 18u}) {
        const double unit = std::sqrt(2.0 * M_PI / d2);
        for (std::uint32_t j = 0; j < d2; ++j) {
            auto wrap = [](double ang) {
                double t = std::fmod(ang, 2.0 * M_PI);
                if (t < 0) t += 2.0 * M_PI;
                return t;
            };
            // shear (even d2 only, plan guarantees it)
            if (d2 % 2 == 0) {
                double ref = wrap(unit * j * unit * j / 2.0);
                for (int s = -2; s <= 2; ++s) {
                    double q = unit * (j + double(d2) * s);
                    double dev = std::abs(wrap(q * q / 2.0) - ref);
                    dev = std::min(dev, 2 * M_PI - dev);
                    EXPECT_LT(dev, 1e-9) << "shear d2=" << d2;
                }
            }
            // momentum kick Z^k: exp(i k sqrt(2pi/d2) q)
            for (std::uint32_t k = 1; k <= 2; ++k) {
                double ref = wrap(k * unit * unit * j);
                for (int s = -2; s <= 2; ++s) {
                    double q = unit * (j + double(d2) * s);
                    double dev = std::abs(wrap(k * unit * q) - ref);
                    dev = std::min(dev, 2 * M_PI - dev);
                    EXPECT_LT(dev, 1e-9) << "kick d2=" << d2;
                }
            }
            // CZ: exp(i q1 q2) over both classes
            for (std::uint32_t l = 0; l < std::min(d2, 4u); ++l) {
                double ref = wrap(unit * j * unit * l);
                for (int s = -2; s <= 2; ++s) {
                    for (int t2 = -2; t2 <= 2; ++t2) {
                        double q1 = unit * (j + double(d2) * s);
                        double q2 = unit * (l + double(d2) * t2);
                        double dev = std::abs(wrap(q1 * q2) - ref);
                        dev = std::min(dev, 2 * M_PI - dev);
                        EXPECT_LT(dev, 1e-9) << "cz d2=" << d2;
                    }
                }
            }
        }
    }
}

TEST(Gkp, OddShearPeakPhasesNeedOffset) {
    // In odd d2 the bare shear phase is s-dependent; the c-shifted variant
    // exp(i(q^2 - 2cq)/2) with c = sqrt(pi/(2 d2)) restores s-independence
    // and equals the odd-d phase-gate diagonal.
    const std::uint32_t d2 = 9;
    const double unit = std::sqrt(2.0 * M_PI / d2);
    const double c = std::sqrt(M_PI / (2.0 * d2));
    bool bare_consistent = true;
    for (std::uint32_t j = 0; j < d2 && bare_consistent; ++j) {
        double ref = std::fmod(unit * j * unit * j / 2.0, 2 * M_PI);
        double q = unit * (j + d2);
        double dev = std::remainder(q * q / 2.0 - ref, 2 * M_PI);
        if (std::abs(dev) > 1e-9) bare_consistent = false;
    }
    EXPECT_FALSE(bare_consistent);
    for (std::uint32_t j = 0; j < d2; ++j) {
        double expect = M_PI * (double(j) * j - j) / d2;  // beta = 1 diagonal
        for (int s = -2; s <= 2; ++s) {
            double q = unit * (j + double(d2) * s);
            double ang = (q * q - 2 * c * q) / 2.0;
            double dev = std::remainder(ang - expect, 2 * M_PI);
            EXPECT_LT(std::abs(dev), 1e-9) << "j=" << j << " s=" << s;
        }
    }
}

TEST(Gkp, HomodyneDecode) {
    GkpEmbeddingPlan plan{2, 2, 8, false};
    auto d4 = homodyne_outcome_decode(plan, 4);
    ASSERT_TRUE(d4.logical.has_value());
    EXPECT_EQ(*d4.logical, 0u);
    auto d1v = homodyne_outcome_decode(plan, 1);
    EXPECT_FALSE(d1v.logical.has_value());

    GkpEmbeddingPlan bare{2, 1, 2, false};
    auto b1 = homodyne_outcome_decode(bare, 1);
    ASSERT_TRUE(b1.logical.has_value());
    EXPECT_EQ(*b1.logical, 1u);
}

TEST(Gkp, FractionalDisplacementPipeline) {
    // |0_2>, dispq 1/2, homodyne -> d2=8, support {1,5} each 1/2, non-logical.
    auto c = gkp_circuit(2, {dispq(0, Rational(1, 2)), homodyne(0)});
    auto plan = resolve_embedding(c);
    ASSERT_EQ(plan.d2, 8u);
    auto prog = compile_circuit(plan, c);
    auto init = encode_basis_state(plan.params(), 0);
    ExecOptions opts;
    opts.seed = 7;
    auto res = run_program(init, prog, opts);
    ASSERT_EQ(res.records.size(), 1u);
    const auto& rec = res.records[0];
    EXPECT_EQ(rec.offset, 1u);
    EXPECT_EQ(rec.stride, 4u);
    EXPECT_EQ(rec.probability, Rational(1, 2));
    EXPECT_TRUE(rec.outcome == 1 || rec.outcome == 5);
    EXPECT_FALSE(homodyne_outcome_decode(plan, rec.outcome).logical.has_value());
}

TEST(Gkp, QubitReductionMatchesStabilizerResult) {
    // A=1 pipeline: logical H then homodyne gives uniform {0,1}.
    auto c = gkp_circuit(2, {fourier(0), homodyne(0)});
    auto plan = resolve_embedding(c);
    ASSERT_EQ(plan.d2, 2u);
    auto prog = compile_circuit(plan, c);
    auto res = run_program(encode_basis_state(plan.params(), 0), prog, {});
    EXPECT_EQ(res.records[0].stride, 1u);
    EXPECT_EQ(res.records[0].probability, Rational(1, 2));
}

TEST(Gkp, CompiledCircuitMatchesDenseOracle) {
    // random GKP circuits, compiled, vs the dense oracle on encoded inputs
    SplitMix64 rng(77);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<GkpGate> gates;
        std::uint32_t depth = 2 + static_cast<std::uint32_t>(rng.below(6));
        for (std::uint32_t i = 0; i < depth; ++i) {
            switch (rng.below(4)) {
                case 0:
                    gates.push_back(dispq(0, Rational(
                        static_cast<std::int64_t>(rng.below(5)) - 2, 2)));
                    break;
                case 1:
                    gates.push_back(dispp(0, Rational(
                        static_cast<std::int64_t>(rng.below(5)) - 2, 2)));
                    break;
                case 2: gates.push_back(fourier(0)); break;
                default: gates.push_back(shear(0)); break;
            }
        }
        gates.push_back(homodyne(0));
        auto c = gkp_circuit(2, gates);
        auto plan = resolve_embedding(c);
        auto prog = compile_circuit(plan, c);
        auto init = encode_basis_state(plan.params(), 1);

        // dense: encoded |1> then the same instruction stream
        std::vector<std::complex<double>> amps(plan.d2, {0, 0});
        for (std::uint32_t k = 0; k < plan.A; ++k)
            amps[(k * plan.d1 + 1) * plan.A] = 1.0;
        auto dense = DenseQuditState::from_amplitudes(1, plan.d2, amps);
        PauliRing ring(plan.d2);
        for (const auto& ins : prog.instructions) {
            switch (ins.kind) {
                case Instruction::Kind::Fourier: dense.apply_fourier(ins.a); break;
                case Instruction::Kind::FourierInv:
                    dense.apply_fourier(ins.a, true);
                    break;
                case Instruction::Kind::PhasePow:
                    dense.apply_phase_gate(ins.a, ins.exp);
                    break;
                case Instruction::Kind::PauliPow:
                    dense.apply_pauli(ring, make_pauli(ring, 1, ins.a, ins.xexp,
                                                       ins.zexp));
                    break;
                default: break;
            }
        }
        auto probs = dense.measure_probs(0);
        auto res = run_program(init, prog, {});
        const auto& rec = res.records[0];
        for (std::uint32_t j = 0; j < plan.d2; ++j) {
            double expect = rec.supports(j) ? rec.probability.to_double() : 0.0;
            ASSERT_NEAR(probs[j], expect, 1e-9) << "iter=" << iter << " j=" << j;
        }
    }
}
