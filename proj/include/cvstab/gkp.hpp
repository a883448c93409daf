#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cvstab/circuit.hpp"
#include "cvstab/encoding.hpp"
#include "cvstab/program.hpp"

namespace cvstab {

// Resolved embedding for a GKP circuit: every displacement denominator
// divides A, and d2 = d1 * A^2 is even whenever a Shear is present (a bare
// shear is the encoded phase gate only in even dimensions; rather than the
// c-shifted variant we enlarge A).
struct GkpEmbeddingPlan {
    std::uint32_t d1 = 2;
    std::uint32_t A = 1;
    std::uint32_t d2 = 2;
    bool parity_fix = false;

    EmbeddingParams params() const { return EmbeddingParams(d1, A); }
};

inline GkpEmbeddingPlan resolve_embedding(const CvCircuit& c) {
    if (c.family != CodeFamily::Gkp)
        throw std::invalid_argument("not a GKP circuit");
    std::int64_t A = 1;
    bool has_shear = false;
    for (const auto& g : c.gkp_gates) {
        switch (g.kind) {
            case GkpGate::Kind::NonClifford:
                throw NonCliffordError(g.label, g.line);
            case GkpGate::Kind::DispQ:
            case GkpGate::Kind::DispP:
                A = std::lcm(A, g.amount.den());
                break;
            case GkpGate::Kind::Shear:
                has_shear = true;
                break;
            default:
                break;
        }
        if (A > static_cast<std::int64_t>(kMaxDimension))
            throw std::invalid_argument("embedding factor too large");
    }
    GkpEmbeddingPlan plan;
    plan.d1 = c.d1;
    plan.A = static_cast<std::uint32_t>(A);
    if (has_shear && (std::uint64_t(c.d1) * A * A) % 2 == 1) {
        plan.A *= 2;
        plan.parity_fix = true;
    }
    std::uint64_t d2 = std::uint64_t(c.d1) * plan.A * plan.A;
    if (d2 > kMaxDimension)
        throw std::invalid_argument("embedding dimension too large");
    plan.d2 = static_cast<std::uint32_t>(d2);
    return plan;
}

// Lower one CV gate to tableau instructions under the plan.
//   DispQ t=j/q -> X_{d2}^{j A/q}      (position shift by t sqrt(2pi/d1))
//   DispP t=j/q -> Z_{d2}^{j A/q}      (momentum kick exp(i t sqrt(2pi/d1) q))
//   Fourier     -> F_{d2}
//   Shear       -> S_{d2}              (even d2 guaranteed by the plan)
//   ShearOdd    -> S_{d2}              (requires odd d2)
//   CZ          -> F_l^dag SUM^(k,l) F_l
//   HomodyneQ   -> Z measurement in d2
inline std::vector<Instruction> compile_gate(const GkpEmbeddingPlan& plan,
                                             const GkpGate& g) {
    std::vector<Instruction> out;
    auto disp_exponent = [&](const Rational& t) -> std::int64_t {
        if (plan.A % t.den() != 0)
            throw std::invalid_argument("displacement not admitted by plan");
        return t.num() * (plan.A / t.den());
    };
    switch (g.kind) {
        case GkpGate::Kind::DispQ:
            out.push_back(Instruction::pauli_pow(g.mode, disp_exponent(g.amount), 0));
            break;
        case GkpGate::Kind::DispP:
            out.push_back(Instruction::pauli_pow(g.mode, 0, disp_exponent(g.amount)));
            break;
        case GkpGate::Kind::Fourier:
            out.push_back(Instruction::fourier(g.mode));
            break;
        case GkpGate::Kind::Shear:
            if (plan.d2 % 2 != 0)
                throw std::logic_error("shear compiled into odd dimension");
            out.push_back(Instruction::phase_pow(g.mode, 1));
            break;
        case GkpGate::Kind::ShearOdd:
            if (plan.d2 % 2 == 0)
                throw std::invalid_argument(
                    "shearodd requires an odd embedding dimension");
            out.push_back(Instruction::phase_pow(g.mode, 1));
            break;
        case GkpGate::Kind::CZ:
            out.push_back(Instruction::fourier_inv(g.mode2));
            out.push_back(Instruction::sum(g.mode, g.mode2));
            out.push_back(Instruction::fourier(g.mode2));
            break;
        case GkpGate::Kind::HomodyneQ:
            out.push_back(Instruction::measure(
                g.mode, Instruction::MeasureKind::HomodyneQ));
            break;
        case GkpGate::Kind::NonClifford:
            throw NonCliffordError(g.label, g.line);
    }
    for (auto& i : out) i.source_line = g.line;
    return out;
}

inline CliffordProgram compile_circuit(const GkpEmbeddingPlan& plan,
                                       const CvCircuit& c) {
    CliffordProgram prog;
    prog.n_qudits = c.n_modes;
    prog.d = plan.d2;
    for (const auto& g : c.gkp_gates)
        for (auto& i : compile_gate(plan, g)) prog.instructions.push_back(i);
    return prog;
}

// Decode a homodyne outcome (a d2 peak class) back to code coordinates.
struct HomodyneDecode {
    std::uint32_t d2_index;
    double position_residue;  // sqrt(2 pi/d2) * index, modulo the full period
    std::optional<std::uint32_t> logical;  // index/A mod d1 when A | index
};

inline HomodyneDecode homodyne_outcome_decode(const GkpEmbeddingPlan& plan,
                                              std::uint32_t outcome) {
    if (outcome >= plan.d2) throw std::invalid_argument("outcome out of range");
    HomodyneDecode dec;
    dec.d2_index = outcome;
    dec.position_residue =
        std::sqrt(2.0 * M_PI / plan.d2) * static_cast<double>(outcome);
    if (outcome % plan.A == 0)
        dec.logical = (outcome / plan.A) % plan.d1;
    return dec;
}

}  // namespace cvstab
