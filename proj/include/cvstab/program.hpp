#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvstab/rational.hpp"
#include "cvstab/rng.hpp"
#include "cvstab/tableau.hpp"

namespace cvstab {

// Instruction stream for the tableau engine. Compilers lower CV gates to
// this; the executor runs it with sampled, forced, or enumerated outcomes.
struct Instruction {
    enum class Kind {
        Fourier,
        FourierInv,
        PhasePow,        // S^e on one qudit
        Sum,             // control a, target b
        PauliPow,        // X^xe Z^ze on one qudit
        TeleportFourier, // Fourier plus gadget bookkeeping (success 1/d)
        Measure,         // Z measurement, appends a MeasurementRecord
        FeedbackX,       // X^{+-outcome/divisor} conditioned on a record
    };
    enum class MeasureKind { HomodyneQ, PhaseMeas, Ancilla };

    Kind kind;
    std::uint32_t a = 0;  // primary qudit
    std::uint32_t b = 0;  // SUM target
    std::int64_t exp = 1;
    std::int64_t xexp = 0, zexp = 0;
    MeasureKind meas_kind = MeasureKind::Ancilla;
    std::size_t meas_index = 0;   // FeedbackX: which record to read
    std::uint32_t divisor = 1;    // FeedbackX: exponent = outcome / divisor
    bool negate = true;           // FeedbackX: apply X^{-t} (vs X^{+t})
    int source_line = 0;          // provenance for reports

    static Instruction fourier(std::uint32_t k) { return {Kind::Fourier, k}; }
    static Instruction fourier_inv(std::uint32_t k) {
        return {Kind::FourierInv, k};
    }
    static Instruction phase_pow(std::uint32_t k, std::int64_t e) {
        Instruction i{Kind::PhasePow, k};
        i.exp = e;
        return i;
    }
    static Instruction sum(std::uint32_t c, std::uint32_t t) {
        Instruction i{Kind::Sum, c};
        i.b = t;
        return i;
    }
    static Instruction pauli_pow(std::uint32_t k, std::int64_t xe,
                                 std::int64_t ze) {
        Instruction i{Kind::PauliPow, k};
        i.xexp = xe;
        i.zexp = ze;
        return i;
    }
    static Instruction teleport_fourier(std::uint32_t k) {
        return {Kind::TeleportFourier, k};
    }
    static Instruction measure(std::uint32_t k, MeasureKind mk) {
        Instruction i{Kind::Measure, k};
        i.meas_kind = mk;
        return i;
    }
    static Instruction feedback_x(std::uint32_t k, std::size_t rec,
                                  std::uint32_t divisor, bool negate) {
        Instruction i{Kind::FeedbackX, k};
        i.meas_index = rec;
        i.divisor = divisor;
        i.negate = negate;
        return i;
    }
};

struct CliffordProgram {
    std::uint32_t n_qudits = 0;
    std::uint32_t d = 2;
    std::vector<Instruction> instructions;

    std::size_t measurement_count() const {
        std::size_t c = 0;
        for (const auto& i : instructions)
            if (i.kind == Instruction::Kind::Measure) ++c;
        return c;
    }
    std::size_t gadget_count() const {
        std::size_t c = 0;
        for (const auto& i : instructions)
            if (i.kind == Instruction::Kind::TeleportFourier) ++c;
        return c;
    }
    // true when every Measure is at the tail of the program
    bool measurements_terminal() const {
        bool seen = false;
        for (const auto& i : instructions) {
            if (i.kind == Instruction::Kind::Measure) {
                seen = true;
            } else if (seen) {
                return false;
            }
        }
        return true;
    }
};

struct ExecOptions {
    std::uint64_t seed = 0;
    bool model_postselection = false;
    // forced outcomes per measurement index (tests/branch enumeration)
    std::vector<std::optional<std::uint32_t>> forced;
};

struct ExecResult {
    Tableau state;
    std::vector<MeasurementRecord> records;
    std::vector<Instruction::MeasureKind> record_kinds;
    std::size_t gadget_uses = 0;
    bool gadget_aborted = false;  // only with model_postselection
};

inline ExecResult run_program(Tableau init, const CliffordProgram& prog,
                              const ExecOptions& opts = {}) {
    if (init.n_qudits() != prog.n_qudits || init.dim() != prog.d)
        throw std::invalid_argument("program/state shape mismatch");
    SplitMix64 rng(opts.seed);
    ExecResult res{std::move(init), {}, {}, 0, false};
    for (const auto& ins : prog.instructions) {
        switch (ins.kind) {
            case Instruction::Kind::Fourier:
                res.state.apply_fourier(ins.a);
                break;
            case Instruction::Kind::FourierInv:
                res.state.apply_fourier_inv(ins.a);
                break;
            case Instruction::Kind::PhasePow:
                res.state.apply_phase_power(ins.a, ins.exp);
                break;
            case Instruction::Kind::Sum:
                res.state.apply_sum(ins.a, ins.b);
                break;
            case Instruction::Kind::PauliPow:
                res.state.apply_pauli(make_pauli(res.state.ring(),
                                                 res.state.n_qudits(), ins.a,
                                                 ins.xexp, ins.zexp));
                break;
            case Instruction::Kind::TeleportFourier:
                ++res.gadget_uses;
                if (opts.model_postselection &&
                    rng.below(res.state.dim()) != 0) {
                    res.gadget_aborted = true;
                    return res;
                }
                res.state.apply_fourier(ins.a);
                break;
            case Instruction::Kind::Measure: {
                std::size_t idx = res.records.size();
                std::optional<std::uint32_t> forced;
                if (idx < opts.forced.size()) forced = opts.forced[idx];
                MeasurementRecord rec =
                    forced ? res.state.measure_z_forced(ins.a, *forced)
                           : res.state.measure_z(ins.a, rng);
                res.records.push_back(rec);
                res.record_kinds.push_back(ins.meas_kind);
                break;
            }
            case Instruction::Kind::FeedbackX: {
                if (ins.meas_index >= res.records.size())
                    throw std::logic_error("feedback before measurement");
                std::uint32_t out = res.records[ins.meas_index].outcome;
                if (out % ins.divisor != 0)
                    throw std::logic_error(
                        "feedback outcome not divisible by stride");
                std::int64_t t = out / ins.divisor;
                res.state.apply_xpow(ins.a, ins.negate ? -t : t);
                break;
            }
        }
    }
    return res;
}

}  // namespace cvstab
