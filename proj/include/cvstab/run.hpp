#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cvstab/circuit.hpp"
#include "cvstab/dense.hpp"
#include "cvstab/encoding.hpp"
#include "cvstab/fock.hpp"
#include "cvstab/frame.hpp"
#include "cvstab/gkp.hpp"
#include "cvstab/grid.hpp"
#include "cvstab/parser.hpp"
#include "cvstab/program.hpp"
#include "cvstab/rsb.hpp"

namespace cvstab {

struct OracleMismatchError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    bool strong = true;
    std::uint64_t shots = 0;  // weak mode when > 0 and strong == false
    std::uint64_t seed = 0;
    bool model_postselection = false;
    std::optional<RsbMethod> method;
    bool dump_state = false;
    bool with_oracle = false;
    double grid_delta = 0.15;  // finite squeezing for the grid oracle
};

struct PlanEcho {
    CodeFamily family = CodeFamily::Gkp;
    std::uint32_t d1 = 2, N = 1, d2 = 2, M2 = 1, factor = 1;
    std::optional<RsbMethod> method;
    bool parity_fix = false;
};

struct OutcomeEntry {
    std::uint32_t value;
    Rational probability;
    std::optional<std::uint32_t> logical;
};

struct MeasurementReport {
    std::size_t index = 0;
    std::uint32_t mode = 0;
    std::string kind;
    std::uint32_t offset = 0, stride = 1;
    std::vector<OutcomeEntry> outcomes;
    std::optional<std::uint32_t> sampled;
    bool conditional = false;
};

struct OracleComparison {
    std::string name;
    double max_deviation = 0;
    double tolerance = 0;
    bool pass = true;
    std::map<std::string, double> metadata;
    std::vector<std::vector<double>> distributions;  // per measurement
    std::string note;
};

struct RunReport {
    std::string mode;  // strong | strong-sequential | weak
    std::uint64_t seed = 0;
    PlanEcho plan;
    std::size_t gadget_uses = 0;
    std::vector<MeasurementReport> measurements;
    std::uint64_t shots = 0, aborted_shots = 0;
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint64_t>> counts;
    std::vector<OracleComparison> oracles;
    std::optional<std::string> dumped_state;

    nlohmann::ordered_json to_json() const;
    std::string to_text() const;
};

namespace detail {

inline Tableau plus_product_state(std::uint32_t n, std::uint32_t d) {
    PauliRing ring(d);
    std::vector<PauliWord> gens;
    for (std::uint32_t k = 0; k < n; ++k)
        gens.push_back(make_pauli(ring, n, k, 1, 0));
    Tableau t(n, d, std::move(gens));
    t.canonicalize();
    return t;
}

struct ResolvedCircuit {
    PlanEcho plan;
    CliffordProgram program;
    Tableau initial;
    std::optional<GkpEmbeddingPlan> gkp;
    std::optional<RsbEmbeddingPlan> rsb;
    std::vector<InitCoset> init_cosets;
};

inline ResolvedCircuit resolve_and_compile(const CvCircuit& c,
                                           const RunOptions& opts) {
    if (c.family == CodeFamily::Gkp) {
        auto plan = resolve_embedding(c);
        ResolvedCircuit r{{},
                          compile_circuit(plan, c),
                          encode_product_state(plan.params(), c.inputs),
                          plan,
                          std::nullopt,
                          {}};
        r.plan.family = CodeFamily::Gkp;
        r.plan.d1 = plan.d1;
        r.plan.d2 = plan.d2;
        r.plan.factor = plan.A;
        r.plan.parity_fix = plan.parity_fix;
        for (std::uint32_t k = 0; k < c.n_modes; ++k)
            r.init_cosets.push_back(
                {plan.A * c.input_of(k), plan.A * plan.d1});
        return r;
    }
    auto plan = resolve_embedding_rsb(c, opts.method);
    Tableau init =
        plan.method == RsbMethod::One
            ? encode_product_state(EmbeddingParams(plan.d1, plan.a), c.inputs)
            : plus_product_state(c.n_modes, plan.d2);
    ResolvedCircuit r{{}, compile_circuit_rsb(plan, c), std::move(init),
                      std::nullopt, plan, {}};
    r.plan.family = CodeFamily::Rsb;
    r.plan.d1 = plan.d1;
    r.plan.N = plan.N;
    r.plan.d2 = plan.d2;
    r.plan.M2 = plan.M2;
    r.plan.factor = plan.a;
    r.plan.method = plan.method;
    for (std::uint32_t k = 0; k < c.n_modes; ++k) {
        if (plan.method == RsbMethod::One)
            r.init_cosets.push_back(
                {plan.a * c.input_of(k), plan.a * plan.d1});
        else
            r.init_cosets.push_back({0, 1});
    }
    return r;
}

inline std::optional<std::uint32_t> decode_logical(const ResolvedCircuit& r,
                                                   std::uint32_t outcome) {
    if (r.gkp) return homodyne_outcome_decode(*r.gkp, outcome).logical;
    return rsb_outcome_logical(*r.rsb, outcome);
}

inline std::string meas_kind_name(Instruction::MeasureKind k) {
    switch (k) {
        case Instruction::MeasureKind::HomodyneQ: return "homodyne";
        case Instruction::MeasureKind::PhaseMeas: return "phasemeas";
        default: return "ancilla";
    }
}

inline MeasurementReport record_to_report(const ResolvedCircuit& r,
                                          const MeasurementRecord& rec,
                                          Instruction::MeasureKind kind,
                                          std::size_t index,
                                          std::uint32_t d2) {
    MeasurementReport m;
    m.index = index;
    m.mode = rec.qudit;
    m.kind = meas_kind_name(kind);
    m.offset = rec.offset;
    m.stride = rec.stride;
    m.sampled = rec.outcome;
    for (std::uint32_t j = rec.offset; j < d2; j += rec.stride)
        m.outcomes.push_back({j, rec.probability, decode_logical(r, j)});
    return m;
}

}  // namespace detail

// --- oracle comparisons ------------------------------------------------------

namespace detail {

// Dense route: same instruction stream on the exact encoded state vector.
inline std::optional<OracleComparison> dense_comparison(
    const ResolvedCircuit& r, const CvCircuit& c,
    const std::vector<MeasurementReport>& expected) {
    OracleComparison cmp;
    cmp.name = "dense";
    cmp.tolerance = 1e-9;
    const std::uint32_t d2 = r.plan.d2, n = c.n_modes;
    double dim = 1;
    for (std::uint32_t i = 0; i < n; ++i) dim *= d2;
    if (dim > (1u << 20)) {
        cmp.note = "skipped: dense dimension overflow";
        return cmp;
    }
    std::size_t dims = static_cast<std::size_t>(dim);
    std::vector<DenseQuditState::Cx> amps(dims, {0, 0});
    // product of encoded inputs
    std::vector<std::vector<DenseQuditState::Cx>> mode_vec(n);
    for (std::uint32_t k = 0; k < n; ++k) {
        std::vector<DenseQuditState::Cx> v(d2, {0, 0});
        if (r.plan.family == CodeFamily::Rsb &&
            r.plan.method == RsbMethod::Two) {
            for (std::uint32_t j = 0; j < d2; ++j) v[j] = 1.0;
        } else {
            std::uint32_t a = r.plan.factor;
            for (std::uint32_t t = 0; t < a; ++t)
                v[(a * c.input_of(k) + a * r.plan.d1 * t) % d2] = 1.0;
        }
        mode_vec[k] = std::move(v);
    }
    for (std::size_t idx = 0; idx < dims; ++idx) {
        DenseQuditState::Cx prod{1, 0};
        std::size_t rest = idx;
        for (std::uint32_t k = n; k-- > 0;) {
            prod *= mode_vec[k][rest % d2];
            rest /= d2;
        }
        amps[idx] = prod;
    }
    auto s = DenseQuditState::from_amplitudes(n, d2, std::move(amps));
    PauliRing ring(d2);
    std::vector<std::pair<std::uint32_t, std::size_t>> measures;
    for (const auto& ins : r.program.instructions) {
        switch (ins.kind) {
            case Instruction::Kind::Fourier:
            case Instruction::Kind::TeleportFourier:
                s.apply_fourier(ins.a);
                break;
            case Instruction::Kind::FourierInv:
                s.apply_fourier(ins.a, true);
                break;
            case Instruction::Kind::PhasePow:
                s.apply_phase_gate(ins.a, ins.exp);
                break;
            case Instruction::Kind::Sum:
                s.apply_sum(ins.a, ins.b);
                break;
            case Instruction::Kind::PauliPow:
                s.apply_pauli(ring,
                              make_pauli(ring, n, ins.a, ins.xexp, ins.zexp));
                break;
            case Instruction::Kind::Measure:
                measures.push_back({ins.a, measures.size()});
                break;
            case Instruction::Kind::FeedbackX:
                cmp.note = "skipped: feedback is not oracle-comparable";
                return cmp;
        }
    }
    for (const auto& [mode, mi] : measures) {
        auto probs = s.measure_probs(mode);
        cmp.distributions.push_back(probs);
        const auto& exp_m = expected[mi];
        for (std::uint32_t j = 0; j < d2; ++j) {
            double want = 0;
            if (j % exp_m.stride == exp_m.offset)
                want = exp_m.outcomes.front().probability.to_double();
            cmp.max_deviation =
                std::max(cmp.max_deviation, std::abs(probs[j] - want));
        }
    }
    cmp.pass = cmp.max_deviation <= cmp.tolerance;
    return cmp;
}

inline std::optional<OracleComparison> grid_comparison(
    const ResolvedCircuit& r, const CvCircuit& c, double Delta, double delta,
    const std::vector<MeasurementReport>& expected) {
    OracleComparison cmp;
    cmp.name = "grid";
    cmp.tolerance = 1e-3;
    cmp.metadata["Delta"] = Delta;
    cmp.metadata["delta"] = delta;
    if (c.n_modes > 2) {
        cmp.note = "skipped: grid oracle supports 1-2 modes";
        return cmp;
    }
    const std::uint32_t d2 = r.plan.d2;
    GridSpec spec = GridSpec::for_code(d2, c.n_modes == 1 ? 2048 : 512);
    GridState s = c.n_modes == 1
                      ? make_gkp_state(spec, r.plan.d1, c.input_of(0), Delta,
                                       delta)
                      : make_gkp_two_mode(spec, r.plan.d1, c.input_of(0),
                                          c.input_of(1), Delta, delta);
    // scale: note inputs are d1-frame codewords; reinterpretation is the
    // identity on wave functions.
    const double unit1 = std::sqrt(2.0 * M_PI / r.plan.d1);
    std::vector<std::uint32_t> measured;
    for (const auto& g : c.gkp_gates) {
        switch (g.kind) {
            case GkpGate::Kind::DispQ:
                grid_apply_position_shift(s, g.mode,
                                          g.amount.to_double() * unit1);
                break;
            case GkpGate::Kind::DispP:
                grid_apply_momentum_kick(s, g.mode,
                                         g.amount.to_double() * unit1);
                break;
            case GkpGate::Kind::Shear:
                grid_apply_shear(s, g.mode);
                break;
            case GkpGate::Kind::ShearOdd:
                grid_apply_shear(s, g.mode, std::sqrt(M_PI / (2.0 * d2)));
                break;
            case GkpGate::Kind::Fourier:
                grid_apply_fourier(s, g.mode);
                break;
            case GkpGate::Kind::CZ:
                grid_apply_cz(s);
                break;
            case GkpGate::Kind::HomodyneQ:
                measured.push_back(g.mode);
                break;
            case GkpGate::Kind::NonClifford:
                throw NonCliffordError(g.label, g.line);
        }
    }
    double interstitial = 0;
    for (std::size_t mi = 0; mi < measured.size(); ++mi) {
        auto dist = grid_homodyne(s, measured[mi], d2);
        interstitial = std::max(interstitial, dist.interstitial);
        cmp.distributions.push_back(dist.probs);
        const auto& exp_m = expected[mi];
        for (std::uint32_t j = 0; j < d2; ++j) {
            double want = 0;
            if (j % exp_m.stride == exp_m.offset)
                want = exp_m.outcomes.front().probability.to_double();
            cmp.max_deviation =
                std::max(cmp.max_deviation, std::abs(dist.probs[j] - want));
        }
    }
    cmp.metadata["interstitial"] = interstitial;
    cmp.pass = cmp.max_deviation <= cmp.tolerance;
    return cmp;
}

inline std::optional<OracleComparison> fock_comparison(
    const ResolvedCircuit& r, const CvCircuit& c,
    const std::vector<MeasurementReport>& expected) {
    OracleComparison cmp;
    cmp.name = "fock";
    if (c.primitive.kind != Primitive::Kind::Coherent) {
        cmp.note = "skipped: fock oracle needs a coherent primitive";
        return cmp;
    }
    const auto& plan = *r.rsb;
    double eps = orthogonality_defect(
        c.primitive, plan.d2 * plan.M2 > 1 ? plan.d2 * plan.M2 : 2);
    cmp.tolerance = std::max(1e-6, 10 * eps);
    cmp.metadata["epsilon"] = eps;
    cmp.metadata["alpha"] = c.primitive.alpha;
    if (c.n_modes > 2) {
        cmp.note = "skipped: fock oracle supports 1-2 modes";
        return cmp;
    }
    const double alpha = c.primitive.alpha;
    const std::uint32_t n_max = static_cast<std::uint32_t>(
        std::ceil(alpha * alpha + 8 * alpha + 20));
    cmp.metadata["n_max"] = n_max;

    auto mode_state = [&](std::uint32_t k) {
        if (plan.method == RsbMethod::Two)
            return *rsb_codeword_fock(
                        RsbCodewordSpec{plan.d1, plan.N, 0, c.primitive}, n_max)
                        .state;
        return *rsb_codeword_fock(
                    RsbCodewordSpec{plan.d1, plan.N, c.input_of(k), c.primitive},
                    n_max)
                    .state;
    };
    FockState s = mode_state(0);
    if (c.n_modes == 2) {
        FockState b = mode_state(1);
        FockState two = FockState::two_mode(n_max);
        const std::size_t D1 = n_max + 1;
        for (std::size_t i = 0; i < D1; ++i)
            for (std::size_t j = 0; j < D1; ++j)
                two.amp[i * D1 + j] = s.amp[i] * b.amp[j];
        s = std::move(two);
    }
    std::vector<std::uint32_t> measured;
    double gadget_prob = 1.0;
    for (const auto& g : c.rsb_gates) {
        switch (g.kind) {
            case RsbGate::Kind::Rotation:
                fock_apply_rotation(s, g.mode, g.rotation);
                break;
            case RsbGate::Kind::SelfKerr:
                fock_apply_kerr(s, g.mode, g.kerr_u, g.kerr_v);
                break;
            case RsbGate::Kind::CrossKerr:
                fock_apply_cross_kerr(s, g.cross);
                break;
            case RsbGate::Kind::TeleportedFourier: {
                if (c.n_modes != 1) {
                    cmp.note = "skipped: gadget oracle needs a 1-mode circuit";
                    return cmp;
                }
                FockState anc =
                    xbasis_state_fock(plan.d2, plan.M2, c.primitive, 0, n_max);
                FockState two = FockState::two_mode(n_max);
                const std::size_t D1 = n_max + 1;
                for (std::size_t i = 0; i < D1; ++i)
                    for (std::size_t j = 0; j < D1; ++j)
                        two.amp[i * D1 + j] = s.amp[i] * anc.amp[j];
                fock_apply_cross_kerr(
                    two, Rational(1, std::int64_t(plan.d2) * plan.M2 * plan.M2));
                FockState u0 =
                    xbasis_state_fock(plan.d2, plan.M2, c.primitive, 0, n_max);
                FockState reduced = FockState::single(n_max);
                for (std::size_t j = 0; j < D1; ++j) {
                    FockState::Cx acc{0, 0};
                    for (std::size_t i = 0; i < D1; ++i)
                        acc += std::conj(u0.amp[i]) * two.amp[i * D1 + j];
                    reduced.amp[j] = acc;
                }
                gadget_prob *= reduced.norm2();
                reduced.normalize();
                s = std::move(reduced);
                break;
            }
            case RsbGate::Kind::PhaseMeasure:
                measured.push_back(g.mode);
                break;
            case RsbGate::Kind::NonClifford:
                throw NonCliffordError(g.label, g.line);
        }
    }
    cmp.metadata["gadget_postselection_probability"] = gadget_prob;
    for (std::size_t mi = 0; mi < measured.size(); ++mi) {
        auto dist =
            fock_phase_measure_distribution(s, measured[mi], plan.d2, plan.M2);
        double total = 0;
        for (double p : dist) total += p;
        if (total > 0)
            for (double& p : dist) p /= total;
        cmp.distributions.push_back(dist);
        const auto& exp_m = expected[mi];
        for (std::uint32_t j = 0; j < plan.d2; ++j) {
            double want = 0;
            if (j % exp_m.stride == exp_m.offset)
                want = exp_m.outcomes.front().probability.to_double();
            cmp.max_deviation =
                std::max(cmp.max_deviation, std::abs(dist[j] - want));
        }
    }
    cmp.pass = cmp.max_deviation <= cmp.tolerance;
    return cmp;
}

}  // namespace detail

inline RunReport run_pipeline(const CvCircuit& c, const RunOptions& opts) {
    auto r = detail::resolve_and_compile(c, opts);
    RunReport rep;
    rep.seed = opts.seed;
    rep.plan = r.plan;
    rep.gadget_uses = r.program.gadget_count();

    const bool terminal = r.program.measurements_terminal();
    if (opts.strong) {
        rep.mode = terminal ? "strong" : "strong-sequential";
        if (terminal) {
            // apply the gate prefix to the tableau and the inverse frame;
            // each measured mode's coset support then follows in O(n) by
            // pulling Z^{d/gamma} back through the circuit and matching it
            // against the product-form input stabilizer.
            Tableau state = r.initial;
            InverseFrame frame(r.program.n_qudits, r.program.d);
            std::vector<std::pair<std::uint32_t, Instruction::MeasureKind>>
                measures;
            for (const auto& ins : r.program.instructions) {
                switch (ins.kind) {
                    case Instruction::Kind::Fourier:
                    case Instruction::Kind::TeleportFourier:
                        state.apply_fourier(ins.a);
                        frame.apply_fourier(ins.a);
                        break;
                    case Instruction::Kind::FourierInv:
                        state.apply_fourier_inv(ins.a);
                        frame.apply_fourier_inv(ins.a);
                        break;
                    case Instruction::Kind::PhasePow:
                        state.apply_phase_power(ins.a, ins.exp);
                        frame.apply_phase_power(ins.a, ins.exp);
                        break;
                    case Instruction::Kind::Sum:
                        state.apply_sum(ins.a, ins.b);
                        frame.apply_sum(ins.a, ins.b);
                        break;
                    case Instruction::Kind::PauliPow:
                        state.apply_pauli(make_pauli(state.ring(),
                                                     state.n_qudits(), ins.a,
                                                     ins.xexp, ins.zexp));
                        frame.apply_pauli_pow(ins.a, ins.xexp, ins.zexp);
                        break;
                    case Instruction::Kind::Measure:
                        measures.push_back({ins.a, ins.meas_kind});
                        break;
                    case Instruction::Kind::FeedbackX:
                        throw std::logic_error("feedback in terminal program");
                }
            }
            if (opts.dump_state) rep.dumped_state = state.serialize();
            const PauliRing& ring = state.ring();
            const std::uint32_t d2 = r.plan.d2;
            for (std::size_t mi = 0; mi < measures.size(); ++mi) {
                const std::uint32_t mode = measures[mi].first;
                std::uint32_t gamma = d2;
                for (const auto& g : state.generators())
                    gamma = std::gcd(gamma, g.x(mode));
                if (gamma == 0) gamma = d2;
                const std::uint32_t gprime = d2 / gamma;
                PauliWord w = word_pow(ring, frame.z_image(mode), gprime);
                auto ph = init_stabilizer_phase(ring, r.init_cosets, w);
                if (!ph)
                    throw std::logic_error(
                        "pulled-back observable misses the input stabilizer");
                const std::uint32_t p = mod_u32(
                    std::int64_t(*ph) - std::int64_t(w.phase), ring.D);
                if (p % ring.r != 0 || (p / ring.r) % gprime != 0)
                    throw std::logic_error("inconsistent measurement phase");
                const std::uint32_t offset =
                    mod_u32(-std::int64_t(p / ring.r / gprime), gamma);
                MeasurementReport m;
                m.index = mi;
                m.mode = mode;
                m.kind = detail::meas_kind_name(measures[mi].second);
                m.offset = offset;
                m.stride = gamma;
                for (std::uint32_t j = offset; j < d2; j += gamma)
                    m.outcomes.push_back(
                        {j, Rational(gamma, d2), detail::decode_logical(r, j)});
                rep.measurements.push_back(std::move(m));
            }
        } else {
            ExecOptions eo;
            eo.seed = opts.seed;
            eo.model_postselection = opts.model_postselection;
            auto res = run_program(r.initial, r.program, eo);
            for (std::size_t mi = 0; mi < res.records.size(); ++mi) {
                auto m = detail::record_to_report(r, res.records[mi],
                                                  res.record_kinds[mi], mi,
                                                  r.plan.d2);
                m.conditional = true;
                rep.measurements.push_back(std::move(m));
            }
            if (opts.dump_state) {
                Tableau t = res.state;
                rep.dumped_state = t.serialize();
            }
        }
    } else {
        rep.mode = "weak";
        rep.shots = opts.shots;
        std::map<std::vector<std::uint32_t>, std::uint64_t> counts;
        for (std::uint64_t shot = 0; shot < opts.shots; ++shot) {
            ExecOptions eo;
            eo.seed = SplitMix64::split(opts.seed, shot).next();
            eo.model_postselection = opts.model_postselection;
            auto res = run_program(r.initial, r.program, eo);
            if (res.gadget_aborted) {
                ++rep.aborted_shots;
                continue;
            }
            std::vector<std::uint32_t> key;
            for (const auto& rec : res.records) key.push_back(rec.outcome);
            ++counts[key];
        }
        for (auto& kv : counts) rep.counts.push_back(kv);
    }

    if (opts.with_oracle) {
        if (!terminal || !opts.strong) {
            OracleComparison cmp;
            cmp.name = "oracle";
            cmp.note = "skipped: verification needs a strong terminal run";
            rep.oracles.push_back(cmp);
        } else {
            if (auto d = detail::dense_comparison(r, c, rep.measurements))
                rep.oracles.push_back(*d);
            if (c.family == CodeFamily::Gkp) {
                if (auto g = detail::grid_comparison(r, c, opts.grid_delta,
                                                     opts.grid_delta,
                                                     rep.measurements))
                    rep.oracles.push_back(*g);
            } else {
                if (auto f = detail::fock_comparison(r, c, rep.measurements))
                    rep.oracles.push_back(*f);
            }
        }
    }
    return rep;
}

// --- rendering ---------------------------------------------------------------

inline nlohmann::ordered_json RunReport::to_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "cvstab-report/1";
    j["mode"] = mode;
    j["seed"] = seed;
    nlohmann::ordered_json p;
    p["family"] = plan.family == CodeFamily::Gkp ? "gkp" : "rsb";
    p["d1"] = plan.d1;
    if (plan.family == CodeFamily::Rsb) {
        p["N"] = plan.N;
        p["method"] = plan.method == RsbMethod::Two ? "two" : "one";
        p["M2"] = plan.M2;
        if (plan.method == RsbMethod::One) p["a"] = plan.factor;
    } else {
        p["A"] = plan.factor;
        p["parity_fix"] = plan.parity_fix;
    }
    p["d2"] = plan.d2;
    j["plan"] = p;
    j["gadgets"] = {{"uses", gadget_uses},
                    {"per_use_success",
                     "1/" + std::to_string(plan.d2)}};
    nlohmann::ordered_json ms = nlohmann::ordered_json::array();
    for (const auto& m : measurements) {
        nlohmann::ordered_json e;
        e["index"] = m.index;
        e["mode"] = m.mode;
        e["kind"] = m.kind;
        e["conditional"] = m.conditional;
        e["support"] = {{"offset", m.offset}, {"stride", m.stride}};
        nlohmann::ordered_json outs = nlohmann::ordered_json::array();
        for (const auto& o : m.outcomes) {
            nlohmann::ordered_json oe;
            oe["value"] = o.value;
            oe["probability"] = o.probability.str();
            if (o.logical)
                oe["logical"] = *o.logical;
            else
                oe["logical"] = nullptr;
            outs.push_back(oe);
        }
        e["outcomes"] = outs;
        if (m.sampled) e["sampled"] = *m.sampled;
        ms.push_back(e);
    }
    j["measurements"] = ms;
    if (mode == "weak") {
        nlohmann::ordered_json w;
        w["shots"] = shots;
        w["aborted"] = aborted_shots;
        nlohmann::ordered_json cs = nlohmann::ordered_json::array();
        for (const auto& [key, count] : counts) {
            nlohmann::ordered_json e;
            e["outcomes"] = key;
            e["count"] = count;
            cs.push_back(e);
        }
        w["counts"] = cs;
        j["weak"] = w;
    }
    if (!oracles.empty()) {
        nlohmann::ordered_json os = nlohmann::ordered_json::array();
        for (const auto& o : oracles) {
            nlohmann::ordered_json e;
            e["oracle"] = o.name;
            if (!o.note.empty()) {
                e["note"] = o.note;
            } else {
                e["max_deviation"] = o.max_deviation;
                e["tolerance"] = o.tolerance;
                e["pass"] = o.pass;
                for (const auto& [k, v] : o.metadata) e[k] = v;
                e["distributions"] = o.distributions;
            }
            os.push_back(e);
        }
        j["oracles"] = os;
    }
    if (dumped_state) j["state"] = *dumped_state;
    return j;
}

inline std::string RunReport::to_text() const {
    std::ostringstream os;
    os << "mode: " << mode << " (seed " << seed << ")\n";
    os << "plan: " << (plan.family == CodeFamily::Gkp ? "gkp" : "rsb")
       << " d1=" << plan.d1;
    if (plan.family == CodeFamily::Rsb) {
        os << " N=" << plan.N
           << " method=" << (plan.method == RsbMethod::Two ? "two" : "one");
        if (plan.method == RsbMethod::One) os << " a=" << plan.factor;
        os << " M2=" << plan.M2;
    } else {
        os << " A=" << plan.factor;
        if (plan.parity_fix) os << " (parity-fixed)";
    }
    os << " d2=" << plan.d2 << "\n";
    if (gadget_uses > 0)
        os << "gadgets: " << gadget_uses << " use(s), success 1/" << plan.d2
           << " each\n";
    for (const auto& m : measurements) {
        os << "measurement " << m.index << " [" << m.kind << ", mode " << m.mode
           << "]";
        if (m.conditional) os << " (conditional on earlier outcomes)";
        os << ": support " << m.offset << " + " << m.stride << "*Z\n";
        for (const auto& o : m.outcomes) {
            os << "  outcome " << o.value << ": p = " << o.probability.str();
            if (o.logical)
                os << "  (logical " << *o.logical << ")";
            else
                os << "  (logical none)";
            os << "\n";
        }
        if (m.sampled) os << "  sampled: " << *m.sampled << "\n";
    }
    if (mode == "weak") {
        os << "shots: " << shots << " (aborted " << aborted_shots << ")\n";
        for (const auto& [key, count] : counts) {
            os << "  [";
            for (std::size_t i = 0; i < key.size(); ++i)
                os << (i ? " " : "") << key[i];
            os << "]: " << count << "\n";
        }
    }
    for (const auto& o : oracles) {
        if (!o.note.empty()) {
            os << "oracle " << o.name << ": " << o.note << "\n";
            continue;
        }
        os << "oracle " << o.name << ": max deviation " << o.max_deviation
           << " (tolerance " << o.tolerance << ") -> "
           << (o.pass ? "match" : "MISMATCH") << "\n";
    }
    if (dumped_state) os << "state:\n" << *dumped_state;
    return os.str();
}

}  // namespace cvstab
