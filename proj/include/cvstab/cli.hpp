#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cvstab/run.hpp"
#include "cvstab/wigner.hpp"

namespace cvstab {

// Exit codes: 0 success, 2 parse error, 3 rejected (not recognized as
// simulatable by this framework), 4 oracle mismatch, 1 other failures.
enum ExitCode {
    kExitOk = 0,
    kExitFailure = 1,
    kExitParse = 2,
    kExitRejected = 3,
    kExitOracleMismatch = 4,
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::optional<RsbMethod> parse_method(const std::string& m) {
    if (m.empty() || m == "auto") return std::nullopt;
    if (m == "one") return RsbMethod::One;
    if (m == "two") return RsbMethod::Two;
    throw CLI::ValidationError("--method must be one|two|auto");
}

inline int emit_report(const RunReport& rep, const std::string& format,
                       std::ostream& os) {
    if (format == "json")
        os << rep.to_json().dump(2) << "\n";
    else
        os << rep.to_text();
    for (const auto& o : rep.oracles)
        if (o.note.empty() && !o.pass) return kExitOracleMismatch;
    return kExitOk;
}

inline int compile_command(const std::string& path, const std::string& method,
                           const std::string& format, std::ostream& os) {
    auto circuit = CircuitParser::parse(read_file(path));
    RunOptions opts;
    opts.method = parse_method(method);
    auto r = run_pipeline(circuit, [&] {
        RunOptions o = opts;
        o.strong = true;
        return o;
    }());
    // a compile-only view: plan plus instruction count, no measurements
    if (format == "json") {
        auto j = r.to_json();
        j.erase("measurements");
        j.erase("mode");
        j.erase("seed");
        os << j.dump(2) << "\n";
    } else {
        std::ostringstream ss;
        ss << r.to_text();
        std::string text = ss.str();
        os << text.substr(text.find("plan:"));
    }
    return kExitOk;
}

struct WignerStateSpec {
    enum class Kind { Gkp, Cat } kind = Kind::Gkp;
    std::uint32_t d = 2, M = 1, j = 0;
    double delta = 0.2;  // gkp squeezing (Delta = delta)
    double alpha = 2.0;  // cat amplitude
};

// "gkp:j=0,delta=0.2,d=2" or "cat:alpha=2,d=2,M=1,j=0"
inline WignerStateSpec parse_wigner_state(const std::string& text) {
    WignerStateSpec spec;
    auto colon = text.find(':');
    std::string head = text.substr(0, colon);
    if (head == "gkp")
        spec.kind = WignerStateSpec::Kind::Gkp;
    else if (head == "cat")
        spec.kind = WignerStateSpec::Kind::Cat;
    else
        throw CLI::ValidationError("state must start with gkp: or cat:");
    std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
    std::istringstream is(rest);
    std::string kv;
    while (std::getline(is, kv, ',')) {
        if (kv.empty()) continue;
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("expected key=value in state: " + kv);
        std::string key = kv.substr(0, eq);
        double val = std::stod(kv.substr(eq + 1));
        if (key == "d")
            spec.d = static_cast<std::uint32_t>(val);
        else if (key == "M")
            spec.M = static_cast<std::uint32_t>(val);
        else if (key == "j")
            spec.j = static_cast<std::uint32_t>(val);
        else if (key == "delta")
            spec.delta = val;
        else if (key == "alpha")
            spec.alpha = val;
        else
            throw CLI::ValidationError("unknown state field: " + key);
    }
    return spec;
}

inline int wigner_command(const std::string& state_text,
                          const std::string& csv_path,
                          const std::string& json_path,
                          const std::string& ppm_path, std::uint32_t samples,
                          double step, std::ostream& os) {
    auto spec = parse_wigner_state(state_text);
    WaveSamples psi =
        spec.kind == WignerStateSpec::Kind::Gkp
            ? sample_gkp_wavefunction(samples, step, spec.d, spec.j, spec.delta,
                                      spec.delta)
            : sample_cat_codeword(samples, step, spec.d, spec.M, spec.j,
                                  spec.alpha);
    auto grid = wigner_of_wavefunction(psi);
    auto rep = negativity(grid);

    nlohmann::ordered_json j;
    j["schema"] = "cvstab-report/1";
    j["state"] = state_text;
    j["min_value"] = rep.min_value;
    j["negative_volume"] = rep.negative_volume;
    j["log_negativity"] = rep.log_negativity;
    j["grid"] = {{"nq", grid.nq}, {"np", grid.np}, {"h", grid.h},
                 {"dp", grid.dp}};
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        out << j.dump(2) << "\n";
    }
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        out << "q,p,w\n";
        // window the CSV to |q|,|p| <= 6 to keep files reviewable
        for (std::uint32_t i = 0; i < grid.nq; ++i) {
            if (std::abs(grid.q(i)) > 6.0) continue;
            for (std::uint32_t k = 0; k < grid.np; ++k) {
                if (std::abs(grid.p(k)) > 6.0) continue;
                out << grid.q(i) << ',' << grid.p(k) << ','
                    << grid.w[std::size_t(i) * grid.np + k] << "\n";
            }
        }
    }
    if (!ppm_path.empty()) {
        // simple diverging-colour map over the same window
        std::vector<std::pair<std::uint32_t, std::uint32_t>> qs, ps;
        std::ofstream out(ppm_path, std::ios::binary);
        std::vector<std::uint32_t> qi, pi;
        for (std::uint32_t i = 0; i < grid.nq; ++i)
            if (std::abs(grid.q(i)) <= 6.0) qi.push_back(i);
        for (std::uint32_t k = 0; k < grid.np; ++k)
            if (std::abs(grid.p(k)) <= 6.0) pi.push_back(k);
        double wmax = 1e-12;
        for (auto i : qi)
            for (auto k : pi)
                wmax = std::max(wmax,
                                std::abs(grid.w[std::size_t(i) * grid.np + k]));
        out << "P6\n" << qi.size() << ' ' << pi.size() << "\n255\n";
        for (std::size_t r = pi.size(); r-- > 0;) {
            for (auto i : qi) {
                double v = grid.w[std::size_t(i) * grid.np + pi[r]] / wmax;
                unsigned char rgb[3];
                double mag = std::min(1.0, std::abs(v));
                if (v >= 0) {
                    rgb[0] = static_cast<unsigned char>(255 * (1 - mag));
                    rgb[1] = static_cast<unsigned char>(255 * (1 - mag));
                    rgb[2] = 255;
                } else {
                    rgb[0] = 255;
                    rgb[1] = static_cast<unsigned char>(255 * (1 - mag));
                    rgb[2] = static_cast<unsigned char>(255 * (1 - mag));
                }
                out.write(reinterpret_cast<char*>(rgb), 3);
            }
        }
    }
    os << j.dump(2) << "\n";
    return kExitOk;
}

}  // namespace detail

inline int cli_main(int argc, const char* const* argv,
                    std::ostream& os = std::cout,
                    std::ostream& err = std::cerr) {
    CLI::App app{"cvstab: bosonic-code CV circuit recognizer and stabilizer "
                 "simulator"};
    app.require_subcommand(1);

    std::string file, method = "auto", format = "text";
    std::uint64_t shots = 0, seed = 0;
    bool strong_flag = false, postselect = false, dump = false;
    double delta = 0.15;

    auto add_common = [&](CLI::App* sub, bool with_run_flags) {
        sub->add_option("file", file, "circuit file")->required();
        sub->add_option("--method", method, "rsb embedding method (one|two|auto)");
        sub->add_option("--report", format, "report format (text|json)")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_run_flags) {
            sub->add_flag("--strong", strong_flag,
                          "exact coset supports and probabilities (default)");
            sub->add_option("--shots", shots, "weak simulation sample count");
            sub->add_option("--seed", seed, "PRNG seed");
            sub->add_flag("--model-postselection", postselect,
                          "sample teleported-Fourier gadget failures");
            sub->add_flag("--dump-state", dump,
                          "include the stabilizer tableau in the report");
        }
    };

    auto* comp = app.add_subcommand("compile",
                                    "resolve the embedding and report the plan");
    add_common(comp, false);
    auto* run = app.add_subcommand("run", "simulate a circuit");
    add_common(run, true);
    auto* verify = app.add_subcommand(
        "verify", "simulate and cross-check against numeric oracles");
    add_common(verify, true);
    verify->add_option("--delta", delta,
                       "grid-oracle squeezing (Delta = delta)");

    std::string wstate = "gkp:j=0,delta=0.2,d=2";
    std::string csv, jsonp, ppm;
    std::uint32_t wsamples = 1024;
    double wstep = 0.047;
    auto* wig = app.add_subcommand("wigner",
                                   "phase-space function and negativity of a "
                                   "codeword");
    wig->add_option("--state", wstate,
                    "gkp:j=..,delta=..[,d=..] or cat:alpha=..[,d=..,M=..,j=..]");
    wig->add_option("--csv", csv, "write the W(q,p) grid as CSV");
    wig->add_option("--json", jsonp, "write the negativity report as JSON");
    wig->add_option("--ppm", ppm, "write a heat-map image (PPM)");
    wig->add_option("--samples", wsamples, "wave-function samples (power of 2)");
    wig->add_option("--step", wstep, "position step");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, os, err);
    }

    try {
        if (comp->parsed())
            return detail::compile_command(file, method, format, os);
        if (wig->parsed())
            return detail::wigner_command(wstate, csv, jsonp, ppm, wsamples,
                                          wstep, os);
        auto circuit = CircuitParser::parse(detail::read_file(file));
        RunOptions opts;
        opts.method = detail::parse_method(method);
        opts.seed = seed;
        opts.model_postselection = postselect;
        opts.dump_state = dump;
        opts.grid_delta = delta;
        opts.strong = shots == 0 || strong_flag;
        opts.shots = shots;
        if (shots > 0 && !strong_flag) opts.strong = false;
        opts.with_oracle = verify->parsed();
        auto rep = run_pipeline(circuit, opts);
        return detail::emit_report(rep, format, os);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitParse;
    } catch (const NonCliffordError& e) {
        err << "rejected: " << e.what()
            << " (not recognized as simulatable by this framework)\n";
        return kExitRejected;
    } catch (const MethodTwoInputViolation& e) {
        err << "rejected: " << e.what() << "\n";
        return kExitRejected;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace cvstab
