#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvstab/circuit.hpp"

namespace cvstab {

struct ParseError : std::runtime_error {
    int line;
    ParseError(const std::string& msg, int line_no)
        : std::runtime_error("line " + std::to_string(line_no) + ": " + msg),
          line(line_no) {}
};

namespace detail {

inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

inline bool looks_numeric(const std::string& tok) {
    bool digit = false;
    for (char c : tok)
        if (c >= '0' && c <= '9') digit = true;
    return digit || tok.rfind("sqrt", 0) == 0 || tok == "pi";
}

}  // namespace detail

// Circuit file grammar (one directive per line, '#' comments):
//   code gkp d1=<int>
//   code rsb d1=<int> N=<int> primitive=coherent:<float>|ideal
//   modes <int>                         (optional; inferred when absent)
//   input <mode> <j>                    (default 0)
//   GKP gates:  dispq|dispp <mode> <t>, shear|shearodd|fourier <mode>,
//               cz <m1> <m2>, homodyne <mode>, tgate <mode> [quartic|cubic]
//   RSB gates:  rot <mode> <p/q>, kerr <mode> <u> <v>, xkerr <m1> <m2> <w>,
//               tfourier <mode>, phasemeas <mode>, tgate <mode> [...]
// Displacement/rotation parameters are exact rationals; a real-valued token
// parses into a gate that the resolver later rejects as non-Clifford.
class CircuitParser {
  public:
    static CvCircuit parse(const std::string& text) {
        CircuitParser p;
        std::istringstream is(text);
        std::string line;
        int line_no = 0;
        while (std::getline(is, line)) {
            ++line_no;
            auto toks = detail::tokenize(line);
            if (toks.empty()) continue;
            p.handle(toks, line_no);
        }
        if (!p.saw_code_) throw ParseError("missing 'code' header", line_no);
        p.finish();
        return p.c_;
    }

  private:
    void handle(const std::vector<std::string>& t, int line) {
        const std::string& kw = t[0];
        if (kw == "code") {
            header(t, line);
            return;
        }
        if (!saw_code_) throw ParseError("'code' header must come first", line);
        if (kw == "modes") {
            need(t, 2, line);
            declared_modes_ = parse_uint(t[1], line);
            if (*declared_modes_ == 0)
                throw ParseError("mode count must be positive", line);
            return;
        }
        if (kw == "input") {
            need(t, 3, line);
            std::uint32_t mode = parse_mode(t[1], line);
            std::uint32_t j = parse_uint(t[2], line);
            if (j >= c_.d1)
                throw ParseError("input index exceeds logical dimension", line);
            if (inputs_.size() <= mode) inputs_.resize(mode + 1, 0);
            inputs_[mode] = j;
            return;
        }
        if (c_.family == CodeFamily::Gkp)
            gkp_gate(kw, t, line);
        else
            rsb_gate(kw, t, line);
    }

    void header(const std::vector<std::string>& t, int line) {
        if (saw_code_) throw ParseError("duplicate 'code' header", line);
        if (t.size() < 2) throw ParseError("code header needs a family", line);
        std::map<std::string, std::string> kv;
        for (std::size_t i = 2; i < t.size(); ++i) {
            auto eq = t[i].find('=');
            if (eq == std::string::npos)
                throw ParseError("expected key=value: " + t[i], line);
            kv[t[i].substr(0, eq)] = t[i].substr(eq + 1);
        }
        if (t[1] == "gkp") {
            c_.family = CodeFamily::Gkp;
        } else if (t[1] == "rsb") {
            c_.family = CodeFamily::Rsb;
        } else {
            throw ParseError("unknown code family: " + t[1], line);
        }
        if (!kv.count("d1")) throw ParseError("code header needs d1=", line);
        c_.d1 = parse_uint(kv["d1"], line);
        if (c_.d1 < 2) throw ParseError("d1 must be at least 2", line);
        kv.erase("d1");
        if (c_.family == CodeFamily::Rsb) {
            if (!kv.count("N")) throw ParseError("rsb header needs N=", line);
            c_.N = parse_uint(kv["N"], line);
            if (c_.N == 0) throw ParseError("N must be positive", line);
            kv.erase("N");
            if (kv.count("primitive")) {
                const std::string& p = kv["primitive"];
                if (p == "ideal") {
                    c_.primitive = Primitive::ideal();
                } else if (p.rfind("coherent:", 0) == 0) {
                    try {
                        std::size_t used = 0;
                        double a = std::stod(p.substr(9), &used);
                        if (used != p.size() - 9 || a <= 0)
                            throw std::invalid_argument(p);
                        c_.primitive = Primitive::coherent(a);
                    } catch (const std::exception&) {
                        throw ParseError("bad primitive: " + p, line);
                    }
                } else {
                    throw ParseError("bad primitive: " + p, line);
                }
                kv.erase("primitive");
            }
        }
        if (!kv.empty())
            throw ParseError("unknown header field: " + kv.begin()->first, line);
        saw_code_ = true;
    }

    void gkp_gate(const std::string& kw, const std::vector<std::string>& t,
                  int line) {
        GkpGate g;
        g.line = line;
        if (kw == "dispq" || kw == "dispp") {
            need(t, 3, line);
            g.mode = parse_mode(t[1], line);
            if (auto r = parse_amount(t[2], line)) {
                g.kind = kw == "dispq" ? GkpGate::Kind::DispQ
                                       : GkpGate::Kind::DispP;
                g.amount = *r;
            } else {
                g.kind = GkpGate::Kind::NonClifford;
                g.label = "real-valued displacement '" + t[2] + "'";
            }
        } else if (kw == "shear" || kw == "shearodd" || kw == "fourier" ||
                   kw == "homodyne") {
            need(t, 2, line);
            g.mode = parse_mode(t[1], line);
            g.kind = kw == "shear"      ? GkpGate::Kind::Shear
                     : kw == "shearodd" ? GkpGate::Kind::ShearOdd
                     : kw == "fourier"  ? GkpGate::Kind::Fourier
                                        : GkpGate::Kind::HomodyneQ;
        } else if (kw == "cz") {
            need(t, 3, line);
            g.kind = GkpGate::Kind::CZ;
            g.mode = parse_mode(t[1], line);
            g.mode2 = parse_mode(t[2], line);
            if (g.mode == g.mode2)
                throw ParseError("cz needs two distinct modes", line);
        } else if (kw == "tgate") {
            g.mode = parse_mode(t.size() > 1 ? t[1] : "?", line);
            g.kind = GkpGate::Kind::NonClifford;
            std::string form = t.size() > 2 ? t[2] : "quartic";
            if (form != "quartic" && form != "cubic")
                throw ParseError("tgate form must be quartic or cubic", line);
            g.label = "T gate (" + form + " position)";
        } else {
            throw ParseError("unknown directive: " + kw, line);
        }
        c_.gkp_gates.push_back(std::move(g));
    }

    void rsb_gate(const std::string& kw, const std::vector<std::string>& t,
                  int line) {
        RsbGate g;
        g.line = line;
        if (kw == "rot") {
            need(t, 3, line);
            g.mode = parse_mode(t[1], line);
            if (auto r = parse_amount(t[2], line)) {
                g.kind = RsbGate::Kind::Rotation;
                g.rotation = *r;
            } else {
                g.kind = RsbGate::Kind::NonClifford;
                g.label = "real-valued rotation '" + t[2] + "'";
            }
        } else if (kw == "kerr") {
            need(t, 4, line);
            g.kind = RsbGate::Kind::SelfKerr;
            g.mode = parse_mode(t[1], line);
            g.kerr_u = parse_rational(t[2], line);
            g.kerr_v = parse_rational(t[3], line);
        } else if (kw == "xkerr") {
            need(t, 4, line);
            g.kind = RsbGate::Kind::CrossKerr;
            g.mode = parse_mode(t[1], line);
            g.mode2 = parse_mode(t[2], line);
            if (g.mode == g.mode2)
                throw ParseError("xkerr needs two distinct modes", line);
            g.cross = parse_rational(t[3], line);
        } else if (kw == "tfourier" || kw == "phasemeas") {
            need(t, 2, line);
            g.mode = parse_mode(t[1], line);
            g.kind = kw == "tfourier" ? RsbGate::Kind::TeleportedFourier
                                      : RsbGate::Kind::PhaseMeasure;
        } else if (kw == "tgate") {
            g.mode = parse_mode(t.size() > 1 ? t[1] : "?", line);
            g.kind = RsbGate::Kind::NonClifford;
            std::string form = t.size() > 2 ? t[2] : "quartic";
            if (form != "quartic" && form != "cubic")
                throw ParseError("tgate form must be quartic or cubic", line);
            g.label = "T gate (" + form + " Kerr)";
        } else {
            throw ParseError("unknown directive: " + kw, line);
        }
        c_.rsb_gates.push_back(std::move(g));
    }

    void finish() {
        std::uint32_t modes = declared_modes_.value_or(
            std::max<std::uint32_t>(max_mode_ + 1, 1));
        c_.n_modes = modes;
        inputs_.resize(modes, 0);
        c_.inputs = inputs_;
    }

    static void need(const std::vector<std::string>& t, std::size_t n,
                     int line) {
        if (t.size() < n)
            throw ParseError("directive '" + t[0] + "' needs more arguments",
                             line);
    }

    std::uint32_t parse_uint(const std::string& tok, int line) {
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size() || v < 0)
                throw std::invalid_argument(tok);
            return static_cast<std::uint32_t>(v);
        } catch (const std::exception&) {
            throw ParseError("expected a non-negative integer: " + tok, line);
        }
    }

    std::uint32_t parse_mode(const std::string& tok, int line) {
        std::uint32_t m = parse_uint(tok, line);
        if (declared_modes_ && m >= *declared_modes_)
            throw ParseError("undeclared mode " + tok, line);
        max_mode_ = std::max(max_mode_, m);
        return m;
    }

    Rational parse_rational(const std::string& tok, int line) {
        try {
            return Rational::parse(tok);
        } catch (const std::overflow_error&) {
            throw ParseError("rational overflow: " + tok, line);
        } catch (const std::exception&) {
            throw ParseError("expected an exact rational: " + tok, line);
        }
    }

    // Rational if possible; nullopt for real-valued tokens (the caller turns
    // those into rejectable gates); anything else is a syntax error.
    std::optional<Rational> parse_amount(const std::string& tok, int line) {
        try {
            return Rational::parse(tok);
        } catch (const std::overflow_error&) {
            throw ParseError("rational overflow: " + tok, line);
        } catch (const std::domain_error&) {
            throw ParseError("malformed fraction: " + tok, line);
        } catch (const std::invalid_argument&) {
            bool has_dot = tok.find('.') != std::string::npos;
            if ((has_dot || detail::looks_numeric(tok)) && tok != "/") {
                try {
                    if (has_dot) {
                        std::size_t used = 0;
                        (void)std::stod(tok, &used);
                        if (used == tok.size()) return std::nullopt;
                    } else if (tok.rfind("sqrt", 0) == 0 || tok == "pi") {
                        return std::nullopt;
                    }
                } catch (const std::exception&) {
                }
            }
            throw ParseError("expected a displacement amount: " + tok, line);
        }
    }

    CvCircuit c_;
    bool saw_code_ = false;
    std::optional<std::uint32_t> declared_modes_;
    std::uint32_t max_mode_ = 0;
    std::vector<std::uint32_t> inputs_;
};

}  // namespace cvstab
