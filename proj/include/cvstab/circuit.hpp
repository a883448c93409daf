#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "cvstab/rational.hpp"

namespace cvstab {

// Rejection of a circuit that this framework does not recognize as a
// d2-dimensional Clifford circuit. A classification, not a hardness claim.
struct NonCliffordError : std::runtime_error {
    std::string gate_label;
    int line = 0;
    NonCliffordError(std::string label, int line_no)
        : std::runtime_error("non-Clifford gate '" + label + "' at line " +
                             std::to_string(line_no)),
          gate_label(std::move(label)),
          line(line_no) {}
};

struct MethodTwoInputViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- GKP-side gate descriptors ---------------------------------------------
// Displacement amounts are exact rationals t in units sqrt(2 pi / d1):
//   DispQ t: position displacement  exp(-i t sqrt(2 pi/d1) p)
//   DispP t: momentum kick          exp(+i t sqrt(2 pi/d1) q)
// Shear is exactly exp(i q^2/2); ShearOdd is exp(i (q^2 - 2 c q)/2) with
// c = sqrt(pi/(2 d2)); CZ is exp(i q_k q_l); Fourier is
// exp(i pi (p^2+q^2)/4). NonClifford carries a label for rejection messages.
struct GkpGate {
    enum class Kind {
        DispQ,
        DispP,
        Shear,
        ShearOdd,
        Fourier,
        CZ,
        HomodyneQ,
        NonClifford
    };
    Kind kind;
    std::uint32_t mode = 0;
    std::uint32_t mode2 = 0;  // CZ only
    Rational amount{0};       // displacements only
    std::string label;        // NonClifford only
    int line = 0;
};

// --- RSB-side gate descriptors ----------------------------------------------
// All parameters are exact rational multiples of 2 pi:
//   Rotation r:   exp(i 2 pi r n)
//   SelfKerr u,v: exp(i 2 pi (u n^2 + v n))
//   CrossKerr w:  exp(i 2 pi w n_k n_l)
struct RsbGate {
    enum class Kind {
        Rotation,
        SelfKerr,
        CrossKerr,
        TeleportedFourier,
        PhaseMeasure,
        NonClifford
    };
    Kind kind;
    std::uint32_t mode = 0;
    std::uint32_t mode2 = 0;  // CrossKerr only
    Rational rotation{0};
    Rational kerr_u{0}, kerr_v{0};
    Rational cross{0};
    std::string label;
    int line = 0;
};

enum class CodeFamily { Gkp, Rsb };

struct Primitive {
    enum class Kind { IdealOrthogonal, Coherent } kind =
        Kind::IdealOrthogonal;
    double alpha = 0.0;  // Coherent amplitude

    static Primitive ideal() { return {Kind::IdealOrthogonal, 0.0}; }
    static Primitive coherent(double a) { return {Kind::Coherent, a}; }
};

// Parsed CV circuit: code metadata plus the gate list, with exact rational
// parameters in code-natural units.
struct CvCircuit {
    CodeFamily family = CodeFamily::Gkp;
    std::uint32_t d1 = 2;
    std::uint32_t N = 1;  // RSB rotation order
    Primitive primitive = Primitive::ideal();
    std::uint32_t n_modes = 1;
    std::vector<std::uint32_t> inputs;  // logical basis index per mode
    std::vector<GkpGate> gkp_gates;
    std::vector<RsbGate> rsb_gates;

    std::uint32_t input_of(std::uint32_t mode) const {
        return mode < inputs.size() ? inputs[mode] : 0;
    }
};

}  // namespace cvstab
