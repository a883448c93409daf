#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cvstab/pauli.hpp"
#include "cvstab/program.hpp"
#include "cvstab/tableau.hpp"

namespace cvstab {

// Symmetric embedding of a d1-dimensional qudit into dimension d2 = d1*a^2.
struct EmbeddingParams {
    std::uint32_t d1;
    std::uint32_t a;
    std::uint32_t d2;

    EmbeddingParams(std::uint32_t d1_, std::uint32_t a_)
        : d1(d1_), a(a_), d2(0) {
        if (d1_ < 2) throw std::invalid_argument("logical dimension must be >= 2");
        if (a_ < 1) throw std::invalid_argument("embedding factor must be >= 1");
        std::uint64_t big = std::uint64_t(d1_) * a_ * a_;
        if (big > kMaxDimension)
            throw std::invalid_argument("embedding dimension too large");
        d2 = static_cast<std::uint32_t>(big);
    }
};

// Encoded Pauli operators X_{d2}^a, Z_{d2}^a and the codespace stabilizers
// <X_{d2}^{d1 a}, Z_{d2}^{d1 a}>.
struct LogicalPauliMap {
    EmbeddingParams params;
    PauliWord x_image;
    PauliWord z_image;
    std::vector<PauliWord> codespace_stabilizers;
};

inline LogicalPauliMap logical_pauli(const EmbeddingParams& p) {
    PauliRing ring(p.d2);
    LogicalPauliMap m{p, make_pauli(ring, 1, 0, p.a, 0),
                      make_pauli(ring, 1, 0, 0, p.a),
                      {}};
    std::uint32_t s = (std::uint64_t(p.d1) * p.a) % p.d2;
    m.codespace_stabilizers.push_back(make_pauli(ring, 1, 0, s, 0));
    m.codespace_stabilizers.push_back(make_pauli(ring, 1, 0, 0, s));
    return m;
}

// |enc j> = (1/sqrt a) sum_k |(k d1 + j) a>_{d2}: the uniform superposition
// over the coset a*j + a*d1*Z. Its stabilizer is <w^{-r a^2 j} Z^a, X^{a d1}>.
inline Tableau encode_basis_state(const EmbeddingParams& p, std::uint32_t j) {
    if (j >= p.d1) throw std::invalid_argument("logical index out of range");
    // stride a*d1 equals d2 exactly when a == 1 (plain basis state)
    return Tableau::coset_superposition(p.d2, p.a * j, p.a * p.d1);
}

// |enc +> = (1/sqrt d1) sum_j |enc j>: support a*Z, used by tests and by the
// phase-measurement decode.
inline Tableau encode_plus_state(const EmbeddingParams& p) {
    return Tableau::coset_superposition(p.d2, 0, p.a);
}

// Multi-mode product of encoded basis states in dimension d2.
inline Tableau encode_product_state(const EmbeddingParams& p,
                                    const std::vector<std::uint32_t>& js) {
    PauliRing ring(p.d2);
    const std::uint32_t n = static_cast<std::uint32_t>(js.size());
    std::vector<PauliWord> gens;
    const std::uint32_t stride = p.a * p.d1;  // == d2 exactly when a == 1
    const std::uint32_t zexp = p.d2 / stride; // == a
    for (std::uint32_t k = 0; k < n; ++k) {
        if (js[k] >= p.d1) throw std::invalid_argument("logical index range");
        if (stride < p.d2) gens.push_back(make_pauli(ring, n, k, stride, 0));
        const std::int64_t ph =
            -std::int64_t(ring.r) * zexp * std::int64_t(p.a * js[k]);
        gens.push_back(make_pauli(ring, n, k, 0, zexp, ph));
    }
    Tableau t(n, p.d2, std::move(gens));
    t.canonicalize();
    return t;
}

// Two-qudit preparation circuit for |enc 0>: F on the data qudit, a SUM
// repetitions onto a fresh ancilla, Z-measure the ancilla (outcome a*t), then
// feed back X^{-t}. Every branch converges to encode_basis_state(p, 0).
inline CliffordProgram generation_circuit(const EmbeddingParams& p) {
    CliffordProgram prog;
    prog.n_qudits = 2;
    prog.d = p.d2;
    prog.instructions.push_back(Instruction::fourier(0));
    for (std::uint32_t i = 0; i < p.a; ++i)
        prog.instructions.push_back(Instruction::sum(0, 1));
    prog.instructions.push_back(
        Instruction::measure(1, Instruction::MeasureKind::Ancilla));
    prog.instructions.push_back(Instruction::feedback_x(0, 0, p.a, true));
    return prog;
}

}  // namespace cvstab
