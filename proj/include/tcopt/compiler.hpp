// compiler.hpp
// Block partition, Hadamard gadgetization, diagonalization and factor-matrix
// extraction, random-greedy circuit splitting; produces target tensors.

#pragma once

#include <cstdint>
#include <vector>

#include "tcopt/circuit.hpp"
#include "tcopt/tensor.hpp"

namespace tcopt {

// Alternating B1, A1, B2, A2, ..., Bm (B Clifford-only, A CNOT+phase);
// blocks.size() is odd and concatenation reproduces the source circuit.
struct BlockDecomposition {
    std::size_t num_qubits = 0;
    std::vector<Circuit> blocks;

    std::size_t b_count() const { return blocks.size() / 2 + (blocks.empty() ? 0 : 1); }
    std::size_t a_count() const { return blocks.size() / 2; }
    const Circuit& b_block(std::size_t i) const { return blocks[2 * i]; }
    const Circuit& a_block(std::size_t i) const { return blocks[2 * i + 1]; }
    std::size_t internal_h_count() const;
    Circuit concatenated() const;
};

BlockDecomposition block_partition(const Circuit& c);

struct GadgetizedCircuit {
    Circuit circuit;
    std::size_t ancilla_count = 0;
    std::vector<std::size_t> retired_wires;   // projected <+| under zero-postselection
    std::vector<std::size_t> logical_wire;    // input wire -> final carrier wire
};

// Replaces every internal Hadamard with {fresh ancilla, H(anc), CZ(q, anc),
// relabel}; measurement assumed zero, correction omitted.
GadgetizedCircuit hadamard_gadgetize(const BlockDecomposition& bd);

struct CompiledTarget {
    SignatureTensor tensor;
    std::vector<Factor> factor_matrix;  // columns; initial Waring decomposition
    Circuit diagonal_circuit;           // W: CNOT + T only
    Circuit clifford_prefix;            // U1
    Circuit clifford_suffix;            // V then C then U3
    std::size_t ancilla_count = 0;
    std::pair<std::size_t, std::size_t> source_range{0, 0};  // pair-index range
    std::vector<std::size_t> retired_wires;
    std::vector<std::size_t> logical_wire;
    std::vector<std::size_t> wire_map;  // compacted wire -> original wire (split parts)

    std::size_t n() const { return tensor.n(); }
    std::size_t initial_r() const { return factor_matrix.size(); }
    Decomposition initial_decomposition() const {
        return Decomposition{tensor.n(), factor_matrix, {}};
    }
};

// Steps 6-7 on a circuit with no internal Hadamards.
CompiledTarget diagonalize_and_extract(const Circuit& c);

// Random-greedy merging of consecutive (B_i, A_i) pairs under the qubit
// threshold; best of `trials` runs. The terminal Clifford block is not part of
// any returned decomposition.
std::vector<BlockDecomposition> split_blocks(const BlockDecomposition& bd, std::size_t threshold,
                                             std::size_t trials, std::uint64_t seed);

struct CompileOptions {
    std::size_t threshold = 60;  // 0 = unlimited
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
};

std::vector<CompiledTarget> compile(const Circuit& c, const CompileOptions& opt = {});

}  // namespace tcopt
