#include "tcopt/compiler.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>

#include "tcopt/phase_poly.hpp"
#include "tcopt/rewrite.hpp"

namespace tcopt {

std::size_t BlockDecomposition::internal_h_count() const {
    std::size_t count = 0;
    for (std::size_t i = 1; i + 1 < b_count(); ++i)
        for (const auto& g : b_block(i).gates)
            if (g.kind == GateKind::H) ++count;
    return count;
}

Circuit BlockDecomposition::concatenated() const {
    Circuit c;
    c.num_qubits = num_qubits;
    for (const auto& b : blocks)
        c.gates.insert(c.gates.end(), b.gates.begin(), b.gates.end());
    return c;
}

BlockDecomposition block_partition(const Circuit& c) {
    for (const auto& g : c.gates)
        switch (g.kind) {
            case GateKind::H:
            case GateKind::Z:
            case GateKind::S:
            case GateKind::T:
            case GateKind::CNOT:
                break;
            default:
                throw std::runtime_error(std::string("block_partition: unsupported gate kind ") +
                                         gate_name(g.kind));
        }

    BlockDecomposition bd;
    bd.num_qubits = c.num_qubits;
    Circuit cur;
    cur.num_qubits = c.num_qubits;
    bool in_clifford = true;  // start collecting B1
    for (const auto& g : c.gates) {
        if (in_clifford) {
            if (g.kind == GateKind::T) {
                bd.blocks.push_back(cur);
                cur.gates.clear();
                in_clifford = false;
            }
        } else {
            if (g.kind == GateKind::H) {
                bd.blocks.push_back(cur);
                cur.gates.clear();
                in_clifford = true;
            }
        }
        cur.gates.push_back(g);
    }
    bd.blocks.push_back(cur);
    if (!in_clifford) {
        Circuit empty;
        empty.num_qubits = c.num_qubits;
        bd.blocks.push_back(empty);  // trailing empty Bm
    }
    return bd;
}

GadgetizedCircuit hadamard_gadgetize(const BlockDecomposition& bd) {
    GadgetizedCircuit out;
    const std::size_t n0 = bd.num_qubits;
    std::size_t next_wire = n0;
    std::vector<std::size_t> cur(n0);
    std::iota(cur.begin(), cur.end(), 0);

    std::vector<Gate> gates;
    auto remap = [&](Gate g) {
        for (int i = 0; i < g.arity(); ++i)
            g.q[static_cast<std::size_t>(i)] =
                static_cast<std::uint32_t>(cur[g.q[static_cast<std::size_t>(i)]]);
        return g;
    };
    auto emit_cz = [&](std::uint32_t a, std::uint32_t b) {
        // lowered immediately so diagonal blocks stay CNOT+phase
        gates.push_back(Gate::s(a));
        gates.push_back(Gate::s(b));
        gates.push_back(Gate::cnot(a, b));
        gates.push_back(Gate::z(b));
        gates.push_back(Gate::s(b));
        gates.push_back(Gate::cnot(a, b));
    };

    for (std::size_t idx = 0; idx < bd.blocks.size(); ++idx) {
        const bool is_b = (idx % 2 == 0);
        const bool interior = is_b && idx != 0 && idx + 1 != bd.blocks.size();
        for (const auto& g0 : bd.blocks[idx].gates) {
            if (interior && g0.kind == GateKind::H) {
                const std::size_t old = cur[g0.q[0]];
                const std::size_t anc = next_wire++;
                gates.push_back(Gate::h(static_cast<std::uint32_t>(anc)));
                emit_cz(static_cast<std::uint32_t>(old), static_cast<std::uint32_t>(anc));
                cur[g0.q[0]] = anc;
                out.retired_wires.push_back(old);
                ++out.ancilla_count;
                continue;
            }
            gates.push_back(remap(g0));
        }
    }

    Circuit c;
    c.num_qubits = next_wire;
    c.gates = std::move(gates);
    out.circuit = peephole(c, /*allow_conversions=*/false);
    out.logical_wire = cur;
    return out;
}

CompiledTarget diagonalize_and_extract(const Circuit& c) {
    std::size_t first_t = c.gates.size(), last_t = 0;
    for (std::size_t i = 0; i < c.gates.size(); ++i)
        if (c.gates[i].kind == GateKind::T) {
            first_t = std::min(first_t, i);
            last_t = i;
        }

    CompiledTarget out;
    if (first_t == c.gates.size()) {  // no T gates at all
        out.tensor = SignatureTensor(c.num_qubits);
        out.clifford_prefix = c;
        out.diagonal_circuit.num_qubits = c.num_qubits;
        out.clifford_suffix.num_qubits = c.num_qubits;
        return out;
    }

    Circuit u1, u2, u3;
    u1.num_qubits = u2.num_qubits = u3.num_qubits = c.num_qubits;
    u1.gates.assign(c.gates.begin(), c.gates.begin() + static_cast<std::ptrdiff_t>(first_t));
    u2.gates.assign(c.gates.begin() + static_cast<std::ptrdiff_t>(first_t),
                    c.gates.begin() + static_cast<std::ptrdiff_t>(last_t) + 1);
    u3.gates.assign(c.gates.begin() + static_cast<std::ptrdiff_t>(last_t) + 1, c.gates.end());

    std::vector<Gate> cnots;
    for (const auto& g : u2.gates) {
        switch (g.kind) {
            case GateKind::CNOT:
                cnots.push_back(g);
                break;
            case GateKind::T:
            case GateKind::S:
            case GateKind::Z:
                break;
            default:
                throw std::runtime_error("diagonalize_and_extract: internal Hadamard remains");
        }
    }

    // U2' = C^dagger U2 as a gate list: U2 then the CNOTs reversed.
    Circuit u2p = u2;
    for (auto it = cnots.rbegin(); it != cnots.rend(); ++it) u2p.gates.push_back(*it);

    Circuit w, v;
    w.num_qubits = v.num_qubits = c.num_qubits;
    for (const auto& g : u2p.gates) {
        if (g.kind == GateKind::CNOT) {
            w.gates.push_back(g);
            v.gates.push_back(g);
        } else if (g.kind == GateKind::T) {
            w.gates.push_back(g);
        } else {
            v.gates.push_back(g);
        }
    }

    // Step 7: factor column per T gate = the parity its wire carries there.
    std::vector<BitVec> mask(c.num_qubits);
    for (std::size_t i = 0; i < c.num_qubits; ++i) mask[i] = BitVec::unit(c.num_qubits, i);
    std::vector<Factor> columns;
    for (const auto& g : w.gates) {
        if (g.kind == GateKind::CNOT) mask[g.q[1]] ^= mask[g.q[0]];
        else columns.push_back(mask[g.q[0]]);
    }

    out.tensor = from_decomposition(c.num_qubits, columns);
    out.factor_matrix = std::move(columns);
    out.diagonal_circuit = std::move(w);
    out.clifford_prefix = std::move(u1);
    out.clifford_suffix = std::move(v);
    Circuit& suffix = out.clifford_suffix;  // V then C then U3
    suffix.gates.insert(suffix.gates.end(), cnots.begin(), cnots.end());
    suffix.gates.insert(suffix.gates.end(), u3.gates.begin(), u3.gates.end());
    return out;
}

namespace {

std::set<std::size_t> pair_support(const BlockDecomposition& bd, std::size_t lo, std::size_t hi) {
    std::set<std::size_t> supp;
    for (std::size_t i = lo; i < hi; ++i) {
        for (const auto* blk : {&bd.b_block(i), &bd.a_block(i)})
            for (const auto& g : blk->gates)
                for (int k = 0; k < g.arity(); ++k) supp.insert(g.q[static_cast<std::size_t>(k)]);
    }
    return supp;
}

std::size_t part_requirement(const BlockDecomposition& bd, std::size_t lo, std::size_t hi) {
    std::size_t req = pair_support(bd, lo, hi).size();
    for (std::size_t j = lo + 1; j < hi; ++j)
        for (const auto& g : bd.b_block(j).gates)
            if (g.kind == GateKind::H) ++req;
    return req;
}

}  // namespace

std::vector<BlockDecomposition> split_blocks(const BlockDecomposition& bd, std::size_t threshold,
                                             std::size_t trials, std::uint64_t seed) {
    const std::size_t pairs = bd.a_count();
    if (pairs == 0) return {};
    for (std::size_t i = 0; i < pairs; ++i)
        if (threshold && part_requirement(bd, i, i + 1) > threshold)
            throw std::runtime_error("split_blocks: a single block exceeds the qubit threshold");

    std::vector<std::size_t> best_bounds;
    for (std::size_t trial = 0; trial < std::max<std::size_t>(trials, 1); ++trial) {
        std::mt19937_64 gen(splitmix64(seed + 0x9e37 * trial));
        std::vector<std::size_t> bounds(pairs + 1);
        std::iota(bounds.begin(), bounds.end(), 0);
        for (;;) {
            std::vector<std::size_t> mergeable;
            for (std::size_t i = 0; i + 2 < bounds.size(); ++i) {
                if (!threshold || part_requirement(bd, bounds[i], bounds[i + 2]) <= threshold)
                    mergeable.push_back(i);
            }
            if (mergeable.empty()) break;
            std::size_t pick =
                mergeable[std::uniform_int_distribution<std::size_t>(0, mergeable.size() - 1)(gen)];
            bounds.erase(bounds.begin() + static_cast<std::ptrdiff_t>(pick) + 1);
        }
        if (best_bounds.empty() || bounds.size() < best_bounds.size()) best_bounds = bounds;
        if (best_bounds.size() == 2) break;  // single part, cannot improve
    }

    std::vector<BlockDecomposition> parts;
    for (std::size_t i = 0; i + 1 < best_bounds.size(); ++i) {
        BlockDecomposition part;
        part.num_qubits = bd.num_qubits;
        for (std::size_t p = best_bounds[i]; p < best_bounds[i + 1]; ++p) {
            part.blocks.push_back(bd.b_block(p));
            part.blocks.push_back(bd.a_block(p));
        }
        Circuit empty;
        empty.num_qubits = bd.num_qubits;
        part.blocks.push_back(empty);
        parts.push_back(std::move(part));
    }
    return parts;
}

namespace {

// Restrict a part to its used wires so the tensor dimension matches the
// part's own qubit requirement.
BlockDecomposition compact_wires(const BlockDecomposition& part, std::vector<std::size_t>& map) {
    std::set<std::size_t> supp;
    for (const auto& blk : part.blocks)
        for (const auto& g : blk.gates)
            for (int k = 0; k < g.arity(); ++k) supp.insert(g.q[static_cast<std::size_t>(k)]);
    map.assign(supp.begin(), supp.end());
    std::vector<std::size_t> inv(part.num_qubits, 0);
    for (std::size_t i = 0; i < map.size(); ++i) inv[map[i]] = i;

    BlockDecomposition out;
    out.num_qubits = map.size();
    for (const auto& blk : part.blocks) {
        Circuit c;
        c.num_qubits = map.size();
        for (auto g : blk.gates) {
            for (int k = 0; k < g.arity(); ++k)
                g.q[static_cast<std::size_t>(k)] =
                    static_cast<std::uint32_t>(inv[g.q[static_cast<std::size_t>(k)]]);
            c.gates.push_back(g);
        }
        out.blocks.push_back(std::move(c));
    }
    return out;
}

}  // namespace

std::vector<CompiledTarget> compile(const Circuit& c, const CompileOptions& opt) {
    if (c.num_qubits > 128) throw std::runtime_error("compile: more than 128 qubits");
    Circuit basis = rewrite_to_basis(c);
    BlockDecomposition bd = block_partition(basis);
    if (bd.a_count() == 0) return {};

    std::vector<BlockDecomposition> parts;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    const std::size_t whole_req = c.num_qubits + bd.internal_h_count();
    if (!opt.threshold || whole_req <= opt.threshold) {
        parts.push_back(bd);
        ranges.emplace_back(0, bd.a_count());
    } else {
        parts = split_blocks(bd, opt.threshold, opt.trials, opt.seed);
        std::size_t at = 0;
        for (const auto& p : parts) {
            ranges.emplace_back(at, at + p.a_count());
            at += p.a_count();
        }
    }

    std::vector<CompiledTarget> out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::vector<std::size_t> wire_map;
        BlockDecomposition local =
            parts.size() == 1 ? parts[i] : compact_wires(parts[i], wire_map);
        if (parts.size() == 1) {
            wire_map.resize(local.num_qubits);
            std::iota(wire_map.begin(), wire_map.end(), 0);
        }
        GadgetizedCircuit gadgetized = hadamard_gadgetize(local);
        CompiledTarget target = diagonalize_and_extract(gadgetized.circuit);
        target.ancilla_count = gadgetized.ancilla_count;
        target.retired_wires = gadgetized.retired_wires;
        target.logical_wire = gadgetized.logical_wire;
        target.wire_map = std::move(wire_map);
        target.source_range = ranges[i];
        out.push_back(std::move(target));
    }
    return out;
}

}  // namespace tcopt
