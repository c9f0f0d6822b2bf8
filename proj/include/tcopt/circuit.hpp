// circuit.hpp
// Gate-list circuit IR and the OpenQASM 2.0 subset reader/writer.

#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcopt {

enum class GateKind : std::uint8_t { H, X, Z, S, Sdg, T, Tdg, CZ, CNOT, CS, CCZ, CCX };

constexpr int gate_arity(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
            return 1;
        case GateKind::CZ:
        case GateKind::CNOT:
        case GateKind::CS:
            return 2;
        default:
            return 3;
    }
}

// Diagonal in the computational basis.
constexpr bool gate_is_diagonal(GateKind k) {
    switch (k) {
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::T:
        case GateKind::Tdg:
        case GateKind::CZ:
        case GateKind::CS:
        case GateKind::CCZ:
            return true;
        default:
            return false;
    }
}

constexpr bool gate_is_clifford(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::X:
        case GateKind::Z:
        case GateKind::S:
        case GateKind::Sdg:
        case GateKind::CZ:
        case GateKind::CNOT:
            return true;
        default:
            return false;
    }
}

// Phase weight in units of pi/4 for diagonal single-qubit gates, -1 otherwise.
constexpr int gate_phase_weight(GateKind k) {
    switch (k) {
        case GateKind::T: return 1;
        case GateKind::S: return 2;
        case GateKind::Z: return 4;
        case GateKind::Sdg: return 6;
        case GateKind::Tdg: return 7;
        default: return -1;
    }
}

const char* gate_name(GateKind k);

struct Gate {
    GateKind kind;
    std::array<std::uint32_t, 3> q{0, 0, 0};

    static Gate g1(GateKind k, std::uint32_t a) { return Gate{k, {a, 0, 0}}; }
    static Gate g2(GateKind k, std::uint32_t a, std::uint32_t b) { return Gate{k, {a, b, 0}}; }
    static Gate g3(GateKind k, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        return Gate{k, {a, b, c}};
    }
    static Gate h(std::uint32_t a) { return g1(GateKind::H, a); }
    static Gate x(std::uint32_t a) { return g1(GateKind::X, a); }
    static Gate z(std::uint32_t a) { return g1(GateKind::Z, a); }
    static Gate s(std::uint32_t a) { return g1(GateKind::S, a); }
    static Gate sdg(std::uint32_t a) { return g1(GateKind::Sdg, a); }
    static Gate t(std::uint32_t a) { return g1(GateKind::T, a); }
    static Gate tdg(std::uint32_t a) { return g1(GateKind::Tdg, a); }
    static Gate cz(std::uint32_t a, std::uint32_t b) { return g2(GateKind::CZ, a, b); }
    static Gate cnot(std::uint32_t c, std::uint32_t t) { return g2(GateKind::CNOT, c, t); }
    static Gate cs(std::uint32_t a, std::uint32_t b) { return g2(GateKind::CS, a, b); }
    static Gate ccz(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        return g3(GateKind::CCZ, a, b, c);
    }
    static Gate ccx(std::uint32_t a, std::uint32_t b, std::uint32_t t) {
        return g3(GateKind::CCX, a, b, t);
    }

    int arity() const { return gate_arity(kind); }
    bool touches(std::uint32_t wire) const {
        for (int i = 0; i < arity(); ++i)
            if (q[static_cast<std::size_t>(i)] == wire) return true;
        return false;
    }
    bool operator==(const Gate& o) const {
        if (kind != o.kind) return false;
        for (int i = 0; i < arity(); ++i)
            if (q[static_cast<std::size_t>(i)] != o.q[static_cast<std::size_t>(i)]) return false;
        return true;
    }
};

struct Register {
    std::string name;
    std::size_t size;
};

struct Circuit {
    std::size_t num_qubits = 0;
    std::vector<Gate> gates;
    std::vector<Register> registers;  // declaration order; empty for synthetic circuits

    void push(const Gate& g) { gates.push_back(g); }
    std::size_t t_count() const;  // T/Tdg positions (odd pi/4 content per gate)
    void validate() const;        // arity, distinct indices, bounds
};

struct ParseError : std::runtime_error {
    int line;
    ParseError(int ln, const std::string& msg)
        : std::runtime_error("line " + std::to_string(ln) + ": " + msg), line(ln) {}
};

Circuit parse_qasm(std::string_view text);
std::string to_qasm(const Circuit& c);

}  // namespace tcopt
