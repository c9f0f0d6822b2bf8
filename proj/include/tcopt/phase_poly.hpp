// phase_poly.hpp
// Phase polynomials of diagonal CNOT+phase circuits: XOR-term form, the
// multilinear reduction, Clifford equivalence, phase-vector evaluation.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "tcopt/circuit.hpp"
#include "tcopt/gf2.hpp"

namespace tcopt {

// Parity mask -> multiplicity in {1..7} (units of pi/4); absent mask = 0.
struct PhasePolynomialXor {
    std::size_t num_vars = 0;
    std::map<BitVec, std::uint8_t> terms;

    void add(const BitVec& mask, int w);
    bool operator==(const PhasePolynomialXor& o) const {
        return num_vars == o.num_vars && terms == o.terms;
    }
};

struct MultilinearPhase {
    std::size_t n = 0;
    std::vector<std::uint8_t> a;               // a_i mod 8
    std::vector<std::uint8_t> b;               // b_ij mod 4, packed upper triangle i<j
    std::set<std::array<std::uint32_t, 3>> c;  // i<j<k with c_ijk = 1

    explicit MultilinearPhase(std::size_t n_ = 0) : n(n_), a(n_, 0), b(n_ * n_, 0) {}
    std::uint8_t& bij(std::size_t i, std::size_t j) { return b[i * n + j]; }
    std::uint8_t bij(std::size_t i, std::size_t j) const { return b[i * n + j]; }
};

struct Extraction {
    PhasePolynomialXor poly;
    BitMatrix linear_action;  // row q = final parity mask of wire q
};

// Left-to-right parity simulation. Accepts CNOT plus diagonal gates
// (T/S/Z/Sdg/Tdg and symbolic CZ/CS/CCZ, expanded on current wire parities).
Extraction extract_xor_polynomial(const Circuit& c);

MultilinearPhase to_multilinear(const PhasePolynomialXor& p);

// Equal up to Clifford: all multilinear coefficients agree mod 2.
bool equivalent_mod_clifford(const MultilinearPhase& p1, const MultilinearPhase& p2);

// Entry x = sum of w * parity(mask & x) mod 8; requires N <= 20.
std::vector<std::uint8_t> phase_vector(const PhasePolynomialXor& p);

std::vector<std::uint8_t> phase_vector(const MultilinearPhase& p);

}  // namespace tcopt
