// rewrite.hpp
// Lowering to the {H, Z, S, T, CNOT} working set plus the Hadamard peephole pass.

#pragma once

#include "tcopt/circuit.hpp"

namespace tcopt {

// Expands X/Sdg/Tdg/CZ/CS/CCZ/CCX over {H,Z,S,T,CNOT}, then cancels and pushes
// Hadamards to the circuit ends where exact rewrites allow. Unitary-preserving.
Circuit rewrite_to_basis(const Circuit& c);

// The peephole alone, for circuits already over the working set. Conversions
// (control-side Hadamard hops, which add an H pair on the other wire) can be
// disabled where new mid-circuit Hadamards must not appear.
Circuit peephole(const Circuit& c, bool allow_conversions = true);

}  // namespace tcopt
