// resynth.hpp
// Circuit reconstruction from decompositions: CNOT synthesis, phase gadgets,
// Toffoli/CS gadget synthesis, Clifford correction, equivalence verification.

#pragma once

#include <optional>
#include <string>

#include "tcopt/compiler.hpp"
#include "tcopt/game.hpp"
#include "tcopt/phase_poly.hpp"

namespace tcopt {

// CNOT circuit implementing x -> m x (Gaussian elimination).
Circuit cnot_synthesis(const BitMatrix& m);

// CNOT fanout onto the lowest-index support wire, `weight` pi/4 phases, mirror.
Circuit synth_phase_gadget(const Factor& u, int weight);

// C then CCZ(0,1,2) then C^-1, with C a CNOT circuit whose linear action maps
// the parities <u1,x>, <u2,x>, <u3,x> onto wires 0,1,2. CCZ stays symbolic.
Circuit synth_toffoli_gadget(const std::vector<Factor>& factors);

Circuit synth_cs_gadget(const std::vector<Factor>& factors);

// Gadget syntheses plus weight-1 phase gadgets for plain factors.
Circuit resynthesize(const Decomposition& d);

// Phase gadgets for the even mod-8 coefficient differences; requires mod-2
// agreement. Output gates are among {S, Z, CZ}.
Circuit clifford_correction(const PhasePolynomialXor& original, const Circuit& new_circuit);

struct VerifyReport {
    bool tensor_equal = false;
    std::optional<bool> phase_equal;  // set for n <= 10
    bool gadgets_valid = false;
    GameCost cost;
};

VerifyReport verify(const CompiledTarget& target, const Decomposition& d);
VerifyReport verify_tensor(const SignatureTensor& target, const Decomposition& d);

std::string verify_report_to_json(const VerifyReport& r);

}  // namespace tcopt
