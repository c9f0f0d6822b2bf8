#include "tcopt/resynth.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace tcopt {

Circuit cnot_synthesis(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw std::runtime_error("cnot_synthesis: not square");
    const std::size_t n = m.rows();
    BitMatrix work = m;
    // Row ops reducing m to I, recorded in reverse: row_add(a -> b) is CNOT(a, b).
    std::vector<Gate> ops;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && !work.get(piv, col)) ++piv;
        if (piv == n) throw std::runtime_error("cnot_synthesis: singular matrix");
        if (piv != col) {
            // swap via three row additions
            for (auto [a, b] : {std::pair{piv, col}, {col, piv}, {piv, col}}) {
                work.row(b) ^= work.row(a);
                ops.push_back(Gate::cnot(static_cast<std::uint32_t>(a),
                                         static_cast<std::uint32_t>(b)));
            }
        }
        for (std::size_t r = 0; r < n; ++r)
            if (r != col && work.get(r, col)) {
                work.row(r) ^= work.row(col);
                ops.push_back(Gate::cnot(static_cast<std::uint32_t>(col),
                                         static_cast<std::uint32_t>(r)));
            }
    }
    // work = (E_k ... E_1) m = I, so m = E_1^-1 ... E_k^-1; CNOTs are involutions.
    Circuit c;
    c.num_qubits = n;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) c.gates.push_back(*it);
    return c;
}

Circuit synth_phase_gadget(const Factor& u, int weight) {
    if (!u.any()) throw std::runtime_error("synth_phase_gadget: zero factor");
    weight = ((weight % 8) + 8) % 8;
    auto supp = u.support();
    const std::uint32_t target = static_cast<std::uint32_t>(supp.front());
    Circuit c;
    c.num_qubits = u.size();
    for (std::size_t i = 1; i < supp.size(); ++i)
        c.push(Gate::cnot(static_cast<std::uint32_t>(supp[i]), target));
    int w = weight;
    if (w >= 4) {
        c.push(Gate::z(target));
        w -= 4;
    }
    if (w >= 2) {
        c.push(Gate::s(target));
        w -= 2;
    }
    if (w >= 1) c.push(Gate::t(target));
    for (std::size_t i = supp.size(); i-- > 1;)
        c.push(Gate::cnot(static_cast<std::uint32_t>(supp[i]), target));
    return c;
}

namespace {

// Invertible matrix whose first rows are the given independent vectors,
// completed greedily with unit vectors.
BitMatrix complete_rows(const std::vector<Factor>& rows, std::size_t n) {
    std::vector<BitVec> chosen = rows;
    if (gf2_rank(chosen) != rows.size())
        throw std::runtime_error("gadget synthesis: dependent factors");
    for (std::size_t i = 0; i < n && chosen.size() < n; ++i) {
        chosen.push_back(BitVec::unit(n, i));
        if (gf2_rank(chosen) != chosen.size()) chosen.pop_back();
    }
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.row(i) = chosen[i];
    return m;
}

Circuit conjugated_gadget(const std::vector<Factor>& parities, const Gate& core) {
    const std::size_t n = parities.front().size();
    BitMatrix r = complete_rows(parities, n);
    Circuit enc = cnot_synthesis(r);
    Circuit dec = cnot_synthesis(*r.inverse());
    Circuit c;
    c.num_qubits = n;
    c.gates = enc.gates;
    c.push(core);
    c.gates.insert(c.gates.end(), dec.gates.begin(), dec.gates.end());
    return c;
}

}  // namespace

Circuit synth_toffoli_gadget(const std::vector<Factor>& factors) {
    if (factors.size() != 7) throw std::runtime_error("synth_toffoli_gadget: need 7 factors");
    auto got = detect_gadget(factors, true, 0, 0);
    if (got != GadgetKind::Toffoli)
        throw std::runtime_error("synth_toffoli_gadget: factors do not match the pattern");
    return conjugated_gadget({factors[0], factors[1], factors[2]}, Gate::ccz(0, 1, 2));
}

Circuit synth_cs_gadget(const std::vector<Factor>& factors) {
    if (factors.size() != 3) throw std::runtime_error("synth_cs_gadget: need 3 factors");
    auto got = detect_gadget(factors, true, 0, 0);
    if (got != GadgetKind::CS)
        throw std::runtime_error("synth_cs_gadget: factors do not match the pattern");
    return conjugated_gadget({factors[0], factors[1]}, Gate::cs(0, 1));
}

Circuit resynthesize(const Decomposition& d) {
    game_cost(d);  // validates annotations
    Circuit c;
    c.num_qubits = d.n;
    auto gadgets = d.gadgets;
    std::sort(gadgets.begin(), gadgets.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    std::size_t i = 0, g = 0;
    while (i < d.factors.size()) {
        if (g < gadgets.size() && gadgets[g].start == i) {
            const std::size_t span = gadget_span(gadgets[g].kind);
            std::vector<Factor> window(d.factors.begin() + static_cast<std::ptrdiff_t>(i),
                                       d.factors.begin() + static_cast<std::ptrdiff_t>(i + span));
            Circuit sub = gadgets[g].kind == GadgetKind::Toffoli ? synth_toffoli_gadget(window)
                                                                 : synth_cs_gadget(window);
            c.gates.insert(c.gates.end(), sub.gates.begin(), sub.gates.end());
            i += span;
            ++g;
        } else {
            Circuit sub = synth_phase_gadget(d.factors[i], 1);
            c.gates.insert(c.gates.end(), sub.gates.begin(), sub.gates.end());
            ++i;
        }
    }
    return c;
}

Circuit clifford_correction(const PhasePolynomialXor& original, const Circuit& new_circuit) {
    auto extraction = extract_xor_polynomial(new_circuit);
    MultilinearPhase want = to_multilinear(original);
    MultilinearPhase have = to_multilinear(extraction.poly);
    if (want.n != have.n) throw std::runtime_error("clifford_correction: dimension mismatch");
    if (!equivalent_mod_clifford(want, have))
        throw std::runtime_error("clifford_correction: polynomials differ mod 2");

    Circuit c;
    c.num_qubits = want.n;
    for (std::size_t i = 0; i < want.n; ++i) {
        int delta = (static_cast<int>(want.a[i]) - static_cast<int>(have.a[i]) + 8) % 8;
        if (delta >= 4) {
            c.push(Gate::z(static_cast<std::uint32_t>(i)));
            delta -= 4;
        }
        if (delta >= 2) c.push(Gate::s(static_cast<std::uint32_t>(i)));
    }
    for (std::size_t i = 0; i < want.n; ++i)
        for (std::size_t j = i + 1; j < want.n; ++j) {
            int delta = (static_cast<int>(want.bij(i, j)) - static_cast<int>(have.bij(i, j)) + 4) % 4;
            if (delta == 2)
                c.push(Gate::cz(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)));
            else if (delta != 0)
                throw std::runtime_error("clifford_correction: odd pair difference");
        }
    return c;
}

VerifyReport verify_tensor(const SignatureTensor& target, const Decomposition& d) {
    if (target.n() != d.n) throw std::runtime_error("verify: dimension mismatch");
    VerifyReport r;
    try {
        r.cost = game_cost(d);
        r.gadgets_valid = true;
        r.tensor_equal = (from_decomposition(d.n, d.factors) == target);
    } catch (const std::exception&) {
        r.gadgets_valid = false;
        r.tensor_equal = false;
    }
    return r;
}

VerifyReport verify(const CompiledTarget& target, const Decomposition& d) {
    VerifyReport r = verify_tensor(target.tensor, d);
    if (r.gadgets_valid && r.tensor_equal && d.n <= 10) {
        auto original = extract_xor_polynomial(target.diagonal_circuit);
        Circuit rebuilt = resynthesize(d);
        Circuit corrected = rebuilt;
        Circuit correction = clifford_correction(original.poly, rebuilt);
        corrected.gates.insert(corrected.gates.end(), correction.gates.begin(),
                               correction.gates.end());
        auto v1 = phase_vector(original.poly);
        auto v2 = phase_vector(extract_xor_polynomial(corrected).poly);
        r.phase_equal = (v1 == v2);
    }
    return r;
}

std::string verify_report_to_json(const VerifyReport& r) {
    nlohmann::ordered_json j;
    j["tensor_equal"] = r.tensor_equal;
    if (r.phase_equal.has_value()) j["phase_equal"] = *r.phase_equal;
    else j["phase_equal"] = nullptr;
    j["gadgets_valid"] = r.gadgets_valid;
    j["cost"] = {{"t", r.cost.t},
                 {"toffoli", r.cost.toffoli},
                 {"cs", r.cost.cs},
                 {"equivalent_t", r.cost.equivalent_t}};
    return j.dump(2) + "\n";
}

}  // namespace tcopt
