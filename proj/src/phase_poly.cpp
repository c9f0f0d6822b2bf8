#include "tcopt/phase_poly.hpp"

#include <stdexcept>

namespace tcopt {

void PhasePolynomialXor::add(const BitVec& mask, int w) {
    if (!mask.any()) return;  // parity 0 term is a global phase
    w = ((w % 8) + 8) % 8;
    if (!w) return;
    auto it = terms.find(mask);
    if (it == terms.end()) {
        terms.emplace(mask, static_cast<std::uint8_t>(w));
        return;
    }
    it->second = static_cast<std::uint8_t>((it->second + w) % 8);
    if (it->second == 0) terms.erase(it);
}

Extraction extract_xor_polynomial(const Circuit& c) {
    const std::size_t n = c.num_qubits;
    std::vector<BitVec> mask(n);
    for (std::size_t i = 0; i < n; ++i) mask[i] = BitVec::unit(n, i);

    PhasePolynomialXor poly;
    poly.num_vars = n;

    for (const auto& g : c.gates) {
        switch (g.kind) {
            case GateKind::CNOT:
                mask[g.q[1]] ^= mask[g.q[0]];
                break;
            case GateKind::T:
            case GateKind::S:
            case GateKind::Z:
            case GateKind::Sdg:
            case GateKind::Tdg:
                poly.add(mask[g.q[0]], gate_phase_weight(g.kind));
                break;
            case GateKind::CZ: {
                const BitVec &ma = mask[g.q[0]], &mb = mask[g.q[1]];
                poly.add(ma, 2);
                poly.add(mb, 2);
                poly.add(ma ^ mb, 6);
                break;
            }
            case GateKind::CS: {
                const BitVec &ma = mask[g.q[0]], &mb = mask[g.q[1]];
                poly.add(ma, 1);
                poly.add(mb, 1);
                poly.add(ma ^ mb, 7);
                break;
            }
            case GateKind::CCZ: {
                const BitVec &ma = mask[g.q[0]], &mb = mask[g.q[1]], &mc = mask[g.q[2]];
                poly.add(ma, 1);
                poly.add(mb, 1);
                poly.add(mc, 1);
                poly.add(ma ^ mb, 7);
                poly.add(ma ^ mc, 7);
                poly.add(mb ^ mc, 7);
                poly.add(ma ^ mb ^ mc, 1);
                break;
            }
            default:
                throw std::runtime_error(std::string("extract_xor_polynomial: non-diagonal gate ") +
                                         gate_name(g.kind));
        }
    }

    BitMatrix action(n, n);
    for (std::size_t i = 0; i < n; ++i) action.row(i) = mask[i];
    return {std::move(poly), std::move(action)};
}

MultilinearPhase to_multilinear(const PhasePolynomialXor& p) {
    MultilinearPhase m(p.num_vars);
    for (const auto& [mask, w] : p.terms) {
        auto supp = mask.support();
        for (std::size_t i : supp) m.a[i] = static_cast<std::uint8_t>((m.a[i] + w) % 8);
        for (std::size_t x = 0; x < supp.size(); ++x)
            for (std::size_t y = x + 1; y < supp.size(); ++y) {
                auto& b = m.bij(supp[x], supp[y]);
                b = static_cast<std::uint8_t>((b + 4 - w % 4) % 4);  // -w mod 4
            }
        if (w & 1)
            for (std::size_t x = 0; x < supp.size(); ++x)
                for (std::size_t y = x + 1; y < supp.size(); ++y)
                    for (std::size_t z = y + 1; z < supp.size(); ++z) {
                        std::array<std::uint32_t, 3> t = {static_cast<std::uint32_t>(supp[x]),
                                                          static_cast<std::uint32_t>(supp[y]),
                                                          static_cast<std::uint32_t>(supp[z])};
                        auto it = m.c.find(t);
                        if (it == m.c.end()) m.c.insert(t);
                        else m.c.erase(it);
                    }
        // degree >= 4 contributions are multiples of 2*pi and vanish
    }
    return m;
}

bool equivalent_mod_clifford(const MultilinearPhase& p1, const MultilinearPhase& p2) {
    if (p1.n != p2.n) throw std::runtime_error("equivalent_mod_clifford: dimension mismatch");
    for (std::size_t i = 0; i < p1.n; ++i)
        if ((p1.a[i] & 1) != (p2.a[i] & 1)) return false;
    for (std::size_t i = 0; i < p1.n; ++i)
        for (std::size_t j = i + 1; j < p1.n; ++j)
            if ((p1.bij(i, j) & 1) != (p2.bij(i, j) & 1)) return false;
    return p1.c == p2.c;
}

std::vector<std::uint8_t> phase_vector(const PhasePolynomialXor& p) {
    if (p.num_vars > 20) throw std::runtime_error("phase_vector: N too large");
    const std::size_t size = 1ull << p.num_vars;
    std::vector<std::uint8_t> v(size, 0);
    for (const auto& [mask, w] : p.terms) {
        std::uint64_t mw = mask.low_word();
        for (std::size_t x = 0; x < size; ++x)
            if (__builtin_popcountll(mw & x) & 1) v[x] = static_cast<std::uint8_t>((v[x] + w) % 8);
    }
    return v;
}

std::vector<std::uint8_t> phase_vector(const MultilinearPhase& p) {
    if (p.n > 20) throw std::runtime_error("phase_vector: N too large");
    const std::size_t size = 1ull << p.n;
    std::vector<std::uint8_t> v(size, 0);
    for (std::size_t x = 0; x < size; ++x) {
        int acc = 0;
        for (std::size_t i = 0; i < p.n; ++i)
            if ((x >> i) & 1) acc += p.a[i];
        for (std::size_t i = 0; i < p.n; ++i)
            if ((x >> i) & 1)
                for (std::size_t j = i + 1; j < p.n; ++j)
                    if ((x >> j) & 1) acc += 2 * p.bij(i, j);
        for (const auto& t : p.c)
            if (((x >> t[0]) & 1) && ((x >> t[1]) & 1) && ((x >> t[2]) & 1)) acc += 4;
        v[x] = static_cast<std::uint8_t>(acc % 8);
    }
    return v;
}

}  // namespace tcopt
