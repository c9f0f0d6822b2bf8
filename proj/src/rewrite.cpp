#include "tcopt/rewrite.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "tcopt/gf2.hpp"

namespace tcopt {

namespace {

// Working gates during the pass. Phase carries a weight mod 8 (units of pi/4);
// CZ appears transiently from Hadamard hops and is lowered again at the end.
struct WGate {
    enum Kind : std::uint8_t { WH, WCX, WCZ, WP } kind;
    std::uint32_t a = 0;  // H/P wire, CX control, CZ first
    std::uint32_t b = 0;  // CX target, CZ second
    int w = 0;            // phase weight mod 8

    bool touches(std::uint32_t q) const {
        if (kind == WH || kind == WP) return a == q;
        return a == q || b == q;
    }
    bool operator==(const WGate& o) const {
        return kind == o.kind && a == o.a && b == o.b && w == o.w;
    }
};

void push_phase(std::vector<WGate>& g, std::uint32_t q, int w) {
    w = ((w % 8) + 8) % 8;
    if (w) g.push_back({WGate::WP, q, 0, w});
}

// Fixed CCZ layout: phases on a, b, c, a^b, a^c, b^c, a^b^c with signs +,+,+,-,-,-,+.
void expand_ccz(std::vector<WGate>& g, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    push_phase(g, a, 1);
    push_phase(g, b, 1);
    push_phase(g, c, 1);
    g.push_back({WGate::WCX, a, b, 0});  // b <- a^b
    push_phase(g, b, 7);
    g.push_back({WGate::WCX, a, c, 0});  // c <- a^c
    push_phase(g, c, 7);
    g.push_back({WGate::WCX, b, c, 0});  // c <- b^c
    push_phase(g, c, 7);
    g.push_back({WGate::WCX, a, c, 0});  // c <- a^b^c
    push_phase(g, c, 1);
    g.push_back({WGate::WCX, b, c, 0});
    g.push_back({WGate::WCX, a, b, 0});
}

std::vector<WGate> expand(const Circuit& c) {
    std::vector<WGate> g;
    for (const auto& gate : c.gates) {
        switch (gate.kind) {
            case GateKind::H:
                g.push_back({WGate::WH, gate.q[0], 0, 0});
                break;
            case GateKind::X:
                g.push_back({WGate::WH, gate.q[0], 0, 0});
                push_phase(g, gate.q[0], 4);
                g.push_back({WGate::WH, gate.q[0], 0, 0});
                break;
            case GateKind::Z:
            case GateKind::S:
            case GateKind::Sdg:
            case GateKind::T:
            case GateKind::Tdg:
                push_phase(g, gate.q[0], gate_phase_weight(gate.kind));
                break;
            case GateKind::CNOT:
                g.push_back({WGate::WCX, gate.q[0], gate.q[1], 0});
                break;
            case GateKind::CZ:
                g.push_back({WGate::WCZ, gate.q[0], gate.q[1], 0});
                break;
            case GateKind::CS:
                push_phase(g, gate.q[0], 1);
                push_phase(g, gate.q[1], 1);
                g.push_back({WGate::WCX, gate.q[0], gate.q[1], 0});
                push_phase(g, gate.q[1], 7);
                g.push_back({WGate::WCX, gate.q[0], gate.q[1], 0});
                break;
            case GateKind::CCZ:
                expand_ccz(g, gate.q[0], gate.q[1], gate.q[2]);
                break;
            case GateKind::CCX:
                g.push_back({WGate::WH, gate.q[2], 0, 0});
                expand_ccz(g, gate.q[0], gate.q[1], gate.q[2]);
                g.push_back({WGate::WH, gate.q[2], 0, 0});
                break;
        }
    }
    return g;
}

// Scan rightward from the H at index i, hopping through CNOT targets and CZs
// (and, when conversions are allowed, through CNOT controls at the price of two
// new H's on the other wire). On reaching a matching H the pair cancels.
// Identities used, as time-ordered gate lists:
//   [H(t), CX(c->t)]  ==  [CZ(c,t), H(t)]
//   [H(x), CZ(x,y)]   ==  [CX(y->x), H(x)]
//   [H(q), CX(q->t)]  ==  [H(t), CX(t->q), H(q), H(t)]
bool try_cancel_from(std::vector<WGate>& g, std::size_t i, bool allow_conversions) {
    const std::uint32_t q = g[i].a;
    std::vector<WGate> rewritten;  // gates between i and the match, transformed
    for (std::size_t j = i + 1; j < g.size(); ++j) {
        const WGate& x = g[j];
        if (!x.touches(q)) {
            rewritten.push_back(x);
            continue;
        }
        if (x.kind == WGate::WH) {
            // match: drop both H's, splice the transformed middle back in
            std::vector<WGate> out(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(i));
            out.insert(out.end(), rewritten.begin(), rewritten.end());
            out.insert(out.end(), g.begin() + static_cast<std::ptrdiff_t>(j) + 1, g.end());
            g = std::move(out);
            return true;
        }
        if (x.kind == WGate::WP) return false;
        if (x.kind == WGate::WCX && x.b == q) {
            rewritten.push_back({WGate::WCZ, x.a, q, 0});
            continue;
        }
        if (x.kind == WGate::WCZ) {
            std::uint32_t y = (x.a == q) ? x.b : x.a;
            rewritten.push_back({WGate::WCX, y, q, 0});
            continue;
        }
        // CNOT with control q
        if (!allow_conversions) return false;
        rewritten.push_back({WGate::WH, x.b, 0, 0});
        rewritten.push_back({WGate::WCX, x.b, q, 0});
        rewritten.push_back({WGate::WH, x.b, 0, 0});
    }
    return false;
}

bool cancel_pass(std::vector<WGate>& g, bool allow_conversions, bool first_only) {
    bool progress = false;
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (g[i].kind != WGate::WH) continue;
            if (try_cancel_from(g, i, allow_conversions)) {
                progress = true;
                if (first_only) return true;
                again = true;
                break;
            }
        }
    }
    return progress;
}

// Merge adjacent same-wire phases (adjacent up to gates on other wires only);
// drop weight-0 phases. Deliberately narrow: equal-parity phases separated by
// CNOTs are left for the optimizer, keeping the naive per-gate T layout.
bool merge_pass(std::vector<WGate>& g) {
    bool progress = false;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind != WGate::WP) continue;
        const std::uint32_t q = g[i].a;
        for (std::size_t j = i + 1; j < g.size();) {
            const WGate& x = g[j];
            if (!x.touches(q)) {
                ++j;
                continue;
            }
            if (x.kind == WGate::WP) {
                g[i].w = (g[i].w + x.w) % 8;
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(j));
                progress = true;
                continue;
            }
            break;
        }
    }
    for (std::size_t i = g.size(); i-- > 0;)
        if (g[i].kind == WGate::WP && g[i].w % 8 == 0) {
            g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
            progress = true;
        }
    return progress;
}

// Move H's with no same-wire gate before them to the front, and symmetrically
// to the back. Free commutation only; relative order preserved.
bool push_pass(std::vector<WGate>& g, std::size_t num_wires) {
    const std::vector<WGate> before = g;
    std::vector<WGate> lead, body, tail;
    {
        std::vector<bool> seen(num_wires, false);
        for (const auto& x : g) {
            if (x.kind == WGate::WH && !seen[x.a]) {
                lead.push_back(x);
            } else {
                body.push_back(x);
                seen[x.a] = true;
                if (x.kind == WGate::WCX || x.kind == WGate::WCZ) seen[x.b] = true;
            }
        }
    }
    {
        std::vector<bool> seen(num_wires, false);
        std::vector<WGate> kept;
        for (std::size_t i = body.size(); i-- > 0;) {
            const WGate& x = body[i];
            if (x.kind == WGate::WH && !seen[x.a]) {
                tail.push_back(x);
            } else {
                kept.push_back(x);
                seen[x.a] = true;
                if (x.kind == WGate::WCX || x.kind == WGate::WCZ) seen[x.b] = true;
            }
        }
        std::reverse(kept.begin(), kept.end());
        std::reverse(tail.begin(), tail.end());
        body = std::move(kept);
    }
    g.clear();
    g.insert(g.end(), lead.begin(), lead.end());
    g.insert(g.end(), body.begin(), body.end());
    g.insert(g.end(), tail.begin(), tail.end());
    return g != before;
}

std::uint64_t list_hash(const std::vector<WGate>& g) {
    std::uint64_t h = 0x853c49e6748fea9bull;
    for (const auto& x : g)
        h = splitmix64(h ^ (static_cast<std::uint64_t>(x.kind) << 48 ^
                            static_cast<std::uint64_t>(x.a) << 24 ^
                            static_cast<std::uint64_t>(x.b) << 8 ^
                            static_cast<std::uint64_t>(x.w)));
    return h;
}

// (interior H count, total H count, length): lower is better.
std::array<std::size_t, 3> list_score(const std::vector<WGate>& g) {
    std::size_t interior = 0, total = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].kind != WGate::WH) continue;
        ++total;
        bool before = false, after = false;
        for (std::size_t j = 0; j < i && !before; ++j) before = g[j].touches(g[i].a);
        for (std::size_t j = i + 1; j < g.size() && !after; ++j) after = g[j].touches(g[i].a);
        if (before && after) ++interior;
    }
    return {interior, total, g.size()};
}

void run_peephole(std::vector<WGate>& g, std::size_t num_wires, bool allow_conversions) {
    std::size_t cx_count = 0;
    for (const auto& x : g)
        if (x.kind == WGate::WCX) ++cx_count;
    std::size_t conversion_budget = 4 * cx_count + 8;
    std::unordered_set<std::uint64_t> visited;

    std::vector<WGate> best = g;
    std::array<std::size_t, 3> best_score{SIZE_MAX, SIZE_MAX, SIZE_MAX};
    for (;;) {
        bool changed = false;
        changed |= cancel_pass(g, /*allow_conversions=*/false, /*first_only=*/false);
        changed |= merge_pass(g);
        changed |= push_pass(g, num_wires);
        if (changed) continue;
        auto score = list_score(g);
        if (score < best_score) {
            best_score = score;
            best = g;
        }
        if (!allow_conversions || conversion_budget == 0) break;
        if (!visited.insert(list_hash(g)).second) break;  // state revisited
        if (!cancel_pass(g, /*allow_conversions=*/true, /*first_only=*/true)) break;
        --conversion_budget;
    }
    g = std::move(best);
}

Circuit assemble(const std::vector<WGate>& g, std::size_t num_qubits,
                 const std::vector<Register>& regs) {
    Circuit out;
    out.num_qubits = num_qubits;
    out.registers = regs;
    for (const auto& x : g) {
        switch (x.kind) {
            case WGate::WH:
                out.push(Gate::h(x.a));
                break;
            case WGate::WCX:
                out.push(Gate::cnot(x.a, x.b));
                break;
            case WGate::WCZ: {
                // CZ(a,b) = S(a) S(b) CX(a->b) Sdg(b) CX(a->b), Sdg as Z,S
                out.push(Gate::s(x.a));
                out.push(Gate::s(x.b));
                out.push(Gate::cnot(x.a, x.b));
                out.push(Gate::z(x.b));
                out.push(Gate::s(x.b));
                out.push(Gate::cnot(x.a, x.b));
                break;
            }
            case WGate::WP: {
                int w = x.w % 8;
                if (w >= 4) {
                    out.push(Gate::z(x.a));
                    w -= 4;
                }
                if (w >= 2) {
                    out.push(Gate::s(x.a));
                    w -= 2;
                }
                if (w >= 1) out.push(Gate::t(x.a));
                break;
            }
        }
    }
    return out;
}

}  // namespace

Circuit rewrite_to_basis(const Circuit& c) {
    c.validate();
    auto g = expand(c);
    run_peephole(g, c.num_qubits, /*allow_conversions=*/true);
    return assemble(g, c.num_qubits, c.registers);
}

Circuit peephole(const Circuit& c, bool allow_conversions) {
    for (const auto& gate : c.gates)
        switch (gate.kind) {
            case GateKind::H:
            case GateKind::Z:
            case GateKind::S:
            case GateKind::T:
            case GateKind::CNOT:
                break;
            default:
                throw std::runtime_error("peephole: circuit not over the working gate set");
        }
    auto g = expand(c);
    run_peephole(g, c.num_qubits, allow_conversions);
    return assemble(g, c.num_qubits, c.registers);
}

}  // namespace tcopt
