#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "sim_support.hpp"
#include "tcopt/compiler.hpp"
#include "tcopt/phase_poly.hpp"
#include "tcopt/rewrite.hpp"

using namespace tcopt;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool working_set_only(const Circuit& c) {
    for (const auto& g : c.gates)
        switch (g.kind) {
            case GateKind::H:
            case GateKind::Z:
            case GateKind::S:
            case GateKind::T:
            case GateKind::CNOT:
                break;
            default:
                return false;
        }
    return true;
}

Circuit random_circuit(std::mt19937_64& gen, std::size_t n, std::size_t len) {
    static const GateKind kinds[] = {GateKind::H,  GateKind::X,   GateKind::Z,  GateKind::S,
                                     GateKind::Sdg, GateKind::T,  GateKind::Tdg, GateKind::CZ,
                                     GateKind::CNOT, GateKind::CCX};
    Circuit c;
    c.num_qubits = n;
    std::uniform_int_distribution<std::size_t> kd(0, std::size(kinds) - 1);
    std::uniform_int_distribution<std::uint32_t> qd(0, static_cast<std::uint32_t>(n - 1));
    while (c.gates.size() < len) {
        GateKind k = kinds[kd(gen)];
        int a = gate_arity(k);
        if (static_cast<std::size_t>(a) > n) continue;
        Gate g{k, {qd(gen), qd(gen), qd(gen)}};
        bool distinct = true;
        for (int i = 0; i < a; ++i)
            for (int j = i + 1; j < a; ++j)
                if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)])
                    distinct = false;
        if (!distinct) continue;
        c.push(g);
    }
    return c;
}

}  // namespace

TEST_CASE("HH cancels to the empty circuit") {
    Circuit c;
    c.num_qubits = 1;
    c.push(Gate::h(0));
    c.push(Gate::h(0));
    CHECK(rewrite_to_basis(c).gates.empty());
}

TEST_CASE("(HxH) CNOT (HxH) = reversed CNOT") {
    Circuit c;
    c.num_qubits = 2;
    for (const Gate& g :
         {Gate::h(0), Gate::h(1), Gate::cnot(0, 1), Gate::h(0), Gate::h(1)})
        c.push(g);
    Circuit r = rewrite_to_basis(c);
    REQUIRE(r.gates.size() == 1);
    CHECK(r.gates[0] == Gate::cnot(1, 0));
}

TEST_CASE("ccx expansion: structure and the CCZ phase oracle") {
    Circuit c;
    c.num_qubits = 3;
    c.push(Gate::ccx(0, 1, 2));
    Circuit r = rewrite_to_basis(c);
    CHECK(working_set_only(r));

    std::size_t h_count = 0;
    for (const auto& g : r.gates)
        if (g.kind == GateKind::H) ++h_count;
    CHECK(h_count == 2);

    // unitary-exact
    CHECK(simsup::circuits_equivalent(c, r));

    // the diagonal middle has the CCZ phase vector
    BlockDecomposition bd = block_partition(r);
    REQUIRE(bd.a_count() == 1);
    auto ex = extract_xor_polynomial(bd.a_block(0));
    auto pv = phase_vector(ex.poly);
    std::vector<std::uint8_t> want(8, 0);
    want[7] = 4;
    CHECK(pv == want);
    CHECK(ex.linear_action == BitMatrix::identity(3));
}

TEST_CASE("GF-mult listings rewrite with no internal Hadamards") {
    for (auto [name, qubits] :
         {std::pair{"/gf4_mult.qasm", 6ul}, std::pair{"/gf8_mult.qasm", 9ul}}) {
        Circuit c = parse_qasm(read_file(std::string(TCOPT_CORPUS_DIR) + name));
        Circuit r = rewrite_to_basis(c);
        CHECK(working_set_only(r));
        CHECK(r.num_qubits == qubits);
        CHECK(block_partition(r).internal_h_count() == 0);
        if (qubits <= 10) CHECK(simsup::circuits_equivalent(c, r));
    }
}

TEST_CASE("rewrite preserves the unitary on random circuits") {
    std::mt19937_64 gen(2024);
    for (int i = 0; i < 300; ++i) {
        std::size_t n = 2 + gen() % 4;  // 2..5
        Circuit c = random_circuit(gen, n, 6 + gen() % 25);
        Circuit r = rewrite_to_basis(c);
        CHECK(working_set_only(r));
        CHECK(simsup::circuits_equivalent(c, r));
    }
}

TEST_CASE("phase runs merge mod 8") {
    Circuit c;
    c.num_qubits = 1;
    for (int i = 0; i < 8; ++i) c.push(Gate::t(0));
    CHECK(rewrite_to_basis(c).gates.empty());

    Circuit d;
    d.num_qubits = 1;
    d.push(Gate::z(0));
    d.push(Gate::s(0));
    d.push(Gate::t(0));
    d.push(Gate::t(0));
    CHECK(rewrite_to_basis(d).gates.empty());  // 4+2+1+1 = 8
}
