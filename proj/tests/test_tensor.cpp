#include <random>

#include "doctest.h"
#include "tcopt/tensor.hpp"

using namespace tcopt;

namespace {

using Entry = std::array<std::uint32_t, 3>;

Factor fac(std::string_view s) { return BitVec::from_string(s); }

std::vector<Factor> random_factors(std::mt19937_64& gen, std::size_t n, std::size_t r) {
    std::vector<Factor> out;
    while (out.size() < r) {
        Factor f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (gen() & 1) f.set(i, true);
        if (f.any()) out.push_back(std::move(f));
    }
    return out;
}

SignatureTensor cs_tensor() {
    MultilinearPhase m(2);
    m.bij(0, 1) = 1;
    return from_multilinear(m);
}

SignatureTensor ccz_tensor() {
    MultilinearPhase m(3);
    m.c.insert({0, 1, 2});
    return from_multilinear(m);
}

}  // namespace

TEST_CASE("from_multilinear examples") {
    MultilinearPhase t_gate(2);
    t_gate.a[0] = 1;
    CHECK(from_multilinear(t_gate).entries() == std::vector<Entry>{{0, 0, 0}});

    CHECK(cs_tensor().entries() == std::vector<Entry>{{0, 1, 1}});
    CHECK(ccz_tensor().entries() == std::vector<Entry>{{0, 1, 2}});
}

TEST_CASE("from_decomposition examples") {
    Factor u = fac("1011");
    CHECK(from_decomposition(4, {u, u}).is_zero());

    std::vector<Factor> all7;
    for (std::uint64_t v = 1; v < 8; ++v) {
        Factor f(3);
        for (std::size_t i = 0; i < 3; ++i)
            if ((v >> i) & 1) f.set(i, true);
        all7.push_back(std::move(f));
    }
    CHECK(from_decomposition(3, all7) == ccz_tensor());

    SignatureTensor r1 = rank_one(fac("101"));
    CHECK(r1.entries() == std::vector<Entry>{{0, 0, 0}, {0, 2, 2}, {2, 2, 2}});
    CHECK(r1.at(0, 0, 2));  // closure: pair class covers both index patterns
}

TEST_CASE("subtract_rank_one") {
    Factor u = fac("110");
    CHECK(subtract_rank_one(rank_one(u), u).is_zero());

    std::vector<Factor> all7;
    for (std::uint64_t v = 1; v < 8; ++v) {
        Factor f(3);
        for (std::size_t i = 0; i < 3; ++i)
            if ((v >> i) & 1) f.set(i, true);
        all7.push_back(std::move(f));
    }
    SignatureTensor t = ccz_tensor();
    for (const auto& f : all7) t = subtract_rank_one(t, f);
    CHECK(t.is_zero());

    SignatureTensor orig = ccz_tensor();
    SignatureTensor twice = subtract_rank_one(subtract_rank_one(orig, u), u);
    CHECK(twice == orig);

    CHECK_THROWS(subtract_rank_one(orig, Factor(3)));
}

TEST_CASE("change_of_basis") {
    std::mt19937_64 gen(5);
    SignatureTensor t = ccz_tensor();
    CHECK(change_of_basis(t, BitMatrix::identity(3)) == t);

    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 2 + gen() % 5;
        auto m = random_invertible(n, gen());
        auto fs = random_factors(gen, n, 1);
        CHECK(change_of_basis(rank_one(fs[0]), m) == rank_one(m.mul(fs[0])));
    }

    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 2 + gen() % 5;
        auto m = random_invertible(n, gen());
        auto t2 = from_decomposition(n, random_factors(gen, n, 1 + gen() % 8));
        CHECK(change_of_basis(change_of_basis(t2, m), *m.inverse()) == t2);
    }

    // left group action: M2 after M1 = M2*M1
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 2 + gen() % 4;
        auto m1 = random_invertible(n, gen());
        auto m2 = random_invertible(n, gen());
        auto t2 = from_decomposition(n, random_factors(gen, n, 1 + gen() % 8));
        CHECK(change_of_basis(change_of_basis(t2, m1), m2) == change_of_basis(t2, m2.mul(m1)));
    }

    BitMatrix singular(3, 3);
    CHECK_THROWS(change_of_basis(t, singular));
}

TEST_CASE("permute") {
    SignatureTensor t = ccz_tensor();
    CHECK(permute(t, {0, 1, 2}) == t);
    // fully symmetric support: invariant under all 6 permutations
    for (const auto& s : std::vector<std::vector<std::size_t>>{
             {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}})
        CHECK(permute(t, s) == t);

    CHECK_THROWS(permute(t, {0, 0, 1}));

    std::mt19937_64 gen(6);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 2 + gen() % 6;
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), 0);
        std::shuffle(sigma.begin(), sigma.end(), gen);
        auto fs = random_factors(gen, n, 1 + gen() % 10);

        // permuting the tensor = permuting every factor's bits
        std::vector<Factor> mapped;
        for (const auto& f : fs) {
            Factor g(n);
            for (std::size_t i = 0; i < n; ++i)
                if (f.get(i)) g.set(sigma[i], true);
            mapped.push_back(std::move(g));
        }
        CHECK(permute(from_decomposition(n, fs), sigma) == from_decomposition(n, mapped));

        // special case of change_of_basis with a permutation matrix
        BitMatrix pm(n, n);
        for (std::size_t i = 0; i < n; ++i) pm.set(sigma[i], i, true);
        CHECK(permute(from_decomposition(n, fs), sigma) ==
              change_of_basis(from_decomposition(n, fs), pm));
    }
}

TEST_CASE("Waring round trip: stepwise subtraction returns to zero") {
    std::mt19937_64 gen(7);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = 2 + gen() % 7;  // 2..8
        std::size_t r = 1 + gen() % 20;
        auto fs = random_factors(gen, n, r);
        SignatureTensor t = from_decomposition(n, fs);
        for (const auto& f : fs) t = subtract_rank_one(t, f);
        CHECK(t.is_zero());
    }
}

TEST_CASE("tensor JSON round trip and pair-class alias") {
    SignatureTensor t = cs_tensor();
    CHECK(tensor_from_json(tensor_to_json(t)) == t);

    // (0,0,1) is accepted as an alias of the pair class {0,1}
    auto a = tensor_from_json(R"({"n": 2, "entries": [[0,0,1]]})");
    auto b = tensor_from_json(R"({"n": 2, "entries": [[0,1,1]]})");
    CHECK(a == b);

    CHECK_THROWS(tensor_from_json(R"({"n": 2, "entries": [[0,1,5]]})"));
}

TEST_CASE("decomposition JSON round trip") {
    Decomposition d;
    d.n = 3;
    d.factors = {fac("110"), fac("011"), fac("101")};
    d.gadgets = {{GadgetKind::CS, 0}};
    auto text = decomposition_to_json(d);
    auto back = decomposition_from_json(text);
    CHECK(back.n == d.n);
    CHECK(back.factors == d.factors);
    CHECK(back.gadgets == d.gadgets);
    CHECK(decomposition_to_json(back) == text);
}

TEST_CASE("flattening rank lower-bounds the factor count") {
    std::mt19937_64 gen(8);
    for (int rep = 0; rep < 300; ++rep) {
        std::size_t n = 2 + gen() % 6;
        std::size_t r = 1 + gen() % 10;
        auto fs = random_factors(gen, n, r);
        SignatureTensor t = from_decomposition(n, fs);
        CHECK(t.flattening_rank() <= r);
    }
    CHECK(ccz_tensor().flattening_rank() == 3);
    CHECK(SignatureTensor(4).flattening_rank() == 0);
}
