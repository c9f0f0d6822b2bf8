// Acceptance suite: one pass/fail line per criterion. Hard bounds fail the
// process; reproduction targets print PASS/MISS without failing.
//
// Search budgets are game-count based (deterministic); TCOPT_ACCEPT_GAMES
// scales the two benchmark searches (default 32, full desk budget ~600).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sim_support.hpp"
#include "tcopt/compiler.hpp"
#include "tcopt/resynth.hpp"
#include "tcopt/rewrite.hpp"
#include "tcopt/search.hpp"

using namespace tcopt;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!pass) ++failures;
}

void report_target(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d (target): %s\n", pass ? "PASS" : "MISS", criterion,
                detail.c_str());
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
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

Factor random_nonzero(std::mt19937_64& gen, std::size_t n) {
    for (;;) {
        Factor f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (gen() & 1) f.set(i, true);
        if (f.any()) return f;
    }
}

int accept_games() {
    if (const char* env = std::getenv("TCOPT_ACCEPT_GAMES")) {
        int g = std::atoi(env);
        if (g >= 1) return g;
    }
    return 32;
}

// --- criterion 1: oracle optima ---------------------------------------------
void criterion_oracle() {
    auto t0 = std::chrono::steady_clock::now();
    auto cs = min_waring_rank(cs_tensor(), 5);
    auto ccz = min_waring_rank(ccz_tensor(), 8);
    double secs = seconds_since(t0);
    bool ok = cs && cs->first == 3 && from_decomposition(2, cs->second.factors) == cs_tensor() &&
              ccz && ccz->first == 7 &&
              from_decomposition(3, ccz->second.factors) == ccz_tensor() && secs < 60.0;
    std::ostringstream d;
    d << "oracle proves rank(CS)=" << (cs ? cs->first : 0) << ", rank(CCZ)="
      << (ccz ? ccz->first : 0) << ", witnesses verify, " << secs << " s (< 60 s)";
    report(1, ok, d.str());
}

// --- criterion 2: gadget-aware search ----------------------------------------
void criterion_gadget_search() {
    SearchConfig cfg;
    cfg.simulations = 400;
    cfg.games = 8;
    cfg.basis_changes = 64;
    cfg.seed = 2;
    cfg.seed_baselines = false;  // exercise the search, not the baselines

    auto t0 = std::chrono::steady_clock::now();
    auto ccz = optimize(ccz_tensor(), cfg);
    double ccz_secs = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    auto cs = optimize(cs_tensor(), cfg);
    double cs_secs = seconds_since(t0);

    bool ok = ccz.found && ccz.cost.equivalent_t == 2 && ccz_secs < 10.0 && cs.found &&
              cs.cost.equivalent_t == 2 && cs_secs < 10.0;
    std::ostringstream d;
    d << "gadget search reaches CCZ=" << ccz.cost.equivalent_t << " in " << ccz_secs
      << " s, CS=" << cs.cost.equivalent_t << " in " << cs_secs << " s (each < 10 s, want 2)";
    report(2, ok, d.str());
}

// --- criterion 3: compilation fidelity ---------------------------------------
std::vector<CompiledTarget> compiled_gf4, compiled_gf8;

void criterion_compile_fidelity() {
    compiled_gf4 = compile(parse_qasm(read_file(std::string(TCOPT_CORPUS_DIR) + "/gf4_mult.qasm")));
    compiled_gf8 = compile(parse_qasm(read_file(std::string(TCOPT_CORPUS_DIR) + "/gf8_mult.qasm")));
    bool ok = compiled_gf4.size() == 1 && compiled_gf4[0].n() == 6 &&
              compiled_gf4[0].ancilla_count == 0 && compiled_gf4[0].initial_r() == 28 &&
              compiled_gf8.size() == 1 && compiled_gf8[0].n() == 9 &&
              compiled_gf8[0].ancilla_count == 0 && compiled_gf8[0].initial_r() == 63;
    std::ostringstream d;
    d << "GF(2^2)-mult -> " << compiled_gf4[0].n() << " qubits/"
      << compiled_gf4[0].ancilla_count << " ancillas/R=" << compiled_gf4[0].initial_r()
      << " (want 6/0/28); GF(2^3)-mult -> " << compiled_gf8[0].n() << "/"
      << compiled_gf8[0].ancilla_count << "/R=" << compiled_gf8[0].initial_r()
      << " (want 9/0/63)";
    report(3, ok, d.str());
}

// --- criterion 4: benchmark T-counts -----------------------------------------
void criterion_benchmark() {
    const CompiledTarget& gf4 = compiled_gf4[0];
    std::vector<Decomposition> baseline{gf4.initial_decomposition()};
    const int games = accept_games();

    {
        SearchConfig cfg;
        cfg.simulations = 300;
        cfg.games = games;
        cfg.gadgets_enabled = false;
        cfg.seed = 1;
        auto res = optimize(gf4.tensor, cfg, baseline);
        bool hard = res.found && res.cost.equivalent_t <= 28;
        std::ostringstream d;
        d << "GF(2^2)-mult without gadgets: equivalent_t=" << res.cost.equivalent_t
          << " <= 28 (baseline monotonicity)";
        report(4, hard, d.str());
        report_target(4, res.cost.equivalent_t <= 17,
                      "without gadgets reaches " + std::to_string(res.cost.equivalent_t) +
                          " (reproduction target 17)");
    }
    {
        SearchConfig cfg;
        cfg.simulations = 300;
        cfg.games = games;
        cfg.gadgets_enabled = true;
        cfg.toffoli_favoring = true;
        cfg.seed = 1;
        auto res = optimize(gf4.tensor, cfg, baseline);
        bool hard = res.found && res.cost.equivalent_t <= 8;
        std::ostringstream d;
        d << "GF(2^2)-mult with gadgets+favoring: equivalent_t=" << res.cost.equivalent_t
          << " <= 8 (original 4Tof)";
        report(4, hard, d.str());
        std::ostringstream t;
        t << "with gadgets reaches " << res.cost.equivalent_t << " (" << res.cost.toffoli
          << "Tof + " << res.cost.cs << "CS + " << res.cost.t << "T; stretch target 6)";
        report_target(4, res.cost.equivalent_t <= 6, t.str());
    }
}

// --- criterion 5: demo generator statistics -----------------------------------
void criterion_demo_stats() {
    const int count = 10000;
    DemoParams params;  // defaults
    int with_gadget = 0;
    std::size_t toffoli = 0, total_gadgets = 0;
    bool all_verify = true;
    for (int i = 0; i < count; ++i) {
        auto [tensor, demo] = synthetic_demo(splitmix64(0xACCE97ull + i), params);
        if (!demo.gadgets.empty()) ++with_gadget;
        for (const auto& g : demo.gadgets) {
            ++total_gadgets;
            if (g.kind == GadgetKind::Toffoli) ++toffoli;
        }
        if (from_decomposition(params.n, demo.factors) != tensor) all_verify = false;
        try {
            game_cost(demo);
        } catch (const std::exception&) {
            all_verify = false;
        }
        for (const auto& g : demo.gadgets) {
            std::vector<Factor> window(
                demo.factors.begin() + static_cast<std::ptrdiff_t>(g.start),
                demo.factors.begin() + static_cast<std::ptrdiff_t>(g.start + gadget_span(g.kind)));
            if (detect_gadget(window, true, 0, 0) != g.kind) all_verify = false;
        }
    }
    double frac = static_cast<double>(with_gadget) / count;
    double tof_frac = static_cast<double>(toffoli) / static_cast<double>(total_gadgets);
    bool ok = frac >= 0.88 && frac <= 0.92 && tof_frac >= 0.57 && tof_frac <= 0.63 && all_verify;
    std::ostringstream d;
    d << "10000 demos: gadget fraction " << frac << " in [0.88,0.92], Toffoli share " << tof_frac
      << " in [0.57,0.63], all self-verify=" << (all_verify ? "yes" : "no");
    report(5, ok, d.str());
}

// --- criterion 6: property suites ---------------------------------------------
bool prop_waring_round_trip() {
    std::mt19937_64 gen(601);
    for (int rep = 0; rep < 1000; ++rep) {
        std::size_t n = 2 + gen() % 7;
        std::size_t r = 1 + gen() % 20;
        std::vector<Factor> fs;
        for (std::size_t i = 0; i < r; ++i) fs.push_back(random_nonzero(gen, n));
        SignatureTensor t = from_decomposition(n, fs);
        for (const auto& f : fs) t = subtract_rank_one(t, f);
        if (!t.is_zero()) return false;
    }
    return true;
}

bool prop_basis_change() {
    std::mt19937_64 gen(602);
    int done = 0;
    while (done < 1000) {
        DemoParams p;
        p.n = 3 + gen() % 6;
        p.r_max = 20;
        auto [tensor, demo] = synthetic_demo(gen(), p);
        auto m = random_invertible(p.n, gen());
        Decomposition mapped = demo;
        for (auto& f : mapped.factors) f = m.mul(f);
        try {
            if (game_cost(mapped).equivalent_t != game_cost(demo).equivalent_t) return false;
        } catch (const std::exception&) {
            return false;  // a gadget pattern broke under the basis change
        }
        if (from_decomposition(p.n, mapped.factors) != change_of_basis(tensor, m)) return false;
        ++done;
    }
    return true;
}

bool prop_reward_identity() {
    std::mt19937_64 gen(603);
    int done = 0;
    while (done < 1000) {
        DemoParams p;
        p.n = 4 + gen() % 4;
        p.r_max = 24;
        auto [tensor, demo] = synthetic_demo(gen(), p);
        GameState st = GameState::new_game(tensor, GameConfig{true, 300});
        int total = 0;
        for (const auto& u : demo.factors) {
            if (st.terminal()) break;
            total += st.step(u).reward;
        }
        if (st.terminal_kind() != Terminal::Solved) continue;
        if (total != -static_cast<int>(game_cost(st.decomposition()).equivalent_t)) return false;
        ++done;
    }
    return true;
}

bool prop_detector_oracle() {
    std::mt19937_64 gen(604);
    for (int rep = 0; rep < 10000; ++rep) {
        std::size_t n = 3 + gen() % 6;
        std::vector<Factor> h;
        if (gen() & 1) {
            Factor a = random_nonzero(gen, n), b = random_nonzero(gen, n),
                   c = random_nonzero(gen, n);
            for (const Factor& f : {a, b, c, a ^ b, a ^ c, a ^ b ^ c, b ^ c}) h.push_back(f);
            h.resize(3 + gen() % 5);
        }
        while (h.size() < 7 + gen() % 3) h.push_back(random_nonzero(gen, n));
        std::size_t tb = gen() % 2, cb = gen() % 2;

        std::optional<GadgetKind> want;  // the pattern equations, stated directly
        const std::size_t s = h.size();
        if (s >= 7 && s - 7 >= tb) {
            std::vector<BitVec> abc{h[s - 7], h[s - 6], h[s - 5]};
            if (gf2_rank(abc) == 3 && h[s - 4] == (h[s - 7] ^ h[s - 6]) &&
                h[s - 3] == (h[s - 7] ^ h[s - 5]) &&
                h[s - 2] == (h[s - 7] ^ h[s - 6] ^ h[s - 5]) && h[s - 1] == (h[s - 6] ^ h[s - 5]))
                want = GadgetKind::Toffoli;
        }
        if (!want && s >= 3 && s - 3 >= cb) {
            std::vector<BitVec> ab{h[s - 3], h[s - 2]};
            if (gf2_rank(ab) == 2 && h[s - 1] == (h[s - 3] ^ h[s - 2])) want = GadgetKind::CS;
        }
        if (detect_gadget(h, true, tb, cb) != want) return false;
    }
    return true;
}

bool prop_resynth_round_trip() {
    std::mt19937_64 gen(605);
    for (int rep = 0; rep < 1000; ++rep) {
        DemoParams p;
        p.n = 3 + gen() % 6;
        p.r_max = 20;
        auto [tensor, demo] = synthetic_demo(gen(), p);
        Circuit w = resynthesize(demo);
        if (from_multilinear(to_multilinear(extract_xor_polynomial(w).poly)) != tensor)
            return false;
    }
    return true;
}

bool prop_phase_correction() {
    std::mt19937_64 gen(606);
    int done = 0;
    while (done < 1000) {
        std::size_t n = 2 + gen() % 5;
        Circuit w;
        w.num_qubits = n;
        std::uniform_int_distribution<std::uint32_t> qd(0, static_cast<std::uint32_t>(n - 1));
        for (int i = 0; i < 14; ++i) {
            switch (gen() % 4) {
                case 0: {
                    std::uint32_t a = qd(gen), b = qd(gen);
                    if (a != b) w.push(Gate::cnot(a, b));
                    break;
                }
                case 1:
                    w.push(Gate::t(qd(gen)));
                    break;
                case 2:
                    w.push(Gate::s(qd(gen)));
                    break;
                default:
                    w.push(Gate::tdg(qd(gen)));
                    break;
            }
        }
        auto target = diagonalize_and_extract(rewrite_to_basis(w));
        if (target.factor_matrix.empty()) continue;
        Decomposition d{target.n(), target.factor_matrix, {}};
        Circuit rebuilt = resynthesize(d);
        auto orig = extract_xor_polynomial(target.diagonal_circuit).poly;
        Circuit corr = clifford_correction(orig, rebuilt);
        Circuit combined = rebuilt;
        combined.gates.insert(combined.gates.end(), corr.gates.begin(), corr.gates.end());
        if (phase_vector(extract_xor_polynomial(combined).poly) != phase_vector(orig))
            return false;
        ++done;
    }
    return true;
}

bool prop_compiler_end_to_end() {
    std::mt19937_64 gen(607);
    static const GateKind kinds[] = {GateKind::H,   GateKind::X,   GateKind::Z,  GateKind::S,
                                     GateKind::Sdg, GateKind::T,   GateKind::Tdg, GateKind::CZ,
                                     GateKind::CNOT, GateKind::CCX};
    int done = 0;
    while (done < 1000) {
        std::size_t n = 2 + gen() % 3;  // 2..4 original qubits
        Circuit c;
        c.num_qubits = n;
        std::uniform_int_distribution<std::size_t> kd(0, std::size(kinds) - 1);
        std::uniform_int_distribution<std::uint32_t> qd(0, static_cast<std::uint32_t>(n - 1));
        while (c.gates.size() < 16) {
            GateKind k = kinds[kd(gen)];
            if (static_cast<std::size_t>(gate_arity(k)) > n) continue;
            Gate g{k, {qd(gen), qd(gen), qd(gen)}};
            bool distinct = true;
            for (int i = 0; i < g.arity(); ++i)
                for (int j = i + 1; j < g.arity(); ++j)
                    if (g.q[static_cast<std::size_t>(i)] == g.q[static_cast<std::size_t>(j)])
                        distinct = false;
            if (distinct) c.push(g);
        }
        auto targets = compile(c);
        if (targets.size() != 1) continue;  // all-Clifford sample
        if (targets[0].clifford_prefix.num_qubits > 10) continue;
        if (!simsup::compiled_target_equivalent(rewrite_to_basis(c), targets[0])) return false;
        ++done;
    }
    return true;
}

void criterion_properties() {
    auto t0 = std::chrono::steady_clock::now();
    struct Suite {
        const char* name;
        bool (*run)();
    };
    const Suite suites[] = {
        {"waring round trip", prop_waring_round_trip},
        {"basis-change action + gadget preservation", prop_basis_change},
        {"reward identity", prop_reward_identity},
        {"gadget detector vs oracle", prop_detector_oracle},
        {"resynthesis round trip", prop_resynth_round_trip},
        {"phase-vector equivalence with correction", prop_phase_correction},
        {"compiler end-to-end state-vector equivalence", prop_compiler_end_to_end},
    };
    bool all = true;
    std::string failed;
    for (const auto& s : suites) {
        if (!s.run()) {
            all = false;
            failed += std::string(" [") + s.name + "]";
        }
    }
    double secs = seconds_since(t0);
    bool ok = all && secs < 300.0;
    std::ostringstream d;
    d << "property suites (>= 1000 cases each) in " << secs << " s (< 300 s)"
      << (failed.empty() ? "" : "; failed:" + failed);
    report(6, ok, d.str());
}

// --- criterion 7: determinism --------------------------------------------------
void criterion_determinism() {
    SearchConfig cfg;
    cfg.simulations = 120;
    cfg.games = 8;
    cfg.basis_changes = 32;
    cfg.seed = 17;
    const SignatureTensor t = compiled_gf4[0].tensor;
    auto a = optimize(t, cfg);
    auto b = optimize(t, cfg);
    SearchConfig more = cfg;
    more.workers = 3;
    auto c = optimize(t, more);
    bool ok = a.found && b.found && c.found &&
              decomposition_to_json(a.best) == decomposition_to_json(b.best) &&
              decomposition_to_json(a.best) == decomposition_to_json(c.best);
    report(7, ok,
           "identical seed/config give byte-identical decomposition JSON across runs and worker "
           "counts (1 vs 3)");
}

}  // namespace

int main() {
    criterion_oracle();
    criterion_gadget_search();
    criterion_compile_fidelity();
    criterion_benchmark();
    criterion_demo_stats();
    criterion_properties();
    criterion_determinism();
    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
