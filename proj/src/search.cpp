#include "tcopt/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "tcopt/resynth.hpp"

namespace tcopt {

namespace {

bool independent2(const Factor& a, const Factor& b) {
    return a.any() && b.any() && a != b;
}

bool independent3(const Factor& a, const Factor& b, const Factor& c) {
    if (!independent2(a, b) || !c.any()) return false;
    return c != a && c != b && c != (a ^ b);
}

// Net reduction in set bits of the closed representation if cube(u) is
// subtracted: 2*overlap - |supp|^3.
double weight_delta(const SignatureTensor& t, const Factor& u) {
    std::array<std::uint8_t, BitVec::max_bits> supp;
    std::size_t m = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        if (u.get(i)) supp[m++] = static_cast<std::uint8_t>(i);
    std::size_t ones = 0;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) ones += t.slice_row(supp[a], supp[b]).and_popcount(u);
    double cube_bits = static_cast<double>(m) * m * m;
    return 2.0 * static_cast<double>(ones) - cube_bits;
}

// Pattern-completing factors implied by the recent history (rule iv), with a
// relative strength: deeper Toffoli prefixes dominate the cheap CS completion.
struct Completion {
    Factor factor;
    double strength;
};

std::vector<Completion> pattern_completions(const GameState& st, bool favor_toffoli) {
    std::vector<Completion> out;
    const auto& h = st.history();
    const std::size_t s = h.size();
    const std::size_t tb = st.toffoli_barrier(), cb = st.cs_barrier();
    if (!favor_toffoli && s >= 2 && s - 2 >= cb && independent2(h[s - 2], h[s - 1]))
        out.push_back({h[s - 2] ^ h[s - 1], 0.5});
    for (std::size_t k = 3; k <= 6 && k <= s; ++k) {
        if (s - k < tb) continue;
        const Factor &a = h[s - k], &b = h[s - k + 1], &c = h[s - k + 2];
        if (!independent3(a, b, c)) continue;
        static const int pattern[4][3] = {{1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
        bool match = true;
        for (std::size_t p = 3; p < k && match; ++p) {
            Factor expect(a.size());
            if (pattern[p - 3][0]) expect ^= a;
            if (pattern[p - 3][1]) expect ^= b;
            if (pattern[p - 3][2]) expect ^= c;
            match = (h[s - k + p] == expect);
        }
        if (!match) continue;
        const int* next = pattern[k - 3];
        Factor f(a.size());
        if (next[0]) f ^= a;
        if (next[1]) f ^= b;
        if (next[2]) f ^= c;
        if (f.any()) out.push_back({f, static_cast<double>(k) * static_cast<double>(k)});
    }
    return out;
}

// Weight drop when the full 7-factor span cube of (a, b, c) is subtracted.
double span_delta(const SignatureTensor& t, const Factor& a, const Factor& b, const Factor& c) {
    SignatureTensor tmp = t;
    const double before = static_cast<double>(tmp.weight());
    for (const Factor& u : {a, b, c, a ^ b, a ^ c, a ^ b ^ c, b ^ c}) tmp.xor_cube(u);
    return before - static_cast<double>(tmp.weight());
}

std::vector<WeightedFactor> candidate_set(const GameState& st, const SearchConfig& cfg,
                                          bool with_pairs) {
    const SignatureTensor& t = st.residual();
    const std::size_t n = t.n();
    std::vector<Factor> base;
    base.reserve(n * n + n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const BitVec& row = t.slice_row(i, j);
            if (row.any()) base.push_back(row);
        }
    for (std::size_t i = 0; i < n; ++i)
        if (t.at(i, i, i)) base.push_back(BitVec::unit(n, i));
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());

    std::vector<Factor> cands = base;
    if (with_pairs) {
        std::size_t budget = 4096;
        for (std::size_t p = 0; p < base.size() && budget; ++p)
            for (std::size_t q = p + 1; q < base.size() && budget; ++q) {
                Factor v = base[p] ^ base[q];
                if (v.any()) {
                    cands.push_back(std::move(v));
                    --budget;
                }
            }
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    }

    std::vector<WeightedFactor> out;
    out.reserve(cands.size() + 4);
    double max_w = 1.0;
    for (auto& u : cands) {
        double delta = weight_delta(t, u);
        double w = 0.25 + std::max(0.0, delta);
        max_w = std::max(max_w, w);
        out.push_back({std::move(u), w});
    }
    if (cfg.gadgets_enabled || cfg.toffoli_favoring) {
        for (const auto& comp : pattern_completions(st, cfg.toffoli_favoring)) {
            const double boost = cfg.completion_boost * comp.strength * max_w;
            bool merged = false;
            for (auto& wf : out)
                if (wf.factor == comp.factor) {
                    wf.weight += boost;
                    merged = true;
                    break;
                }
            if (!merged) out.push_back({comp.factor, boost});
        }
    }
    if (with_pairs && cfg.toffoli_favoring) {
        // the third factor of a block commits a whole span cube; price it
        const auto& h = st.history();
        const std::size_t s = h.size();
        if (s >= 2 && s - 2 >= st.toffoli_barrier() && independent2(h[s - 2], h[s - 1])) {
            for (auto& wf : out) {
                if (!independent3(h[s - 2], h[s - 1], wf.factor)) continue;
                double d = span_delta(t, h[s - 2], h[s - 1], wf.factor);
                if (d > 0) wf.weight += cfg.completion_boost * d;
            }
        }
    }
    double total = 0;
    for (const auto& wf : out) total += wf.weight;
    if (total > 0)
        for (auto& wf : out) wf.weight /= total;
    return out;
}

std::size_t sample_index(const std::vector<double>& weights, std::mt19937_64& gen) {
    double total = 0;
    for (double w : weights) total += w;
    double r = std::uniform_real_distribution<double>(0.0, total)(gen);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        r -= weights[i];
        if (r <= 0) return i;
    }
    return weights.size() - 1;
}

// Total reward of applying u (plus any Toffoli-favoring auto-completions).
int apply_action(GameState& st, const Factor& u, const SearchConfig& cfg) {
    int reward = st.step(u).reward;
    if (cfg.toffoli_favoring) {
        auto extra = st.maybe_auto_complete_toffoli();
        if (extra) reward += *extra;
    }
    return reward;
}

// Cheap playout: slice rows, diagonal indicators and pattern completions,
// without dedupe (duplicate rows just weigh more).
double rollout(GameState st, const SearchConfig& cfg, std::mt19937_64& gen) {
    double total = 0;
    std::vector<Factor> cands;
    std::vector<double> w;
    for (int depth = 0; depth < cfg.rollout_depth && !st.terminal(); ++depth) {
        const SignatureTensor& t = st.residual();
        const std::size_t n = t.n();
        cands.clear();
        w.clear();
        double max_w = 1.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                const BitVec& row = t.slice_row(i, j);
                if (!row.any()) continue;
                double delta = weight_delta(t, row);
                double wt = 0.25 + std::max(0.0, delta);
                max_w = std::max(max_w, wt);
                cands.push_back(row);
                w.push_back(wt);
            }
        if (cands.empty()) break;
        if (cfg.gadgets_enabled || cfg.toffoli_favoring) {
            for (const auto& comp : pattern_completions(st, cfg.toffoli_favoring)) {
                cands.push_back(comp.factor);
                w.push_back(cfg.completion_boost * comp.strength * max_w);
            }
        }
        const Factor u = cands[sample_index(w, gen)];
        total += apply_action(st, u, cfg);
    }
    if (st.terminal_kind() == Terminal::Solved) return total;
    return total - cfg.exhaust_penalty_gamma *
                       static_cast<double>(st.residual().distinct_nonzero_slices());
}

struct Edge {
    Factor action;
    double prior = 0;
    int visits = 0;
    double value_sum = 0;
    double q = 0;
    int reward = 0;
    int child = -1;
};

struct Node {
    GameState state;
    bool expanded = false;
    double value = 0;
    std::vector<Edge> edges;
};

double terminal_value(const GameState& st, const SearchConfig& cfg) {
    if (st.terminal_kind() == Terminal::Solved) return 0.0;
    return -cfg.exhaust_penalty_gamma *
           static_cast<double>(st.residual().distinct_nonzero_slices());
}

void expand(Node& node, const SearchConfig& cfg, std::mt19937_64& gen) {
    auto prior = prior_policy(node.state, cfg);
    std::vector<double> w(prior.size());
    for (std::size_t i = 0; i < prior.size(); ++i) w[i] = prior[i].weight;

    std::map<Factor, int> counts;
    const int k = std::max(1, cfg.samples_per_expansion);
    for (int i = 0; i < k; ++i) counts[prior[sample_index(w, gen)].factor] += 1;

    std::vector<double> returns;
    const int m = std::max(1, cfg.rollouts_per_expansion);
    returns.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) returns.push_back(rollout(node.state, cfg, gen));
    std::sort(returns.begin(), returns.end());
    double q = std::clamp(cfg.risk_quantile, 0.0, 1.0);
    node.value = returns[static_cast<std::size_t>(q * static_cast<double>(returns.size() - 1))];

    node.edges.clear();
    for (const auto& [f, c] : counts) {
        Edge e;
        e.action = f;
        e.prior = static_cast<double>(c) / static_cast<double>(k);
        e.q = node.value;
        node.edges.push_back(std::move(e));
    }
    node.expanded = true;
}

std::size_t select_edge(const Node& node, const SearchConfig& cfg) {
    std::vector<ActionStats> stats;
    stats.reserve(node.edges.size());
    for (const auto& e : node.edges) stats.push_back({e.q, e.prior, e.visits});
    return select_action(stats, cfg.exploration_c);
}

void simulate(std::vector<Node>& tree, const SearchConfig& cfg, std::mt19937_64& gen) {
    std::vector<std::pair<std::size_t, std::size_t>> path;
    std::size_t cur = 0;
    double leaf_value = 0;
    for (;;) {
        Node& node = tree[cur];
        if (node.state.terminal()) {
            leaf_value = terminal_value(node.state, cfg);
            break;
        }
        if (!node.expanded) {
            expand(node, cfg, gen);
            leaf_value = node.value;
            break;
        }
        std::size_t ei = select_edge(node, cfg);
        path.emplace_back(cur, ei);
        Edge& e = tree[cur].edges[ei];
        if (e.child == -1) {
            Node child;
            child.state = node.state;
            int reward = apply_action(child.state, e.action, cfg);
            tree.push_back(std::move(child));
            // tree may have reallocated; re-reference through indices
            tree[cur].edges[ei].reward = reward;
            tree[cur].edges[ei].child = static_cast<int>(tree.size() - 1);
        }
        cur = static_cast<std::size_t>(tree[cur].edges[ei].child);
    }
    double g = leaf_value;
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        Edge& e = tree[it->first].edges[it->second];
        g = static_cast<double>(e.reward) + g;
        e.visits += 1;
        e.value_sum += g;
        e.q = e.value_sum / e.visits;
    }
}

}  // namespace

std::vector<WeightedFactor> prior_policy(const GameState& state, const SearchConfig& cfg) {
    if (state.terminal()) return {};
    return candidate_set(state, cfg, /*with_pairs=*/true);
}

std::size_t select_action(const std::vector<ActionStats>& stats, double exploration_c) {
    if (stats.empty()) throw std::runtime_error("select_action: unexpanded node");
    double total_visits = 0;
    for (const auto& s : stats) total_visits += s.visits;
    const double sqrt_total = std::sqrt(total_visits);
    double best = -1e300;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        double score = stats[i].q + exploration_c * stats[i].prior * sqrt_total /
                                        (1.0 + static_cast<double>(stats[i].visits));
        if (score > best) {
            best = score;
            best_i = i;
        }
    }
    return best_i;
}

PlayResult play_game(const SignatureTensor& target, const SearchConfig& cfg, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    GameConfig gc{cfg.gadgets_enabled, cfg.max_moves};
    GameState state = GameState::new_game(target, gc);
    double total = 0;

    while (!state.terminal()) {
        std::vector<Node> tree;
        tree.push_back(Node{state, false, 0, {}});
        const int sims = std::max(1, cfg.simulations);
        for (int s = 0; s < sims; ++s) simulate(tree, cfg, gen);
        const Node& root = tree[0];
        if (root.edges.empty()) break;
        const double inv_tau = 1.0 / std::max(1e-3, cfg.commit_temperature);
        std::vector<double> w(root.edges.size());
        bool any_visit = false;
        for (std::size_t i = 0; i < root.edges.size(); ++i) {
            w[i] = std::pow(static_cast<double>(root.edges[i].visits), inv_tau);
            any_visit = any_visit || root.edges[i].visits > 0;
        }
        if (!any_visit)
            for (std::size_t i = 0; i < root.edges.size(); ++i) w[i] = root.edges[i].prior;
        const Factor action = root.edges[sample_index(w, gen)].action;
        total += apply_action(state, action, cfg);
    }

    PlayResult r;
    r.solved = state.terminal_kind() == Terminal::Solved;
    r.decomposition = state.decomposition();
    r.total_return = r.solved ? total : total - cfg.exhaust_penalty_gamma *
                                            static_cast<double>(
                                                state.residual().distinct_nonzero_slices());
    return r;
}

Decomposition direct_gadget_reading(const SignatureTensor& t) {
    const std::size_t n = t.n();
    Decomposition d;
    d.n = n;
    auto e = [&](std::size_t i) { return BitVec::unit(n, i); };
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            for (std::uint32_t k = j + 1; k < n; ++k)
                if (t.at(i, j, k)) {
                    d.gadgets.push_back({GadgetKind::Toffoli, d.factors.size()});
                    const Factor a = e(i), b = e(j), c = e(k);
                    for (const Factor& f : {a, b, c, a ^ b, a ^ c, a ^ b ^ c, b ^ c})
                        d.factors.push_back(f);
                }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = i + 1; j < n; ++j)
            if (t.at(i, j, j)) {
                d.gadgets.push_back({GadgetKind::CS, d.factors.size()});
                for (const Factor& f : {e(i), e(j), e(i) ^ e(j)}) d.factors.push_back(f);
            }
    for (std::uint32_t i = 0; i < n; ++i)
        if (t.at(i, i, i)) d.factors.push_back(e(i));
    return d;
}

Decomposition direct_plain_reading(const SignatureTensor& t) {
    Decomposition d = direct_gadget_reading(t);
    d.gadgets.clear();
    return d;
}

OptimizeResult optimize(const SignatureTensor& target, const SearchConfig& cfg,
                        const std::vector<Decomposition>& baselines) {
    struct Best {
        bool found = false;
        Decomposition d;
        GameCost cost;
        std::string key;
        std::int64_t basis_id = -1;
    };
    Best best;
    std::mutex mu;

    auto consider = [&](const Decomposition& d, std::int64_t basis_id) {
        VerifyReport rep = verify_tensor(target, d);
        if (!rep.tensor_equal || !rep.gadgets_valid) return false;
        std::string key = decomposition_to_json(d);
        std::lock_guard<std::mutex> lock(mu);
        if (!best.found || rep.cost.equivalent_t < best.cost.equivalent_t ||
            (rep.cost.equivalent_t == best.cost.equivalent_t && key < best.key)) {
            best = Best{true, d, rep.cost, std::move(key), basis_id};
        }
        return true;
    };

    if (cfg.seed_baselines) {
        for (const auto& b : baselines) consider(b, -1);
        consider(direct_plain_reading(target), -1);
        if (cfg.gadgets_enabled) consider(direct_gadget_reading(target), -1);
    }

    const std::size_t pool_size = std::max<std::size_t>(1, cfg.basis_changes);
    std::vector<BitMatrix> pool(pool_size);
    std::vector<BitMatrix> pool_inv(pool_size);
    for (std::size_t i = 0; i < pool_size; ++i) {
        pool[i] = random_invertible(target.n(), splitmix64(cfg.seed ^ 0xbadc0ffeull) + i);
        pool_inv[i] = *pool[i].inverse();
    }

    std::atomic<int> next_game{0};
    const int games = std::max(0, cfg.games);
    auto worker = [&]() {
        for (;;) {
            int g = next_game.fetch_add(1);
            if (g >= games) return;
            std::uint64_t game_seed = splitmix64(cfg.seed + 0x5eedull * (g + 1));
            std::mt19937_64 gen(game_seed);
            std::size_t basis_id = gen() % pool_size;
            SignatureTensor transformed = change_of_basis(target, pool[basis_id]);
            PlayResult pr = play_game(transformed, cfg, gen());
            if (!pr.solved) continue;
            Decomposition mapped = pr.decomposition;
            for (auto& f : mapped.factors) f = pool_inv[basis_id].mul(f);
            mapped.n = target.n();
            consider(mapped, static_cast<std::int64_t>(basis_id));
        }
    };

    const int workers = std::max(1, cfg.workers);
    if (workers == 1 || games <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool_threads;
        for (int i = 0; i < workers; ++i) pool_threads.emplace_back(worker);
        for (auto& t : pool_threads) t.join();
    }

    OptimizeResult out;
    out.found = best.found;
    out.best = best.d;
    out.cost = best.cost;
    out.games_played = games;
    out.basis_change_id = best.basis_id;
    return out;
}

namespace {

bool rank_dfs(SignatureTensor& residual, std::uint64_t next_value, std::size_t remaining,
              std::size_t n, std::vector<Factor>& stack) {
    if (residual.is_zero()) return true;
    if (remaining == 0) return false;
    if (residual.flattening_rank() > remaining) return false;
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t v = next_value; v < limit; ++v) {
        Factor u(n);
        for (std::size_t i = 0; i < n; ++i)
            if ((v >> i) & 1) u.set(i, true);
        residual.xor_cube(u);
        stack.push_back(u);
        if (rank_dfs(residual, v + 1, remaining - 1, n, stack)) return true;
        stack.pop_back();
        residual.xor_cube(u);
    }
    return false;
}

}  // namespace

std::optional<std::pair<std::size_t, Decomposition>> min_waring_rank(const SignatureTensor& target,
                                                                     std::size_t max_rank) {
    if (target.n() > 8 || max_rank > 10)
        throw std::runtime_error("min_waring_rank: desk bounds are N <= 8, max_rank <= 10");
    for (std::size_t r = 0; r <= max_rank; ++r) {
        SignatureTensor residual = target;
        std::vector<Factor> stack;
        if (rank_dfs(residual, 1, r, target.n(), stack)) {
            Decomposition d{target.n(), stack, {}};
            return std::make_pair(r, std::move(d));
        }
    }
    return std::nullopt;
}

}  // namespace tcopt
