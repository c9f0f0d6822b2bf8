// search.hpp
// Sample-based MCTS planner with heuristic priors, the self-play optimizer
// loop with basis-change diversification, and the exact minimal-rank oracle.

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tcopt/game.hpp"
#include "tcopt/tensor.hpp"

namespace tcopt {

struct SearchConfig {
    int simulations = 800;
    int samples_per_expansion = 32;  // actions sampled from the policy per leaf
    double exploration_c = 1.25;
    double risk_quantile = 0.75;
    std::size_t max_moves = 250;
    bool gadgets_enabled = true;
    bool toffoli_favoring = false;
    int games = 64;
    std::size_t basis_changes = 1000;
    std::uint64_t seed = 0;
    int workers = 1;
    int rollouts_per_expansion = 4;
    int rollout_depth = 48;
    double completion_boost = 8.0;
    double commit_temperature = 0.5;  // commit sampled with weight N^(1/tau)
    double exhaust_penalty_gamma = 1.0;
    bool seed_baselines = true;
};

struct WeightedFactor {
    Factor factor;
    double weight;
};

struct ActionStats {
    double q = 0;
    double prior = 0;
    int visits = 0;
};

// argmax of Q + c * prior * sqrt(sum visits) / (1 + visits); ties keep the
// lowest action index.
std::size_t select_action(const std::vector<ActionStats>& stats, double exploration_c);

// Candidate actions: slice rows, diagonal indicators, pairwise XORs, and
// boosted gadget-pattern completions keyed on the recent history.
std::vector<WeightedFactor> prior_policy(const GameState& state, const SearchConfig& cfg);

struct PlayResult {
    bool solved = false;
    Decomposition decomposition;
    double total_return = 0.0;  // includes the unsuccessful-game penalty
};

PlayResult play_game(const SignatureTensor& target, const SearchConfig& cfg, std::uint64_t seed);

struct OptimizeResult {
    bool found = false;
    Decomposition best;
    GameCost cost;
    int games_played = 0;
    std::int64_t basis_change_id = -1;  // -1 = baseline or identity basis
};

// `games` independent seeded games, each in a fresh random basis, solutions
// mapped back and verified against the target; baselines (the compiled factor
// matrix, the direct reading of the tensor) are admitted when enabled.
OptimizeResult optimize(const SignatureTensor& target, const SearchConfig& cfg,
                        const std::vector<Decomposition>& baselines = {});

// Direct reading of the tensor classes: a Toffoli-gadget block per c-triple,
// a CS block per b-pair, a single factor per diagonal entry.
Decomposition direct_gadget_reading(const SignatureTensor& t);
Decomposition direct_plain_reading(const SignatureTensor& t);

// Exact minimum Waring rank by depth-first search over strictly increasing
// factor sequences with flattening-rank pruning. Desk bound: N <= 8, rank <= 10.
std::optional<std::pair<std::size_t, Decomposition>> min_waring_rank(const SignatureTensor& target,
                                                                     std::size_t max_rank);

}  // namespace tcopt
