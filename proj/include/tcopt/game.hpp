// game.hpp
// The TensorGame environment: stepping, gadget detection, reward accounting,
// synthetic demonstrations, action-swap augmentation.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tcopt/tensor.hpp"

namespace tcopt {

enum class Terminal : std::uint8_t { None, Solved, Exhausted };

struct StepOutcome {
    int reward = 0;  // -1, 0 (CS completed) or +4 (Toffoli completed)
    std::optional<GadgetKind> completed;
    Terminal terminal = Terminal::None;
};

struct GameConfig {
    bool gadgets_enabled = true;
    std::size_t max_moves = 250;
};

// Detection over the most recent window of history. Toffoli is checked first;
// a window may not reach back past the barrier of a committed gadget.
std::optional<GadgetKind> detect_gadget(const std::vector<Factor>& history, bool gadgets_enabled,
                                        std::size_t toffoli_barrier, std::size_t cs_barrier);

class GameState {
public:
    GameState() = default;
    static GameState new_game(const SignatureTensor& target, GameConfig cfg = {});

    StepOutcome step(const Factor& u);

    // Toffoli-favoring rule: when the last three unbarriered factors are
    // linearly independent, auto-play the four pattern completions.
    // Returns the net reward of the auto-played moves, or nullopt if the rule
    // does not fire.
    std::optional<int> maybe_auto_complete_toffoli();

    bool terminal() const { return terminal_ != Terminal::None; }
    Terminal terminal_kind() const { return terminal_; }
    std::size_t move() const { return history_.size(); }
    const SignatureTensor& residual() const { return residual_; }
    const std::vector<Factor>& history() const { return history_; }
    const std::vector<GadgetAnnotation>& gadgets() const { return gadgets_; }
    std::size_t toffoli_barrier() const { return toffoli_barrier_; }
    std::size_t cs_barrier() const { return cs_barrier_; }
    const GameConfig& config() const { return cfg_; }

    Decomposition decomposition() const;

private:
    SignatureTensor residual_;
    std::vector<Factor> history_;
    std::vector<GadgetAnnotation> gadgets_;
    std::size_t cs_barrier_ = 0;
    std::size_t toffoli_barrier_ = 0;
    GameConfig cfg_;
    Terminal terminal_ = Terminal::None;
};

struct GameCost {
    std::size_t t = 0;
    std::size_t toffoli = 0;
    std::size_t cs = 0;
    std::size_t equivalent_t = 0;
};

// Validates gadget spans/patterns (throws on malformed annotations).
GameCost game_cost(const Decomposition& d);

struct DemoParams {
    std::size_t n = 12;
    std::size_t r_max = 125;
    double p_zero = 0.75;
    double p_any_gadget = 0.9;
    std::size_t gadget_count_max = 15;
    double p_toffoli = 0.6;
};

std::pair<SignatureTensor, Decomposition> synthetic_demo(std::uint64_t seed,
                                                         const DemoParams& params = {});

Decomposition augment_swap(const Decomposition& d, std::uint64_t seed);

}  // namespace tcopt
