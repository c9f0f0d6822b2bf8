#include "tcopt/game.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

namespace tcopt {

namespace {

bool independent2(const Factor& a, const Factor& b) {
    return a.any() && b.any() && a != b;
}

bool independent3(const Factor& a, const Factor& b, const Factor& c) {
    if (!independent2(a, b) || !c.any()) return false;
    return c != a && c != b && c != (a ^ b);
}

bool toffoli_window_matches(const std::vector<Factor>& h, std::size_t end) {
    // factors h[end-7 .. end-1] in pattern order a,b,c,a^b,a^c,a^b^c,b^c
    const Factor &a = h[end - 7], &b = h[end - 6], &c = h[end - 5];
    if (!independent3(a, b, c)) return false;
    return h[end - 4] == (a ^ b) && h[end - 3] == (a ^ c) && h[end - 2] == (a ^ b ^ c) &&
           h[end - 1] == (b ^ c);
}

bool cs_window_matches(const std::vector<Factor>& h, std::size_t end) {
    const Factor &a = h[end - 3], &b = h[end - 2];
    if (!independent2(a, b)) return false;
    return h[end - 1] == (a ^ b);
}

}  // namespace

std::optional<GadgetKind> detect_gadget(const std::vector<Factor>& history, bool gadgets_enabled,
                                        std::size_t toffoli_barrier, std::size_t cs_barrier) {
    if (!gadgets_enabled) return std::nullopt;
    const std::size_t s = history.size();
    if (s >= 7 && s - 7 >= toffoli_barrier && toffoli_window_matches(history, s))
        return GadgetKind::Toffoli;
    if (s >= 3 && s - 3 >= cs_barrier && cs_window_matches(history, s))
        return GadgetKind::CS;
    return std::nullopt;
}

GameState GameState::new_game(const SignatureTensor& target, GameConfig cfg) {
    GameState st;
    st.residual_ = target;
    st.cfg_ = cfg;
    if (target.is_zero()) st.terminal_ = Terminal::Solved;
    else if (cfg.max_moves == 0) st.terminal_ = Terminal::Exhausted;
    return st;
}

StepOutcome GameState::step(const Factor& u) {
    if (terminal_ != Terminal::None) throw std::runtime_error("step: game is terminal");
    if (u.size() != residual_.n()) throw std::runtime_error("step: factor length mismatch");
    if (!u.any()) throw std::runtime_error("step: zero factor is not a legal action");

    residual_.xor_cube(u);
    history_.push_back(u);

    StepOutcome out;
    out.reward = -1;
    auto got = detect_gadget(history_, cfg_.gadgets_enabled, toffoli_barrier_, cs_barrier_);
    if (got) {
        out.completed = got;
        out.reward = (*got == GadgetKind::Toffoli) ? +4 : 0;
        gadgets_.push_back({*got, history_.size() - gadget_span(*got)});
        toffoli_barrier_ = history_.size();
        cs_barrier_ = history_.size();
    }
    if (residual_.is_zero()) terminal_ = Terminal::Solved;
    else if (history_.size() >= cfg_.max_moves) terminal_ = Terminal::Exhausted;
    out.terminal = terminal_;
    return out;
}

std::optional<int> GameState::maybe_auto_complete_toffoli() {
    if (terminal_ != Terminal::None) return std::nullopt;
    const std::size_t s = history_.size();
    if (s < 3 || s - 3 < toffoli_barrier_ || s - 3 < cs_barrier_) return std::nullopt;
    const Factor &a = history_[s - 3], &b = history_[s - 2], &c = history_[s - 1];
    if (!independent3(a, b, c)) return std::nullopt;
    int net = 0;
    for (const Factor& u : {a ^ b, a ^ c, a ^ b ^ c, b ^ c}) {
        auto out = step(u);
        net += out.reward;
        if (out.terminal != Terminal::None && !out.completed.has_value()) break;
    }
    return net;
}

Decomposition GameState::decomposition() const {
    return Decomposition{residual_.n(), history_, gadgets_};
}

GameCost game_cost(const Decomposition& d) {
    for (const auto& f : d.factors)
        if (!f.any() || f.size() != d.n)
            throw std::runtime_error("game_cost: zero or mis-sized factor");
    auto gadgets = d.gadgets;
    std::sort(gadgets.begin(), gadgets.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    GameCost cost;
    std::size_t prev_end = 0;
    for (const auto& g : gadgets) {
        const std::size_t span = gadget_span(g.kind);
        if (g.start < prev_end) throw std::runtime_error("game_cost: overlapping gadgets");
        if (g.start + span > d.factors.size())
            throw std::runtime_error("game_cost: gadget out of range");
        const std::size_t end = g.start + span;
        bool ok = g.kind == GadgetKind::Toffoli ? toffoli_window_matches(d.factors, end)
                                                : cs_window_matches(d.factors, end);
        if (!ok) throw std::runtime_error("game_cost: gadget pattern mismatch");
        (g.kind == GadgetKind::Toffoli ? cost.toffoli : cost.cs) += 1;
        prev_end = end;
    }
    const std::size_t in_gadgets = 7 * cost.toffoli + 3 * cost.cs;
    cost.t = d.factors.size() - in_gadgets;
    cost.equivalent_t = cost.t + 2 * cost.toffoli + 2 * cost.cs;
    return cost;
}

namespace {

Factor random_nonzero_factor(std::mt19937_64& gen, std::size_t n, double p_zero) {
    std::bernoulli_distribution one(1.0 - p_zero);
    for (;;) {
        Factor f(n);
        for (std::size_t i = 0; i < n; ++i)
            if (one(gen)) f.set(i, true);
        if (f.any()) return f;
    }
}

// k distinct sorted values from {0..range-1} (Floyd's sampling).
std::vector<std::size_t> sample_distinct_sorted(std::mt19937_64& gen, std::size_t k,
                                                std::size_t range) {
    std::set<std::size_t> chosen;
    for (std::size_t j = range - k; j < range; ++j) {
        std::size_t t = std::uniform_int_distribution<std::size_t>(0, j)(gen);
        if (!chosen.insert(t).second) chosen.insert(j);
    }
    return {chosen.begin(), chosen.end()};
}

void write_toffoli_pattern(std::vector<Factor>& f, std::size_t s, const Factor& a, const Factor& b,
                           const Factor& c) {
    f[s] = a;
    f[s + 1] = b;
    f[s + 2] = c;
    f[s + 3] = a ^ b;
    f[s + 4] = a ^ c;
    f[s + 5] = a ^ b ^ c;
    f[s + 6] = b ^ c;
}

}  // namespace

std::pair<SignatureTensor, Decomposition> synthetic_demo(std::uint64_t seed,
                                                         const DemoParams& p) {
    if (p.n < 3) throw std::runtime_error("synthetic_demo: need n >= 3 for gadget patterns");
    if (p.r_max < 1) throw std::runtime_error("synthetic_demo: r_max >= 1");
    std::mt19937_64 gen(seed);

    std::size_t r = std::uniform_int_distribution<std::size_t>(1, p.r_max)(gen);
    const bool want_gadget = std::bernoulli_distribution(p.p_any_gadget)(gen);
    if (want_gadget && r < 3)
        r = std::uniform_int_distribution<std::size_t>(3, p.r_max)(gen);

    std::vector<Factor> factors;
    factors.reserve(r);
    for (std::size_t i = 0; i < r; ++i) factors.push_back(random_nonzero_factor(gen, p.n, p.p_zero));

    std::vector<GadgetAnnotation> gadgets;
    if (want_gadget) {
        std::size_t count =
            std::uniform_int_distribution<std::size_t>(1, p.gadget_count_max)(gen);
        std::bernoulli_distribution toffoli(p.p_toffoli);
        std::vector<GadgetKind> kinds;
        for (std::size_t k = 0; k < count; ++k)
            kinds.push_back(toffoli(gen) ? GadgetKind::Toffoli : GadgetKind::CS);

        // truncate when R is not large enough; the first gadget always fits
        std::size_t span_sum = 0;
        for (const auto k : kinds) span_sum += gadget_span(k);
        while (!kinds.empty() && span_sum > r) {
            span_sum -= gadget_span(kinds.back());
            kinds.pop_back();
        }
        if (kinds.empty()) {
            kinds.push_back(GadgetKind::CS);  // r >= 3 here
            span_sum = 3;
        }

        // non-overlapping starts via a uniform gap composition of the slack
        const std::size_t slack = r - span_sum;
        auto marks = sample_distinct_sorted(gen, kinds.size(), slack + kinds.size());
        std::size_t span_before = 0;
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            const std::size_t s = marks[k] - k + span_before;
            if (kinds[k] == GadgetKind::Toffoli) {
                Factor a = random_nonzero_factor(gen, p.n, p.p_zero);
                Factor b = random_nonzero_factor(gen, p.n, p.p_zero);
                Factor c = random_nonzero_factor(gen, p.n, p.p_zero);
                while (b == a) b = random_nonzero_factor(gen, p.n, p.p_zero);
                while (c == a || c == b || c == (a ^ b))
                    c = random_nonzero_factor(gen, p.n, p.p_zero);
                write_toffoli_pattern(factors, s, a, b, c);
            } else {
                Factor a = random_nonzero_factor(gen, p.n, p.p_zero);
                Factor b = random_nonzero_factor(gen, p.n, p.p_zero);
                while (b == a) b = random_nonzero_factor(gen, p.n, p.p_zero);
                factors[s] = a;
                factors[s + 1] = b;
                factors[s + 2] = a ^ b;
            }
            gadgets.push_back({kinds[k], s});
            span_before += gadget_span(kinds[k]);
        }
    }

    Decomposition d{p.n, factors, gadgets};
    return {from_decomposition(p.n, factors), std::move(d)};
}

Decomposition augment_swap(const Decomposition& d, std::uint64_t seed) {
    std::vector<bool> in_gadget(d.factors.size(), false);
    for (const auto& g : d.gadgets)
        for (std::size_t k = g.start; k < g.start + gadget_span(g.kind); ++k) in_gadget[k] = true;
    std::vector<std::size_t> free;
    for (std::size_t i = 0; i < d.factors.size(); ++i)
        if (!in_gadget[i]) free.push_back(i);
    if (free.size() < 2) return d;

    std::mt19937_64 gen(seed);
    std::size_t last = free.back();
    std::size_t pick = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(gen)];
    Decomposition out = d;
    std::swap(out.factors[last], out.factors[pick]);
    return out;
}

}  // namespace tcopt
