#include "sgsmc/whitebox.hpp"

#include <algorithm>
#include <chrono>

#include "sgsmc/graph.hpp"

namespace sgsmc {

namespace {

constexpr double kTieTolerance = 1e-12;

std::uint32_t pick_best_action(const StochasticGame& game, const Bounds& bounds, StateId s,
                               Rng& rng) {
    const bool maximizer = game.player(s) == Player::Maximizer;
    const auto score = [&](std::uint32_t a) {
        return pair_value(game, s, a, maximizer ? bounds.upper : bounds.lower);
    };
    double best = score(0);
    for (std::uint32_t a = 1; a < game.action_count(s); ++a) {
        const double v = score(a);
        if (maximizer ? v > best : v < best) best = v;
    }
    std::vector<std::uint32_t> ties;
    for (std::uint32_t a = 0; a < game.action_count(s); ++a)
        if (std::abs(score(a) - best) <= kTieTolerance) ties.push_back(a);
    return ties[rng.uniform_index(ties.size())];
}

StateId sample_from(const Distribution& dist, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (const auto& e : dist.entries) {
        acc += e.prob;
        if (u < acc) return e.target;
    }
    return dist.entries.back().target;  // float residue
}

}  // namespace

Bounds initialize_bounds(const StochasticGame& game) {
    Bounds b;
    b.lower.assign(game.state_count(), 0.0);
    b.upper.assign(game.state_count(), 1.0);
    for (StateId g : game.goal()) b.lower[g] = 1.0;
    return b;
}

void update_standard(const StochasticGame& game, std::span<const StateId> X, Bounds& bounds) {
    for (StateId s : X) {
        if (game.is_goal(s)) continue;
        const bool maximizer = game.player(s) == Player::Maximizer;
        double lo = pair_value(game, s, 0, bounds.lower);
        double hi = pair_value(game, s, 0, bounds.upper);
        for (std::uint32_t a = 1; a < game.action_count(s); ++a) {
            const double l = pair_value(game, s, a, bounds.lower);
            const double h = pair_value(game, s, a, bounds.upper);
            if (maximizer) {
                lo = std::max(lo, l);
                hi = std::max(hi, h);
            } else {
                lo = std::min(lo, l);
                hi = std::min(hi, h);
            }
        }
        // Bounds only tighten within a run; interleaved deflation may
        // otherwise let a plain assignment bounce the upper bound back up.
        bounds.lower[s] = std::max(bounds.lower[s], lo);
        bounds.upper[s] = std::min(bounds.upper[s], hi);
    }
}

void deflate_standard(const StochasticGame& game, std::span<const StateId> T, Bounds& bounds) {
    const double cap = best_exit(game, T, bounds.upper);
    for (StateId s : T) bounds.upper[s] = std::min(bounds.upper[s], cap);
}

std::vector<StateId> simulate_white(const StochasticGame& game, const Bounds& bounds, Rng& rng) {
    std::vector<StateId> visited;
    std::vector<char> seen(game.state_count(), 0);
    StateId s = game.initial();
    while (true) {
        visited.push_back(s);
        seen[s] = 1;
        const std::uint32_t a = pick_best_action(game, bounds, s, rng);
        const StateId t = sample_from(game.distribution(s, a), rng);
        if (game.is_goal(t) || seen[t]) {
            if (!seen[t]) visited.push_back(t);
            return visited;
        }
        s = t;
    }
}

RunReport bvi_white(const StochasticGame& game, const WhiteConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const auto wall_ms = [&] {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    };

    Bounds bounds = initialize_bounds(game);
    Rng rng(config.seed);
    RunReport report;
    const StateId init = game.initial();

    std::vector<StateId> all(game.state_count());
    for (StateId s = 0; s < game.state_count(); ++s) all[s] = s;

    std::uint64_t iter = 0;
    while (bounds.width(init) >= config.epsilon && iter < config.max_iterations) {
        ++iter;
        std::vector<StateId> X = config.full_sweep ? all : simulate_white(game, bounds, rng);
        if (!config.full_sweep) std::reverse(X.begin(), X.end());  // back-propagate
        update_standard(game, X, bounds);
        for (const auto& ec : find_msecs_white(game, X, bounds.lower))
            deflate_standard(game, ec.states, bounds);
        if (config.observer) config.observer(bounds);
        if (iter <= 128 || iter % 128 == 0)
            report.phases.push_back(PhaseRecord{wall_ms(), iter, 0.0, game.state_count(),
                                                bounds.lower[init], bounds.upper[init]});
    }

    report.lower = bounds.lower[init];
    report.upper = bounds.upper[init];
    report.converged = bounds.width(init) < config.epsilon;
    report.cause = report.converged ? StopCause::Precision : StopCause::IterationCap;
    report.phases.push_back(PhaseRecord{wall_ms(), iter, 0.0, game.state_count(),
                                        report.lower, report.upper});
    return report;
}

}  // namespace sgsmc
