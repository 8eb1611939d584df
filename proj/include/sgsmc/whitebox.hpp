#pragma once

#include <span>

#include "sgsmc/game.hpp"
#include "sgsmc/report.hpp"
#include "sgsmc/rng.hpp"

namespace sgsmc {

/// Per-state lower/upper approximations of the value function.
/// Invariant: 0 <= lower[s] <= upper[s] <= 1, goal states pinned at [1,1].
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    double width(StateId s) const { return upper[s] - lower[s]; }
};

/// Most conservative initialization: lower 1 on goals else 0, upper 1.
Bounds initialize_bounds(const StochasticGame& game);

/// Bellman update over X \ Goal with the true probabilities. Bounds move
/// monotonically: lower never decreases, upper never increases.
void update_standard(const StochasticGame& game, std::span<const StateId> X, Bounds& bounds);

/// Caps the upper bound of every state in T at Maximizer's best exit value.
void deflate_standard(const StochasticGame& game, std::span<const StateId> T, Bounds& bounds);

/// Samples a path from the initial state, at each state randomizing
/// uniformly over the currently-best actions (Maximizer by upper bound,
/// Minimizer by lower). Ends on a goal state or when a state repeats.
/// Returns the distinct visited states in visit order, last state included.
std::vector<StateId> simulate_white(const StochasticGame& game, const Bounds& bounds, Rng& rng);

struct WhiteConfig {
    double epsilon = 1e-6;
    bool full_sweep = true;  // false: simulation-guided state selection
    std::uint64_t seed = 0;
    std::uint64_t max_iterations = 10'000'000;
    /// Optional per-iteration hook (after update+deflation) for invariant checks.
    std::function<void(const Bounds&)> observer;
};

/// Bounded value iteration with deflation; on exit the interval at the
/// initial state brackets the value. Hitting the iteration cap yields the
/// current (still sound) bounds flagged as non-converged.
RunReport bvi_white(const StochasticGame& game, const WhiteConfig& config);

}  // namespace sgsmc
