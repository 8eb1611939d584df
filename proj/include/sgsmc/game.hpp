#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgsmc/rational.hpp"

namespace sgsmc {

enum class Player { Maximizer, Minimizer };

using StateId = std::uint32_t;

/// Actions are owned by their source state and addressed by a local index.
struct ActionRef {
    StateId state;
    std::uint32_t index;

    friend bool operator==(const ActionRef&, const ActionRef&) = default;
    friend auto operator<=>(const ActionRef&, const ActionRef&) = default;
};

struct TransitionEntry {
    StateId target;
    double prob;
    std::optional<Rational> exact;  // set when the model text gave a fraction
};

/// Probability distribution over successor states. Entries keep document
/// order; targets are pairwise distinct and probabilities strictly positive.
struct Distribution {
    std::vector<TransitionEntry> entries;
};

struct GameAction {
    std::string name;
    Distribution dist;
};

struct GameState {
    std::string name;
    Player player;
    std::vector<GameAction> actions;
};

struct Violation {
    std::string message;
};

/// Explicit-state turn-based stochastic game with a reachability goal set.
/// Goal states are absorbing after normalization (a single unit self-loop).
/// An MDP is the special case with no Minimizer states; a Markov chain
/// additionally has a single action per state. Immutable after construction,
/// so instances can be shared freely across threads.
class StochasticGame {
public:
    /// Builds, normalizes (goal absorption) and validates; throws
    /// std::invalid_argument listing the violations if any invariant fails.
    static StochasticGame build(std::vector<GameState> states, StateId initial,
                                std::vector<StateId> goal, double p_min_declared,
                                std::optional<Rational> p_min_exact = std::nullopt);

    /// Same, but keeps the game even if invariants are violated (used by the
    /// validate command to report violations as data).
    static StochasticGame build_unchecked(std::vector<GameState> states, StateId initial,
                                          std::vector<StateId> goal, double p_min_declared,
                                          std::optional<Rational> p_min_exact = std::nullopt);

    std::size_t state_count() const { return states_.size(); }
    const GameState& state(StateId s) const { return states_[s]; }
    const std::vector<GameState>& states() const { return states_; }
    StateId initial() const { return initial_; }
    const std::vector<StateId>& goal() const { return goal_; }
    bool is_goal(StateId s) const { return goal_mask_[s] != 0; }
    double p_min_declared() const { return p_min_; }
    const std::optional<Rational>& p_min_exact() const { return p_min_exact_; }

    Player player(StateId s) const { return states_[s].player; }
    std::uint32_t action_count(StateId s) const {
        return static_cast<std::uint32_t>(states_[s].actions.size());
    }
    const Distribution& distribution(StateId s, std::uint32_t a) const;

    std::optional<StateId> find_state(const std::string& name) const;

    /// True when every transition probability (and p_min) carries an exact
    /// fraction, enabling exact oracle arithmetic.
    bool fully_exact() const;

private:
    std::vector<GameState> states_;
    StateId initial_ = 0;
    std::vector<StateId> goal_;
    std::vector<char> goal_mask_;
    double p_min_ = 1.0;
    std::optional<Rational> p_min_exact_;
};

/// All StochasticGame invariants as checkable data; empty iff the game is
/// valid. Each violation names the offending state/action.
std::vector<Violation> validate(const StochasticGame& game);

/// Support of the distribution of (s, a).
std::vector<StateId> post(const StochasticGame& game, StateId s, std::uint32_t a);

/// True iff (s, a) can leave the state set T with positive probability.
bool is_exit(const StochasticGame& game, StateId s, std::uint32_t a,
             std::span<const StateId> T);

/// Reachability query parameters; epsilon in (0,1], delta in (0,1).
struct ReachabilityQuery {
    const StochasticGame* game;
    double epsilon;
    double delta;
};

ReachabilityQuery make_query(const StochasticGame& game, double epsilon, double delta);

}  // namespace sgsmc
