#pragma once

#include <functional>
#include <vector>

#include "sgsmc/game.hpp"

namespace sgsmc {

/// Edges used by the end-component machinery. A view is either a restriction
/// of a full game (successors = true support) or a materialization of a
/// partial model (successors = observed). Successor ids pointing outside the
/// view are exits; included states that lose all actions drop out of MEC
/// search entirely.
struct ViewAction {
    std::uint32_t index;  // local action index in the owning state
    std::vector<StateId> successors;
};

struct ViewState {
    StateId id;
    Player player;
    bool goal;
    std::vector<ViewAction> actions;
};

struct SubGameView {
    std::vector<ViewState> states;

    bool contains(StateId s) const { return position(s) >= 0; }
    int position(StateId s) const {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i].id == s) return static_cast<int>(i);
        return -1;
    }
};

/// View over the full game (all states, all available actions).
SubGameView full_view(const StochasticGame& game);

/// View over the states in X with all their available actions; successors
/// outside X stay in the edge lists and count as exits.
SubGameView restrict_view(const StochasticGame& game, std::span<const StateId> X);

/// End component: states T plus the maximal staying action set B.
struct EcCandidate {
    std::vector<StateId> states;    // sorted
    std::vector<ActionRef> staying; // sorted

    friend bool operator==(const EcCandidate&, const EcCandidate&) = default;
};

/// All maximal end components of the view, pairwise disjoint. Iterative
/// SCC-based refinement: delete exiting actions and states with no staying
/// action until fixpoint. Singletons without a staying self-loop are never
/// reported.
std::vector<EcCandidate> mec_decomposition(const SubGameView& view);

/// Best exit of Maximizer from T scored by an arbitrary state-action value;
/// 1 if T touches a goal state, 0 if Maximizer has no exit. Exits are judged
/// by the view's edges.
double best_exit(const SubGameView& view, std::span<const StateId> T,
                 const std::function<double(StateId, std::uint32_t)>& pair_score);

/// White-box form: score(s,a) = sum of true transition probabilities times f.
double best_exit(const StochasticGame& game, std::span<const StateId> T,
                 std::span<const double> f);

/// One-step value of (s,a) under the true probabilities and state map f.
double pair_value(const StochasticGame& game, StateId s, std::uint32_t a,
                  std::span<const double> f);

/// Drops every Minimizer action whose score exceeds the state's bound by
/// more than the tolerance; used by MSEC search on both true and estimated
/// scores.
SubGameView filter_minimizer_actions(
    SubGameView view, const std::function<double(StateId, std::uint32_t)>& pair_score,
    const std::function<double(StateId)>& state_value, double tol = 1e-12);

/// MSEC candidates in the game restricted to X: remove Minimizer actions
/// that are suboptimal according to the lower bound L, then decompose.
std::vector<EcCandidate> find_msecs_white(const StochasticGame& game,
                                          std::span<const StateId> X,
                                          std::span<const double> lower);

/// States with no finite path to any goal state.
std::vector<StateId> zero_states(const StochasticGame& game);

}  // namespace sgsmc
