#pragma once

#include <stdexcept>

#include "sgsmc/game.hpp"

namespace sgsmc {

struct InstanceTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ground-truth value of every state by exhaustive enumeration of pure
/// memoryless strategy pairs, solving each induced Markov chain by linear
/// elimination. Exact fraction arithmetic when the model was given in
/// fractions, binary64 with partial pivoting otherwise. Limits: at most 12
/// states and 10^6 strategy combinations.
std::vector<double> oracle_value(const StochasticGame& game);

/// Exact variant; empty optional when the model is not fully exact or the
/// fraction arithmetic overflows.
std::optional<std::vector<Rational>> oracle_value_exact(const StochasticGame& game);

}  // namespace sgsmc
