#pragma once

#include <stdexcept>
#include <string>

#include "sgsmc/game.hpp"

namespace sgsmc {

struct ModelError : std::runtime_error {
    enum class Kind { Syntax, Semantic };
    ModelError(Kind k, const std::string& msg) : std::runtime_error(msg), kind(k) {}
    Kind kind;
};

/// Parses the explicit JSON model format into a validated, normalized game.
/// Unknown keys, duplicate names and unresolved state references are
/// rejected. Probabilities may be numbers or exact fraction strings "n/d".
/// Throws ModelError: Syntax with the byte position for malformed JSON,
/// Semantic for schema or invariant violations.
StochasticGame parse_model(const std::string& text);

/// Structural parse + normalization only; invariant violations (blocking
/// states, bad sums, p_min) are left for validate() to report as data.
StochasticGame parse_model_unchecked(const std::string& text);

/// Emits the normalized model back as JSON; parse(serialize(g)) is
/// structurally identical to g. Fractions are preserved where exact.
std::string serialize_model(const StochasticGame& game);

}  // namespace sgsmc
