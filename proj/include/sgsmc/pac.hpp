#pragma once

#include "sgsmc/blackvi.hpp"
#include "sgsmc/game.hpp"

namespace sgsmc {

/// Outcome of a repeated-run interval check against a known true value.
struct PacTestReport {
    std::size_t runs = 0;
    std::size_t violations = 0;  // true value outside [lower, upper]
    double rate = 0.0;
    double delta = 0.0;
    double threshold = 0.0;  // delta + 3 sigma binomial slack
    bool pass = false;
    double truth = 0.0;
};

/// Runs `runs` independent seeded black_vi instances (per-run seeds derived
/// from base.seed by counter splitting) across a bounded worker pool and
/// counts how often the reported interval misses `truth`. Passes iff the
/// violation rate stays within delta plus three-sigma slack. Results are
/// merged deterministically by run index.
PacTestReport run_pac_test(const StochasticGame& game, const BlackViConfig& base,
                           std::size_t runs, double truth, unsigned jobs);

}  // namespace sgsmc
