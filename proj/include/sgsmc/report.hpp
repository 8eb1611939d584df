#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace sgsmc {

enum class StopCause { Precision, Timeout, IterationCap, SimulationBudget };

/// One record per completed value-iteration phase (or sweep, for the
/// full-information engine). Wall times are non-decreasing across records.
struct PhaseRecord {
    std::int64_t wall_ms;
    std::uint64_t k;
    double delta_k;
    std::size_t explored;
    double lower;
    double upper;
};

using TraceSink = std::function<void(const PhaseRecord&)>;

/// Anytime result: [lower, upper] brackets the value of the initial state
/// whenever the run's guarantees hold, whatever the termination cause.
struct RunReport {
    double lower = 0.0;
    double upper = 1.0;
    StopCause cause = StopCause::Precision;
    bool converged = false;
    std::vector<PhaseRecord> phases;
    std::uint64_t total_simulations = 0;

    double width() const { return upper - lower; }
};

}  // namespace sgsmc
