#pragma once

#include "sgsmc/estimation.hpp"
#include "sgsmc/report.hpp"

namespace sgsmc {

/// Configuration of the interleaved simulation / guaranteed-iteration run.
struct BlackViConfig {
    double epsilon = 1e-8;
    double delta = 0.1;
    std::uint64_t nk = 10'000;                // simulations per phase
    std::vector<std::uint64_t> nk_sequence;   // overrides nk; last entry repeats
    std::int64_t timeout_ms = 30 * 60 * 1000;
    AccessMode mode = AccessMode::Black;      // Black or Grey
    Sidedness sided = Sidedness::OneSided;
    std::uint64_t seed = 0;
    std::uint64_t max_total_simulations = 0;  // 0 = unlimited
    bool corrupt_zero_width = false;          // negative control only
    TraceSink sink;

    enum class Stage { AfterUpdate, AfterDeflate };
    struct RoundSnapshot {
        Stage stage;
        std::uint64_t k;
        std::uint64_t round;
        const PartialModel* pm;
        std::span<const double> lower;  // indexed by partial-model local state
        std::span<const double> upper;
    };
    std::function<void(const RoundSnapshot&)> observer;
};

/// One guided episode from the initial state. Actions are drawn uniformly
/// from the set of best actions under the estimated operators (capped by the
/// state bounds, so states of a deflated component tie and both staying and
/// exiting actions get picked); every observed step is counted. The walk
/// ends on a goal state or when `looping` fires. Returns the distinct
/// visited states in visit order, final state included. Bounds vectors grow
/// conservatively as new states are explored.
std::vector<StateId> simulate_counting(const SampleOracle& oracle, PartialModel& pm,
                                       ObservationCounters& counters,
                                       std::vector<double>& lower, std::vector<double>& upper,
                                       const EstimatorConfig& est, double p_min, Rng& rng);

/// True when every staying pair of T (judged by observed successors) has
/// been sampled often enough that an overlooked exit has probability below
/// delta_t; in grey mode, when every staying pair's full support is known
/// and inside T.
bool delta_sure_ec(std::span<const StateId> T, const ObservationCounters& counters,
                   double delta_t, double p_min, AccessMode mode, const PartialModel& pm);

/// Simulation stopping test: false on first visits; otherwise true iff the
/// current state lies in an end component of the partial model restricted to
/// the visited set that is delta_t-surely an EC.
bool looping(std::span<const StateId> X, StateId s, const ObservationCounters& counters,
             const PartialModel& pm, double delta_t, double p_min, AccessMode mode);

/// Bellman backup over X \ Goal (empty X = all explored states) with the
/// estimated operators; fills the per-pair tables and tightens the state
/// bounds monotonically.
void update_estimated(const PartialModel& pm, const ObservationCounters& counters,
                      const EstimatorConfig& est, std::vector<double>& lower,
                      std::vector<double>& upper, std::vector<double>& pair_lower,
                      std::vector<double>& pair_upper, std::span<const StateId> X = {});

/// MSEC candidates of the explored sub-game: drop Minimizer actions whose
/// estimated lower value exceeds the state's bound, decompose into MECs over
/// observed edges, keep only delta_t-sure components.
std::vector<std::vector<StateId>> find_msecs_black(
    const PartialModel& pm, std::span<const double> lower, std::span<const double> pair_lower,
    const ObservationCounters& counters, double delta_t, double p_min, AccessMode mode);

/// Caps the upper bound of every state in T at Maximizer's best exit value
/// under the estimated upper operator (observed exits only). T must have
/// passed delta_sure_ec. A goal inside T leaves all bounds at 1.
void deflate_black(std::span<const StateId> T, const PartialModel& pm,
                   std::span<const double> pair_upper, std::vector<double>& upper);

/// Anytime statistical model checking run: doubling error schedule, N_k
/// guided counting simulations per phase, then a guaranteed value-iteration
/// phase over re-initialized bounds. Whenever stopped, the reported interval
/// covers the value of the initial state with probability at least 1-delta.
RunReport black_vi(const SampleOracle& oracle, const BlackViConfig& config);

}  // namespace sgsmc
