#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "sgsmc/report.hpp"

namespace sgsmc {

/// One CSV row per phase record; explored_pct is derived from the total
/// state count known to the harness.
struct TraceRecord {
    std::int64_t wall_ms;
    std::uint64_t k;
    double delta_k;
    std::size_t explored_states;
    double explored_pct;
    double lower;
    double upper;
};

inline constexpr const char* kTraceHeader =
    "wall_ms,k,delta_k,explored_states,explored_pct,lower,upper";

inline void write_trace_csv(std::ostream& out, const std::vector<PhaseRecord>& phases,
                            std::size_t total_states) {
    out << kTraceHeader << '\n';
    out.precision(12);
    for (const auto& p : phases) {
        const double pct =
            total_states ? 100.0 * static_cast<double>(p.explored) / total_states : 0.0;
        out << p.wall_ms << ',' << p.k << ',' << p.delta_k << ',' << p.explored << ',' << pct
            << ',' << p.lower << ',' << p.upper << '\n';
    }
}

/// Round-trip reader for the exact column layout above; throws on a
/// malformed header or row.
std::vector<TraceRecord> read_trace_csv(std::istream& in);

}  // namespace sgsmc
