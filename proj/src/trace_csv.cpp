#include "sgsmc/trace_csv.hpp"

#include <sstream>
#include <stdexcept>

namespace sgsmc {

std::vector<TraceRecord> read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kTraceHeader)
        throw std::runtime_error("bad trace header: " + line);
    std::vector<TraceRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream row(line);
        TraceRecord r;
        char comma;
        row >> r.wall_ms >> comma >> r.k >> comma >> r.delta_k >> comma >> r.explored_states >>
            comma >> r.explored_pct >> comma >> r.lower >> comma >> r.upper;
        if (row.fail()) throw std::runtime_error("bad trace row: " + line);
        out.push_back(r);
    }
    return out;
}

}  // namespace sgsmc
