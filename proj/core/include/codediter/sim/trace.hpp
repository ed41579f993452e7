#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace codediter {

struct TraceRecord {
    std::int64_t iteration = 0;
    double comm_cost = 0.0;   ///< cumulative reals communicated
    double error = 0.0;       ///< error metric (mean when averaged)
    double error_std = 0.0;   ///< spread across runs; 0 for a single run
    double survivors = 0.0;
    double delta = 0.0;       ///< realized 1 - rank/k (or fraction of unavailable blocks)
    bool restarted = false;
};

/// One record per iteration, starting with the initial state at iteration 0.
struct MetricsTrace {
    std::vector<TraceRecord> records;

    std::size_t size() const { return records.size(); }
    const TraceRecord& back() const { return records.back(); }
};

/// Pointwise mean and sample standard deviation of the error, mean delta and
/// survivors. comm_cost and iteration come from the first trace.
MetricsTrace average_traces(const std::vector<MetricsTrace>& traces);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// Header "iteration,comm_cost,error_mean,error_std,delta_mean" then one row per record.
void write_trace_csv(std::ostream& out, const MetricsTrace& trace);
std::string trace_csv(const MetricsTrace& trace);

}  // namespace codediter
