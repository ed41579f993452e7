#include "codediter/sim/trace.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <sstream>

#include "codediter/error.hpp"

namespace codediter {

MetricsTrace average_traces(const std::vector<MetricsTrace>& traces) {
    if (traces.empty()) throw ConfigError("average_traces needs at least one trace");
    const auto len = traces.front().size();
    for (const auto& t : traces)
        if (t.size() != len) throw DimensionError("average_traces: traces differ in length");
    const double n = static_cast<double>(traces.size());
    MetricsTrace out;
    out.records.resize(len);
    for (std::size_t i = 0; i < len; ++i) {
        auto& rec = out.records[i];
        rec.iteration = traces.front().records[i].iteration;
        rec.comm_cost = traces.front().records[i].comm_cost;
        double sum = 0.0;
        for (const auto& t : traces) {
            const auto& src = t.records[i];
            sum += src.error;
            rec.delta += src.delta;
            rec.survivors += src.survivors;
            rec.restarted = rec.restarted || src.restarted;
        }
        rec.error = sum / n;
        rec.delta /= n;
        rec.survivors /= n;
        if (traces.size() > 1) {
            double ss = 0.0;
            for (const auto& t : traces) ss += (t.records[i].error - rec.error) * (t.records[i].error - rec.error);
            rec.error_std = std::sqrt(ss / (n - 1.0));
        } else {
            rec.error_std = traces.front().records[i].error_std;
        }
    }
    return out;
}

std::string format_double(double v) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw NumericError("could not format value");
    return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const MetricsTrace& trace) {
    out << "iteration,comm_cost,error_mean,error_std,delta_mean\n";
    for (const auto& r : trace.records)
        out << r.iteration << ',' << format_double(r.comm_cost) << ',' << format_double(r.error) << ','
            << format_double(r.error_std) << ',' << format_double(r.delta) << '\n';
}

std::string trace_csv(const MetricsTrace& trace) {
    std::ostringstream out;
    write_trace_csv(out, trace);
    return out.str();
}

}  // namespace codediter
