#include "codediter/verify/report.hpp"

#include <algorithm>
#include <ostream>

#include "codediter/error.hpp"
#include "codediter/sim/trace.hpp"

namespace codediter {

bool Statistic::pass() const {
    // NaN fails both ways
    return comparison == Comparison::Less ? value < threshold : value <= threshold;
}

void VerificationReport::add(std::string name, double value, double threshold, Comparison cmp) {
    statistics.push_back({std::move(name), value, threshold, cmp});
}

bool VerificationReport::pass() const {
    return !statistics.empty() &&
           std::all_of(statistics.begin(), statistics.end(), [](const Statistic& s) { return s.pass(); });
}

const Statistic& VerificationReport::statistic(const std::string& name) const {
    for (const auto& s : statistics)
        if (s.name == name) return s;
    throw ConfigError("report " + check + " has no statistic " + name);
}

void write_report_text(std::ostream& out, const VerificationReport& report) {
    out << report.check << ": " << (report.pass() ? "PASS" : "FAIL") << "  (samples " << report.samples
        << ", seed " << report.seed << ")\n";
    for (const auto& s : report.statistics)
        out << "  " << (s.pass() ? "ok  " : "FAIL") << ' ' << s.name << " = " << format_double(s.value)
            << (s.comparison == Comparison::Less ? " < " : " <= ") << format_double(s.threshold) << '\n';
    for (const auto& [name, value] : report.info) out << "       " << name << " = " << format_double(value) << '\n';
    for (const auto& w : report.warnings) out << "  warning: " << w << '\n';
}

void write_report_csv_rows(std::ostream& out, const VerificationReport& report) {
    for (const auto& s : report.statistics)
        out << report.check << ',' << s.name << ',' << format_double(s.value) << ',' << format_double(s.threshold)
            << ',' << (s.pass() ? "true" : "false") << '\n';
}

}  // namespace codediter
