#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace codediter {

enum class Comparison { LessEqual, Less };

struct Statistic {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    Comparison comparison = Comparison::LessEqual;

    bool pass() const;
};

struct VerificationReport {
    std::string check;
    std::vector<Statistic> statistics;
    std::vector<std::pair<std::string, double>> info;  ///< descriptive values, not judged
    std::vector<std::string> warnings;
    std::int64_t samples = 0;
    std::uint64_t seed = 0;

    void add(std::string name, double value, double threshold, Comparison cmp = Comparison::LessEqual);
    /// All statistics within their thresholds. An empty report does not pass.
    bool pass() const;
    const Statistic& statistic(const std::string& name) const;
};

void write_report_text(std::ostream& out, const VerificationReport& report);

inline constexpr const char* kReportCsvHeader = "check,statistic,value,threshold,pass";
/// Rows only; callers write kReportCsvHeader once.
void write_report_csv_rows(std::ostream& out, const VerificationReport& report);

}  // namespace codediter
