#include "codediter/algorithms/scheme.hpp"

#include "codediter/error.hpp"

namespace codediter {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::Noiseless: return "noiseless";
        case Scheme::Uncoded: return "uncoded";
        case Scheme::ReplicationComm: return "replication_comm";
        case Scheme::ReplicationStorage: return "replication_storage";
        case Scheme::Coded: return "coded";
        case Scheme::ApproxGradientCoding: return "approx_gradient_coding";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "noiseless") return Scheme::Noiseless;
    if (name == "uncoded") return Scheme::Uncoded;
    if (name == "replication" || name == "replication_comm") return Scheme::ReplicationComm;
    if (name == "replication_storage") return Scheme::ReplicationStorage;
    if (name == "coded") return Scheme::Coded;
    if (name == "approx_gradient_coding" || name == "approx_gc") return Scheme::ApproxGradientCoding;
    throw ConfigError("unknown scheme '" + std::string(name) + "'");
}

std::string_view to_string(Workload workload) {
    switch (workload) {
        case Workload::PowerRow: return "power_row";
        case Workload::PowerColumn: return "power_column";
        case Workload::PowerSumma: return "power_summa";
        case Workload::Eigen: return "eigen";
        case Workload::Svd: return "svd";
        case Workload::Gradient: return "gradient";
    }
    return "?";
}

}  // namespace codediter
