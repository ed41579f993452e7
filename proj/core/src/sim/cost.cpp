#include "codediter/sim/cost.hpp"

#include <cmath>
#include <string>

#include "codediter/error.hpp"
#include "codediter/splitting/plan.hpp"

namespace codediter {

namespace {

double column_cost(Scheme scheme, double N, double k, double P, double d) {
    switch (scheme) {
        case Scheme::Noiseless:
        case Scheme::Uncoded: return N * (1.0 + 1.0 / P);
        case Scheme::ReplicationComm: return N * (1.0 + 1.0 / k);
        case Scheme::ReplicationStorage: return N * (d + d / k);
        case Scheme::Coded: return N * (1.0 + d / k);
        case Scheme::ApproxGradientCoding: break;
    }
    throw ConfigError(std::string(to_string(scheme)) + " has no column-split cost");
}

}  // namespace

double comm_cost_per_iter(Scheme scheme, Workload workload, std::int64_t N_, std::int64_t k_, std::int64_t P_,
                          std::int64_t d_, std::int64_t r_) {
    if (N_ <= 0 || k_ <= 0 || P_ <= 0 || r_ <= 0) throw ConfigError("cost parameters must be positive");
    const double N = static_cast<double>(N_);
    const double k = static_cast<double>(k_);
    const double P = static_cast<double>(P_);
    const double d = static_cast<double>(d_);
    const double r = static_cast<double>(r_);
    const bool gc = scheme == Scheme::ApproxGradientCoding;
    if (gc && workload != Workload::Gradient)
        throw ConfigError("approx_gradient_coding only applies to gradient descent");

    switch (workload) {
        case Workload::PowerRow:
            switch (scheme) {
                case Scheme::Noiseless:
                case Scheme::Uncoded: return N * (1.0 + 1.0 / P);
                case Scheme::ReplicationComm:
                case Scheme::Coded: return N * (1.0 + 1.0 / k);
                case Scheme::ReplicationStorage: return N * (1.0 + d / k);
                case Scheme::ApproxGradientCoding: break;
            }
            break;
        case Workload::PowerColumn: return column_cost(scheme, N, k, P, d);
        case Workload::Eigen: return r * column_cost(scheme, N, k, P, d);
        case Workload::PowerSumma: {
            // strip g is broadcast to its group (N/s); each worker replies with its row pieces
            const double s = static_cast<double>(exact_sqrt(k_));
            const double group = P / s;
            switch (scheme) {
                case Scheme::Noiseless:
                case Scheme::Uncoded: return N / s + N / group;
                case Scheme::ReplicationComm: return N / s + 2.0 * N / group;
                case Scheme::Coded: return 2.0 * N / s;
                case Scheme::ReplicationStorage: return (1.0 + d) * N / s;
                case Scheme::ApproxGradientCoding: break;
            }
            break;
        }
        case Workload::Svd: return scheme == Scheme::ReplicationStorage ? 2.0 * (1.0 + d) * N * r : 2.0 * N * r;
        case Workload::Gradient: return scheme == Scheme::ReplicationStorage ? 2.0 * (1.0 + d) * N : 2.0 * N;
    }
    throw ConfigError("unknown scheme/workload combination");
}

}  // namespace codediter
