#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace codediter {

enum class Scheme { Noiseless, Uncoded, ReplicationComm, ReplicationStorage, Coded, ApproxGradientCoding };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// What the engine iterates. Power* are the three splittings of x <- Bx + y.
enum class Workload { PowerRow, PowerColumn, PowerSumma, Eigen, Svd, Gradient };

std::string_view to_string(Workload workload);

}  // namespace codediter
