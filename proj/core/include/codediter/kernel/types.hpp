#pragma once

#include <Eigen/Core>

namespace codediter {

/// Row-major dense matrix used for every small and tall-skinny block.
using DenseMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace codediter
