#pragma once

#include <cstdint>

#include "codediter/kernel/types.hpp"

namespace codediter {

/// Concatenation of the rows of X.
Vector vec(const DenseMatrix& X);

/// Inverse of vec: rows are consecutive length-b slices of v.
DenseMatrix mat(const Vector& v, std::int64_t b);

/// vec(A * mat(v, b)), the action of (A kron I_b) on v.
Vector kron_apply(const DenseMatrix& A, const Vector& v, std::int64_t b);

}  // namespace codediter
