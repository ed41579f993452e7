#include "codediter/splitting/reshape.hpp"

#include <string>

#include "codediter/error.hpp"

namespace codediter {

Vector vec(const DenseMatrix& X) {
    // DenseMatrix is row-major, so its storage order is already vec order.
    return Eigen::Map<const Vector>(X.data(), X.size());
}

DenseMatrix mat(const Vector& v, std::int64_t b) {
    if (b <= 0) throw DimensionError("mat: block length must be positive");
    if (v.size() % b != 0)
        throw DimensionError("mat: length " + std::to_string(v.size()) + " is not divisible by " + std::to_string(b));
    return Eigen::Map<const DenseMatrix>(v.data(), v.size() / b, b);
}

Vector kron_apply(const DenseMatrix& A, const Vector& v, std::int64_t b) {
    if (b <= 0 || v.size() != A.cols() * b)
        throw DimensionError("kron_apply: vector length must equal A.cols() * b");
    const DenseMatrix out = A * mat(v, b);
    return vec(out);
}

}  // namespace codediter
