#include "codediter/problems/least_squares.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "codediter/error.hpp"

namespace codediter {

double LeastSquaresProblem::objective(const Vector& x) const {
    return (A * x - y).squaredNorm() / (2.0 * static_cast<double>(A.rows()));
}

Vector LeastSquaresProblem::gradient(const Vector& x) const {
    return A.transpose() * (A * x - y) / static_cast<double>(A.rows());
}

double LeastSquaresProblem::lipschitz() const {
    const Eigen::MatrixXd gram = A.transpose() * A / static_cast<double>(A.rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
}

LeastSquaresProblem make_least_squares(DenseMatrix A, Vector y) {
    if (A.rows() != y.size()) throw DimensionError("least squares: A rows differ from y length");
    if (A.rows() < A.cols()) throw ConfigError("least squares needs n >= dim");
    LeastSquaresProblem p{std::move(A), std::move(y), {}};
    const Eigen::MatrixXd gram = p.A.transpose() * p.A;
    const Eigen::VectorXd rhs = p.A.transpose() * p.y;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) throw NumericError("least squares: normal equations are singular");
    p.x_star = ldlt.solve(rhs);
    // one refinement pass tightens the residual of the normal equations
    p.x_star += ldlt.solve(rhs - gram * p.x_star);
    return p;
}

LeastSquaresProblem build_least_squares(std::int64_t n, std::int64_t dim, Rng& rng) {
    if (n < 1 || dim < 1) throw ConfigError("least squares needs n, dim >= 1");
    DenseMatrix A(n, dim);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < dim; ++j) A(i, j) = standard_normal(rng);
    Vector y(n);
    for (Eigen::Index i = 0; i < n; ++i) y[i] = standard_normal(rng);
    return make_least_squares(std::move(A), std::move(y));
}

}  // namespace codediter
