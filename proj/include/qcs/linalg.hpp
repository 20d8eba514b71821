// linalg.hpp: Lowest eigenpairs of real symmetric matrices

#pragma once

#include <Eigen/Dense>

#include <span>

namespace qcs::linalg {

// Real symmetric tridiagonal matrix: diag has n entries, off has n - 1.
struct SymTridiagonal {
    Eigen::VectorXd diag;
    Eigen::VectorXd off;

    Eigen::Index size() const { return diag.size(); }
    Eigen::MatrixXd to_dense() const;
};

struct EigenPairs {
    Eigen::VectorXd values;   // ascending
    Eigen::MatrixXd vectors;  // columns, unit 2-norm; empty when not requested
};

// Lowest `count` eigenpairs. Throws std::invalid_argument on bad sizes and
// std::runtime_error when the solver fails. The tridiagonal case goes to
// LAPACK (MRRR, no level-3 BLAS); the dense case stays inside Eigen.
EigenPairs tridiagonal_lowest(const SymTridiagonal& m, Eigen::Index count, bool want_vectors);
EigenPairs symmetric_lowest(const Eigen::MatrixXd& m, Eigen::Index count, bool want_vectors);

}  // namespace qcs::linalg
