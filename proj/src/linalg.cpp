// linalg.cpp: Tridiagonal (LAPACKE dstevr) and dense symmetric eigensolvers

#include "qcs/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace qcs::linalg {

Eigen::MatrixXd SymTridiagonal::to_dense() const {
    const Eigen::Index n = size();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    m.diagonal() = diag;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        m(i, i + 1) = off(i);
        m(i + 1, i) = off(i);
    }
    return m;
}

EigenPairs tridiagonal_lowest(const SymTridiagonal& m, Eigen::Index count, bool want_vectors) {
    const Eigen::Index n = m.size();
    if (n == 0 || m.off.size() != n - 1) {
        throw std::invalid_argument("tridiagonal_lowest: inconsistent diagonal sizes");
    }
    if (count < 1 || count > n) {
        throw std::invalid_argument("tridiagonal_lowest: count out of range");
    }

    Eigen::VectorXd d = m.diag;
    // dstevr wants an off-diagonal workspace of length n.
    Eigen::VectorXd e(n);
    e.head(n - 1) = m.off;
    e(n - 1) = 0.0;

    lapack_int found = 0;
    Eigen::VectorXd w(n);
    Eigen::MatrixXd z;
    if (want_vectors) z.resize(n, count);
    std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(count));

    const lapack_int info = LAPACKE_dstevr(
        LAPACK_COL_MAJOR, want_vectors ? 'V' : 'N', 'I', static_cast<lapack_int>(n), d.data(),
        e.data(), 0.0, 0.0, 1, static_cast<lapack_int>(count), 0.0, &found, w.data(),
        want_vectors ? z.data() : nullptr, want_vectors ? static_cast<lapack_int>(n) : 1,
        isuppz.data());
    if (info != 0 || found != count) {
        throw std::runtime_error("tridiagonal_lowest: dstevr failed (info=" +
                                 std::to_string(info) + ")");
    }
    return {w.head(count), std::move(z)};
}

EigenPairs symmetric_lowest(const Eigen::MatrixXd& m, Eigen::Index count, bool want_vectors) {
    const Eigen::Index n = m.rows();
    if (n == 0 || m.cols() != n) {
        throw std::invalid_argument("symmetric_lowest: matrix must be square and nonempty");
    }
    if (count < 1 || count > n) {
        throw std::invalid_argument("symmetric_lowest: count out of range");
    }

    // Eigen's own solver: dense LAPACK drivers lean on level-3 BLAS, whose
    // kernels are not trustworthy on every host.
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        m, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric_lowest: eigensolver did not converge");
    }
    if (want_vectors) return {solver.eigenvalues().head(count), solver.eigenvectors().leftCols(count)};
    return {solver.eigenvalues().head(count), Eigen::MatrixXd{}};
}

}  // namespace qcs::linalg
