#include "qcs/linalg.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace qcs::linalg;

namespace {

// Deterministic symmetric test matrix with a spread spectrum.
Eigen::MatrixXd test_matrix(int n) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) m(i, j) = std::sin(0.37 * (i + 1) * (j + 1)) + (i == j ? 0.05 * i : 0.0);
    }
    return 0.5 * (m + m.transpose());
}

}  // namespace

TEST_CASE("dense eigenpairs at sizes that exercise blocked code paths") {
    for (int n : {40, 300}) {
        const Eigen::MatrixXd m = test_matrix(n);
        const auto pairs = symmetric_lowest(m, 12, true);
        const Eigen::VectorXd ref = oracle::dense_spectrum(m);
        CHECK((pairs.values - ref.head(12)).cwiseAbs().maxCoeff() < 1e-10);
        const Eigen::MatrixXd gram = pairs.vectors.transpose() * pairs.vectors;
        CHECK((gram - Eigen::MatrixXd::Identity(12, 12)).cwiseAbs().maxCoeff() < 1e-12);
        const Eigen::MatrixXd res = m * pairs.vectors - pairs.vectors * pairs.values.asDiagonal();
        CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
        CHECK(symmetric_lowest(m, 3, false).vectors.size() == 0);
    }
    CHECK_THROWS_AS(symmetric_lowest(Eigen::MatrixXd(2, 3), 1, false), std::invalid_argument);
    CHECK_THROWS_AS(symmetric_lowest(Eigen::MatrixXd::Identity(4, 4), 5, false), std::invalid_argument);
}

TEST_CASE("tridiagonal eigenpairs against the dense form") {
    const int n = 2000;
    SymTridiagonal t{Eigen::VectorXd(n), Eigen::VectorXd(n - 1)};
    for (int i = 0; i < n; ++i) t.diag(i) = 2.0 + 1e-3 * (i - n / 2) * (i - n / 2) / n;
    t.off.setConstant(-1.0);
    const auto pairs = tridiagonal_lowest(t, 20, true);
    const Eigen::MatrixXd dense = t.to_dense();
    CHECK((pairs.values - oracle::dense_spectrum(dense).head(20)).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd res = dense * pairs.vectors - pairs.vectors * pairs.values.asDiagonal();
    CHECK(res.cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXd gram = pairs.vectors.transpose() * pairs.vectors;
    CHECK((gram - Eigen::MatrixXd::Identity(20, 20)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK_THROWS_AS(tridiagonal_lowest(SymTridiagonal{Eigen::VectorXd(3), Eigen::VectorXd(3)}, 1, false),
                    std::invalid_argument);
}
