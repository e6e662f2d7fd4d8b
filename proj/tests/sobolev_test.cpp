#include "eitlin/sobolev.hpp"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "eitlin/rng.hpp"

namespace {

namespace sobolev = eitlin::sobolev;
using sobolev::EigenScale;
using sobolev::HsMatrix;

TEST(NdEigenvalues, FirstFourPairs) {
    const auto scale = sobolev::nd_eigenvalues(4);
    EXPECT_EQ(scale.lambda, (std::vector<double>{1.0, 1.0, 0.5, 0.5}));
    EXPECT_EQ(scale.mode, (std::vector<int>{1, -1, 2, -2}));
}

TEST(NdEigenvalues, SingleAndMonotone) {
    const auto one = sobolev::nd_eigenvalues(1);
    EXPECT_EQ(one.lambda, (std::vector<double>{1.0}));
    const auto scale = sobolev::nd_eigenvalues(101);
    for (std::size_t i = 1; i < scale.lambda.size(); ++i) {
        EXPECT_LE(scale.lambda[i], scale.lambda[i - 1]);
        EXPECT_GT(scale.lambda[i], 0.0);
    }
    EXPECT_THROW(sobolev::nd_eigenvalues(0), std::invalid_argument);
}

TEST(HEpsInner, ReducesToL2AtEpsZero) {
    const auto scale = sobolev::nd_eigenvalues(4);
    const std::vector<std::complex<double>> e1 = {1.0, 0.0, 0.0, 0.0};
    const auto v = sobolev::h_eps_inner(e1, e1, 0.0, scale);
    EXPECT_DOUBLE_EQ(v.real(), 1.0);
    EXPECT_DOUBLE_EQ(v.imag(), 0.0);
}

TEST(HEpsInner, ScalesByInverseEigenvalue) {
    const auto scale = sobolev::nd_eigenvalues(4);
    const std::vector<std::complex<double>> e3 = {0.0, 0.0, 1.0, 0.0};
    const auto v = sobolev::h_eps_inner(e3, e3, 0.5, scale);  // lambda_3 = 1/2
    EXPECT_NEAR(v.real(), 2.0, 1e-15);
}

TEST(HEpsInner, ScaledBasisIsOrthonormal) {
    // phi_i^eps has coefficient lambda_i^eps at slot i
    const int n = 6;
    const double eps = 0.25;
    const auto scale = sobolev::nd_eigenvalues(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<std::complex<double>> gi(n, 0.0), gj(n, 0.0);
            gi[static_cast<std::size_t>(i)] =
                std::pow(scale.lambda[static_cast<std::size_t>(i)], eps);
            gj[static_cast<std::size_t>(j)] =
                std::pow(scale.lambda[static_cast<std::size_t>(j)], eps);
            const auto v = sobolev::h_eps_inner(gi, gj, eps, scale);
            EXPECT_NEAR(v.real(), i == j ? 1.0 : 0.0, 1e-14);
            EXPECT_NEAR(v.imag(), 0.0, 1e-14);
        }
    }
}

TEST(HEpsInner, RejectsMismatchedLengths) {
    const auto scale = sobolev::nd_eigenvalues(4);
    const std::vector<std::complex<double>> a(3, 0.0), b(4, 0.0);
    EXPECT_THROW(sobolev::h_eps_inner(a, b, 0.1, scale), std::invalid_argument);
}

TEST(EmbeddingErrorCheck, ZeroMatrix) {
    const auto scale = sobolev::nd_eigenvalues(8);
    const HsMatrix T(8);
    const auto [err, bound] = sobolev::embedding_error_check(T, 3, 0.25, scale);
    EXPECT_DOUBLE_EQ(err, 0.0);
    EXPECT_DOUBLE_EQ(bound, 0.0);
}

TEST(EmbeddingErrorCheck, RankOneInsideRetainedSquare) {
    const auto scale = sobolev::nd_eigenvalues(8);
    HsMatrix T(8);
    T.at(0, 0) = 1.0;  // support inside the leading 1x1 square
    const auto [err, bound] = sobolev::embedding_error_check(T, 1, 0.25, scale);
    EXPECT_DOUBLE_EQ(err, 0.0);
    EXPECT_GT(bound, 0.0);
}

TEST(EmbeddingErrorCheck, RandomMatrixAgainstBound) {
    const int n = 50;
    const auto scale = sobolev::nd_eigenvalues(n);
    HsMatrix T(n);
    eitlin::Rng rng(5);
    for (auto& v : T.a) v = rng.complex_normal();
    const auto [err, bound] = sobolev::embedding_error_check(T, 10, 0.25, scale);
    EXPECT_LE(err, bound);
    // bound^2 = (lambda_1 lambda_11)^{2 eps} ||T||_HS^2 with lambda_11 = 1/6
    const double expected = std::pow(1.0 / 6.0, 0.25) * T.frobenius();
    EXPECT_NEAR(bound, expected, 1e-12 * expected);
}

TEST(EmbeddingErrorCheck, ErrorNonincreasingInRankAndVanishing) {
    const int n = 24;
    const auto scale = sobolev::nd_eigenvalues(n);
    HsMatrix T(n);
    eitlin::Rng rng(17);
    for (auto& v : T.a) v = rng.complex_normal();
    double prev = std::numeric_limits<double>::infinity();
    for (int M = 1; M < n; ++M) {
        const auto [err, bound] = sobolev::embedding_error_check(T, M, 0.25, scale);
        EXPECT_LE(err, prev + 1e-15);
        EXPECT_LE(err, bound);
        prev = err;
    }
    HsMatrix inside(n);
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n - 1; ++j) inside.at(i, j) = T.at(i, j);
    }
    const auto [err_last, bound_last] =
        sobolev::embedding_error_check(inside, n - 1, 0.25, scale);
    EXPECT_DOUBLE_EQ(err_last, 0.0);
    (void)bound_last;
}

TEST(EmbeddingErrorCheck, EpsZeroGivesComplementFrobeniusMass) {
    const int n = 12;
    const auto scale = sobolev::nd_eigenvalues(n);
    HsMatrix T(n);
    eitlin::Rng rng(23);
    for (auto& v : T.a) v = rng.complex_normal();
    const int M = 4;
    const auto [err, bound] = sobolev::embedding_error_check(T, M, 0.0, scale);
    double complement = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i >= M || j >= M) complement += std::norm(T.at(i, j));
        }
    }
    EXPECT_NEAR(err * err, complement, 1e-12 * complement);
    (void)bound;
}

TEST(EmbeddingErrorCheck, RejectsRankOutOfRange) {
    const auto scale = sobolev::nd_eigenvalues(8);
    const HsMatrix T(8);
    EXPECT_THROW(sobolev::embedding_error_check(T, 8, 0.25, scale),
                 std::invalid_argument);
    EXPECT_THROW(sobolev::embedding_error_check(T, -1, 0.25, scale),
                 std::invalid_argument);
}

TEST(EmbeddingSweep, SmallSweepPasses) {
    const auto res = sobolev::embedding_sweep(50, 20, {1, 5, 10, 19},
                                              {0.1, 0.25, 0.5}, 9);
    EXPECT_TRUE(res.pass);
    EXPECT_EQ(res.checks, 50L * 4L * 3L);
    EXPECT_GT(res.worst_ratio, 0.0);
    EXPECT_LE(res.worst_ratio, 1.0);
}

}  // namespace
