#include "eitlin/zernike.hpp"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "eitlin/rng.hpp"

namespace {

using eitlin::zernike::DiskGrid;
using eitlin::zernike::SpectralPerturbation;
using eitlin::zernike::ZernikeIndex;

TEST(RadialEval, LowOrderValues) {
    EXPECT_DOUBLE_EQ(eitlin::zernike::radial_eval(0, 0, 0.7), 1.0);
    EXPECT_DOUBLE_EQ(eitlin::zernike::radial_eval(1, 0, 0.5), 0.5);
    // R^0_2(r) = 2 r^2 - 1
    EXPECT_NEAR(eitlin::zernike::radial_eval(0, 1, 0.5), -0.5, 1e-15);
}

TEST(RadialEval, RejectsBadArguments) {
    EXPECT_THROW(eitlin::zernike::radial_eval(0, -1, 0.5), std::invalid_argument);
    EXPECT_THROW(eitlin::zernike::radial_eval(0, 0, -0.1), std::invalid_argument);
    EXPECT_THROW(eitlin::zernike::radial_eval(0, 0, 1.5), std::invalid_argument);
    EXPECT_THROW(eitlin::zernike::radial_eval(0, 0, std::nan("")), std::invalid_argument);
}

TEST(RadialEval, EndpointNormalization) {
    // R^{|j|}_{|j|+2k}(1) = 1
    for (int j = 0; j <= 20; ++j) {
        for (int k = 0; k <= 20; ++k) {
            EXPECT_NEAR(eitlin::zernike::radial_eval(j, k, 1.0), 1.0, 1e-9)
                << "j=" << j << " k=" << k;
        }
    }
}

TEST(RadialEval, BinomialAndRecurrenceRoutesAgree) {
    // binomial-range degrees evaluated through both routes
    for (const double r : {0.0, 0.15, 0.5, 0.93, 1.0}) {
        for (const auto& [j, k] : {std::pair{0, 8}, {4, 6}, {2, 5}, {6, 5}}) {
            const double direct = eitlin::zernike::radial_eval(j, k, r);
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            const double via_jacobi =
                sign * std::pow(r, j) *
                eitlin::zernike::detail::jacobi_p(k, j, 1.0 - 2.0 * r * r);
            EXPECT_NEAR(direct, via_jacobi, 1e-10) << "j=" << j << " k=" << k;
        }
    }
    // past the switch the value at the endpoint stays pinned
    EXPECT_NEAR(eitlin::zernike::radial_eval(0, 31, 1.0), 1.0, 1e-12);  // degree 62
    EXPECT_NEAR(eitlin::zernike::radial_eval(2, 30, 1.0), 1.0, 1e-12);  // degree 62
}

TEST(BasisEval, SpotValues) {
    const auto v = eitlin::zernike::basis_eval({0, 0}, 0.3, 1.2);
    EXPECT_NEAR(v.real(), 1.0 / std::sqrt(M_PI), 1e-15);
    EXPECT_NEAR(v.imag(), 0.0, 1e-15);

    const auto w = eitlin::zernike::basis_eval({1, 0}, 1.0, 0.0);
    EXPECT_NEAR(w.real(), std::sqrt(2.0 / M_PI), 1e-15);
    EXPECT_NEAR(w.imag(), 0.0, 1e-15);
}

TEST(BasisEval, ConjugationSymmetryIsExact) {
    eitlin::Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const int j = 1 + static_cast<int>(rng.uniform() * 8);
        const int k = static_cast<int>(rng.uniform() * 5);
        const double r = rng.uniform();
        const double theta = 2.0 * M_PI * rng.uniform();
        const auto plus = eitlin::zernike::basis_eval({j, k}, r, theta);
        const auto minus = eitlin::zernike::basis_eval({-j, k}, r, theta);
        EXPECT_EQ(minus, std::conj(plus));
    }
}

TEST(DiskGrid, IntegratesAreaToPi) {
    const DiskGrid grid(8, 16);
    double w = 0.0;
    for (int q = 0; q < grid.radial_count(); ++q) w += grid.radial_weight(q);
    EXPECT_NEAR(w * 2.0 * M_PI, M_PI, 1e-12 * M_PI);
}

TEST(DiskGrid, NodesInsideOpenInterval) {
    const DiskGrid grid(32, 8);
    for (int q = 0; q < grid.radial_count(); ++q) {
        EXPECT_GT(grid.radius(q), 0.0);
        EXPECT_LT(grid.radius(q), 1.0);
    }
}

TEST(Analyze, RecoversSingleBasisFunction) {
    const auto grid = DiskGrid::for_degree(2 + 2 * 2, 2);  // degree 6, jmax 2
    const auto samples = eitlin::zernike::sample_basis(grid, {2, 1});
    const auto table = eitlin::zernike::analyze(grid, samples, 2, 2);
    for (int j = -2; j <= 2; ++j) {
        for (int k = 0; k <= 2; ++k) {
            const double expected = (j == 2 && k == 1) ? 1.0 : 0.0;
            EXPECT_NEAR(std::abs(table.at(j, k) - expected), 0.0, 1e-10)
                << "j=" << j << " k=" << k;
        }
    }
}

TEST(Analyze, ZeroFieldGivesZeroTable) {
    const DiskGrid grid(8, 10);
    const std::vector<std::complex<double>> samples(
        static_cast<std::size_t>(grid.radial_count()) * grid.ntheta(), 0.0);
    const auto table = eitlin::zernike::analyze(grid, samples, 1, 2);
    for (int j = -1; j <= 1; ++j) {
        for (int k = 0; k <= 2; ++k) {
            EXPECT_EQ(table.at(j, k), std::complex<double>(0.0, 0.0));
        }
    }
}

TEST(Analyze, RCosThetaDecomposition) {
    // r cos(theta) = c (psi_{1,0} + psi_{-1,0}) with c = sqrt(2 pi)/4
    const auto grid = DiskGrid::for_degree(4, 2);
    std::vector<std::complex<double>> samples(
        static_cast<std::size_t>(grid.radial_count()) * grid.ntheta());
    for (int q = 0; q < grid.radial_count(); ++q) {
        for (int t = 0; t < grid.ntheta(); ++t) {
            samples[static_cast<std::size_t>(q) * grid.ntheta() + t] =
                grid.radius(q) * std::cos(grid.theta(t));
        }
    }
    const auto table = eitlin::zernike::analyze(grid, samples, 2, 1);
    const double expected = 0.5 * std::sqrt(M_PI / 2.0);
    EXPECT_NEAR(table.at(1, 0).real(), expected, 1e-12);
    EXPECT_NEAR(table.at(-1, 0).real(), expected, 1e-12);
    EXPECT_NEAR(table.at(1, 0).imag(), 0.0, 1e-12);
    double off = 0.0;
    for (int j = -2; j <= 2; ++j) {
        for (int k = 0; k <= 1; ++k) {
            if (std::abs(j) == 1 && k == 0) continue;
            off = std::max(off, std::abs(table.at(j, k)));
        }
    }
    EXPECT_LE(off, 1e-12);
}

TEST(Analyze, RejectsUnderResolvedGrid) {
    const DiskGrid coarse(3, 4);
    const std::vector<std::complex<double>> samples(
        static_cast<std::size_t>(coarse.radial_count()) * coarse.ntheta(), 0.0);
    EXPECT_THROW(eitlin::zernike::analyze(coarse, samples, 2, 2),
                 std::invalid_argument);
}

TEST(Synthesize, UnitCoefficientAtOrigin) {
    SpectralPerturbation table(0, 0);
    table.at(0, 0) = 1.0;
    const auto vals = eitlin::zernike::synthesize(table, {{0.0, 0.0}});
    EXPECT_NEAR(vals[0].real(), 1.0 / std::sqrt(M_PI), 1e-15);
}

TEST(Synthesize, ZeroTableIsZeroEverywhere) {
    const SpectralPerturbation table(2, 2);
    const auto vals = eitlin::zernike::synthesize(table, {{0.1, 0.0}, {0.9, 2.0}});
    for (const auto& v : vals) EXPECT_EQ(v, std::complex<double>(0.0, 0.0));
}

TEST(Synthesize, AnalyzeRoundTripOnRandomTable) {
    const int jmax = 4, kmax = 4;
    SpectralPerturbation table(jmax, kmax);
    eitlin::Rng rng(7);
    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = 0; k <= kmax; ++k) table.at(j, k) = rng.complex_normal();
    }
    const auto grid = DiskGrid::for_degree(jmax + 2 * kmax, jmax);
    std::vector<std::pair<double, double>> points;
    for (int q = 0; q < grid.radial_count(); ++q) {
        for (int t = 0; t < grid.ntheta(); ++t) {
            points.emplace_back(grid.radius(q), grid.theta(t));
        }
    }
    const auto samples = eitlin::zernike::synthesize(table, points);
    const auto back = eitlin::zernike::analyze(grid, samples, jmax, kmax);
    double worst = 0.0;
    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = 0; k <= kmax; ++k) {
            worst = std::max(worst, std::abs(back.at(j, k) - table.at(j, k)));
        }
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(Orthonormality, PairwiseUpToDegreeEight) {
    const int jmax = 8, kmax = 8;
    const auto grid = DiskGrid::for_degree(2 * (jmax + 2 * kmax), jmax);
    // cache basis samples per (j, k)
    std::vector<std::vector<std::complex<double>>> cache;
    std::vector<ZernikeIndex> idx;
    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = 0; k <= kmax; ++k) {
            idx.push_back({j, k});
            cache.push_back(eitlin::zernike::sample_basis(grid, {j, k}));
        }
    }
    const double wt = grid.angular_weight();
    double worst = 0.0;
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a; b < idx.size(); ++b) {
            std::complex<double> acc = 0.0;
            for (int q = 0; q < grid.radial_count(); ++q) {
                std::complex<double> ring = 0.0;
                for (int t = 0; t < grid.ntheta(); ++t) {
                    const std::size_t at = static_cast<std::size_t>(q) * grid.ntheta() + t;
                    ring += cache[a][at] * std::conj(cache[b][at]);
                }
                acc += grid.radial_weight(q) * wt * ring;
            }
            const double expected = (a == b) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(acc - expected));
        }
    }
    EXPECT_LE(worst, 1e-10);
}

}  // namespace
