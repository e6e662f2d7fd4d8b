#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "eitlin/frechet.hpp"
#include "eitlin/rng.hpp"
#include "eitlin/zernike.hpp"

namespace eitlin::recon {

/// Truncations and regularization of the one-step linearized reconstructor.
struct ReconConfig {
    int mmax = 1;
    int kmax = 0;
    int jmax = 0;
    double alpha = 0.0;        // ridge weight on Zernike coefficients
    double noise_sigma = 0.0;  // synthetic-data noise level
    std::uint64_t seed = 0;

    void validate() const {
        if (mmax < 1 || kmax < 0 || jmax < 0) {
            throw std::invalid_argument("ReconConfig: truncations must be positive");
        }
        if (alpha < 0.0) throw std::invalid_argument("ReconConfig: alpha must be >= 0");
        if (noise_sigma < 0.0) {
            throw std::invalid_argument("ReconConfig: noise sigma must be >= 0");
        }
    }
};

namespace detail {

// Cholesky solve of the (SPD) normal system G x = b for complex b; G is
// real symmetric, stored row-major. Throws if a pivot is not positive.
inline std::vector<std::complex<double>> cholesky_solve(
    std::vector<double> G, std::vector<std::complex<double>> b, int n) {
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = G[static_cast<std::size_t>(i) * n + j];
            for (int p = 0; p < j; ++p) {
                s -= G[static_cast<std::size_t>(i) * n + p] *
                     G[static_cast<std::size_t>(j) * n + p];
            }
            if (i == j) {
                if (!(s > 0.0)) {
                    throw std::runtime_error("solve_block: singular normal system");
                }
                G[static_cast<std::size_t>(i) * n + j] = std::sqrt(s);
            } else {
                G[static_cast<std::size_t>(i) * n + j] =
                    s / G[static_cast<std::size_t>(j) * n + j];
            }
        }
    }
    // forward then backward substitution with L and L^T
    for (int i = 0; i < n; ++i) {
        std::complex<double> s = b[static_cast<std::size_t>(i)];
        for (int p = 0; p < i; ++p) {
            s -= G[static_cast<std::size_t>(i) * n + p] * b[static_cast<std::size_t>(p)];
        }
        b[static_cast<std::size_t>(i)] = s / G[static_cast<std::size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        std::complex<double> s = b[static_cast<std::size_t>(i)];
        for (int p = i + 1; p < n; ++p) {
            s -= G[static_cast<std::size_t>(p) * n + i] * b[static_cast<std::size_t>(p)];
        }
        b[static_cast<std::size_t>(i)] = s / G[static_cast<std::size_t>(i) * n + i];
    }
    return b;
}

}  // namespace detail

/// Ridge-regularized least squares min ||B c - d||^2 + alpha ||c||^2 on one
/// triangular block. alpha = 0 on a square block falls back to the exact
/// forward substitution; a singular system at alpha = 0 is reported, not
/// silently regularized.
inline std::vector<std::complex<double>> solve_block(
    const frechet::TriangularBlock& block,
    const std::vector<std::complex<double>>& d, double alpha) {
    if (static_cast<int>(d.size()) != block.rows) {
        throw std::invalid_argument("solve_block: data length must equal block rows");
    }
    if (alpha < 0.0) throw std::invalid_argument("solve_block: alpha must be >= 0");
    const int rows = block.rows;
    const int cols = block.cols;

    if (alpha == 0.0 && rows == cols) {
        std::vector<std::complex<double>> c(static_cast<std::size_t>(cols));
        for (int m = 1; m <= rows; ++m) {
            const double piv = block.value(m, m);
            if (piv == 0.0) {
                throw std::runtime_error("solve_block: singular triangular system");
            }
            std::complex<double> s = d[static_cast<std::size_t>(m - 1)];
            for (int k = 1; k < m; ++k) {
                s -= block.value(m, k) * c[static_cast<std::size_t>(k - 1)];
            }
            c[static_cast<std::size_t>(m - 1)] = s / piv;
        }
        return c;
    }

    // normal equations (B^T B + alpha I) c = B^T d
    std::vector<double> G(static_cast<std::size_t>(cols) * cols, 0.0);
    for (int i = 1; i <= cols; ++i) {
        for (int j = 1; j <= cols; ++j) {
            double s = 0.0;
            for (int m = std::max(i, j); m <= rows; ++m) {
                s += block.value(m, i) * block.value(m, j);
            }
            G[static_cast<std::size_t>(i - 1) * cols + (j - 1)] =
                s + (i == j ? alpha : 0.0);
        }
    }
    std::vector<std::complex<double>> rhs(static_cast<std::size_t>(cols));
    for (int i = 1; i <= cols; ++i) {
        std::complex<double> s = 0.0;
        for (int m = i; m <= rows; ++m) {
            s += block.value(m, i) * d[static_cast<std::size_t>(m - 1)];
        }
        rhs[static_cast<std::size_t>(i - 1)] = s;
    }
    return detail::cholesky_solve(std::move(G), std::move(rhs), cols);
}

/// One-step linearized reconstruction: per-j Tikhonov solves on the
/// positive-quadrant diagonals (the j-blocks decouple because distinct
/// diagonals have disjoint supports).
inline zernike::SpectralPerturbation reconstruct(const frechet::NDPerturbation& nd,
                                                 const ReconConfig& cfg) {
    cfg.validate();
    if (nd.mmax() < cfg.mmax) {
        throw std::invalid_argument("reconstruct: data truncation below cfg.mmax");
    }
    zernike::SpectralPerturbation table(cfg.jmax, cfg.kmax);
    for (int j = -cfg.jmax; j <= cfg.jmax; ++j) {
        const int ja = std::abs(j);
        const int rows = cfg.mmax - ja;
        if (rows < 1) continue;
        const int cols = std::min(cfg.kmax + 1, rows);
        std::vector<std::complex<double>> d(static_cast<std::size_t>(rows));
        for (int l = 1; l <= rows; ++l) {
            const int m = (j >= 0) ? l : l + ja;  // positive quadrant, row index l
            d[static_cast<std::size_t>(l - 1)] = nd.value(j, m);
        }
        const auto block = frechet::assemble_block(ja, rows, cols);
        const auto c = solve_block(block, d, cfg.alpha);
        for (int k = 0; k < cols; ++k) {
            table.at(j, k) = c[static_cast<std::size_t>(k)];
        }
    }
    return table;
}

/// Adds i.i.d. complex Gaussian noise of the given level to the independent
/// (positive-quadrant) diagonal entries and mirrors it, preserving the
/// diagonal symmetry of the data.
inline frechet::NDPerturbation add_noise(const frechet::NDPerturbation& nd,
                                         double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    frechet::NDPerturbation out(nd.mmax());
    Rng rng(seed);
    for (const auto& [j, diag] : nd.diagonals()) {
        const auto ms = frechet::NDPerturbation::admissible_m(j, nd.mmax());
        std::vector<std::complex<double>> noisy = diag;
        // positive quadrant first (ascending m), then mirror
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (ms[i] > std::max(-j, 0)) noisy[i] += sigma * rng.complex_normal();
        }
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const int m = ms[i];
            if (m < std::min(-j, 0)) {
                const int mirror = -m - j;
                for (std::size_t p = 0; p < ms.size(); ++p) {
                    if (ms[p] == mirror) {
                        noisy[i] = noisy[p];
                        break;
                    }
                }
            }
        }
        out.set_diagonal(j, std::move(noisy));
    }
    return out;
}

}  // namespace eitlin::recon
