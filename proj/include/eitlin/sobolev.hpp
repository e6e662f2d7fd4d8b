#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eitlin/parallel.hpp"
#include "eitlin/rng.hpp"

namespace eitlin::sobolev {

/// Ordered eigenpairs of the unit-conductivity ND map on the disk together
/// with the scaling exponent used by the H^eps machinery. Eigenvalues come
/// in pairs 1/|m| (modes +m and -m); ties are broken by |m| ascending with
/// the positive mode first, which pins lambda_{M+1} for the embedding bound.
struct EigenScale {
    std::vector<double> lambda;  // nonincreasing
    std::vector<int> mode;       // Fourier labels: +1, -1, +2, -2, ...
    double eps = 0.5;

    int count() const { return static_cast<int>(lambda.size()); }
};

/// First `count` eigenvalues of Lambda(1) on the disk: lambda = 1/|m| with
/// multiplicity 2 per |m|.
inline EigenScale nd_eigenvalues(int count, double eps = 0.5) {
    if (count < 1) throw std::invalid_argument("nd_eigenvalues: count must be >= 1");
    if (!(eps > 0.0 && eps <= 0.5)) {
        throw std::invalid_argument("nd_eigenvalues: eps must lie in (0, 1/2]");
    }
    EigenScale scale;
    scale.eps = eps;
    scale.lambda.reserve(static_cast<std::size_t>(count));
    scale.mode.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i) {
        const int ma = (i + 1) / 2;
        scale.lambda.push_back(1.0 / ma);
        scale.mode.push_back(i % 2 == 1 ? ma : -ma);
    }
    return scale;
}

/// H^eps inner product of coefficient vectors in the eigenbasis:
/// sum_i lambda_i^{-2 eps} g_i conj(h_i).
inline std::complex<double> h_eps_inner(
    const std::vector<std::complex<double>>& g,
    const std::vector<std::complex<double>>& h, double eps,
    const EigenScale& scale) {
    if (g.size() != h.size()) {
        throw std::invalid_argument("h_eps_inner: length mismatch");
    }
    if (g.size() > scale.lambda.size()) {
        throw std::invalid_argument("h_eps_inner: more coefficients than eigenvalues");
    }
    if (!(eps >= -0.5 && eps <= 0.5)) {
        throw std::invalid_argument("h_eps_inner: eps must lie in [-1/2, 1/2]");
    }
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        acc += std::pow(scale.lambda[i], -2.0 * eps) * g[i] * std::conj(h[i]);
    }
    return acc;
}

/// Dense complex matrix in the eigenbasis (finite Hilbert-Schmidt section).
struct HsMatrix {
    int n = 0;
    std::vector<std::complex<double>> a;  // row-major n x n

    explicit HsMatrix(int size) : n(size) {
        if (size < 1) throw std::invalid_argument("HsMatrix: size must be >= 1");
        a.assign(static_cast<std::size_t>(size) * size, {0.0, 0.0});
    }
    std::complex<double>& at(int i, int j) {
        return a[static_cast<std::size_t>(i) * n + j];
    }
    const std::complex<double>& at(int i, int j) const {
        return a[static_cast<std::size_t>(i) * n + j];
    }
    double frobenius() const {
        double s = 0.0;
        for (const auto& v : a) s += std::norm(v);
        return std::sqrt(s);
    }
};

/// Finite-rank embedding error and its certified bound: with the leading
/// M x M square removed,
///   error^2 = sum_{(i,j) outside} (lambda_i lambda_j)^{2 eps} |T_{ij}|^2,
///   bound^2 = (lambda_1 lambda_{M+1})^{2 eps} sum_{i,j} |T_{ij}|^2,
/// and error <= bound. Indices here are 0-based; M counts retained rows.
inline std::pair<double, double> embedding_error_check(const HsMatrix& T, int M,
                                                       double eps,
                                                       const EigenScale& scale) {
    if (M < 0 || M >= T.n) {
        throw std::invalid_argument("embedding_error_check: requires 0 <= M < n");
    }
    if (!(eps >= 0.0 && eps <= 0.5)) {
        throw std::invalid_argument("embedding_error_check: eps must lie in [0, 1/2]");
    }
    if (static_cast<int>(scale.lambda.size()) < T.n) {
        throw std::invalid_argument("embedding_error_check: eigen scale too short");
    }
    std::vector<double> pw(static_cast<std::size_t>(T.n));
    for (int i = 0; i < T.n; ++i) {
        pw[static_cast<std::size_t>(i)] =
            std::pow(scale.lambda[static_cast<std::size_t>(i)], 2.0 * eps);
    }
    double err2 = 0.0;
    double frob2 = 0.0;
    for (int i = 0; i < T.n; ++i) {
        for (int j = 0; j < T.n; ++j) {
            const double w = std::norm(T.at(i, j));
            frob2 += w;
            if (i >= M || j >= M) {
                err2 += pw[static_cast<std::size_t>(i)] *
                        pw[static_cast<std::size_t>(j)] * w;
            }
        }
    }
    const double bound2 = pw[0] * pw[static_cast<std::size_t>(M)] * frob2;
    return {std::sqrt(err2), std::sqrt(bound2)};
}

/// Random-matrix certification sweep of the embedding bound.
struct EmbeddingSweepResult {
    double worst_ratio = 0.0;  // max error/bound over all trials
    long checks = 0;
    bool pass = true;          // error <= bound everywhere
};

inline EmbeddingSweepResult embedding_sweep(
    int trials, int n, const std::vector<int>& ranks,
    const std::vector<double>& eps_values, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("embedding_sweep: trials must be >= 1");
    const EigenScale scale = nd_eigenvalues(n);
    std::vector<EmbeddingSweepResult> partial(static_cast<std::size_t>(trials));
    parallel_for(0, trials, [&](int trial) {
        Rng rng(seed + static_cast<std::uint64_t>(trial));
        HsMatrix T(n);
        for (auto& v : T.a) v = rng.complex_normal();
        EmbeddingSweepResult& res = partial[static_cast<std::size_t>(trial)];
        for (const double eps : eps_values) {
            for (const int M : ranks) {
                const auto [err, bound] = embedding_error_check(T, M, eps, scale);
                ++res.checks;
                if (err > bound) res.pass = false;
                if (bound > 0.0) {
                    res.worst_ratio = std::max(res.worst_ratio, err / bound);
                }
            }
        }
    });
    EmbeddingSweepResult out;
    for (const auto& p : partial) {
        out.worst_ratio = std::max(out.worst_ratio, p.worst_ratio);
        out.checks += p.checks;
        out.pass = out.pass && p.pass;
    }
    return out;
}

}  // namespace eitlin::sobolev
