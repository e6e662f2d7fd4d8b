#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "eitlin/gamma.hpp"
#include "eitlin/zernike.hpp"

namespace eitlin::frechet {

inline constexpr double kInvSqrtPi = 0.56418958354775628695;  // 1/sqrt(pi)

/// Boundary Fourier mode f_m = e^{i m theta} / sqrt(2 pi), m != 0.
struct FourierIndex {
    int m = 1;
};

/// Finite section of the lower-triangular matrix F^{|j|}: rows m = 1..M,
/// columns k = 1..K (K <= M), all entries nonpositive.
struct TriangularBlock {
    int j_abs = 0;
    int rows = 0;
    int cols = 0;
    std::vector<double> data;  // row-major rows x cols

    /// Entry F^{|j|}_{m,k}; m and k are the 1-based matrix indices.
    double value(int m, int k) const {
        if (m < 1 || m > rows || k < 1 || k > cols) {
            throw std::out_of_range("TriangularBlock::value: index out of range");
        }
        return data[static_cast<std::size_t>(m - 1) * cols +
                    static_cast<std::size_t>(k - 1)];
    }
};

/// Matrix element a^{j,k}_{m,n} = <(F psi_{j,k}) f_m, f_n>. Nonzero only for
/// n = m + j, mn > 0 and k < min{|m|,|n|}; the product is accumulated
/// factor-by-factor in ascending i (empty product = 1 at k = 0).
inline double entry(int j, int k, int m, int n) {
    if (k < 0) throw std::invalid_argument("entry: k must be >= 0");
    if (m == 0 || n == 0) {
        throw std::invalid_argument("entry: Fourier modes must be nonzero");
    }
    if (n != m + j) return 0.0;
    if ((m > 0) != (n > 0)) return 0.0;
    const int q = std::min(std::abs(m), std::abs(n));
    if (k >= q) return 0.0;
    const int ja = std::abs(j);
    double prod = 1.0;
    for (int i = 1; i <= k; ++i) {
        prod *= static_cast<double>(q - i) / static_cast<double>(ja + q + k - i);
    }
    return -kInvSqrtPi * std::sqrt(static_cast<double>(ja + 2 * k + 1)) /
           static_cast<double>(q + ja + k) * prod;
}

/// |F^{|j|}_{m,k}| through the log-gamma route,
///   (1/sqrt(pi)) sqrt(2k+|j|-1)/(m+|j|)
///     * Gamma(m) Gamma(m+|j|+1) / (Gamma(m-k+1) Gamma(m+|j|+k)),
/// the second route of the dual check against entry().
inline double entry_gamma(int j, int k, int m) {
    if (k < 1) throw std::invalid_argument("entry_gamma: k must be >= 1");
    if (k > m) throw std::invalid_argument("entry_gamma: requires k <= m");
    const int ja = std::abs(j);
    // difference pairing keeps the k = 1 cancellation exact
    const double lg = (log_gamma(static_cast<double>(m)) -
                       log_gamma(static_cast<double>(m - k + 1))) +
                      (log_gamma(static_cast<double>(m + ja + 1)) -
                       log_gamma(static_cast<double>(m + ja + k)));
    return kInvSqrtPi * std::sqrt(static_cast<double>(2 * k + ja - 1)) /
           static_cast<double>(m + ja) * std::exp(lg);
}

namespace detail {

// Fills one row of F^{|j|}: row(m, k) for k = 1..min(m, K). The running
// product P_k = prod_{i=1}^{k-1} (m-i)/(m+|j|+k-1-i) obeys
// P_{k+1} = P_k (m-k)/(m+|j|+k-1), one multiply per column.
template <typename Sink>
void fill_row(int j_abs, int m, int kmax, Sink&& sink) {
    double p = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        const double val = -kInvSqrtPi *
                           std::sqrt(static_cast<double>(2 * k + j_abs - 1)) /
                           static_cast<double>(m + j_abs + k - 1) * p;
        sink(k, val);
        p *= static_cast<double>(m - k) / static_cast<double>(m + j_abs + k - 1);
        if (p == 0.0) {
            for (int kk = k + 1; kk <= kmax; ++kk) sink(kk, 0.0);
            return;
        }
    }
}

}  // namespace detail

/// Finite section of F^{|j|} with entries F_{m,k} = a^{|j|,k-1}_{m,m+|j|}
/// for 1 <= k <= m, zero above the diagonal.
inline TriangularBlock assemble_block(int j_abs, int rows, int cols) {
    if (j_abs < 0) throw std::invalid_argument("assemble_block: j_abs must be >= 0");
    if (cols < 1 || cols > rows) {
        throw std::invalid_argument("assemble_block: requires 1 <= cols <= rows");
    }
    TriangularBlock block;
    block.j_abs = j_abs;
    block.rows = rows;
    block.cols = cols;
    block.data.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    for (int m = 1; m <= rows; ++m) {
        double* row = block.data.data() + static_cast<std::size_t>(m - 1) * cols;
        detail::fill_row(j_abs, m, std::min(m, cols),
                         [row](int k, double v) { row[k - 1] = v; });
    }
    return block;
}

/// Matrix representation of F eta on the Fourier modes, stored as per-j
/// diagonals a^j_{m,m+j} over the admissible window |m|, |m+j| <= mmax.
/// Diagonals absent from the map are identically zero.
class NDPerturbation {
  public:
    explicit NDPerturbation(int mmax) : mmax_(mmax) {
        if (mmax < 1) throw std::invalid_argument("NDPerturbation: mmax must be >= 1");
    }

    int mmax() const { return mmax_; }
    bool empty() const { return diagonals_.empty(); }

    /// Admissible row modes of diagonal j, ascending: m in [-mmax, mmax],
    /// m != 0, m+j != 0, |m+j| <= mmax.
    static std::vector<int> admissible_m(int j, int mmax) {
        std::vector<int> out;
        for (int m = -mmax; m <= mmax; ++m) {
            if (m == 0 || m + j == 0) continue;
            if (std::abs(m + j) > mmax) continue;
            out.push_back(m);
        }
        return out;
    }

    void set_diagonal(int j, std::vector<std::complex<double>> values) {
        if (values.size() != admissible_m(j, mmax_).size()) {
            throw std::invalid_argument("NDPerturbation: diagonal length mismatch");
        }
        diagonals_[j] = std::move(values);
    }

    const std::map<int, std::vector<std::complex<double>>>& diagonals() const {
        return diagonals_;
    }

    /// a^j_{m,m+j}; zero for anything not stored.
    std::complex<double> value(int j, int m) const {
        const auto it = diagonals_.find(j);
        if (it == diagonals_.end()) return {0.0, 0.0};
        const auto ms = admissible_m(j, mmax_);
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (ms[i] == m) return it->second[i];
        }
        return {0.0, 0.0};
    }

  private:
    int mmax_;
    std::map<int, std::vector<std::complex<double>>> diagonals_;
};

/// F applied to a coefficient table: per-j diagonals with the positive
/// quadrant given by (F^{|j|} c^j)_{min(m, m+j)}, the negative quadrant by
/// the symmetry a^j_{m,m+j} = a^j_{-m-j,-m}, and zeros on the strip between
/// the quadrants. Diagonals with |j| > 2 mmax cannot intersect the window
/// and are dropped.
inline NDPerturbation apply(const zernike::SpectralPerturbation& coeffs, int mmax) {
    if (mmax < 1) throw std::invalid_argument("apply: mmax must be >= 1");
    NDPerturbation nd(mmax);
    const int jcap = std::min(coeffs.jmax(), 2 * mmax);
    for (int j = -jcap; j <= jcap; ++j) {
        const int ja = std::abs(j);
        const auto ms = NDPerturbation::admissible_m(j, mmax);
        std::vector<std::complex<double>> diag(ms.size(), {0.0, 0.0});
        const int len = mmax - ja;  // positive-quadrant rows
        if (len >= 1) {
            const int kcols = std::min(coeffs.kmax() + 1, len);
            const TriangularBlock block = assemble_block(ja, len, kcols);
            std::vector<std::complex<double>> w(static_cast<std::size_t>(len),
                                                {0.0, 0.0});
            for (int l = 1; l <= len; ++l) {
                std::complex<double> acc = 0.0;
                for (int k = 1; k <= std::min(l, kcols); ++k) {
                    acc += block.value(l, k) * coeffs.at(j, k - 1);
                }
                w[static_cast<std::size_t>(l - 1)] = acc;
            }
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const int m = ms[i];
                if (m > std::max(-j, 0)) {
                    diag[i] = w[static_cast<std::size_t>(std::min(m, m + j) - 1)];
                } else if (m < std::min(-j, 0)) {
                    diag[i] = w[static_cast<std::size_t>(std::min(-m - j, -m) - 1)];
                }
            }
        }
        nd.set_diagonal(j, std::move(diag));
    }
    return nd;
}

/// Hilbert-Schmidt norm sqrt(sum |a^j_{m,n}|^2) over all stored diagonals.
inline double hs_norm(const NDPerturbation& nd) {
    double s = 0.0;
    for (const auto& [j, diag] : nd.diagonals()) {
        for (const auto& v : diag) s += std::norm(v);
    }
    return std::sqrt(s);
}

}  // namespace eitlin::frechet
