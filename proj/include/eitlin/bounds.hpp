#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "eitlin/frechet.hpp"
#include "eitlin/gamma.hpp"
#include "eitlin/parallel.hpp"

namespace eitlin::bounds {

/// Schur-test weight pair for F^{|j|}: u_l = l^{-1/2}, v_l = (l+|j|)^{-1/2}.
/// Row sums are certified against 4 v_m, column sums against 32 u_k.
struct SchurVectors {
    int j_abs = 0;
    double u(int l) const { return 1.0 / std::sqrt(static_cast<double>(l)); }
    double v(int l) const {
        return 1.0 / std::sqrt(static_cast<double>(l + j_abs));
    }
};

inline constexpr double kRowConstant = 4.0;
inline constexpr double kColConstant = 32.0;
inline constexpr double kNormBound = 11.313708498984760390;  // 2^(7/2)

/// Exponential majorant xi^{|j|}_m(k) of |F^{|j|}_{m,k}|; coincides with the
/// matrix element at k = 1.
inline double xi(int j_abs, int m, int k) {
    if (k < 1) throw std::invalid_argument("xi: k must be >= 1");
    if (k > m) throw std::invalid_argument("xi: requires k <= m");
    j_abs = std::abs(j_abs);
    return frechet::kInvSqrtPi *
           std::sqrt(static_cast<double>(2 * k + j_abs - 1)) /
           static_cast<double>(m + j_abs) *
           std::exp(-2.0 * (k + j_abs) * (k - 1.0) / (2.0 * m + j_abs + 1.0));
}

/// Gamma ratio rho(x) = Gamma(m) Gamma(m+|j|+1) / (Gamma(m-x+1) Gamma(m+|j|+x))
/// for continuous x in [1, m]; rho(1) = 1.
inline double rho(int j_abs, int m, double x) {
    if (!(x >= 1.0 && x <= static_cast<double>(m))) {
        throw std::invalid_argument("rho: requires 1 <= x <= m");
    }
    j_abs = std::abs(j_abs);
    // difference pairing keeps the x = 1 cancellation exact
    const double lg = (log_gamma(static_cast<double>(m)) -
                       log_gamma(static_cast<double>(m) - x + 1.0)) +
                      (log_gamma(static_cast<double>(m + j_abs + 1)) -
                       log_gamma(static_cast<double>(m + j_abs) + x));
    return std::exp(lg);
}

/// Right-hand side of the Gronwall estimate:
/// rho(x) <= exp(-2 (x+|j|)(x-1) / (2m+|j|+1)).
inline double gronwall_bound(int j_abs, int m, double x) {
    j_abs = std::abs(j_abs);
    return std::exp(-2.0 * (x + j_abs) * (x - 1.0) /
                    (2.0 * m + j_abs + 1.0));
}

/// Weighted row sum sum_{k=1}^{K} |F^{|j|}_{m,k}| u_k. Rows are finitely
/// supported (zero past k = m), so K >= m already captures the full row.
inline double schur_row_check(int j_abs, int m, int K) {
    if (m < 1) throw std::invalid_argument("schur_row_check: m must be >= 1");
    const SchurVectors sv{std::abs(j_abs)};
    double sum = 0.0;
    frechet::detail::fill_row(sv.j_abs, m, std::min(m, K),
                              [&](int k, double val) { sum += -val * sv.u(k); });
    return sum;
}

namespace detail {

// Tail majorant for sum_{m >= m0} |F^{|j|}_{m,k}| v_m, obtained from the
// exponential bound on the entries and the integral test (integrated up to
// infinity). Unimodality of the majorized summand is handled by adding its
// peak value when the peak can lie inside the tail window.
inline double schur_col_tail(int j_abs, int k, int m0) {
    const double b = 2.0 * k * (k + j_abs);
    const double coef = std::pow(3.0, 1.5) * std::exp(2.0) *
                        frechet::kInvSqrtPi *
                        std::sqrt(static_cast<double>(2 * k + j_abs - 1));
    const double a0 = 2.0 * (m0 - 1.0) + j_abs + 1.0;
    const double integral =
        std::sqrt(M_PI) / (2.0 * std::sqrt(b)) * std::erf(std::sqrt(b / a0));
    const double peak = b / 3.0 - (j_abs + 1.0) / 2.0;
    double extra = 0.0;
    if (peak >= m0 - 1.0) {
        extra = 2.0 * std::pow(3.0 / (2.0 * std::exp(1.0) * b), 1.5);
    }
    return coef * (integral + extra);
}

}  // namespace detail

/// Weighted column sum sum_{m=k}^{M} |F^{|j|}_{m,k}| v_m plus an analytic
/// bound on the tail m > M, so the returned value dominates the infinite
/// column sum. The finite part runs a scaled ratio recurrence in m to stay
/// meaningful below the underflow threshold of the raw entries.
inline double schur_col_check(int j_abs, int k, int M) {
    if (k < 1) throw std::invalid_argument("schur_col_check: k must be >= 1");
    j_abs = std::abs(j_abs);
    const SchurVectors sv{j_abs};
    double sum = 0.0;
    if (M >= k) {
        // seed |F_{k,k}| by the product form (exact route, no exp underflow
        // until the scaled carrier takes over)
        double mant = frechet::kInvSqrtPi *
                      std::sqrt(static_cast<double>(2 * k + j_abs - 1)) /
                      static_cast<double>(k + j_abs + k - 1);
        int scale = 0;  // value = mant * 2^(-500 * scale)
        for (int i = 1; i <= k - 1; ++i) {
            mant *= static_cast<double>(k - i) /
                    static_cast<double>(k + j_abs + k - 1 - i);
            if (mant < 0x1.0p-500) {
                mant *= 0x1.0p500;
                ++scale;
            }
        }
        for (int m = k; m <= M; ++m) {
            if (scale == 0) sum += mant * sv.v(m);
            mant *= static_cast<double>(m) * static_cast<double>(m + j_abs) /
                    (static_cast<double>(m + 1 - k) *
                     static_cast<double>(m + j_abs + k));
            if (mant < 0x1.0p-500) {
                mant *= 0x1.0p500;
                ++scale;
            } else if (mant > 0x1.0p500 && scale > 0) {
                mant *= 0x1.0p-500;
                --scale;
            }
        }
    }
    return sum + detail::schur_col_tail(j_abs, k, std::max(M + 1, k));
}

/// Lower bound on the spectral norm of a block by power iteration on B^T B,
/// all-ones start vector; nondecreasing in iters and never exceeding the
/// true norm.
inline double op_norm_estimate(const frechet::TriangularBlock& block, int iters) {
    if (iters < 1) throw std::invalid_argument("op_norm_estimate: iters must be >= 1");
    const int rows = block.rows;
    const int cols = block.cols;
    if (rows < 1 || cols < 1) return 0.0;
    std::vector<double> v(static_cast<std::size_t>(cols),
                          1.0 / std::sqrt(static_cast<double>(cols)));
    std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
    std::vector<double> z(static_cast<std::size_t>(cols), 0.0);
    double estimate = 0.0;
    for (int it = 0; it < iters; ++it) {
        for (int m = 1; m <= rows; ++m) {
            const double* row =
                block.data.data() + static_cast<std::size_t>(m - 1) * cols;
            const int width = std::min(m, cols);
            double acc = 0.0;
            for (int k = 0; k < width; ++k) acc += row[k] * v[static_cast<std::size_t>(k)];
            y[static_cast<std::size_t>(m - 1)] = acc;
        }
        double ynorm2 = 0.0;
        for (const double w : y) ynorm2 += w * w;
        estimate = std::sqrt(ynorm2);  // = sqrt(v^T B^T B v), v normalized
        std::fill(z.begin(), z.end(), 0.0);
        for (int m = 1; m <= rows; ++m) {
            const double* row =
                block.data.data() + static_cast<std::size_t>(m - 1) * cols;
            const double ym = y[static_cast<std::size_t>(m - 1)];
            const int width = std::min(m, cols);
            for (int k = 0; k < width; ++k) z[static_cast<std::size_t>(k)] += row[k] * ym;
        }
        double znorm = 0.0;
        for (const double w : z) znorm += w * w;
        znorm = std::sqrt(znorm);
        if (znorm == 0.0) return 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) v[i] = z[i] / znorm;
    }
    return estimate;
}

/// One row of the majorant-tightness table.
struct Figure1Row {
    int j = 0;
    int m = 0;
    int k = 0;
    double abs_f = 0.0;
    double xi = 0.0;
};

/// Table comparing |F^{|j|}_{m,k}| with xi^{|j|}_m(k) over the stock index
/// selection (j in {0,3}, m in {15,30,100}, k = 1..16 by default). Rows past
/// the triangle (k > m) carry the exact matrix value 0 against the formula
/// value of the majorant, matching the plotted continuum curve.
inline std::vector<Figure1Row> figure1_data(
    const std::vector<int>& js = {0, 3},
    const std::vector<int>& ms = {15, 30, 100}, int k_lo = 1, int k_hi = 16) {
    if (k_lo < 1 || k_hi < k_lo) {
        throw std::invalid_argument("figure1_data: need 1 <= k_lo <= k_hi");
    }
    std::vector<Figure1Row> rows;
    for (const int j : js) {
        for (const int m : ms) {
            for (int k = k_lo; k <= k_hi; ++k) {
                const double abs_f = (k <= m) ? frechet::entry_gamma(j, k, m) : 0.0;
                const double maj =
                    (k <= m) ? xi(j, m, k)
                             : frechet::kInvSqrtPi *
                                   std::sqrt(static_cast<double>(2 * k + j - 1)) /
                                   static_cast<double>(m + j) *
                                   std::exp(-2.0 * (k + j) * (k - 1.0) /
                                            (2.0 * m + j + 1.0));
                rows.push_back({j, m, k, abs_f, maj});
            }
        }
    }
    return rows;
}

/// Result of one certified inequality over a sweep: worst margin
/// (bound - value), its location, and the pass flag (margin >= 0).
struct CheckResult {
    std::string name;
    double worst_margin = std::numeric_limits<double>::infinity();
    double worst_value = 0.0;
    double worst_bound = 0.0;
    double at_j = 0.0;
    double at_m = 0.0;
    double at_k = 0.0;
    bool pass = true;

    void consider(double value, double bound, double j, double m, double k) {
        const double margin = bound - value;
        if (margin < worst_margin) {
            worst_margin = margin;
            worst_value = value;
            worst_bound = bound;
            at_j = j;
            at_m = m;
            at_k = k;
        }
    }
    void merge(const CheckResult& other) {
        if (other.worst_margin < worst_margin) {
            worst_margin = other.worst_margin;
            worst_value = other.worst_value;
            worst_bound = other.worst_bound;
            at_j = other.at_j;
            at_m = other.at_m;
            at_k = other.at_k;
        }
    }
    void finalize() { pass = worst_margin >= 0.0; }
};

struct BoundReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks) {
            if (!c.pass) return false;
        }
        return true;
    }
};

/// Entry-bound domination sweep: entry_gamma <= xi over k <= m <= max_m,
/// |j| <= max_j, with equality at k = 1 certified to 1e-14 relative.
inline BoundReport domination_check(int max_m = 500, int max_j = 50) {
    std::vector<CheckResult> dom(static_cast<std::size_t>(max_j + 1));
    std::vector<CheckResult> eq(static_cast<std::size_t>(max_j + 1));
    parallel_for(0, max_j + 1, [&](int j) {
        CheckResult& d = dom[static_cast<std::size_t>(j)];
        CheckResult& e = eq[static_cast<std::size_t>(j)];
        for (int m = 1; m <= max_m; ++m) {
            for (int k = 1; k <= m; ++k) {
                const double a = frechet::entry_gamma(j, k, m);
                const double b = xi(j, m, k);
                d.consider(a, b, j, m, k);
                if (k == 1) {
                    const double rel = std::abs(a - b) / b;
                    e.consider(rel, 1e-14, j, m, k);
                }
            }
        }
    });
    BoundReport report;
    CheckResult dall;
    dall.name = "entry_gamma <= xi";
    for (const auto& c : dom) dall.merge(c);
    dall.finalize();
    CheckResult eall;
    eall.name = "k=1 equality (relative)";
    for (const auto& c : eq) eall.merge(c);
    eall.finalize();
    report.checks.push_back(std::move(dall));
    report.checks.push_back(std::move(eall));
    return report;
}

/// Gronwall majorant sweep: rho(x) <= exp bound on x-grids of the given
/// step over [1, m], for m <= max_m and |j| <= max_j.
inline BoundReport gronwall_check(int max_m = 200, int max_j = 20,
                                  double step = 0.01) {
    if (!(step > 0.0)) throw std::invalid_argument("gronwall_check: step must be > 0");
    std::vector<CheckResult> partial(static_cast<std::size_t>(max_j + 1));
    parallel_for(0, max_j + 1, [&](int j) {
        CheckResult& c = partial[static_cast<std::size_t>(j)];
        for (int m = 1; m <= max_m; ++m) {
            const int steps =
                static_cast<int>(std::floor((m - 1.0) / step + 1e-9));
            for (int i = 0; i <= steps; ++i) {
                const double x = 1.0 + i * step;
                c.consider(rho(j, m, x), gronwall_bound(j, m, x), j, m, x);
            }
            if (m > 1) {
                const double xm = static_cast<double>(m);
                c.consider(rho(j, m, xm), gronwall_bound(j, m, xm), j, m, xm);
            }
        }
    });
    BoundReport report;
    CheckResult all;
    all.name = "rho <= gronwall bound";
    for (const auto& c : partial) all.merge(c);
    all.finalize();
    report.checks.push_back(std::move(all));
    return report;
}

/// Schur certificate sweep: row sums <= 4 v_m and tail-certified column
/// sums <= 32 u_k for m, k <= max_mk and |j| <= max_j.
inline BoundReport schur_check(int max_mk = 2000, int max_j = 100) {
    std::vector<CheckResult> rowp(static_cast<std::size_t>(max_j + 1));
    std::vector<CheckResult> colp(static_cast<std::size_t>(max_j + 1));
    parallel_for(0, max_j + 1, [&](int j) {
        const SchurVectors sv{j};
        CheckResult& r = rowp[static_cast<std::size_t>(j)];
        CheckResult& c = colp[static_cast<std::size_t>(j)];
        for (int m = 1; m <= max_mk; ++m) {
            r.consider(schur_row_check(j, m, m), kRowConstant * sv.v(m), j, m, 0);
        }
        for (int k = 1; k <= max_mk; ++k) {
            c.consider(schur_col_check(j, k, max_mk), kColConstant * sv.u(k), j, 0, k);
        }
    });
    BoundReport report;
    CheckResult rall;
    rall.name = "schur row sums <= 4 v_m";
    for (const auto& c : rowp) rall.merge(c);
    rall.finalize();
    CheckResult call;
    call.name = "schur column sums (tail certified) <= 32 u_k";
    for (const auto& c : colp) call.merge(c);
    call.finalize();
    report.checks.push_back(std::move(rall));
    report.checks.push_back(std::move(call));
    return report;
}

/// Uniform-norm sweep: power-iteration estimates of ||F^{|j|}|| at the given
/// square truncations stay below 2^(7/2); also records the sqrt(2)-scaled
/// consistency margin against 16.
inline BoundReport norm_check(const std::vector<int>& sizes = {100, 500, 2000},
                              int max_j = 50, int iters = 200) {
    std::vector<CheckResult> partial(static_cast<std::size_t>(max_j + 1));
    parallel_for(0, max_j + 1, [&](int j) {
        CheckResult& c = partial[static_cast<std::size_t>(j)];
        for (const int n : sizes) {
            const auto block = frechet::assemble_block(j, n, n);
            c.consider(op_norm_estimate(block, iters), kNormBound, j, n, 0);
        }
    });
    BoundReport report;
    CheckResult all;
    all.name = "op norm estimate <= 2^(7/2)";
    for (const auto& c : partial) all.merge(c);
    all.finalize();
    CheckResult scaled;
    scaled.name = "sqrt(2) * op norm estimate <= 16";
    scaled.consider(all.worst_value * std::sqrt(2.0), 16.0, all.at_j, all.at_m, 0);
    scaled.finalize();
    report.checks.push_back(std::move(all));
    report.checks.push_back(std::move(scaled));
    return report;
}

}  // namespace eitlin::bounds
