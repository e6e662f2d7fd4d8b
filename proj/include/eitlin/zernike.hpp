#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eitlin::zernike {

/// Index of the basis function psi_{j,k}: angular frequency j (any sign),
/// radial order k >= 0. The polynomial degree is |j| + 2k.
struct ZernikeIndex {
    int j = 0;
    int k = 0;
    int degree() const { return std::abs(j) + 2 * k; }
};

namespace detail {

// Exact binomial coefficient; fits in 64 bits for n <= 61.
inline std::uint64_t binomial_u64(int n, int k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) /
                 static_cast<std::uint64_t>(i);
    }
    return result;
}

// Jacobi polynomial P_k^{(a,0)}(x) by the three-term recurrence.
inline double jacobi_p(int k, int a, double x) {
    if (k == 0) return 1.0;
    double pm2 = 1.0;
    double pm1 = 0.5 * a + (1.0 + 0.5 * a) * x;
    for (int i = 2; i <= k; ++i) {
        const double c1 = 2.0 * i * (i + a) * (2.0 * i + a - 2.0);
        const double c2 = (2.0 * i + a - 1.0) *
                          ((2.0 * i + a) * (2.0 * i + a - 2.0) * x +
                           static_cast<double>(a) * a);
        const double c3 = 2.0 * (i + a - 1.0) * (i - 1.0) * (2.0 * i + a);
        const double pk = (c2 * pm1 - c3 * pm2) / c1;
        pm2 = pm1;
        pm1 = pk;
    }
    return pm1;
}

}  // namespace detail

// The monomial-basis sum cancels catastrophically as the degree grows (its
// pointwise error scales with the coefficient mass, ~1e-11 at degree 16 but
// ~1e-2 by degree 40), so past this threshold evaluation switches to the
// Jacobi three-term recurrence, which is stable at every r. Within the
// threshold all coefficients are exact in doubles and the value at r = 1 is
// exactly 1.
inline constexpr int kBinomialSumMaxDegree = 16;

/// Radial polynomial R^{|j|}_{|j|+2k}(r): the explicit alternating binomial
/// sum (terms in ascending i) up to degree 16, the equivalent Jacobi form
/// (-1)^k r^{|j|} P_k^{(|j|,0)}(1 - 2 r^2) above.
inline double radial_eval(int j, int k, double r) {
    if (k < 0) throw std::invalid_argument("radial_eval: k must be >= 0");
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("radial_eval: r must lie in [0, 1]");
    }
    const int ja = std::abs(j);
    const int n = ja + 2 * k;
    if (n <= kBinomialSumMaxDegree) {
        double sum = 0.0;
        for (int i = 0; i <= k; ++i) {
            const double coeff =
                static_cast<double>(detail::binomial_u64(n - i, i) *
                                    detail::binomial_u64(n - 2 * i, k - i));
            const double term = coeff * std::pow(r, n - 2 * i);
            sum += (i % 2 == 0) ? term : -term;
        }
        return sum;
    }
    const double p = detail::jacobi_p(k, ja, 1.0 - 2.0 * r * r);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(r, ja) * p;
}

/// psi_{j,k}(r, theta) = sqrt((|j|+2k+1)/pi) R^{|j|}_{|j|+2k}(r) e^{i j theta}.
/// The angular factor is assembled from cos(|j| theta) and sin(|j| theta) so
/// that conjugation symmetry in j is exact.
inline std::complex<double> basis_eval(const ZernikeIndex& idx, double r,
                                       double theta) {
    const int ja = std::abs(idx.j);
    const double norm = std::sqrt((ja + 2 * idx.k + 1) / M_PI);
    const double radial = radial_eval(idx.j, idx.k, r);
    const double c = std::cos(ja * theta);
    const double s = (idx.j >= 0 ? 1.0 : -1.0) * std::sin(ja * theta);
    return {norm * radial * c, norm * radial * s};
}

/// Tensor quadrature grid on the unit disk: Gauss-Legendre nodes in s = r^2
/// (so the r dr Jacobian becomes a flat ds/2 weight) crossed with equispaced
/// angles. Radial weights sum to 1/2, i.e. the grid integrates dV to pi.
class DiskGrid {
  public:
    DiskGrid(int radial_count, int ntheta) : ntheta_(ntheta) {
        if (radial_count < 1) {
            throw std::invalid_argument("DiskGrid: radial_count must be >= 1");
        }
        if (ntheta < 1) throw std::invalid_argument("DiskGrid: ntheta must be >= 1");
        build_nodes(radial_count);
    }

    /// Grid resolving products of basis functions up to `max_degree` with
    /// angular content up to `max_angular`.
    static DiskGrid for_degree(int max_degree, int max_angular) {
        return DiskGrid(max_degree + 1, 2 * max_angular + 2);
    }

    int radial_count() const { return static_cast<int>(r_.size()); }
    int ntheta() const { return ntheta_; }
    double radius(int q) const { return r_[static_cast<std::size_t>(q)]; }
    double radial_weight(int q) const { return w_[static_cast<std::size_t>(q)]; }
    double theta(int t) const { return 2.0 * M_PI * t / ntheta_; }
    double angular_weight() const { return 2.0 * M_PI / ntheta_; }

    /// Integrate tabulated values (radial-major, values[q*ntheta + t]) over
    /// the disk; summation order is fixed (ascending q, then t).
    std::complex<double> integrate(
        const std::vector<std::complex<double>>& values) const {
        if (values.size() !=
            static_cast<std::size_t>(radial_count()) * ntheta_) {
            throw std::invalid_argument("DiskGrid::integrate: size mismatch");
        }
        const double wt = angular_weight();
        std::complex<double> total = 0.0;
        for (int q = 0; q < radial_count(); ++q) {
            std::complex<double> ring = 0.0;
            for (int t = 0; t < ntheta_; ++t) {
                ring += values[static_cast<std::size_t>(q) * ntheta_ + t];
            }
            total += radial_weight(q) * wt * ring;
        }
        return total;
    }

  private:
    void build_nodes(int n) {
        // Gauss-Legendre on [-1,1] by Newton iteration on P_n, then mapped to
        // s in (0,1); radial node r = sqrt(s), weight = (GL weight)/4 so that
        // sum(w) = 1/2 = int_0^1 r dr.
        r_.resize(static_cast<std::size_t>(n));
        w_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0, p1 = x;
                for (int l = 2; l <= n; ++l) {
                    const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                    p0 = p1;
                    p1 = p2;
                }
                const double pn = (n == 1) ? x : p1;
                const double pn1 = (n == 1) ? 1.0 : p0;
                dp = n * (x * pn - pn1) / (x * x - 1.0);
                const double dx = pn / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            const double s = 0.5 * (1.0 - x);  // ascending s for ascending i
            const double wgl = 2.0 / ((1.0 - x * x) * dp * dp);
            r_[static_cast<std::size_t>(i)] = std::sqrt(s);
            w_[static_cast<std::size_t>(i)] = wgl / 4.0;
        }
    }

    std::vector<double> r_;
    std::vector<double> w_;
    int ntheta_;
};

/// Truncated Zernike coefficient table of a perturbation: blocks c^j for
/// j in [-jmax, jmax], each holding [c_{j,0}, ..., c_{j,kmax}]. Storage is
/// j-major ascending, k ascending inside a block.
class SpectralPerturbation {
  public:
    SpectralPerturbation(int jmax, int kmax) : jmax_(jmax), kmax_(kmax) {
        if (jmax < 0 || kmax < 0) {
            throw std::invalid_argument("SpectralPerturbation: negative truncation");
        }
        c_.assign(static_cast<std::size_t>(2 * jmax + 1) *
                      static_cast<std::size_t>(kmax + 1),
                  {0.0, 0.0});
    }

    int jmax() const { return jmax_; }
    int kmax() const { return kmax_; }

    std::complex<double>& at(int j, int k) { return c_[offset(j, k)]; }
    const std::complex<double>& at(int j, int k) const { return c_[offset(j, k)]; }

    /// l2 norm of the coefficient table (equals the L2(D) norm of the
    /// synthesized perturbation).
    double norm() const {
        double s = 0.0;
        for (const auto& v : c_) s += std::norm(v);
        return std::sqrt(s);
    }

    bool operator==(const SpectralPerturbation& other) const {
        return jmax_ == other.jmax_ && kmax_ == other.kmax_ && c_ == other.c_;
    }

  private:
    std::size_t offset(int j, int k) const {
        if (j < -jmax_ || j > jmax_ || k < 0 || k > kmax_) {
            throw std::out_of_range("SpectralPerturbation: index out of range");
        }
        return static_cast<std::size_t>(j + jmax_) *
                   static_cast<std::size_t>(kmax_ + 1) +
               static_cast<std::size_t>(k);
    }

    int jmax_;
    int kmax_;
    std::vector<std::complex<double>> c_;
};

/// Coefficients c_{j,k} = <eta, psi_{j,k}> from samples of eta tabulated on
/// the grid (radial-major, samples[q*ntheta + t]). Exact to roundoff for
/// polynomial eta within the truncation degree.
inline SpectralPerturbation analyze(const DiskGrid& grid,
                                    const std::vector<std::complex<double>>& samples,
                                    int jmax, int kmax) {
    if (jmax < 0 || kmax < 0) {
        throw std::invalid_argument("analyze: negative truncation");
    }
    const int degree = jmax + 2 * kmax;
    if (grid.radial_count() < degree + 1) {
        throw std::invalid_argument("analyze: under-resolved radial grid");
    }
    if (grid.ntheta() < 2 * jmax + 2) {
        throw std::invalid_argument("analyze: under-resolved angular grid");
    }
    if (samples.size() !=
        static_cast<std::size_t>(grid.radial_count()) * grid.ntheta()) {
        throw std::invalid_argument("analyze: sample count mismatch");
    }

    SpectralPerturbation table(jmax, kmax);
    const int nq = grid.radial_count();
    const int nt = grid.ntheta();
    const double wt = grid.angular_weight();

    // Angular reduction per (j, q): A_{j,q} = sum_t samples(q,t) e^{-i j theta_t}.
    std::vector<std::complex<double>> ang(
        static_cast<std::size_t>(2 * jmax + 1) * nq);
    for (int j = -jmax; j <= jmax; ++j) {
        for (int q = 0; q < nq; ++q) {
            std::complex<double> acc = 0.0;
            for (int t = 0; t < nt; ++t) {
                const double th = grid.theta(t);
                const double c = std::cos(std::abs(j) * th);
                const double s = (j >= 0 ? -1.0 : 1.0) * std::sin(std::abs(j) * th);
                acc += samples[static_cast<std::size_t>(q) * nt + t] *
                       std::complex<double>(c, s);
            }
            ang[static_cast<std::size_t>(j + jmax) * nq + q] = acc;
        }
    }

    for (int j = -jmax; j <= jmax; ++j) {
        for (int k = 0; k <= kmax; ++k) {
            const double norm = std::sqrt((std::abs(j) + 2 * k + 1) / M_PI);
            std::complex<double> acc = 0.0;
            for (int q = 0; q < nq; ++q) {
                const double radial = radial_eval(j, k, grid.radius(q));
                acc += grid.radial_weight(q) * radial *
                       ang[static_cast<std::size_t>(j + jmax) * nq + q];
            }
            table.at(j, k) = norm * wt * acc;
        }
    }
    return table;
}

/// Pointwise synthesis sum_{j,k} c_{j,k} psi_{j,k} at the given (r, theta)
/// points; j ascending, k ascending within a block.
inline std::vector<std::complex<double>> synthesize(
    const SpectralPerturbation& coeffs,
    const std::vector<std::pair<double, double>>& points) {
    std::vector<std::complex<double>> out;
    out.reserve(points.size());
    for (const auto& [r, theta] : points) {
        std::complex<double> val = 0.0;
        for (int j = -coeffs.jmax(); j <= coeffs.jmax(); ++j) {
            for (int k = 0; k <= coeffs.kmax(); ++k) {
                const auto& c = coeffs.at(j, k);
                if (c == std::complex<double>(0.0, 0.0)) continue;
                val += c * basis_eval({j, k}, r, theta);
            }
        }
        out.push_back(val);
    }
    return out;
}

/// Samples of a basis function over a grid, radial-major (handy for tests
/// and for building analyze() inputs).
inline std::vector<std::complex<double>> sample_basis(const DiskGrid& grid,
                                                      const ZernikeIndex& idx) {
    std::vector<std::complex<double>> out(
        static_cast<std::size_t>(grid.radial_count()) * grid.ntheta());
    for (int q = 0; q < grid.radial_count(); ++q) {
        for (int t = 0; t < grid.ntheta(); ++t) {
            out[static_cast<std::size_t>(q) * grid.ntheta() + t] =
                basis_eval(idx, grid.radius(q), grid.theta(t));
        }
    }
    return out;
}

}  // namespace eitlin::zernike
