#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include "eitlin/frechet.hpp"
#include "eitlin/parallel.hpp"
#include "eitlin/zernike.hpp"

namespace eitlin::oracle {

/// Gradient of a harmonic mode in polar components.
struct PolarGradient {
    std::complex<double> radial;   // d_r u
    std::complex<double> angular;  // r^{-1} d_theta u
};

/// Gradient of u_m(r, theta) = r^{|m|} e^{i m theta} / (|m| sqrt(2 pi)),
/// the unit-conductivity potential whose Neumann trace on the circle is the
/// Fourier mode f_m.
inline PolarGradient harmonic_gradient(int m, double r, double theta) {
    if (m == 0) throw std::invalid_argument("harmonic_gradient: m must be nonzero");
    if (!(r >= 0.0 && r <= 1.0)) {
        throw std::invalid_argument("harmonic_gradient: r must lie in [0, 1]");
    }
    const int ma = std::abs(m);
    const double amp = std::pow(r, ma - 1) / std::sqrt(2.0 * M_PI);
    const double c = std::cos(ma * theta);
    const double s = (m >= 0 ? 1.0 : -1.0) * std::sin(ma * theta);
    const std::complex<double> phase(amp * c, amp * s);
    const double sign = (m > 0) ? 1.0 : -1.0;
    return {phase, std::complex<double>(0.0, sign) * phase};
}

/// Radial node count needed to integrate the polynomial of the given total
/// degree exactly, with margin.
inline int radial_nodes_for(int degree) {
    return (degree + 3) / 2 + 4;  // ceil((degree + 2) / 2) + 4
}

/// Grid resolving the integrand of entry_quadrature(j, k, m, n).
inline zernike::DiskGrid grid_for_entry(int j, int k, int m, int n) {
    const int degree = std::abs(j) + 2 * k + std::abs(m) + std::abs(n);
    const int max_freq = std::abs(j) + std::abs(m) + std::abs(n);
    return zernike::DiskGrid(radial_nodes_for(degree), 2 * max_freq + 2);
}

/// Brute-force evaluation of <(F psi_{j,k}) f_m, f_n> through the defining
/// identity: -int_D psi_{j,k} grad u_m . conj(grad u_n) dV by tensor
/// quadrature in polar coordinates. The dot product expands as
/// d_r u_m conj(d_r u_n) + r^{-2} d_theta u_m conj(d_theta u_n).
inline std::complex<double> entry_quadrature(int j, int k, int m, int n,
                                             const zernike::DiskGrid& grid) {
    if (k < 0) throw std::invalid_argument("entry_quadrature: k must be >= 0");
    if (m == 0 || n == 0) {
        throw std::invalid_argument("entry_quadrature: Fourier modes must be nonzero");
    }
    const int degree = std::abs(j) + 2 * k + std::abs(m) + std::abs(n);
    if (grid.radial_count() < radial_nodes_for(degree)) {
        throw std::invalid_argument("entry_quadrature: under-resolved radial grid");
    }
    if (grid.ntheta() < 2 * std::abs(j + m - n) + 2) {
        throw std::invalid_argument("entry_quadrature: under-resolved angular grid");
    }
    const double wt = grid.angular_weight();
    const int ja = std::abs(j);
    const double norm = std::sqrt((ja + 2 * k + 1) / M_PI);
    std::complex<double> total = 0.0;
    for (int q = 0; q < grid.radial_count(); ++q) {
        const double r = grid.radius(q);
        const double psi_radial = norm * zernike::radial_eval(j, k, r);
        std::complex<double> ring = 0.0;
        for (int t = 0; t < grid.ntheta(); ++t) {
            const double theta = grid.theta(t);
            const auto gm = harmonic_gradient(m, r, theta);
            const auto gn = harmonic_gradient(n, r, theta);
            const std::complex<double> dot =
                gm.radial * std::conj(gn.radial) +
                gm.angular * std::conj(gn.angular);
            const double c = std::cos(ja * theta);
            const double s = (j >= 0 ? 1.0 : -1.0) * std::sin(ja * theta);
            ring += std::complex<double>(psi_radial * c, psi_radial * s) * dot;
        }
        total += grid.radial_weight(q) * wt * ring;
    }
    return -total;
}

/// Worst discrepancies between the closed-form entries and the quadrature
/// oracle over an index box.
struct BoxCheckResult {
    double max_discrepancy = 0.0;        // over entries the closed form marks nonzero
    double max_structural_zero = 0.0;    // |quadrature| where the closed form is 0
    long tuples = 0;
};

/// Sweeps |j| <= max_j, k <= max_k, 1 <= |m|, |n| <= max_m (all four sign
/// combinations) against one shared grid sized for the worst tuple.
inline BoxCheckResult box_check(int max_j, int max_k, int max_m) {
    const int degree = max_j + 2 * max_k + 2 * max_m;
    const int max_freq = max_j + 2 * max_m;
    const zernike::DiskGrid grid(radial_nodes_for(degree), 2 * max_freq + 2);

    const int jcount = 2 * max_j + 1;
    std::vector<BoxCheckResult> partial(static_cast<std::size_t>(jcount));
    parallel_for(0, jcount, [&](int ji) {
        const int j = ji - max_j;
        BoxCheckResult& res = partial[static_cast<std::size_t>(ji)];
        for (int k = 0; k <= max_k; ++k) {
            for (int m = -max_m; m <= max_m; ++m) {
                if (m == 0) continue;
                for (int n = -max_m; n <= max_m; ++n) {
                    if (n == 0) continue;
                    const double closed = frechet::entry(j, k, m, n);
                    const std::complex<double> quad =
                        entry_quadrature(j, k, m, n, grid);
                    ++res.tuples;
                    if (closed == 0.0) {
                        res.max_structural_zero =
                            std::max(res.max_structural_zero, std::abs(quad));
                    } else {
                        res.max_discrepancy =
                            std::max(res.max_discrepancy, std::abs(quad - closed));
                    }
                }
            }
        }
    });
    BoxCheckResult out;
    for (const auto& p : partial) {
        out.max_discrepancy = std::max(out.max_discrepancy, p.max_discrepancy);
        out.max_structural_zero =
            std::max(out.max_structural_zero, p.max_structural_zero);
        out.tuples += p.tuples;
    }
    return out;
}

}  // namespace eitlin::oracle
