#include "stripe/kernel.hpp"

#include <cmath>
#include <stdexcept>

#include "stripe/quadrature.hpp"
#include "stripe/series.hpp"

namespace stripe {

double kernel_value(const KernelParams& P, std::span<const double> zeta) {
    if (static_cast<int>(zeta.size()) != P.d) {
        throw std::invalid_argument("kernel_value: zeta dimension mismatch");
    }
    double l1 = 0.0;
    for (double z : zeta) l1 += std::fabs(z);
    if (P.tau == 0.0 && l1 == 0.0) {
        throw std::domain_error("kernel_value: singular at the origin for tau = 0");
    }
    return std::pow(l1 + P.tau_pow, -P.p);
}

double c1_closed(const KernelParams& P) {
    double denom = 1.0;
    for (int j = 0; j <= P.d - 2; ++j) denom *= P.q + j;
    return std::pow(2.0, P.d - 1) / denom;
}

double reduced_kernel(const KernelParams& P, double z) {
    const double az = std::fabs(z);
    if (P.tau == 0.0 && az == 0.0) {
        throw std::domain_error("reduced_kernel: singular at z = 0 for tau = 0");
    }
    return c1_closed(P) * std::pow(az + P.tau_pow, -P.q);
}

double tail_integral(const KernelParams& P, double c) {
    if (c < 0.0) throw std::invalid_argument("tail_integral: c must be >= 0");
    if (c == 0.0 && P.tau == 0.0) {
        throw std::domain_error("tail_integral: divergent bound at c = 0, tau = 0");
    }
    const double c2 = 1.0 / ((P.q - 1.0) * (P.q - 2.0));
    return c2 * std::pow(c + P.tau_pow, -(P.q - 2.0));
}

double reduced_moment(const KernelParams& P) {
    if (P.tau <= 0.0) {
        throw std::domain_error("reduced_moment: requires tau > 0");
    }
    const double c2 = 1.0 / ((P.q - 1.0) * (P.q - 2.0));
    return 2.0 * c1_closed(P) * c2 / P.tau;
}

namespace {

// Direct quadrature of c1 for cross-validation: nested adaptive integration
// of (|xi|_1 + 1)^{-p} over the positive orthant of R^{d-1}, times 2^{d-1},
// reduced per axis with the analytic innermost antiderivative.
double c1_quadrature(const KernelParams& P, double tol) {
    const double p = P.p;
    if (P.d == 1) return 1.0;
    if (P.d == 2) {
        // 2 * int_0^inf (x+1)^-p dx, split at R with exact tail
        const double R = 50.0;
        double v = integrate([p](double x) { return std::pow(x + 1.0, -p); }, 0.0, R, tol);
        v += std::pow(R + 1.0, 1.0 - p) / (p - 1.0);
        return 2.0 * v;
    }
    // d == 3: 4 * int_0^inf int_0^inf (x+y+1)^-p dy dx; inner integral exact
    const double R = 50.0;
    double v = integrate(
        [p, tol, R](double x) {
            double inner = integrate(
                [p, x](double y) { return std::pow(x + y + 1.0, -p); }, 0.0, R,
                tol);
            inner += std::pow(x + R + 1.0, 1.0 - p) / (p - 1.0);
            return inner;
        },
        0.0, R, tol);
    // tail in x: int_R^inf int_0^inf = int_R^inf (x+1)^{1-p}/(p-1) dx
    v += std::pow(R + 1.0, 2.0 - p) / ((p - 1.0) * (p - 2.0));
    return 4.0 * v;
}

}  // namespace

KernelConstants constants(const KernelParams& P, double tol) {
    KernelConstants K;
    K.c1 = c1_closed(P);
    if (P.d >= 3) {
        const double ref = c1_quadrature(P, 1e-11);
        if (std::fabs(ref - K.c1) > 1e-8 * std::fabs(K.c1)) {
            throw ToleranceError("constants: c1 closed form disagrees with quadrature");
        }
    }
    K.c2 = 1.0 / ((P.q - 1.0) * (P.q - 2.0));

    // c3 = 2 - 2^{3-q} + sum_{k>=3} (-1)^{k+1} k^{-(q-2)}
    const double s = P.q - 2.0;
    const SeriesResult tail3 =
        alternating_sum([s](long k) { return std::pow(k + 3.0, -s); }, tol);
    K.c3 = 2.0 - std::pow(2.0, 3.0 - P.q) + tail3.value;

    // j_c = int_{R^d} |z_1| K_{alpha,1}(z) dz = 2 c1 int_0^inf z (z+1)^{-q} dz,
    // quadrature on [0, R] plus the exact tail.
    const double q = P.q;
    const double R = 100.0;
    double jc = integrate([q](double z) { return z * std::pow(z + 1.0, -q); },
                          0.0, R, tol * 0.1);
    const double u = R + 1.0;
    jc += std::pow(u, 2.0 - q) / (q - 2.0) - std::pow(u, 1.0 - q) / (q - 1.0);
    K.j_c = 2.0 * K.c1 * jc;
    return K;
}

MonotonicityReport complete_monotonicity_report(const KernelParams& P,
                                                std::span<const double> z_grid,
                                                int order, double tol) {
    if (order < 0 || order > 6) {
        throw std::invalid_argument("complete_monotonicity_report: order must be in [0, 6]");
    }
    if (P.tau <= 0.0) {
        throw std::invalid_argument("complete_monotonicity_report: requires tau > 0");
    }
    const std::size_t n = z_grid.size();
    if (n < static_cast<std::size_t>(order) + 1) {
        throw std::invalid_argument("complete_monotonicity_report: grid too short");
    }
    if (n >= 2) {
        const double step = z_grid[1] - z_grid[0];
        for (std::size_t i = 1; i < n; ++i) {
            if (std::fabs(z_grid[i] - z_grid[i - 1] - step) > 1e-9 * std::fabs(step)) {
                throw std::invalid_argument(
                    "complete_monotonicity_report: grid must be uniform");
            }
        }
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i) vals[i] = reduced_kernel(P, z_grid[i]);

    MonotonicityReport rep;
    rep.order = order;
    rep.violations_per_order.assign(order + 1, 0);
    std::vector<double> diff = vals;
    for (int m = 0; m <= order; ++m) {
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        for (std::size_t i = 0; i + m < n; ++i) {
            const double signed_val = sign * diff[i];
            if (signed_val < -tol) {
                ++rep.violations_per_order[m];
                rep.all_hold = false;
                rep.worst = std::min(rep.worst, signed_val);
            }
        }
        // next forward difference
        for (std::size_t i = 0; i + m + 1 < n; ++i) diff[i] = diff[i + 1] - diff[i];
    }
    return rep;
}

}  // namespace stripe
