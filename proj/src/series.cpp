#include "stripe/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stripe {

SeriesResult alternating_sum(const std::function<double(long)>& a, double tol) {
    const double a0 = std::fabs(a(0));
    if (a0 == 0.0) return {0.0, 0.0};
    // (3+sqrt(8))^-n decay; pick n for the requested tolerance, keep a margin.
    const double lam = std::log(3.0 + std::sqrt(8.0));  // ~1.7627
    int n = static_cast<int>(std::ceil(std::log(4.0 * a0 / std::max(tol, 1e-300)) / lam)) + 4;
    n = std::clamp(n, 24, 160);

    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    KahanSum s;
    for (long k = 0; k < n; ++k) {
        c = b - c;
        s.add(c * a(k));
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0));
    }
    const double value = s.value() / d;
    const double analytic = 4.0 * a0 * std::pow(3.0 + std::sqrt(8.0), -n);
    const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * n * a0;
    const double bound = analytic + rounding;
    if (bound > tol) {
        throw ToleranceError("alternating_sum: cannot certify requested tolerance");
    }
    return {value, bound};
}

double dirichlet_eta(double s) {
    return alternating_sum([s](long k) { return std::pow(k + 1.0, -s); }, 1e-13).value;
}

namespace {

// k-th derivative magnitude coefficient of (y)^{-s}: s(s+1)...(s+k-1).
double rising(double s, int k) {
    double r = 1.0;
    for (int j = 0; j < k; ++j) r *= s + j;
    return r;
}

}  // namespace

double cancelling_power_tail(std::span<const double> xs,
                             std::span<const double> gammas, double L,
                             double s, double shift, long m0,
                             double* err_bound) {
    // f(m) = sum_j gamma_j (x_j + mL + shift)^{-s}; the gamma cancellation
    // makes sum_m f(m) converge even though s may be <= 1.
    //   sum_{m=m0}^inf f(m) = I + f(m0)/2 - f'(m0)/12 + f'''(m0)/720
    //                         - f^(5)(m0)/30240 + R
    // with I = int_{m0}^inf f, evaluated through antiderivatives whose
    // divergent parts cancel (sum gamma = 0), and
    //   |R| <= (2 zeta(6)/(2pi)^6) * int_{m0}^inf |f^(6)|.
    const std::size_t n = xs.size();
    KahanSum integral, f0, f1, f3, f5, absf5;
    for (std::size_t j = 0; j < n; ++j) {
        const double y = xs[j] + m0 * L + shift;  // > 0 by contract
        const double g = gammas[j];
        // antiderivative of (x+uL+shift)^{-s} in u: A(y)/L with A' = y^{-s}
        double A;
        if (s == 1.0) {
            A = std::log(y);
        } else {
            A = std::pow(y, 1.0 - s) / (1.0 - s);
        }
        integral.add(-g * A / L);
        const double ys = std::pow(y, -s);
        f0.add(g * ys);
        f1.add(g * (-s) * ys / y * L);
        f3.add(g * (-rising(s, 3)) * ys / (y * y * y) * L * L * L);
        const double d5 = rising(s, 5) * ys / (y * y * y * y * y) * L * L * L * L * L;
        f5.add(g * (-d5));
        absf5.add(std::fabs(g) * d5);
    }
    const double val = integral.value() + 0.5 * f0.value() - f1.value() / 12.0 +
                       f3.value() / 720.0 - f5.value() / 30240.0;
    if (err_bound) {
        // int |f^(6)| <= L^5 * sum |gamma| * rising(s,5) * y^{-s-5}  (+1 power absorbed)
        *err_bound = 3.4e-5 * absf5.value();
    }
    return val;
}

}  // namespace stripe
