#include "stripe/table.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

namespace stripe {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], generated by Newton iteration
// on the Legendre recurrence and cached per order.
const std::vector<std::pair<double, double>>& gl_rule(int order) {
    static std::map<int, std::vector<std::pair<double, double>>> cache;
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<double, double>> rule(order);
    for (int i = 0; i < (order + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= order; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = order * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {x, w};
        rule[order - 1 - i] = {-x, w};
    }
    auto [pos, ok] = cache.emplace(order, std::move(rule));
    return pos->second;
}

// Quadrature nodes for one axis of the tent-weighted cell integral: the
// integrand factor is tent(z - c) = (s - |z - c|)+ on [c-s, c+s], with an
// extra panel split when the |.|_1 kink at z = 0 falls inside.
struct AxisNodes {
    std::vector<double> z;
    std::vector<double> w;  // includes the tent weight
};

AxisNodes axis_nodes(double c, double s, int order) {
    std::vector<double> brk = {c - s, c, c + s};
    if (c - s < 0.0 && 0.0 < c + s && std::fabs(c) < s) {
        brk.push_back(0.0);
        std::sort(brk.begin(), brk.end());
    }
    AxisNodes out;
    const auto& rule = gl_rule(order);
    for (std::size_t p = 0; p + 1 < brk.size(); ++p) {
        const double a = brk[p], b = brk[p + 1];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (const auto& [x, w] : rule) {
            const double z = mid + half * x;
            const double tent = s - std::fabs(z - c);
            if (tent <= 0.0) continue;
            out.z.push_back(z);
            out.w.push_back(w * half * tent);
        }
    }
    return out;
}

}  // namespace

double kernel_mass_beyond(const KernelParams& P, double rho) {
    // int_{|z|_1 > rho} K = (2^d / (d-1)!) int_rho^inf r^{d-1} (r+tp)^{-p} dr
    if (rho < 0.0) rho = 0.0;
    const double tp = P.tau_pow;
    if (rho + tp <= 0.0) {
        throw std::domain_error("kernel_mass_beyond: divergent at rho = tau = 0");
    }
    const double p = P.p;
    double fact = 1.0;
    for (int j = 2; j < P.d; ++j) fact *= j;
    // expand r^{d-1} = ((r+tp) - tp)^{d-1}
    double integral = 0.0;
    double binom = 1.0;
    for (int j = P.d - 1; j >= 0; --j) {
        // term: binom(d-1, j) (-tp)^{d-1-j} (r+tp)^j, integrated against (r+tp)^{-p}
        const double expo = p - j - 1.0;
        integral += binom * std::pow(-tp, P.d - 1 - j) * std::pow(rho + tp, -expo) / expo;
        binom = binom * j / (P.d - j);  // C(d-1, j-1) from C(d-1, j)
    }
    return std::pow(2.0, P.d) / fact * integral;
}

CellKernelTable build_kernel_table(const KernelParams& P, double L, int n,
                                   double R, double tol) {
    if (P.tau <= 0.0) {
        throw std::invalid_argument("build_kernel_table: requires tau > 0");
    }
    if (n < 1 || n > 64) throw std::invalid_argument("build_kernel_table: n out of range");
    if (P.d < 1 || P.d > 3) throw std::invalid_argument("build_kernel_table: d out of range");
    const double s = L / n;

    if (R <= 0.0) {
        R = 8.0 * L;
        while (kernel_mass_beyond(P, R - 2 * P.d * s) > tol && R < 4096.0 * L) R += L;
    }
    if (R < L) throw std::invalid_argument("build_kernel_table: R must be >= L");

    CellKernelTable T;
    T.params = P;
    T.n = n;
    T.L = L;
    T.R = R;
    T.tol = tol;
    T.tail_mass = kernel_mass_beyond(P, R);
    T.tail_bound = kernel_mass_beyond(P, std::max(0.0, R - 2 * P.d * s));
    if (T.tail_bound > tol) {
        throw ToleranceError("build_kernel_table: tail bound above tolerance at this R");
    }

    long classes = 1;
    for (int a = 0; a < P.d; ++a) classes *= n;
    T.weights.assign(static_cast<std::size_t>(classes), 0.0);

    const int mmax = static_cast<int>(std::ceil(R / L)) + 1;
    const double tp = P.tau_pow;
    const double p = P.p;

    std::vector<int> delta(P.d), mm(P.d, -mmax);
    for (long cls = 0; cls < classes; ++cls) {
        long f = cls;
        for (int a = P.d - 1; a >= 0; --a) {
            delta[a] = static_cast<int>(f % n);
            f /= n;
        }
        KahanSum wsum;
        // iterate images m in [-mmax, mmax]^d
        std::fill(mm.begin(), mm.end(), -mmax);
        for (;;) {
            // image center offset
            double cl1 = 0.0;
            std::array<double, 3> c{};
            for (int a = 0; a < P.d; ++a) {
                c[a] = (delta[a] + static_cast<double>(mm[a]) * n) * s;
                cl1 += std::fabs(c[a]);
            }
            if (cl1 <= R) {
                const int order = (cl1 <= 8 * s + P.d * s) ? 12 : (cl1 <= 32 * s ? 4 : 2);
                std::array<AxisNodes, 3> ax;
                for (int a = 0; a < P.d; ++a) ax[a] = axis_nodes(c[a], s, order);
                if (P.d == 1) {
                    for (std::size_t i = 0; i < ax[0].z.size(); ++i) {
                        wsum.add(ax[0].w[i] * std::pow(std::fabs(ax[0].z[i]) + tp, -p));
                    }
                } else if (P.d == 2) {
                    for (std::size_t i = 0; i < ax[0].z.size(); ++i) {
                        const double zi = std::fabs(ax[0].z[i]);
                        const double wi = ax[0].w[i];
                        for (std::size_t j = 0; j < ax[1].z.size(); ++j) {
                            wsum.add(wi * ax[1].w[j] *
                                     std::pow(zi + std::fabs(ax[1].z[j]) + tp, -p));
                        }
                    }
                } else {
                    for (std::size_t i = 0; i < ax[0].z.size(); ++i) {
                        const double zi = std::fabs(ax[0].z[i]);
                        const double wi = ax[0].w[i];
                        for (std::size_t j = 0; j < ax[1].z.size(); ++j) {
                            const double zij = zi + std::fabs(ax[1].z[j]);
                            const double wij = wi * ax[1].w[j];
                            for (std::size_t k = 0; k < ax[2].z.size(); ++k) {
                                wsum.add(wij * ax[2].w[k] *
                                         std::pow(zij + std::fabs(ax[2].z[k]) + tp, -p));
                            }
                        }
                    }
                }
            }
            // advance the image multi-index
            int a = P.d - 1;
            while (a >= 0 && mm[a] == mmax) {
                mm[a] = -mmax;
                --a;
            }
            if (a < 0) break;
            ++mm[a];
        }
        T.weights[static_cast<std::size_t>(cls)] = wsum.value();
    }
    return T;
}

}  // namespace stripe
