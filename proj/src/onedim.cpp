#include "stripe/onedim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "stripe/series.hpp"

namespace stripe {

namespace {

// Lattice sum sum_{m=0..inf} sum_j gamma_j (x_j + mL + tp)^{-s} with
// cancelling gammas: direct images up to M, Euler-Maclaurin beyond.
double lattice_sum(const std::vector<double>& xs, const std::vector<double>& gs,
                   double L, double s, double tp, double tol) {
    KahanSum acc;
    long M = 32;
    const long M_cap = 1 << 18;
    long m = 0;
    for (;;) {
        for (; m < M; ++m) {
            for (std::size_t j = 0; j < xs.size(); ++j) {
                acc.add(gs[j] * std::pow(xs[j] + m * L + tp, -s));
            }
        }
        double err = 0.0;
        const double tail = cancelling_power_tail(xs, gs, L, s, tp, M, &err);
        if (err <= tol || M >= M_cap) {
            if (err > tol) throw ToleranceError("lattice_sum: image tail not certified");
            return acc.value() + tail;
        }
        M *= 2;
    }
}

// One half-line window term of the r decomposition. dists[t] (t = 0..n-1)
// are the cyclic distances from s to the following boundaries (dists[n-1] = L),
// c is the adjacent gap on the opposite side of the window:
//   W = psi(c) - sum_{b' beyond s} shat(b') [psi(dist) - psi(dist + c)]
// with psi(y) = (y + tp)^{-beta} (the c1 c2 prefactor applied by the caller).
double window_sum(const std::vector<double>& dists, double c, double L,
                  double beta, double tp, double tol) {
    const std::size_t n = dists.size();
    std::vector<double> xs(2 * n);
    std::vector<double> gs(2 * n);
    for (std::size_t t = 0; t < n; ++t) {
        const double sgn = (t % 2 == 0) ? -1.0 : +1.0;  // shat of the t-th neighbor
        xs[2 * t] = dists[t];
        gs[2 * t] = sgn;
        xs[2 * t + 1] = dists[t] + c;
        gs[2 * t + 1] = -sgn;
    }
    const double S = lattice_sum(xs, gs, L, beta, tp, tol);
    return std::pow(c + tp, -beta) - S;
}

double c1c2(const KernelParams& P) {
    return c1_closed(P) / ((P.q - 1.0) * (P.q - 2.0));
}

}  // namespace

double f1d_energy(const KernelParams& P, const PeriodicSet1D& set, double tol) {
    set.validate();
    const std::size_t n = set.boundaries.size();
    const double L = set.period;
    if (n == 0) return 0.0;

    const auto sg = set.signs();
    const auto& b = set.boundaries;

    // image m = 0: pairs with b_k > b_j
    KahanSum head;
    const double beta = P.q - 2.0;
    const double tp = P.tau_pow;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = j + 1; k < n; ++k) {
            head.add(sg[j] * sg[k] * std::pow(b[k] - b[j] + tp, -beta));
        }
    }
    // images m >= 1: all ordered pairs
    std::vector<double> xs(n * n);
    std::vector<double> gs(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            xs[j * n + k] = b[k] + L - b[j];
            gs[j * n + k] = sg[j] * sg[k];
        }
    }
    const double images = lattice_sum(xs, gs, L, beta, tp, tol);
    const double pair_sum = head.value() + images;

    const double I = -4.0 * c1c2(P) * pair_sum;
    return (-static_cast<double>(n) + I) / L;
}

double stripe_energy(const KernelParams& P, double h, double tol) {
    if (!(h > 0.0)) throw std::invalid_argument("stripe_energy: h must be > 0");
    const double beta = P.q - 2.0;
    const double A = 4.0 * c1c2(P);
    if (P.tau == 0.0) {
        return -1.0 / h + A * dirichlet_eta(beta) * std::pow(h, -(P.q - 1.0));
    }
    const double tp = P.tau_pow;
    const SeriesResult s = alternating_sum(
        [h, tp, beta](long k) { return std::pow((k + 1) * h + tp, -beta); }, tol);
    return -1.0 / h + A / h * s.value;
}

OptimalWidth optimal_width(const KernelParams& P, double alpha_max) {
    if (P.alpha > alpha_max) {
        throw std::invalid_argument("optimal_width: alpha above the configured limit");
    }
    const double beta = P.q - 2.0;
    const double h0 =
        std::pow(4.0 * (P.q - 1.0) * c1c2(P) * dirichlet_eta(beta), 1.0 / beta);
    if (P.tau == 0.0) {
        OptimalWidth out;
        out.h_star = h0;
        out.c_star = -(P.q - 2.0) / ((P.q - 1.0) * h0);
        return out;
    }

    const auto e = [&](double h) { return stripe_energy(P, h, 1e-13); };

    // 64-point log scan; extend the range if the minimum sits on an edge.
    double lo = h0 / 4.0, hi = 4.0 * h0;
    int best = -1;
    std::vector<double> hsv, ev;
    for (int attempt = 0; attempt < 4; ++attempt) {
        const int N = 64;
        hsv.resize(N);
        ev.resize(N);
        for (int i = 0; i < N; ++i) {
            hsv[i] = lo * std::pow(hi / lo, i / double(N - 1));
            ev[i] = e(hsv[i]);
        }
        best = 0;
        for (int i = 1; i < N; ++i) {
            if (ev[i] < ev[best]) best = i;  // ties keep the smaller h
        }
        if (best > 0 && best < N - 1) break;
        if (best == 0) lo /= 4.0; else hi *= 4.0;
        best = -1;
    }
    if (best < 0) {
        std::ostringstream msg;
        msg << "optimal_width: no interior minimum bracketed; scan range [" << lo
            << ", " << hi << "], edge value " << ev.front() << " / " << ev.back();
        throw std::runtime_error(msg.str());
    }

    const auto golden = [&](double a, double b) {
        const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - gr * (b - a);
        double d = a + gr * (b - a);
        double fc = e(c), fd = e(d);
        // 1e-10 in h, relative beyond h = 1 (doubles cannot resolve an
        // absolute 1e-10 bracket at large h)
        while (b - a > 1e-10 * std::max(1.0, std::fabs(b))) {
            if (fc < fd) {
                b = d; d = c; fd = fc;
                c = b - gr * (b - a); fc = e(c);
            } else {
                a = c; c = d; fc = fd;
                d = a + gr * (b - a); fd = e(d);
            }
        }
        // function comparisons flatten out near the minimum; two rounds of
        // parabolic vertex fitting recover the last digits
        double x = 0.5 * (a + b);
        for (double rel : {1e-3, 3e-5, 3e-6}) {
            const double step = rel * x;
            const double fm = e(x - step), f0 = e(x), fp = e(x + step);
            const double curv = fm - 2.0 * f0 + fp;
            if (curv > 0.0) x += step * (fm - fp) / (2.0 * curv);
        }
        return x;
    };

    const double h1 = golden(hsv[best - 1], hsv[best + 1]);
    const double wide_lo = hsv[std::max(0, best - 3)];
    const double wide_hi = hsv[std::min<int>(hsv.size() - 1, best + 3)];
    const double h2 = golden(wide_lo, wide_hi);

    OptimalWidth out;
    out.h_star = h1;
    out.c_star = e(h1);
    out.multistart_spread = std::fabs(h1 - h2);
    return out;
}

double r_term_1d_index(const KernelParams& P, const PeriodicSet1D& set,
                       std::size_t idx, double tol) {
    set.validate();
    const std::size_t n = set.boundaries.size();
    if (n < 2) {
        throw std::invalid_argument("r_term_1d: needs at least two boundary points");
    }
    if (idx >= n) throw std::invalid_argument("r_term_1d: boundary index out of range");
    const double L = set.period;
    const auto g = set.gaps();

    // cyclic distances from s to the following boundaries (right window)
    // and to the preceding boundaries (left window)
    std::vector<double> right(n), left(n);
    double acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        acc += g[(idx + t) % n];
        right[t] = acc;
    }
    acc = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        acc += g[(idx + n - 1 - t) % n];
        left[t] = acc;
    }
    const double gap_minus = g[(idx + n - 1) % n];
    const double gap_plus = g[idx];

    const double beta = P.q - 2.0;
    const double tp = P.tau_pow;
    const double d_minus = window_sum(right, gap_minus, L, beta, tp, tol);
    const double d_plus = window_sum(left, gap_plus, L, beta, tp, tol);
    return -1.0 + c1c2(P) * (d_minus + d_plus);
}

double r_term_1d(const KernelParams& P, const PeriodicSet1D& set, double s,
                 double tol) {
    const auto& b = set.boundaries;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i] == s) return r_term_1d_index(P, set, i, tol);
    }
    throw std::invalid_argument("r_term_1d: s is not a boundary point of the set");
}

double r_lower_bound(const KernelParams& P, double gap_minus, double gap_plus) {
    if (!(gap_minus > 0.0) || !(gap_plus > 0.0)) {
        throw std::invalid_argument("r_lower_bound: gaps must be > 0");
    }
    const double beta = P.beta;
    const double cap = P.tau > 0.0 ? 1.0 / P.tau : std::numeric_limits<double>::infinity();
    const double tm = std::min(std::pow(gap_minus, -beta), cap);
    const double tpl = std::min(std::pow(gap_plus, -beta), cap);
    return -1.0 + c1c2(P) * (tm + tpl);
}

double eta0_threshold(const KernelParams& P) {
    const double cc = c1c2(P);
    if (!(P.tau < cc)) {
        throw std::invalid_argument("eta0_threshold: requires tau < c1*c2");
    }
    return std::pow(cc, 1.0 / P.beta);
}

namespace {

std::vector<int> canonical_rotation(const std::vector<int>& idx, int N) {
    // lexicographically smallest among rotations placing each boundary at 0
    std::vector<int> best;
    std::vector<int> cand(idx.size());
    for (std::size_t r = 0; r < idx.size(); ++r) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            cand[k] = (idx[k] - idx[r] + N) % N;
        }
        std::sort(cand.begin(), cand.end());
        if (best.empty() || cand < best) best = cand;
    }
    return best;
}

}  // namespace

BruteForceResult brute_force_min_1d(const KernelParams& P, double L, int grid_n,
                                    int max_boundaries) {
    if (max_boundaries % 2 != 0 || max_boundaries < 0) {
        throw std::invalid_argument("brute_force_min_1d: max_boundaries must be even");
    }
    if (grid_n > 64 && max_boundaries > 8) {
        throw std::invalid_argument("brute_force_min_1d: combinatorial budget exceeded");
    }
    if (grid_n < 1) throw std::invalid_argument("brute_force_min_1d: grid_n must be >= 1");
    const double cell = L / grid_n;

    BruteForceResult res;
    res.best.period = L;
    res.best.inside_at_origin = false;  // empty set
    res.energy = 0.0;

    long budget = 20'000'000;

    for (int m = 0; m <= max_boundaries; m += 2) {
        BruteForceTrace tr;
        tr.boundary_count = m;
        tr.best_energy = std::numeric_limits<double>::infinity();
        if (m == 0) {
            tr.best_energy = 0.0;
            tr.candidates = 1;
            res.trace.push_back(tr);
            continue;
        }
        if (m > grid_n) {
            res.trace.push_back(tr);
            continue;
        }
        // combinations of m indices with first fixed at 0, deduplicated by
        // rotation (every class has a representative with a boundary at 0)
        std::set<std::vector<int>> seen;
        std::vector<int> idx(m);
        idx[0] = 0;
        // iterate combinations of the remaining m-1 indices out of 1..grid_n-1
        std::vector<int> pick(m - 1);
        for (int i = 0; i < m - 1; ++i) pick[i] = i + 1;
        const auto advance = [&]() -> bool {
            int i = m - 2;
            while (i >= 0 && pick[i] == grid_n - (m - 1 - i)) --i;
            if (i < 0) return false;
            ++pick[i];
            for (int j = i + 1; j < m - 1; ++j) pick[j] = pick[j - 1] + 1;
            return true;
        };
        bool more = m >= 2;
        while (more) {
            if (--budget < 0) {
                throw std::invalid_argument("brute_force_min_1d: enumeration budget exceeded");
            }
            for (int i = 0; i < m - 1; ++i) idx[i + 1] = pick[i];
            const auto canon = canonical_rotation(idx, grid_n);
            if (seen.insert(canon).second) {
                PeriodicSet1D cand;
                cand.period = L;
                cand.inside_at_origin = false;
                cand.boundaries.resize(m);
                for (int i = 0; i < m; ++i) cand.boundaries[i] = canon[i] * cell;
                const double en = f1d_energy(P, cand, 1e-11);
                ++tr.candidates;
                if (en < tr.best_energy ||
                    (en == tr.best_energy && cand.boundaries < tr.best_boundaries)) {
                    tr.best_energy = en;
                    tr.best_boundaries = cand.boundaries;
                }
                if (en < res.energy ||
                    (en == res.energy && res.best.perimeter() == m &&
                     cand.boundaries < res.best.boundaries)) {
                    res.energy = en;
                    res.best = cand;
                }
            }
            more = advance();
        }
        res.trace.push_back(tr);
    }
    return res;
}

}  // namespace stripe
