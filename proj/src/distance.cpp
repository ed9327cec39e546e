#include "stripe/distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stripe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Gap constraint in whole layers: interfaces at least eta apart.
int min_run(double eta, double cell) {
    if (eta <= 0.0) return 1;
    return std::max(1, static_cast<int>(std::ceil(eta / cell - 1e-12)));
}

// Forward DP over per-layer costs with run-length state; free ends.
double dp_free(const std::vector<double>& c0, const std::vector<double>& c1, int g) {
    const int c = static_cast<int>(c0.size());
    g = std::min(g, c + 1);
    // dp[v][r-1]: best cost with current value v and run length min(r, g)
    std::vector<std::vector<double>> dp(2, std::vector<double>(g + 1, kInf));
    dp[0][g] = c0[0];
    dp[1][g] = c1[0];
    for (int t = 1; t < c; ++t) {
        std::vector<std::vector<double>> nx(2, std::vector<double>(g + 1, kInf));
        for (int v = 0; v < 2; ++v) {
            const double cost = v ? c1[t] : c0[t];
            for (int r = 1; r <= g; ++r) {
                const double cur = dp[v][r];
                if (cur == kInf) continue;
                const int r2 = std::min(r + 1, g);
                nx[v][r2] = std::min(nx[v][r2], cur + cost);
            }
            // flip into v from the opposite value, allowed at saturated runs
            const double from = dp[1 - v][g];
            if (from != kInf) nx[v][1] = std::min(nx[v][1], from + cost);
        }
        dp = std::move(nx);
    }
    double best = kInf;
    for (int v = 0; v < 2; ++v) {
        for (int r = 1; r <= g; ++r) best = std::min(best, dp[v][r]);
    }
    return best;
}

// Cyclic DP: anchor one interface before layer `a`, enforce the gap across
// the wrap back to the anchor.
double dp_cyclic(const std::vector<double>& c0, const std::vector<double>& c1, int g) {
    const int c = static_cast<int>(c0.size());
    KahanSum s0, s1;
    for (double v : c0) s0.add(v);
    for (double v : c1) s1.add(v);
    double best = std::min(s0.value(), s1.value());  // no interfaces at all
    if (g > c) return best;                          // flips impossible on the circle
    for (int a = 0; a < c; ++a) {
        for (int v0 = 0; v0 < 2; ++v0) {
            // layers a, a+1, ..., a+c-1; value of layer a is v0, flip at its left edge
            std::vector<std::vector<double>> dp(2, std::vector<double>(g + 1, kInf));
            dp[v0][1] = v0 ? c1[a] : c0[a];
            for (int t = 1; t < c; ++t) {
                const int lay = (a + t) % c;
                std::vector<std::vector<double>> nx(2, std::vector<double>(g + 1, kInf));
                for (int v = 0; v < 2; ++v) {
                    const double cost = v ? c1[lay] : c0[lay];
                    for (int r = 1; r <= g; ++r) {
                        const double cur = dp[v][r];
                        if (cur == kInf) continue;
                        const int r2 = std::min(r + 1, g);
                        nx[v][r2] = std::min(nx[v][r2], cur + cost);
                    }
                    const double from = dp[1 - v][g];
                    if (from != kInf) nx[v][1] = std::min(nx[v][1], from + cost);
                }
                dp = std::move(nx);
            }
            // close the circle: last layer is the one left of the anchor flip,
            // so it must carry the opposite value with a saturated run
            best = std::min(best, dp[1 - v0][g]);
        }
    }
    return best;
}

}  // namespace

GridSet rasterize_stripes(const StripePattern& pattern, int n) {
    pattern.profile.validate();
    const double L = pattern.profile.period;
    const int d = pattern.ambient_d;
    if (pattern.direction < 0 || pattern.direction >= d) {
        throw std::invalid_argument("rasterize_stripes: bad direction");
    }
    const double cell = L / n;
    PeriodicSet1D snapped;
    snapped.period = L;
    snapped.inside_at_origin = pattern.profile.inside_at_origin;
    if (!pattern.profile.boundaries.empty()) {
        // snap each boundary keeping its entry/exit sign, then re-anchor the
        // origin phase from the first snapped boundary
        const auto sg = pattern.profile.signs();
        std::vector<std::pair<double, int>> pts;
        for (std::size_t i = 0; i < pattern.profile.boundaries.size(); ++i) {
            const double b = pmod(std::round(pattern.profile.boundaries[i] / cell) * cell, L);
            pts.emplace_back(b, sg[i]);
        }
        std::sort(pts.begin(), pts.end());
        for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
            if (pts[i].first == pts[i + 1].first) {
                throw std::invalid_argument(
                    "rasterize_stripes: boundaries collide after snapping");
            }
        }
        snapped.boundaries.clear();
        for (const auto& [b, s] : pts) snapped.boundaries.push_back(b);
        snapped.inside_at_origin =
            pts[0].first == 0.0 ? pts[0].second == +1 : pts[0].second == -1;
    }
    GridSet g(d, L, n);
    std::vector<int> idx(d, 0);
    for (long f = 0; f < g.cell_count(); ++f) {
        const auto ix = g.unflatten(f);
        const double x = (ix[pattern.direction] + 0.5) * cell;
        g.set(f, snapped.contains(x));
    }
    return g;
}

double rasterize_snap_error(const StripePattern& pattern, int n) {
    const double cell = pattern.profile.period / n;
    double worst = 0.0;
    for (double b : pattern.profile.boundaries) {
        worst = std::max(worst, std::fabs(b - std::round(b / cell) * cell));
    }
    return worst;
}

bool is_admissible(const StripePattern& pattern, double eta) {
    pattern.profile.validate();
    for (double g : pattern.profile.gaps()) {
        if (g < eta) return false;
    }
    return true;
}

std::vector<double> column_profile(const GridSet& set, const Cube& Q, int axis) {
    const int d = set.dim();
    if (static_cast<int>(Q.corner.size()) != d) {
        throw std::invalid_argument("column_profile: cube dimension mismatch");
    }
    const int c = Q.extent;
    std::vector<double> m(c, 0.0);
    long cross = 1;
    for (int a = 0; a < d; ++a) {
        if (a != axis) cross *= c;
    }
    std::vector<int> idx(d);
    // iterate all cells of the cube
    std::vector<int> off(d, 0);
    for (;;) {
        for (int a = 0; a < d; ++a) idx[a] = Q.corner[a] + off[a];
        if (set.occupied(idx)) m[off[axis]] += 1.0;
        int a = d - 1;
        while (a >= 0 && off[a] == c - 1) off[a--] = 0;
        if (a < 0) break;
        ++off[a];
    }
    for (double& v : m) v /= static_cast<double>(cross);
    return m;
}

double distance_to_stripes_dir(const GridSet& set, const Cube& Q, int axis,
                               double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("distance_to_stripes_dir: eta must be > 0");
    const auto m = column_profile(set, Q, axis);
    const int c = Q.extent;
    std::vector<double> c0(c), c1(c);
    for (int t = 0; t < c; ++t) {
        c0[t] = m[t];        // F empty on the layer: pay the occupied fraction
        c1[t] = 1.0 - m[t];  // F full on the layer
    }
    const int g = min_run(eta, set.cell_side());
    const double total =
        (Q.extent == set.cells_per_side()) ? dp_cyclic(c0, c1, g) : dp_free(c0, c1, g);
    return total / c;
}

DirectionalDistance distance_to_stripes(const GridSet& set, const Cube& Q,
                                        double eta) {
    DirectionalDistance out;
    out.value = kInf;
    for (int a = 0; a < set.dim(); ++a) {
        const double v = distance_to_stripes_dir(set, Q, a, eta);
        if (v < out.value) {
            out.value = v;
            out.direction = a;
        }
    }
    return out;
}

double distance_dir_enumerated(const GridSet& set, const Cube& Q, int axis,
                               double eta) {
    if (Q.extent == set.cells_per_side()) {
        throw std::invalid_argument("distance_dir_enumerated: sub-torus cubes only");
    }
    const auto m = column_profile(set, Q, axis);
    const int c = Q.extent;
    if (c > 20) throw std::invalid_argument("distance_dir_enumerated: too many layers");
    const int g = min_run(eta, set.cell_side());
    double best = kInf;
    for (unsigned mask = 0; mask < (1u << c); ++mask) {
        // internal interface gaps must be >= g layers
        int last_flip = -1;
        bool ok = true;
        for (int t = 1; t < c && ok; ++t) {
            const bool flip = ((mask >> t) & 1u) != ((mask >> (t - 1)) & 1u);
            if (flip) {
                if (last_flip >= 0 && t - last_flip < g) ok = false;
                last_flip = t;
            }
        }
        if (!ok) continue;
        // plain left-to-right accumulation, matching the DP's association,
        // so the two routes agree bitwise
        double cost = 0.0;
        for (int t = 0; t < c; ++t) {
            cost += ((mask >> t) & 1u) ? 1.0 - m[t] : m[t];
        }
        best = std::min(best, cost);
    }
    return best / c;
}

double lipschitz_probe(const GridSet& set, double eta, int extent,
                       const std::vector<std::pair<std::vector<int>, std::vector<int>>>& pairs) {
    double worst = 0.0;
    const double cell = set.cell_side();
    const int n = set.cells_per_side();
    for (const auto& [za, zb] : pairs) {
        if (za == zb) continue;
        Cube qa{za, extent}, qb{zb, extent};
        const double da = distance_to_stripes(set, qa, eta).value;
        const double db = distance_to_stripes(set, qb, eta).value;
        double dist = 0.0;
        for (std::size_t a = 0; a < za.size(); ++a) {
            const long diff = pmod(static_cast<long>(za[a] - zb[a]), static_cast<long>(n));
            dist = std::max(dist, static_cast<double>(std::min(diff, n - diff)) * cell);
        }
        if (dist > 0.0) {
            worst = std::max(worst, std::fabs(da - db) * (extent * cell) / dist);
        }
    }
    return worst;
}

TwoDirectionProbe two_direction_probe(const GridSet& set, const Cube& Q,
                                      double eta, double delta) {
    TwoDirectionProbe out;
    std::vector<int> close;
    for (int a = 0; a < set.dim(); ++a) {
        if (distance_to_stripes_dir(set, Q, a, eta) <= delta) close.push_back(a);
    }
    if (close.size() < 2) return out;
    out.applicable = true;
    out.dir_i = close[0];
    out.dir_j = close[1];
    long occ = 0, tot = 1;
    for (int a = 0; a < set.dim(); ++a) tot *= Q.extent;
    std::vector<int> idx(set.dim()), off(set.dim(), 0);
    for (;;) {
        for (int a = 0; a < set.dim(); ++a) idx[a] = Q.corner[a] + off[a];
        if (set.occupied(idx)) ++occ;
        int a = set.dim() - 1;
        while (a >= 0 && off[a] == Q.extent - 1) off[a--] = 0;
        if (a < 0) break;
        ++off[a];
    }
    const double cellvol = std::pow(set.cell_side(), set.dim());
    out.min_volume = std::min(occ, tot - occ) * cellvol;
    return out;
}

}  // namespace stripe
