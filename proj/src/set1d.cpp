#include "stripe/set1d.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stripe {

void PeriodicSet1D::validate() const {
    if (!(period > 0.0)) throw std::invalid_argument("PeriodicSet1D: period must be > 0");
    if (boundaries.size() % 2 != 0) {
        throw std::invalid_argument("PeriodicSet1D: boundary count must be even");
    }
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        if (boundaries[i] < 0.0 || boundaries[i] >= period) {
            throw std::invalid_argument("PeriodicSet1D: boundaries must lie in [0, L)");
        }
        if (i > 0 && !(boundaries[i] > boundaries[i - 1])) {
            throw std::invalid_argument("PeriodicSet1D: boundaries must be strictly increasing");
        }
    }
    if (boundaries.size() >= 2) {
        // wrap gap must be positive too; strict increase already gives the rest
        const double wrap = boundaries.front() + period - boundaries.back();
        if (!(wrap > 0.0)) throw std::invalid_argument("PeriodicSet1D: zero wrap gap");
    }
}

std::vector<int> PeriodicSet1D::signs() const {
    // inside_at_origin is the state on [0, first boundary > 0); a boundary
    // sitting exactly at 0 is the wrap transition and carries sign +1 when
    // the set is entered there. The sign of b_i is the state of the segment
    // [b_i, b_{i+1}).
    std::vector<int> s(boundaries.size());
    if (s.empty()) return s;
    const bool sigma0 =
        boundaries.front() == 0.0 ? inside_at_origin : !inside_at_origin;
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        const bool seg_inside = (i % 2 == 0) ? sigma0 : !sigma0;
        s[i] = seg_inside ? +1 : -1;
    }
    return s;
}

std::vector<double> PeriodicSet1D::gaps() const {
    const std::size_t n = boundaries.size();
    std::vector<double> g(n);
    if (n == 0) return g;
    for (std::size_t i = 0; i + 1 < n; ++i) g[i] = boundaries[i + 1] - boundaries[i];
    g[n - 1] = boundaries.front() + period - boundaries.back();
    return g;
}

double PeriodicSet1D::measure() const {
    const std::size_t n = boundaries.size();
    if (n == 0) return inside_at_origin ? period : 0.0;
    double m = 0.0;
    bool inside = inside_at_origin;
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (boundaries[i] == 0.0) continue;  // wrap transition, no segment yet
        if (inside) m += boundaries[i] - prev;
        prev = boundaries[i];
        inside = !inside;
    }
    if (inside) m += period - prev;
    return m;
}

PeriodicSet1D PeriodicSet1D::complement() const {
    PeriodicSet1D c = *this;
    c.inside_at_origin = !inside_at_origin;
    return c;
}

PeriodicSet1D PeriodicSet1D::translated(double delta) const {
    PeriodicSet1D t;
    t.period = period;
    const std::size_t n = boundaries.size();
    if (n == 0) {
        t.inside_at_origin = inside_at_origin;
        return t;
    }
    std::vector<std::pair<double, int>> pts(n);
    const auto sg = signs();
    for (std::size_t i = 0; i < n; ++i) pts[i] = {pmod(boundaries[i] + delta, period), sg[i]};
    std::sort(pts.begin(), pts.end());
    t.boundaries.resize(n);
    for (std::size_t i = 0; i < n; ++i) t.boundaries[i] = pts[i].first;
    // origin is inside iff the first boundary is an exit, or an entry at 0
    t.inside_at_origin = pts[0].first == 0.0 ? pts[0].second == +1 : pts[0].second == -1;
    return t;
}

bool PeriodicSet1D::contains(double x) const {
    const double xm = pmod(x, period);
    bool inside = inside_at_origin;
    for (double b : boundaries) {
        if (b > xm) break;
        if (b > 0.0) inside = !inside;  // the b = 0 entry does not flip [0, .)
    }
    return inside;
}

PeriodicSet1D make_stripes_1d(const StripeSpec& spec) {
    if (!(spec.h > 0.0)) throw std::invalid_argument("make_stripes_1d: h must be > 0");
    if (spec.k < 1) throw std::invalid_argument("make_stripes_1d: k must be >= 1");
    if (spec.nu < 0.0 || spec.nu >= 2.0 * spec.h) {
        throw std::invalid_argument("make_stripes_1d: nu must lie in [0, 2h)");
    }
    const double L = 2.0 * spec.k * spec.h;
    PeriodicSet1D e;
    e.period = L;
    e.boundaries.resize(2 * spec.k);
    for (int j = 0; j < 2 * spec.k; ++j) e.boundaries[j] = pmod(spec.nu + j * spec.h, L);
    std::sort(e.boundaries.begin(), e.boundaries.end());
    // 0 is inside iff (0 - nu) mod 2h lands in [0, h)
    e.inside_at_origin = pmod(-spec.nu, 2.0 * spec.h) < spec.h;
    e.validate();
    return e;
}

}  // namespace stripe
