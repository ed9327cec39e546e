#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "stripe/kernel.hpp"
#include "stripe/onedim.hpp"
#include "stripe/quadrature.hpp"
#include "stripe/set1d.hpp"

using namespace stripe;

TEST_CASE("stripe construction") {
    const auto e1 = make_stripes_1d({1.0, 0.0, 1});
    CHECK(e1.period == 2.0);
    REQUIRE(e1.boundaries.size() == 2);
    CHECK(e1.boundaries[0] == 0.0);
    CHECK(e1.boundaries[1] == 1.0);
    CHECK(e1.inside_at_origin);

    const auto e2 = make_stripes_1d({1.0, 0.5, 2});
    CHECK(e2.period == 4.0);
    REQUIRE(e2.boundaries.size() == 4);
    for (double g : e2.gaps()) CHECK(g == doctest::Approx(1.0));

    CHECK_THROWS_AS(make_stripes_1d({0.0, 0.0, 1}), std::invalid_argument);
}

TEST_CASE("set helpers") {
    PeriodicSet1D s;
    s.period = 10.0;
    s.boundaries = {0.0, 3.0, 5.0, 9.0};
    s.inside_at_origin = true;
    s.validate();
    CHECK(s.measure() == doctest::Approx(7.0));
    CHECK(s.complement().measure() == doctest::Approx(3.0));
    CHECK(s.contains(1.0));
    CHECK(!s.contains(4.0));
    const auto t = s.translated(2.5);
    CHECK(t.measure() == doctest::Approx(7.0));
    CHECK(t.contains(3.5));
}

TEST_CASE("f1d energy trivial sets") {
    const auto P = make_params(1, 0.0, 0.5);
    PeriodicSet1D empty;
    empty.period = 5.0;
    CHECK(f1d_energy(P, empty) == 0.0);
    empty.inside_at_origin = true;  // full circle
    CHECK(f1d_energy(P, empty) == 0.0);
}

TEST_CASE("f1d frozen values") {
    // alpha=0, tau=0, h=1: e = -1 + 2 ln 2
    const auto P0 = make_params(1, 0.0, 0.0);
    const auto e1 = make_stripes_1d({1.0, 0.0, 1});
    CHECK(f1d_energy(P0, e1) == doctest::Approx(-1.0 + 2.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(stripe_energy(P0, 1.0) == doctest::Approx(-1.0 + 2.0 * std::log(2.0)).epsilon(1e-13));

    // alpha=0, tau=0.5, h=1: e = 3 - pi (digamma reduction of the series)
    const auto P5 = make_params(1, 0.0, 0.5);
    CHECK(stripe_energy(P5, 1.0) == doctest::Approx(3.0 - M_PI).epsilon(1e-13));
    CHECK(f1d_energy(P5, e1) == doctest::Approx(3.0 - M_PI).epsilon(1e-11));
}

TEST_CASE("series vs direct on a small grid") {
    for (double alpha : {0.0, 0.5}) {
        for (double tau : {0.0, 0.1, 0.5}) {
            const auto P = make_params(1, alpha, tau);
            for (double h : {0.5, 1.0, 2.3, 4.0}) {
                const double es = stripe_energy(P, h);
                const double ed = f1d_energy(P, make_stripes_1d({h, 0.0, 1}));
                CHECK(std::fabs(es - ed) <=
                      1e-9 * std::max({std::fabs(es), std::fabs(ed), 1.0 / h}));
            }
        }
    }
}

TEST_CASE("multi-period stripes match the single period") {
    const auto P = make_params(1, 0.25, 0.3);
    const double e1 = f1d_energy(P, make_stripes_1d({1.4, 0.0, 1}));
    const double e3 = f1d_energy(P, make_stripes_1d({1.4, 0.7, 3}));
    CHECK(e1 == doctest::Approx(e3).epsilon(1e-11));
}

TEST_CASE("complement and translation invariance") {
    std::mt19937_64 eng(11);
    auto u = [&] { return (eng() >> 11) * 0x1.0p-53; };
    const auto P = make_params(1, 0.3, 0.4);
    for (int trial = 0; trial < 12; ++trial) {
        PeriodicSet1D s;
        s.period = 8.0;
        const int nb = 2 + 2 * static_cast<int>(eng() % 3);
        std::vector<double> b(nb);
        for (auto& x : b) x = 8.0 * u();
        std::sort(b.begin(), b.end());
        bool ok = true;
        for (int i = 0; i + 1 < nb; ++i) {
            if (b[i + 1] - b[i] < 1e-3) ok = false;
        }
        if (!ok || b.front() + 8.0 - b.back() < 1e-3) continue;
        s.boundaries = b;
        s.inside_at_origin = (eng() & 1) != 0;
        const double e = f1d_energy(P, s);
        CHECK(f1d_energy(P, s.complement()) == doctest::Approx(e).epsilon(1e-15));
        const double delta = 8.0 * u();
        CHECK(f1d_energy(P, s.translated(delta)) == doctest::Approx(e).epsilon(1e-12));
    }
}

namespace {

// |E delta (E + z)| by sweeping the merged boundary events
double overlap_mismatch(const PeriodicSet1D& s, double z) {
    const double L = s.period;
    std::vector<double> events;
    for (double b : s.boundaries) {
        events.push_back(b);
        events.push_back(pmod(b + z, L));
    }
    std::sort(events.begin(), events.end());
    double total = 0.0;
    for (std::size_t i = 0; i <= events.size(); ++i) {
        const double a = i == 0 ? 0.0 : events[i - 1];
        const double b = i == events.size() ? L : events[i];
        if (!(b > a)) continue;
        const double mid = 0.5 * (a + b);
        if (s.contains(mid) != s.contains(mid - z)) total += b - a;
    }
    return total;
}

// adaptive quadrature of the defining z-integral, independent of the
// pairwise reduction
double f1d_quadrature_oracle(const KernelParams& P, const PeriodicSet1D& s,
                             double R = 3000.0) {
    const int n = s.perimeter();
    if (n == 0) return 0.0;
    const double L = s.period;
    auto integrand = [&](double z) {
        return reduced_kernel(P, z) * (n * z - overlap_mismatch(s, z));
    };
    double gmin = s.gaps()[0];
    for (double g : s.gaps()) gmin = std::min(gmin, g);
    KahanSum acc;
    double z = 0.9 * gmin;  // the bracket vanishes identically below the gap
    while (z < R) {
        const double hi = std::min(z + L, R);
        acc.add(integrate(integrand, z, hi, 1e-11));
        z = hi;
    }
    // tail: exact for the n|z| part, mean-density for the mismatch part
    const double u = R + P.tau_pow;
    const double c1 = c1_closed(P);
    acc.add(c1 * n *
            (std::pow(u, 2.0 - P.q) / (P.q - 2.0) -
             P.tau_pow * std::pow(u, 1.0 - P.q) / (P.q - 1.0)));
    const double phibar = 2.0 * s.measure() * (L - s.measure()) / L;
    acc.add(-c1 * phibar * std::pow(u, 1.0 - P.q) / (P.q - 1.0));
    return (-n + 2.0 * acc.value()) / L;
}

}  // namespace

TEST_CASE("f1d pairwise reduction vs quadrature oracle") {
    std::mt19937_64 eng(77);
    auto u = [&] { return (eng() >> 11) * 0x1.0p-53; };
    for (int trial = 0; trial < 6; ++trial) {
        PeriodicSet1D s;
        s.period = 10.0;
        const int nb = 2 + 2 * static_cast<int>(eng() % 3);
        std::vector<double> b(nb);
        for (auto& x : b) x = 10.0 * u();
        std::sort(b.begin(), b.end());
        bool ok = b.front() + 10.0 - b.back() > 0.05;
        for (int i = 0; i + 1 < nb; ++i) ok = ok && b[i + 1] - b[i] > 0.05;
        if (!ok) continue;
        s.boundaries = b;
        s.inside_at_origin = (eng() & 1) != 0;
        const double alpha = (trial % 2) ? 0.4 : 0.0;
        const double tau = (trial % 3) ? 0.3 : 0.0;
        const auto P = make_params(1, alpha, tau);
        const double direct = f1d_energy(P, s);
        const double oracle = f1d_quadrature_oracle(P, s);
        CHECK(std::fabs(direct - oracle) <= 2e-6 * std::max(1.0, std::fabs(direct)));
    }
}

TEST_CASE("r term: stripe identity and symmetry") {
    const auto P = make_params(1, 0.0, 0.4);
    const double h = 1.3;
    const auto s = make_stripes_1d({h, 0.0, 2});
    const double r0 = r_term_1d_index(P, s, 0);
    for (std::size_t i = 1; i < s.boundaries.size(); ++i) {
        CHECK(r_term_1d_index(P, s, i) == doctest::Approx(r0).epsilon(1e-13));
    }
    CHECK(r0 == doctest::Approx(h * stripe_energy(P, h)).epsilon(1e-11));
}

TEST_CASE("r term sums to the energy over all boundaries") {
    const auto P = make_params(1, 0.2, 0.6);
    PeriodicSet1D s;
    s.period = 10.0;
    s.boundaries = {0.0, 3.0, 5.0, 9.0};
    s.inside_at_origin = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) sum += r_term_1d_index(P, s, i);
    CHECK(sum == doctest::Approx(s.period * f1d_energy(P, s)).epsilon(1e-11));
}

TEST_CASE("r term vs Monte Carlo oracle") {
    // fixture: L=10, boundaries {0,3,5,9}, alpha=0, tau=0.5, probe at s=3
    const auto P = make_params(1, 0.0, 0.5);
    PeriodicSet1D s;
    s.period = 10.0;
    s.boundaries = {0.0, 3.0, 5.0, 9.0};
    s.inside_at_origin = true;
    const double r = r_term_1d(P, s, 3.0);

    // MC estimate of the two window integrals; rho sampled from the
    // normalized reduced kernel on (0,inf) by inverse CDF
    const double tp = P.tau_pow;
    const double mass = 0.5 * std::pow(tp, -2.0);  // int_0^inf (rho+tp)^-3
    std::mt19937_64 eng(20240517);
    auto u01 = [&] { return ((eng() >> 11) + 0.5) * 0x1.0p-53; };
    auto sample_rho = [&] { return tp * (1.0 / std::sqrt(1.0 - u01()) - 1.0); };
    auto chi = [&](double x) { return s.contains(x) ? 1.0 : 0.0; };
    const long N = 2'000'000;
    double acc = 0.0, acc2 = 0.0;
    for (long i = 0; i < N; ++i) {
        const double u_minus = u01() * 3.0;          // (s-, s) = (0, 3)
        const double u_plus = 3.0 + u01() * 2.0;     // (s, s+) = (3, 5)
        const double rho1 = sample_rho();
        const double rho2 = sample_rho();
        const double v = 3.0 * std::fabs(chi(u_minus + rho1) - chi(u_minus)) +
                         2.0 * std::fabs(chi(u_plus - rho2) - chi(u_plus));
        acc += v;
        acc2 += v * v;
    }
    const double mean = acc / N;
    const double var = std::max(0.0, acc2 / N - mean * mean);
    const double sigma = std::sqrt(var / N) * mass;
    const double mc_windows = mean * mass;
    const double r_mc = -1.0 + 2.0 * 0.5 / P.tau - mc_windows;
    CHECK(std::fabs(r - r_mc) <= 3.0 * sigma + 1e-6);
}

TEST_CASE("r lower bound closed form") {
    const auto P = make_params(1, 0.0, 0.5);
    CHECK(r_lower_bound(P, 1.0, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r_lower_bound(P, 1e6, 1e6) == doctest::Approx(-1.0).epsilon(1e-5));
    const auto Pt = make_params(1, 0.0, 0.1);
    CHECK(r_lower_bound(Pt, 0.01, 0.01) == doctest::Approx(9.0).epsilon(1e-12));
    CHECK_THROWS_AS(r_lower_bound(P, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("eta0 threshold") {
    const auto P = make_params(1, 0.0, 0.1);
    CHECK(eta0_threshold(P) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r_lower_bound(P, 0.25, 3.0) > 0.0);
    const auto P2 = make_params(2, 0.0, 0.1);
    CHECK(eta0_threshold(P2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(eta0_threshold(make_params(1, 0.0, 0.9)), std::invalid_argument);
}

TEST_CASE("optimal width closed form at tau=0") {
    const auto P = make_params(1, 0.0, 0.0);
    const auto ow = optimal_width(P);
    CHECK(ow.h_star == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-13));
    CHECK(ow.c_star == doctest::Approx(-1.0 / (8.0 * std::log(2.0))).epsilon(1e-13));
    // golden-section cross-check on the series, parabolic-refined
    double a = ow.h_star / 3.0, b = ow.h_star * 3.0;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = stripe_energy(P, c), fd = stripe_energy(P, d);
    while (b - a > 1e-8) {
        if (fc < fd) {
            b = d; d = c; fd = fc; c = b - gr * (b - a); fc = stripe_energy(P, c);
        } else {
            a = c; c = d; fc = fd; d = a + gr * (b - a); fd = stripe_energy(P, d);
        }
    }
    double x = 0.5 * (a + b);
    for (double rel : {1e-3, 3e-5, 3e-6}) {
        const double step = rel * x;
        const double fm = stripe_energy(P, x - step);
        const double f0 = stripe_energy(P, x);
        const double fp = stripe_energy(P, x + step);
        const double curv = fm - 2.0 * f0 + fp;
        if (curv > 0.0) x += step * (fm - fp) / (2.0 * curv);
    }
    CHECK(x == doctest::Approx(ow.h_star).epsilon(1e-9));
}

TEST_CASE("optimal width for tau > 0") {
    const auto P = make_params(1, 0.0, 0.01);
    const auto ow = optimal_width(P);
    CHECK(ow.c_star < 0.0);
    CHECK(ow.c_star <= optimal_width(make_params(1, 0.0, 0.0)).c_star + 1e-9);
    CHECK(ow.multistart_spread <= 1e-7);
    // argmin sanity sweep on a log grid around h*
    for (int i = 0; i < 100; ++i) {
        const double h = ow.h_star * std::pow(4.0, (i - 50) / 50.0);
        CHECK(stripe_energy(P, h) >= ow.c_star - 1e-12);
    }
    CHECK_THROWS_AS(optimal_width(make_params(1, 0.97, 0.1)), std::invalid_argument);
}

TEST_CASE("brute force minimizer small instance") {
    const auto P = make_params(1, 0.0, 0.1);
    const double h = optimal_width(P).h_star;
    const auto res = brute_force_min_1d(P, 2.0 * h, 16, 4);
    REQUIRE(res.best.perimeter() == 2);
    const auto g = res.best.gaps();
    CHECK(std::fabs(g[0] - h) <= 2.0 * h / 16.0 + 1e-12);
    CHECK(res.energy == doctest::Approx(stripe_energy(P, h)).epsilon(1e-3));
    for (const auto& tr : res.trace) {
        if (tr.candidates > 0) CHECK(res.energy <= tr.best_energy + 1e-15);
    }

    const auto trivial = brute_force_min_1d(P, 2.0 * h, 16, 0);
    CHECK(trivial.best.perimeter() == 0);
    CHECK(trivial.energy == 0.0);

    CHECK_THROWS_AS(brute_force_min_1d(P, 1.0, 128, 10), std::invalid_argument);
}
