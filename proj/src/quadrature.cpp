#include "stripe/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace stripe {

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, double* err) {
    double e = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 14, tol, &e);
    if (err) *err = e;
    return v;
}

}  // namespace stripe
