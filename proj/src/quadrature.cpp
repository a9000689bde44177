#include "fracspec/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>

namespace fracspec {

using cplx = std::complex<double>;

QuadResult integrate_panels(const RealToComplex& f, std::span<const double> breaks, double tol) {
  QuadResult total;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (!(breaks[i + 1] > breaks[i])) continue;
    double err = 0.0;
    const cplx v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, breaks[i], breaks[i + 1], 12, tol,
                                                                                   &err);
    total.value += v;
    total.error += err;
  }
  return total;
}

QuadResult integrate_tanh_sinh(const RealToComplex& f, double a, double b, double tol) {
  // shared; the rule guards its lazily refined tables internally
  static boost::math::quadrature::tanh_sinh<double> rule(12);
  double err = 0.0;
  double l1 = 0.0;
  const cplx v = rule.integrate(f, a, b, tol, &err, &l1);
  return {v, err};
}

QuadResult integrate_half_line(const RealToComplex& f, double a, double tol) {
  static boost::math::quadrature::exp_sinh<double> rule(12);
  double err = 0.0;
  double l1 = 0.0;
  const cplx v = rule.integrate([&](double u) { return f(a + u); }, 0.0, std::numeric_limits<double>::infinity(), tol,
                                &err, &l1);
  return {v, err};
}

}  // namespace fracspec
