#include "metrize/quadrature.hpp"

#include <cmath>

namespace metrize {

namespace {

constexpr int kMaxDepth = 60;

double simpson(double h, double fa, double fm, double fb) {
  return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double adapt(const std::function<double(double)>& f, double a, double m, double b,
             double fa, double fm, double fb, double whole, double tol, int depth) {
  if (depth > kMaxDepth)
    throw QuadratureFailure("quadrature did not converge (depth > 60)");
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double h = 0.5 * (b - a);
  const double left = simpson(h, fa, flm, fm);
  const double right = simpson(h, fm, frm, fb);
  const double err = (left + right - whole) / 15.0;
  if (std::abs(err) <= tol && std::isfinite(err)) return left + right + err;
  return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

}  // namespace

double quadrature(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (a == b) return 0.0;
  if (a > b) return -quadrature(f, b, a, tol);
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = simpson(b - a, fa, fm, fb);
  return adapt(f, a, m, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace metrize
