#ifndef QRABI_SCALAR_SEARCH_HPP
#define QRABI_SCALAR_SEARCH_HPP

#include <cmath>
#include <cstddef>
#include <utility>

#include "errors.hpp"

namespace qrabi {

/// Golden-section minimization of a unimodal f on [lo, hi]; stops once the
/// bracket is narrower than tol and returns its midpoint.
template <class F>
double golden_section_minimize(F &&f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    // Ties keep the lower sub-bracket so flat regions resolve toward small x.
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

/// Bisection root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect_root(F &&f, double lo, double hi, double tol) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) {
    return lo;
  }
  if (f_hi == 0.0) {
    return hi;
  }
  if ((f_lo < 0.0) == (f_hi < 0.0)) {
    throw no_solution("bisect_root: no sign change on bracket");
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) {
      return mid;
    }
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qrabi

#endif
