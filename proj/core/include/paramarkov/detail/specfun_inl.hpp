#ifndef PARAMARKOV_DETAIL_SPECFUN_INL_HPP
#define PARAMARKOV_DETAIL_SPECFUN_INL_HPP

#include <cmath>

#include "paramarkov/quadrature.hpp"

namespace paramarkov {

template <class F>
double integrate_lamperti(double alpha, double lambda, F&& f,
                          const QuadratureBudget& budget) {
  const TruncationInterval tr = lamperti_truncation(alpha, lambda, budget.tail_tol);
  const double ulo = std::log(tr.lo), uhi = std::log(tr.hi);
  auto g = [&](double u) {
    const double s = std::exp(u);
    return f(s) * lamperti_density(alpha, lambda, s) * s;
  };
  return adaptive_simpson(g, ulo, uhi, budget.tol, budget.max_evals);
}

}  // namespace paramarkov

#endif
