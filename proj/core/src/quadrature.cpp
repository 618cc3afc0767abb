#include "paramarkov/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace paramarkov {

GaussLaguerreRule gauss_laguerre(int n, double alf) {
  if (n < 2) throw std::domain_error("gauss_laguerre: need n >= 2");
  if (alf <= -1.0) throw std::domain_error("gauss_laguerre: need alf > -1");
  GaussLaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int max_newton = 60;
  double x = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      x = (1.0 + alf) * (3.0 + 0.92 * alf) / (1.0 + 2.4 * n + 1.8 * alf);
    } else if (i == 1) {
      x += (15.0 + 6.25 * alf) / (1.0 + 0.9 * alf + 2.5 * n);
    } else {
      const double ai = i - 1;
      x += ((1.0 + 2.55 * ai) / (1.9 * ai) +
            1.26 * ai * alf / (1.0 + 3.5 * ai)) *
           (x - rule.nodes[i - 2]) / (1.0 + 0.3 * alf);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < max_newton; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2 * j + 1 + alf - x) * p2 - (j + alf) * p3) / (j + 1);
      }
      pp = (n * p1 - (n + alf) * p2) / x;
      const double x1 = x;
      x = x1 - p1 / pp;
      if (std::fabs(x - x1) <= 1e-15 * std::fabs(x)) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] =
        -std::exp(std::lgamma(alf + n) - std::lgamma(double(n))) /
        (pp * n * p2);
  }
  return rule;
}

}  // namespace paramarkov
