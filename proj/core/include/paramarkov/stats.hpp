#ifndef PARAMARKOV_STATS_HPP
#define PARAMARKOV_STATS_HPP

#include <functional>
#include <string>
#include <vector>

namespace paramarkov {

struct TestReport {
  double statistic = 0.0;
  double p_value = 0.0;
  long long n = 0;
  double significance = 0.01;
  bool pass = false;      // p_value > significance
  bool warning = false;   // e.g. non-monotone errors in an order estimate
  std::string to_json() const;
};

// Survival function of the Kolmogorov distribution,
// Q(x) = 2 sum_{k>=1} (-1)^{k-1} e^{-2 k^2 x^2}.
double kolmogorov_sf(double x);

// One-sample Kolmogorov-Smirnov test against a numeric CDF; asymptotic
// p-value (needs n >= 50).  Samples are sorted internally.
TestReport ks_test(std::vector<double> samples,
                   const std::function<double(double)>& cdf,
                   double significance = 0.01);

// Pearson chi-square against an expected pmf.  Bins with expected count
// below min_expected are pooled from the right tail inward.
TestReport chi_square_pmf(const std::vector<long long>& observed,
                          const std::vector<double>& expected_pmf,
                          double min_expected, double significance = 0.01);

// Observed convergence order from errors at steps h, h/2, h/4:
// (log2(e1/e2) + log2(e2/e3)) / 2, flagged when not monotone.
struct OrderEstimate {
  double order;
  bool monotone;
};
OrderEstimate order_estimate(double e_h, double e_h2, double e_h4);

}  // namespace paramarkov

#endif
