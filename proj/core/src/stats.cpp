#include "paramarkov/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "paramarkov/specfun.hpp"

namespace paramarkov {

std::string TestReport::to_json() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "{\"statistic\": %.17g, \"p_value\": %.17g, \"n\": %lld, "
                "\"significance\": %.17g, \"pass\": %s, \"warning\": %s}",
                statistic, p_value, n, significance, pass ? "true" : "false",
                warning ? "true" : "false");
  return buf;
}

double kolmogorov_sf(double x) {
  if (x <= 0.0) return 1.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-10) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * sum));
}

TestReport ks_test(std::vector<double> samples,
                   const std::function<double(double)>& cdf,
                   double significance) {
  if (samples.size() < 50)
    throw std::domain_error("ks_test: need n >= 50 for the asymptotic law");
  std::sort(samples.begin(), samples.end());
  const double n = double(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    if (f < -1e-12 || f > 1.0 + 1e-12)
      throw std::domain_error("ks_test: cdf out of [0,1]");
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  TestReport rep;
  rep.statistic = d;
  rep.n = (long long)samples.size();
  rep.p_value = kolmogorov_sf(std::sqrt(n) * d);
  rep.significance = significance;
  rep.pass = rep.p_value > significance;
  return rep;
}

TestReport chi_square_pmf(const std::vector<long long>& observed,
                          const std::vector<double>& expected_pmf,
                          double min_expected, double significance) {
  if (observed.size() != expected_pmf.size() || observed.empty())
    throw std::domain_error("chi_square_pmf: size mismatch");
  long long total = 0;
  for (long long o : observed) total += o;
  if (total <= 0) throw std::domain_error("chi_square_pmf: empty sample");

  // pool right-tail bins until each pooled bin has enough expected mass
  std::vector<double> exp_counts;
  std::vector<long long> obs_counts;
  double e_acc = 0.0;
  long long o_acc = 0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    e_acc += expected_pmf[i] * double(total);
    o_acc += observed[i];
    if (e_acc >= min_expected) {
      exp_counts.push_back(e_acc);
      obs_counts.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0) {
    if (exp_counts.empty())
      throw std::domain_error("chi_square_pmf: degenerate after pooling");
    exp_counts.back() += e_acc;
    obs_counts.back() += o_acc;
  }
  if (exp_counts.size() < 2)
    throw std::domain_error("chi_square_pmf: degenerate after pooling");

  double stat = 0.0;
  for (std::size_t i = 0; i < exp_counts.size(); ++i) {
    const double diff = double(obs_counts[i]) - exp_counts[i];
    stat += diff * diff / exp_counts[i];
  }
  TestReport rep;
  rep.statistic = stat;
  rep.n = total;
  const double dof = double(exp_counts.size() - 1);
  rep.p_value = regularized_gamma_upper(0.5 * dof, 0.5 * stat);
  rep.significance = significance;
  rep.pass = rep.p_value > significance;
  return rep;
}

OrderEstimate order_estimate(double e_h, double e_h2, double e_h4) {
  if (!(e_h > 0.0) || !(e_h2 > 0.0) || !(e_h4 > 0.0))
    throw std::domain_error("order_estimate: errors must be positive");
  const double o1 = std::log2(e_h / e_h2);
  const double o2 = std::log2(e_h2 / e_h4);
  return {0.5 * (o1 + o2), e_h > e_h2 && e_h2 > e_h4};
}

}  // namespace paramarkov
