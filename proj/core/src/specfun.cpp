#include "paramarkov/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "paramarkov/quadrature.hpp"

namespace paramarkov {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Switch point between the power series and the mixture quadrature.
constexpr double kMlSeriesSwitch = 5.0;

// The series falls back to quadrature when the largest term exceeds this
// multiple of the partial sum; beyond that the long double accumulation
// cannot deliver 1e-9 relative accuracy.
constexpr double kMlCancellationGuard = 1e8;

}  // namespace

void MLParams::validate() const {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("MLParams: alpha must lie in (0, 1]");
  if (!(lambda > 0.0) || !std::isfinite(lambda))
    throw std::domain_error("MLParams: lambda must be positive");
}

void validate(const MixingMeasure& mixing) {
  struct Visitor {
    void operator()(const LampertiMixing& m) const {
      if (!(m.alpha > 0.0) || !(m.alpha < 1.0))
        throw std::domain_error("LampertiMixing: alpha must lie in (0, 1)");
      if (!(m.lambda > 0.0))
        throw std::domain_error("LampertiMixing: lambda must be positive");
    }
    void operator()(const PointMassMixing& m) const {
      if (!(m.lambda > 0.0))
        throw std::domain_error("PointMassMixing: lambda must be positive");
    }
    void operator()(const DiscreteAtomsMixing& m) const {
      if (m.atoms.empty())
        throw std::domain_error("DiscreteAtomsMixing: no atoms");
      double total = 0.0;
      for (const auto& a : m.atoms) {
        if (!(a.location >= 0.0))
          throw std::domain_error("DiscreteAtomsMixing: negative location");
        if (!(a.weight > 0.0))
          throw std::domain_error("DiscreteAtomsMixing: non-positive weight");
        total += a.weight;
      }
      if (std::fabs(total - 1.0) > 1e-12)
        throw std::domain_error(
            "DiscreteAtomsMixing: weights must sum to 1 within 1e-12");
    }
  };
  std::visit(Visitor{}, mixing);
}

double SurvivalSpec::survival(double t) const {
  return survival_from_mixture(*this, t);
}

double gamma_fn(double x) {
  if (!(x > 0.0))
    throw std::domain_error("gamma_fn: argument must be positive");
  if (x > 171.6)
    throw std::domain_error("gamma_fn: overflow beyond x = 171.6");
  return std::tgamma(x);
}

double regularized_gamma_upper(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::domain_error("regularized_gamma_upper: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  const double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // lower series, then complement
    double ap = a, sum = 1.0 / a, del = sum;
    for (int n = 0; n < 500; ++n) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-16) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - lg);
    return 1.0 - p;
  }
  // Lentz continued fraction for Q directly
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - lg);
}

namespace {

// Power series sum_k (-x)^k / Gamma(1 + alpha k) in long double, with a
// cancellation report.  Returns false when the guard trips.
bool ml_series(double alpha, double x, double* out) {
  const long double lx = std::log((long double)x);
  long double sum = 1.0L;  // k = 0 term
  long double max_abs = 1.0L;
  long double prev_abs = 1.0L;
  for (int k = 1; k < 20000; ++k) {
    const long double lt =
        k * lx - std::lgamma(1.0L + (long double)alpha * k);
    const long double term = ((k & 1) ? -1.0L : 1.0L) * std::exp(lt);
    sum += term;
    const long double a = std::fabs(term);
    if (a > max_abs) max_abs = a;
    if (a < prev_abs && a < std::fabs(sum) * 1e-16L + 1e-30L) break;
    prev_abs = a;
  }
  if (!(std::fabs((double)sum) > 0.0) ||
      (double)(max_abs / std::max(std::fabs(sum), (long double)1e-300)) >
          kMlCancellationGuard) {
    return false;
  }
  *out = (double)sum;
  return true;
}

double ml_by_mixture(double alpha, double x) {
  // E_alpha(-x) = int e^{-s t} nu_{alpha,1}(ds) with t = x^{1/alpha}
  const double t = std::pow(x, 1.0 / alpha);
  QuadratureBudget budget;
  budget.tail_tol = 1e-13;
  budget.tol = 1e-13;
  SurvivalSpec spec{LampertiMixing{alpha, 1.0}, budget};
  return survival_from_mixture(spec, t);
}

}  // namespace

double mittag_leffler_neg(double alpha, double x) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("mittag_leffler_neg: alpha must lie in (0, 1]");
  if (!(x >= 0.0))
    throw std::domain_error("mittag_leffler_neg: argument must be >= 0");
  if (x == 0.0) return 1.0;
  if (alpha == 1.0) return std::exp(-x);
  if (x <= kMlSeriesSwitch) {
    double v;
    if (ml_series(alpha, x, &v)) return v;
  }
  return ml_by_mixture(alpha, x);
}

double ml_survival(const MLParams& p, double t) {
  p.validate();
  if (!(t >= 0.0)) throw std::domain_error("ml_survival: negative time");
  if (t == 0.0) return 1.0;
  if (p.alpha == 1.0) return std::exp(-p.lambda * t);
  return mittag_leffler_neg(p.alpha, p.lambda * std::pow(t, p.alpha));
}

double lamperti_density(double alpha, double lambda, double s) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("lamperti_density: alpha must lie in (0, 1)");
  if (!(lambda > 0.0))
    throw std::domain_error("lamperti_density: lambda must be positive");
  if (!(s > 0.0))
    throw std::domain_error("lamperti_density: support is s > 0");
  const double c = std::cos(kPi * alpha), sg = std::sin(kPi * alpha);
  const double sa = std::pow(s, alpha);
  // denominator written as a sum of squares; it never vanishes
  const double den = (sa + lambda * c) * (sa + lambda * c) +
                     lambda * lambda * sg * sg;
  return sg / kPi * lambda * std::pow(s, alpha - 1.0) / den;
}

double lamperti_cdf(double alpha, double lambda, double s) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("lamperti_cdf: alpha must lie in (0, 1)");
  if (!(lambda > 0.0))
    throw std::domain_error("lamperti_cdf: lambda must be positive");
  if (s <= 0.0) return 0.0;
  const double c = std::cos(kPi * alpha), sg = std::sin(kPi * alpha);
  const double y = (std::pow(s, alpha) + lambda * c) / (lambda * sg);
  return (std::atan(y) - (kPi / 2.0 - kPi * alpha)) / (kPi * alpha);
}

double lamperti_quantile(double alpha, double lambda, double p) {
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("lamperti_quantile: p must lie in (0, 1)");
  const double c = std::cos(kPi * alpha), sg = std::sin(kPi * alpha);
  const double y = std::tan(kPi / 2.0 - kPi * alpha * (1.0 - p));
  const double sa = lambda * (sg * y - c);
  return std::pow(sa, 1.0 / alpha);
}

double stable_levy_density(double alpha, double tau) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("stable_levy_density: alpha must lie in (0, 1)");
  if (!(tau > 0.0))
    throw std::domain_error("stable_levy_density: tau must be positive");
  return alpha * std::pow(tau, -alpha - 1.0) / gamma_fn(1.0 - alpha);
}

double stable_levy_tail(double alpha, double t) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("stable_levy_tail: alpha must lie in (0, 1)");
  if (!(t > 0.0))
    throw std::domain_error("stable_levy_tail: t must be positive");
  return std::pow(t, -alpha) / gamma_fn(1.0 - alpha);
}

double kappa_density(double alpha, double z) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("kappa_density: alpha must lie in (0, 1)");
  if (z < 0.0)
    throw std::domain_error("kappa_density: z must be non-negative");
  return std::sin(kPi * alpha) / kPi * std::pow(z, alpha);
}

namespace {

// tail series P(S > s) = (1/pi) sum (-1)^{k-1} Gamma(a k) sin(pi k a)
// s^{-a k} / k!; valid for all s > 0 but cancels badly as s -> 0
bool stable_tail_series(double alpha, double s, double* out) {
  const long double lpow = -alpha * std::log((long double)s);
  long double sum = 0.0L, max_abs = 0.0L;
  bool converged = false;
  for (int k = 1; k <= 400; ++k) {
    const long double mag = std::exp(std::lgamma((long double)alpha * k) +
                                     k * lpow - std::lgamma(1.0L + k));
    const long double term =
        ((k & 1) ? 1.0L : -1.0L) * mag *
        std::sin(kPi * (long double)k * alpha);
    sum += term;
    if (mag > max_abs) max_abs = mag;
    if (mag < 1e-19L * std::max(std::fabs(sum), 1.0L) && k > 8) {
      converged = true;
      break;
    }
  }
  if (!converged || max_abs > 1e12L) return false;
  *out = (double)(sum / kPi);
  return true;
}

double kanter_angle_fn(double alpha, double theta) {
  const double num = std::sin((1.0 - alpha) * theta) *
                     std::pow(std::sin(alpha * theta), alpha / (1.0 - alpha));
  const double den = std::pow(std::sin(theta), 1.0 / (1.0 - alpha));
  return num / den;
}

}  // namespace

double positive_stable_cdf(double alpha, double s) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("positive_stable_cdf: alpha must lie in (0, 1)");
  if (s <= 0.0) return 0.0;
  double tail;
  if (stable_tail_series(alpha, s, &tail))
    return std::min(1.0, std::max(0.0, 1.0 - tail));
  // P(S <= s) = (1/pi) int_0^pi exp(-A(theta) s^{-a/(1-a)}) dtheta
  const double c = std::pow(s, -alpha / (1.0 - alpha));
  auto f = [&](double theta) {
    return std::exp(-kanter_angle_fn(alpha, theta) * c);
  };
  const double v = adaptive_simpson(f, 1e-12, kPi - 1e-12, 1e-12, 400000);
  return std::min(1.0, std::max(0.0, v / kPi));
}

TruncationInterval lamperti_truncation(double alpha, double lambda,
                                       double tail_tol) {
  const double sg = std::sin(kPi * alpha);
  // density(s) <= s^{a-1} / (pi lam sin(pi a)) near zero,
  // density(s) <= sin(pi a) lam s^{-a-1} / pi in the tail
  const double lo =
      std::pow(0.5 * tail_tol * kPi * lambda * alpha * sg, 1.0 / alpha);
  const double hi =
      std::pow(2.0 * lambda * sg / (kPi * alpha * tail_tol), 1.0 / alpha);
  return {lo, hi};
}

double survival_from_mixture(const SurvivalSpec& spec, double t) {
  validate(spec.mixing);
  if (!(t >= 0.0))
    throw std::domain_error("survival_from_mixture: negative time");
  if (t == 0.0) return 1.0;
  struct Visitor {
    double t;
    const QuadratureBudget& budget;
    double operator()(const PointMassMixing& m) const {
      return std::exp(-m.lambda * t);
    }
    double operator()(const DiscreteAtomsMixing& m) const {
      double s = 0.0;
      for (const auto& a : m.atoms) s += a.weight * std::exp(-a.location * t);
      return s;
    }
    double operator()(const LampertiMixing& m) const {
      TruncationInterval tr =
          lamperti_truncation(m.alpha, m.lambda, budget.tail_tol);
      // e^{-st} kills everything past s ~ 50/t
      tr.hi = std::min(tr.hi, 50.0 / t);
      if (tr.hi <= tr.lo) return 0.0;
      auto g = [&](double u) {
        const double s = std::exp(u);
        return std::exp(-s * t) * lamperti_density(m.alpha, m.lambda, s) * s;
      };
      return adaptive_simpson(g, std::log(tr.lo), std::log(tr.hi), budget.tol,
                              budget.max_evals);
    }
  };
  return std::visit(Visitor{t, spec.budget}, spec.mixing);
}

std::complex<double> mixture_laplace(const SurvivalSpec& spec,
                                     std::complex<double> w) {
  validate(spec.mixing);
  if (w.real() < 0.0)
    throw std::domain_error("mixture_laplace: need Re w >= 0");
  if (w == std::complex<double>(0.0, 0.0)) return {1.0, 0.0};
  struct Visitor {
    std::complex<double> w;
    const QuadratureBudget& budget;
    std::complex<double> operator()(const PointMassMixing& m) const {
      return std::exp(-m.lambda * w);
    }
    std::complex<double> operator()(const DiscreteAtomsMixing& m) const {
      std::complex<double> s = 0.0;
      for (const auto& a : m.atoms) s += a.weight * std::exp(-a.location * w);
      return s;
    }
    std::complex<double> operator()(const LampertiMixing& m) const {
      TruncationInterval tr =
          lamperti_truncation(m.alpha, m.lambda, budget.tail_tol);
      if (w.real() > 0.0) tr.hi = std::min(tr.hi, 50.0 / w.real());
      if (tr.hi <= tr.lo) return 0.0;
      auto g = [&](double u) -> std::complex<double> {
        const double s = std::exp(u);
        return std::exp(-s * w) * lamperti_density(m.alpha, m.lambda, s) * s;
      };
      return adaptive_simpson(g, std::log(tr.lo), std::log(tr.hi), budget.tol,
                              budget.max_evals);
    }
  };
  return std::visit(Visitor{w, spec.budget}, spec.mixing);
}

}  // namespace paramarkov
