#ifndef PARAMARKOV_SPECFUN_HPP
#define PARAMARKOV_SPECFUN_HPP

#include <complex>
#include <variant>
#include <vector>

#include "paramarkov/errors.hpp"

namespace paramarkov {

// Parameters of the Mittag-Leffler waiting-time law S(t) = E_alpha(-lambda t^alpha).
struct MLParams {
  double alpha;   // memory index, in (0, 1]
  double lambda;  // rate, > 0
  void validate() const;
};

// Mixing measures nu making the survival function a mixture of exponentials,
// S(t) = int_0^inf e^{-s t} nu(ds).
struct LampertiMixing {
  double alpha;   // in (0, 1)
  double lambda;  // > 0
};
struct PointMassMixing {
  double lambda;  // > 0; the Markov case
};
struct MixtureAtom {
  double location;  // >= 0
  double weight;    // > 0
};
struct DiscreteAtomsMixing {
  std::vector<MixtureAtom> atoms;  // weights sum to 1 within 1e-12
};
using MixingMeasure =
    std::variant<LampertiMixing, PointMassMixing, DiscreteAtomsMixing>;

void validate(const MixingMeasure& mixing);

struct QuadratureBudget {
  long max_evals = 400000;  // adaptive-quadrature evaluation cap
  double tail_tol = 1e-10;  // neglected mixing-measure tail mass
  double tol = 1e-12;       // target absolute tolerance
};

// A completely monotone survival function together with the machinery for
// evaluating it.
struct SurvivalSpec {
  MixingMeasure mixing;
  QuadratureBudget budget{};
  double survival(double t) const;
};

// Gamma on the positive real axis.  Relative accuracy better than 1e-13 on
// (0, 171); rejects non-positive arguments.
double gamma_fn(double x);

// Regularized upper incomplete gamma Q(a, x).  Series for x < a+1,
// continued fraction otherwise.
double regularized_gamma_upper(double a, double x);

// One-parameter Mittag-Leffler function at a non-positive argument,
// E_alpha(-x).  Power series with a cancellation guard below the switch
// point, Lamperti-mixture quadrature above (and whenever the series would
// lose more than the guard allows).
double mittag_leffler_neg(double alpha, double x);

// S(t) = E_alpha(-lambda t^alpha); exp(-lambda t) for alpha = 1.
double ml_survival(const MLParams& p, double t);

// Density of the Lamperti law: sin(pi a)/pi * lam s^{a-1} /
// (s^{2a} + 2 lam s^a cos(pi a) + lam^2), s > 0.
double lamperti_density(double alpha, double lambda, double s);

// Closed arctan form of the Lamperti distribution function and its inverse.
double lamperti_cdf(double alpha, double lambda, double s);
double lamperti_quantile(double alpha, double lambda, double p);

// Levy density of the alpha-stable subordinator, mu(tau) = a tau^{-a-1} / Gamma(1-a).
double stable_levy_density(double alpha, double tau);

// Tail of that Levy measure, Obar(t) = t^{-a} / Gamma(1-a).
double stable_levy_tail(double alpha, double t);

// Completely monotone representer of mu: mu(t) = int e^{-t z} kappa(z) dz
// with kappa(z) = sin(pi a)/pi * z^a.
double kappa_density(double alpha, double z);

// int_0^inf e^{-s t} nu(ds) for the spec's mixing measure.  Exact finite sum
// for atoms, log-substituted adaptive Simpson for the Lamperti law.
double survival_from_mixture(const SurvivalSpec& spec, double t);

// Same integral at a complex argument with Re w >= 0 (used for spectral
// checks of mixture semigroups).
std::complex<double> mixture_laplace(const SurvivalSpec& spec,
                                     std::complex<double> w);

// Distribution function of the one-sided stable law with
// E e^{-eta S} = e^{-eta^alpha}.  Convergent tail series for moderate and
// large s; an integral representation (deterministic quadrature over the
// Kanter angle) takes over when the series would cancel catastrophically.
double positive_stable_cdf(double alpha, double s);

// Truncation interval [s_lo, s_hi] outside which the Lamperti measure has
// mass below tail_tol.
struct TruncationInterval {
  double lo;
  double hi;
};
TruncationInterval lamperti_truncation(double alpha, double lambda,
                                       double tail_tol);

// Integrate a scalar function against the Lamperti measure on the truncated
// support, adaptively in log coordinates.
template <class F>
double integrate_lamperti(double alpha, double lambda, F&& f,
                          const QuadratureBudget& budget);

}  // namespace paramarkov

#include "paramarkov/detail/specfun_inl.hpp"

#endif
