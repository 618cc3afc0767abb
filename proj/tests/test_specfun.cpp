#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "paramarkov/quadrature.hpp"
#include "paramarkov/specfun.hpp"

using namespace paramarkov;

TEST_CASE("mittag-leffler against the frozen high-precision table") {
  for (const auto& e : oracles::ml_table()) {
    const double got = mittag_leffler_neg(e.alpha, e.x);
    CHECK(std::fabs(got - e.value) / e.value < 1e-9);
  }
}

TEST_CASE("mittag-leffler special values and domain") {
  CHECK(mittag_leffler_neg(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
  CHECK(mittag_leffler_neg(0.7, 0.0) == 1.0);
  CHECK(mittag_leffler_neg(0.5, 1.0) ==
        doctest::Approx(oracles::kMlHalfAtOne).epsilon(1e-11));
  CHECK_THROWS_AS(mittag_leffler_neg(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler_neg(1.2, 1.0), std::domain_error);
  CHECK_THROWS_AS(mittag_leffler_neg(0.5, -0.1), std::domain_error);
}

TEST_CASE("ml survival") {
  CHECK(ml_survival({1.0, 2.0}, 1.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(ml_survival({0.5, 1.0}, 1.0) ==
        doctest::Approx(oracles::kMlHalfAtOne).epsilon(1e-11));
  CHECK(ml_survival({0.5, 1.0}, 2.0) ==
        doctest::Approx(oracles::kMlHalfAtRoot2).epsilon(1e-11));
  CHECK(ml_survival({0.3, 2.0}, 0.0) == 1.0);
  CHECK_THROWS_AS(ml_survival({0.5, 1.0}, -1.0), std::domain_error);

  // monotone in t
  double prev = 1.0;
  for (int k = 1; k <= 80; ++k) {
    const double cur = ml_survival({0.7, 1.3}, 0.25 * k);
    CHECK(cur <= prev + 1e-14);
    prev = cur;
  }
}

TEST_CASE("lamperti density value, domain, normalization, scaling") {
  CHECK(lamperti_density(0.5, 1.0, 1.0) ==
        doctest::Approx(oracles::kInvTwoPi).epsilon(1e-13));
  CHECK_THROWS_AS(lamperti_density(0.5, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(lamperti_density(0.5, 1.0, -1.0), std::domain_error);

  // unit mass, log-substituted quadrature with the tail bounds
  for (double alpha : {0.4, 0.6, 0.85}) {
    const auto tr = lamperti_truncation(alpha, 1.0, 1e-11);
    const double mass = adaptive_simpson(
        [&](double u) {
          const double s = std::exp(u);
          return lamperti_density(alpha, 1.0, s) * s;
        },
        std::log(tr.lo), std::log(tr.hi), 1e-11, 400000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  }

  // L_lambda = lambda^{1/alpha} L_1 pointwise on densities
  const double alpha = 0.5, lambda = 4.0, c = std::pow(lambda, 1.0 / alpha);
  for (double s : {0.1, 0.5, 1.0, 3.0, 10.0})
    CHECK(lamperti_density(alpha, lambda, s) ==
          doctest::Approx(lamperti_density(alpha, 1.0, s / c) / c)
              .epsilon(1e-12));
}

TEST_CASE("lamperti cdf matches the quadrature table and inverts") {
  for (const auto& e : oracles::lamperti_cdf_table_06())
    CHECK(lamperti_cdf(0.6, 1.0, e.s) ==
          doctest::Approx(e.value).epsilon(1e-12));
  // median at s = 1 for every alpha when lambda = 1
  for (double a : {0.3, 0.5, 0.8})
    CHECK(lamperti_cdf(a, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  for (double p : {0.05, 0.3, 0.5, 0.9})
    CHECK(lamperti_cdf(0.6, 2.0, lamperti_quantile(0.6, 2.0, p)) ==
          doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("survival from mixture") {
  SurvivalSpec point{PointMassMixing{3.0}, {}};
  CHECK(survival_from_mixture(point, 1.0) == doctest::Approx(std::exp(-3.0)));

  SurvivalSpec atoms{DiscreteAtomsMixing{{{1.0, 0.5}, {2.0, 0.5}}}, {}};
  CHECK(survival_from_mixture(atoms, 1.0) ==
        doctest::Approx(0.5 * std::exp(-1.0) + 0.5 * std::exp(-2.0))
            .epsilon(1e-14));

  SurvivalSpec lam{LampertiMixing{0.5, 1.0}, {}};
  CHECK(survival_from_mixture(lam, 0.0) == 1.0);
  for (int k = 1; k <= 40; ++k) {
    const double t = 0.5 * k;
    CHECK(std::fabs(survival_from_mixture(lam, t) -
                    ml_survival({0.5, 1.0}, t)) < 1e-7);
  }
  CHECK_THROWS_AS(survival_from_mixture(lam, -1.0), std::domain_error);

  DiscreteAtomsMixing bad{{{1.0, 0.6}, {2.0, 0.6}}};
  CHECK_THROWS_AS(validate(MixingMeasure{bad}), std::domain_error);
}

TEST_CASE("alpha = 1 reduces every survival route to the exponential") {
  for (double t : {0.1, 1.0, 3.0}) {
    CHECK(std::fabs(ml_survival({1.0, 2.0}, t) - std::exp(-2.0 * t)) < 1e-10);
    SurvivalSpec point{PointMassMixing{2.0}, {}};
    CHECK(std::fabs(survival_from_mixture(point, t) - std::exp(-2.0 * t)) <
          1e-10);
  }
}

TEST_CASE("stable levy density and tail") {
  CHECK(stable_levy_density(0.5, 1.0) ==
        doctest::Approx(oracles::kHalfOverRootPi).epsilon(1e-13));
  CHECK_THROWS_AS(stable_levy_density(0.5, 0.0), std::domain_error);
  // tail of the Levy measure from the closed antiderivative
  CHECK(stable_levy_tail(0.5, 1.0) ==
        doctest::Approx(1.0 / std::tgamma(0.5)).epsilon(1e-13));
  // homogeneity of degree -(1+alpha)
  for (double c : {0.5, 2.0, 7.0})
    CHECK(stable_levy_density(0.7, c * 1.3) * std::pow(c, 1.7) ==
          doctest::Approx(stable_levy_density(0.7, 1.3)).epsilon(1e-12));
}

TEST_CASE("kappa density and its Laplace transform") {
  CHECK(kappa_density(0.5, 1.0) ==
        doctest::Approx(oracles::kInvPi).epsilon(1e-13));
  CHECK_THROWS_AS(kappa_density(0.5, -0.5), std::domain_error);
  // int_0^inf e^{-t z} kappa(z) dz = mu(t), integrated in log coordinates
  // so the quadrature resolves the z ~ 1/t mass
  for (double t : {0.5, 1.0, 2.0}) {
    const double got = adaptive_simpson(
        [&](double u) {
          const double z = std::exp(u);
          return std::exp(-t * z) * kappa_density(0.5, z) * z;
        },
        std::log(1e-9), std::log(80.0 / t), 1e-11, 400000);
    CHECK(std::fabs(got - stable_levy_density(0.5, t)) < 1e-8);
  }
}

TEST_CASE("positive stable cdf: closed form, frozen table, deep tail") {
  for (double s : {0.25, 0.5, 1.0, 2.0, 4.0, 10.0})
    CHECK(positive_stable_cdf(0.5, s) ==
          doctest::Approx(oracles::stable_cdf_half(s)).epsilon(1e-12));
  for (const auto& e : oracles::stable_cdf_table_06())
    CHECK(positive_stable_cdf(0.6, e.s) ==
          doctest::Approx(e.value).epsilon(1e-11));
  // the quadrature fallback fires deep in the left tail, where the law is
  // essentially zero
  const double deep = positive_stable_cdf(0.5, 0.005);
  CHECK(deep >= 0.0);
  CHECK(deep <= 1e-10);
  CHECK(positive_stable_cdf(0.6, 0.0) == 0.0);
}

TEST_CASE("gamma and incomplete gamma") {
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_fn(10.0) == doctest::Approx(362880.0).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_fn(-1.5), std::domain_error);
  for (const auto& e : oracles::chi2_sf_table())
    CHECK(regularized_gamma_upper(0.5 * e.dof, 0.5 * e.x) ==
          doctest::Approx(e.value).epsilon(1e-12));
}

TEST_CASE("mixture laplace at complex arguments") {
  SurvivalSpec lam{LampertiMixing{0.5, 1.0}, {}};
  // real axis agrees with the survival function
  for (double t : {0.5, 1.0, 2.0})
    CHECK(mixture_laplace(lam, {t, 0.0}).real() ==
          doctest::Approx(survival_from_mixture(lam, t)).epsilon(1e-9));
  // conjugate symmetry
  const auto v = mixture_laplace(lam, {1.0, 0.7});
  const auto vc = mixture_laplace(lam, {1.0, -0.7});
  CHECK(v.real() == doctest::Approx(vc.real()).epsilon(1e-12));
  CHECK(v.imag() == doctest::Approx(-vc.imag()).epsilon(1e-12));
  CHECK_THROWS_AS(mixture_laplace(lam, {-0.1, 0.0}), std::domain_error);
}

TEST_CASE("adaptive quadrature reports budget exhaustion") {
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sin(200.0 * x) /
                                                         (1e-4 + x * x); },
                                   0.0, 10.0, 1e-14, 40),
                  QuadratureError);
  try {
    adaptive_simpson([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0,
                     1e-14, 40);
  } catch (const QuadratureError& e) {
    CHECK(e.achieved_tolerance >= 0.0);
  }
}

TEST_CASE("gauss-laguerre rule integrates moments exactly") {
  for (double alf : {0.3, 0.5, 0.9}) {
    const auto rule = gauss_laguerre(48, alf);
    double m0 = 0.0, m1 = 0.0, lap = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      m0 += rule.weights[i];
      m1 += rule.weights[i] * rule.nodes[i];
      lap += rule.weights[i] * std::exp(-1.5 * rule.nodes[i]);
    }
    CHECK(m0 == doctest::Approx(std::tgamma(1.0 + alf)).epsilon(1e-12));
    CHECK(m1 == doctest::Approx(std::tgamma(2.0 + alf)).epsilon(1e-12));
    // int z^alf e^{-(1+1.5) z} dz = Gamma(1+alf) / 2.5^{1+alf}
    CHECK(lap == doctest::Approx(std::tgamma(1.0 + alf) /
                                 std::pow(2.5, 1.0 + alf))
                     .epsilon(1e-10));
  }
}
