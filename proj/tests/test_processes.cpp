#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "paramarkov/processes.hpp"
#include "paramarkov/stats.hpp"

using namespace paramarkov;

namespace {

constexpr std::uint64_t kSeed = 442211;

TransitionMatrix flip2() {
  Matrix p(2, 2);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  return TransitionMatrix(p);
}

TransitionMatrix chain3() {
  Matrix p(3, 3);
  const double rows[3][3] = {
      {0.2, 0.5, 0.3}, {0.4, 0.1, 0.5}, {0.25, 0.35, 0.4}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) p(i, j) = rows[i][j];
  return TransitionMatrix(p);
}

}  // namespace

TEST_CASE("transition and generator validation") {
  Matrix bad(2, 2);
  bad(0, 0) = 0.5;
  bad(0, 1) = 0.6;
  bad(1, 0) = 1.0;
  CHECK_THROWS_AS(TransitionMatrix{bad}, std::domain_error);
  const auto g = GeneratorMatrix::from_transition(flip2(), 2.0);
  CHECK(g.matrix()(0, 0) == doctest::Approx(-2.0));
  CHECK(g.matrix()(0, 1) == doctest::Approx(2.0));
  Matrix notgen(2, 2);
  notgen(0, 0) = -1.0;
  notgen(0, 1) = 0.5;
  notgen(1, 0) = 1.0;
  notgen(1, 1) = -1.0;
  CHECK_THROWS_AS(GeneratorMatrix(notgen, 1.0), std::domain_error);
}

TEST_CASE("jump path bookkeeping") {
  JumpPath p;
  p.epochs = {0.5, 1.25};
  p.states = {0, 1, 2};
  p.horizon = 2.0;
  p.validate();
  CHECK(p.state_at(0.0) == 0);
  CHECK(p.state_at(0.5) == 1);  // right-continuous at the epoch
  CHECK(p.state_at(1.9) == 2);
  p.states.pop_back();
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("poisson path statistics") {
  RngStream rng(kSeed, 0);
  const int n = 100000;
  double mean = 0.0, m2 = 0.0;
  long long zeros = 0;
  for (int i = 0; i < n; ++i) {
    const auto path = simulate_poisson(3.0, 1.0, rng);
    const double c = double(path.epochs.size());
    mean += c;
    m2 += c * c;
    if (c == 0) ++zeros;
  }
  mean /= n;
  const double var = m2 / n - mean * mean;
  CHECK(std::fabs(mean - 3.0) < 3.0 * std::sqrt(3.0 / n));
  CHECK(var == doctest::Approx(3.0).epsilon(0.05));
  CHECK(double(zeros) / n ==
        doctest::Approx(std::exp(-3.0)).epsilon(0.1));
}

TEST_CASE("para counting process marginals and Schur dependence") {
  SurvivalSpec spec{LampertiMixing{0.7, 1.0}, {}};
  RngStream rng(kSeed, 1);
  const int n = 20000;
  long long zero = 0;
  for (int i = 0; i < n; ++i) {
    const auto path = simulate_para_markov_counting(spec, 1.0, rng);
    if (path.epochs.empty() && !path.truncated) ++zero;
  }
  const double frac = double(zero) / n;
  const double target = survival_from_mixture(spec, 1.0);
  CHECK(std::fabs(frac - target) <
        3.0 * std::sqrt(target * (1.0 - target) / n) + 1e-3);

  // counting pmf against the mixture-Poisson quadrature
  SurvivalSpec spec05{LampertiMixing{0.5, 1.0}, {}};
  RngStream rng2(kSeed, 2);
  const int kmax = 12;
  std::vector<long long> counts(kmax + 2, 0);
  for (int i = 0; i < 100000; ++i)
    ++counts[std::min<long long>(sample_para_count(spec05, 1.0, rng2),
                                 kmax + 1)];
  auto pmf = mixture_poisson_pmf(spec05, 1.0, kmax);
  double head = 0.0;
  for (double p : pmf) head += p;
  pmf.push_back(1.0 - head);
  CHECK(chi_square_pmf(counts, pmf, 5.0).pass);

  // PointMass mixing is indistinguishable from the Poisson path law
  SurvivalSpec pt{PointMassMixing{3.0}, {}};
  RngStream rng3(kSeed, 3);
  std::vector<long long> pcounts(16, 0);
  for (int i = 0; i < 50000; ++i) {
    const auto path = simulate_para_markov_counting(pt, 1.0, rng3);
    ++pcounts[std::min<std::size_t>(path.epochs.size(), 15)];
  }
  auto ppmf = mixture_poisson_pmf(pt, 1.0, 14);
  double phead = 0.0;
  for (double p : ppmf) phead += p;
  ppmf.push_back(1.0 - phead);
  CHECK(chi_square_pmf(pcounts, ppmf, 5.0).pass);
}

TEST_CASE("fractional poisson renewal law and the dependence contrast") {
  // first waiting time per path; retaining only times that complete before
  // the horizon conditions the law, so the comparison target is the
  // truncated distribution F(t) / F(T)
  const MLParams p{0.7, 1.0};
  const double horizon = 3.0;
  RngStream rng(kSeed, 4);
  std::vector<double> waits;
  for (int i = 0; i < 60000; ++i) {
    const auto path = simulate_fractional_poisson(p, horizon, rng);
    if (!path.epochs.empty()) waits.push_back(path.epochs.front());
  }
  REQUIRE(waits.size() > 10000);
  const double f_at_horizon = 1.0 - ml_survival(p, horizon);
  const auto rep = ks_test(std::move(waits), [&](double t) {
    return (1.0 - ml_survival(p, t)) / f_at_horizon;
  });
  CHECK(rep.pass);

  // joint survival at (1,1): S(1)^2 for the renewal case vs S(2) for the
  // para-Markov case
  SurvivalSpec spec{LampertiMixing{0.5, 1.0}, {}};
  const MLParams p05{0.5, 1.0};
  RngStream rng2(kSeed, 5);
  const int n = 100000;
  std::vector<std::vector<double>> para(n), renew(n);
  for (auto& v : para) v = sample_para_waiting_times(spec, 2, rng2);
  for (auto& v : renew)
    v = {sample_ml_waiting_time(p05, rng2), sample_ml_waiting_time(p05, rng2)};
  const auto ep = empirical_joint_survival(para, {1.0, 1.0});
  const auto er = empirical_joint_survival(renew, {1.0, 1.0});
  CHECK(std::fabs(ep.value - oracles::kMlHalfAtRoot2) < 3.0 * ep.se);
  CHECK(std::fabs(er.value - oracles::kMlHalfSquared) < 3.0 * er.se);
  CHECK(std::fabs(ep.value - er.value) >
        5.0 * std::sqrt(ep.se * ep.se + er.se * er.se));
}

TEST_CASE("ctmc against the two-state closed form") {
  RngStream rng(kSeed, 6);
  const auto p = flip2();
  const int n = 100000;
  long long at0 = 0;
  for (int i = 0; i < n; ++i)
    if (simulate_ctmc(p, 1.0, 0, 1.0, rng).states.back() == 0) ++at0;
  const double frac = double(at0) / n;
  const double target = 0.5 * (1.0 + std::exp(-2.0));
  CHECK(std::fabs(frac - target) < 3.0 * std::sqrt(0.25 / n));

  // identity chain never moves
  Matrix id = Matrix::identity(3);
  RngStream rng2(kSeed, 7);
  const auto path = simulate_ctmc(TransitionMatrix(id), 2.0, 1, 5.0, rng2);
  for (int s : path.states) CHECK(s == 1);
}

TEST_CASE("para chain keeps the embedded chain law") {
  const auto p = chain3();
  SurvivalSpec spec{LampertiMixing{0.7, 1.0}, {}};
  RngStream rng(kSeed, 8);
  long long trans[3][3] = {};
  for (int i = 0; i < 4000; ++i) {
    const auto path =
        simulate_para_markov_chain(p, spec, 0, 4.0, rng, 100000);
    for (std::size_t k = 0; k + 1 < path.states.size(); ++k)
      ++trans[path.states[k]][path.states[k + 1]];
  }
  // per-row multinomial chi-square against P
  double stat = 0.0;
  int cells = 0;
  for (int i = 0; i < 3; ++i) {
    long long row = trans[i][0] + trans[i][1] + trans[i][2];
    REQUIRE(row > 500);
    for (int j = 0; j < 3; ++j) {
      const double e = double(row) * p(i, j);
      stat += (trans[i][j] - e) * (trans[i][j] - e) / e;
      ++cells;
    }
  }
  const double pval = regularized_gamma_upper(0.5 * (cells - 3), 0.5 * stat);
  CHECK(pval > 0.01);
}

TEST_CASE("para transition matrix: markov case, eigen oracle, row sums") {
  const auto p2 = flip2();
  SurvivalSpec point{PointMassMixing{2.0}, {}};
  for (double t : {0.3, 1.0, 2.5}) {
    const auto u = para_transition_matrix(p2, point, t);
    CHECK(u(0, 0) ==
          doctest::Approx(0.5 * (1.0 + std::exp(-4.0 * t))).epsilon(1e-10));
  }
  CHECK(para_transition_matrix(p2, point, 0.0)(0, 0) == 1.0);

  SurvivalSpec lam{LampertiMixing{0.5, 1.0}, {}};
  const auto u1 = para_transition_matrix(p2, lam, 1.0);
  CHECK(u1(0, 0) ==
        doctest::Approx(0.5 * (1.0 + oracles::kMlHalfAtRoot2)).epsilon(1e-8));

  // 3-state law against the eigendecomposition route:
  // u(t) = V diag( L(-mu_j t) ) V^{-1} with L the mixture Laplace transform
  const auto p3 = chain3();
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = p3(i, j) - (i == j ? 1.0 : 0.0);
  Eigen::EigenSolver<Eigen::Matrix3d> es(g);
  const Eigen::Matrix3cd v = es.eigenvectors();
  const Eigen::Matrix3cd vinv = v.inverse();
  for (double t : {0.4, 1.0, 3.0}) {
    Eigen::Vector3cd d;
    for (int j = 0; j < 3; ++j)
      d(j) = mixture_laplace(lam, -es.eigenvalues()(j) * t);
    const Eigen::Matrix3cd expected = v * d.asDiagonal() * vinv;
    const auto got = para_transition_matrix(p3, lam, t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(std::fabs(got(i, j) - expected(i, j).real()) < 1e-6);
  }

  for (double t : {0.5, 2.0, 10.0, 100.0}) {
    const auto u = para_transition_matrix(p3, lam, t);
    for (double rs : u.row_sums()) CHECK(rs == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("tabulated transition path agrees with single-shot evaluation") {
  const auto p = chain3();
  SurvivalSpec lam{LampertiMixing{0.5, 1.0}, {}};
  const auto path = para_transition_path(p, lam, 0.25, 8);
  for (int k : {1, 4, 8}) {
    const auto direct = para_transition_matrix(p, lam, 0.25 * k);
    CHECK((path[k] - direct).max_abs() < 1e-9);
  }
}

TEST_CASE("schur joint survival") {
  SurvivalSpec lam{LampertiMixing{0.5, 1.0}, {}};
  CHECK(schur_joint_survival(lam, {1.0, 1.0}) ==
        doctest::Approx(oracles::kMlHalfAtRoot2).epsilon(1e-8));
  CHECK(schur_joint_survival(lam, {}) == 1.0);
  CHECK(schur_joint_survival(lam, {0.3, 0.9, 0.8}) ==
        doctest::Approx(schur_joint_survival(lam, {0.9, 0.8, 0.3}))
            .epsilon(1e-14));
  CHECK_THROWS_AS(schur_joint_survival(lam, {-1.0}), std::domain_error);
}

TEST_CASE("empirical joint survival") {
  CHECK_THROWS_AS(empirical_joint_survival({}, {1.0}), std::domain_error);
  CHECK_THROWS_AS(empirical_joint_survival({{1.0}}, {1.0, 2.0}),
                  std::domain_error);
  const std::vector<std::vector<double>> s = {{2.0, 2.0}, {0.5, 3.0}};
  const auto est = empirical_joint_survival(s, {});
  CHECK(est.value == 1.0);
  const auto est2 = empirical_joint_survival(s, {1.0, 1.0});
  CHECK(est2.value == doctest::Approx(0.5));
}

TEST_CASE("mixture nodes carry the full mass and reproduce the survival") {
  SurvivalSpec lam{LampertiMixing{0.6, 2.0}, {}};
  const auto nodes = mixture_nodes(lam.mixing, lam.budget, 2.0);
  double mass = 0.0, s1 = 0.0;
  for (const auto& [l, w] : nodes) {
    mass += w;
    s1 += w * std::exp(-l * 1.3);
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(s1 == doctest::Approx(survival_from_mixture(lam, 1.3)).epsilon(1e-9));
}
