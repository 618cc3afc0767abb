#include "paramarkov/limits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "paramarkov/quadrature.hpp"

namespace paramarkov {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kUniformHalfWidth = 1.7320508075688772;  // sqrt(3)

}  // namespace

void TimeGrid::validate() const {
  if (times.empty()) throw std::domain_error("TimeGrid: empty");
  double prev = 0.0;
  for (double t : times) {
    if (!(t > prev))
      throw std::domain_error("TimeGrid: times must be strictly increasing "
                              "and positive");
    prev = t;
  }
}

Matrix build_cov_matrix(const TimeGrid& grid) {
  grid.validate();
  const int k = grid.size();
  Matrix q(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      q(i, j) = std::min(grid.times[i], grid.times[j]);
  return q;
}

double anomalous_charfn(const SurvivalSpec& spec, const TimeGrid& grid,
                        const std::vector<double>& xi) {
  grid.validate();
  if ((int)xi.size() != grid.size())
    throw std::domain_error("anomalous_charfn: dimension mismatch");
  const Matrix q = build_cov_matrix(grid);
  double quad = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    for (int j = 0; j < grid.size(); ++j) quad += xi[i] * q(i, j) * xi[j];
  return survival_from_mixture(spec, 0.5 * quad);
}

std::vector<double> simulate_anomalous_diffusion(const SurvivalSpec& spec,
                                                 const TimeGrid& grid,
                                                 RngStream& rng) {
  grid.validate();
  const double l = sample_mixing_rate(spec.mixing, rng);
  std::vector<double> z(grid.size());
  double pos = 0.0, prev = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double dt = grid.times[i] - prev;
    pos += std::sqrt(l * dt) * rng.normal();
    z[i] = pos;
    prev = grid.times[i];
  }
  return z;
}

double anomalous_density(const SurvivalSpec& spec, const TimeGrid& grid,
                         const std::vector<double>& x) {
  grid.validate();
  const int k = grid.size();
  if ((int)x.size() != k)
    throw std::domain_error("anomalous_density: dimension mismatch");
  const Matrix q = build_cov_matrix(grid);
  Matrix chol(0, 0);
  try {
    chol = cholesky(q);
  } catch (const std::domain_error&) {
    throw std::domain_error("anomalous_density: singular covariance");
  }
  double logdet = 0.0;
  for (int i = 0; i < k; ++i) logdet += 2.0 * std::log(chol(i, i));
  const auto qinv_x = cholesky_solve(chol, x);
  double maha = 0.0;
  for (int i = 0; i < k; ++i) maha += x[i] * qinv_x[i];

  auto gauss = [&](double s) {
    return std::exp(-0.5 * maha / s - 0.5 * k * std::log(2.0 * kPi * s) -
                    0.5 * logdet);
  };
  if (const auto* pm = std::get_if<PointMassMixing>(&spec.mixing))
    return gauss(pm->lambda);
  if (const auto* da = std::get_if<DiscreteAtomsMixing>(&spec.mixing)) {
    double acc = 0.0;
    for (const auto& a : da->atoms)
      if (a.location > 0.0) acc += a.weight * gauss(a.location);
    return acc;
  }
  const auto& m = std::get<LampertiMixing>(spec.mixing);
  TruncationInterval tr =
      lamperti_truncation(m.alpha, m.lambda, spec.budget.tail_tol);
  if (maha > 0.0) {
    // the Gaussian factor cuts the small-s region off at s ~ maha/120
    tr.lo = std::max(tr.lo, 0.5 * maha / 120.0);
  } else if (k >= 1 && m.alpha <= 0.5 * k) {
    // mixture of peaks N(0, sQ) at x = 0 with a heavy small-s component:
    // the integral diverges
    return std::numeric_limits<double>::infinity();
  }
  auto f = [&](double u) {
    const double s = std::exp(u);
    return gauss(s) * lamperti_density(m.alpha, m.lambda, s) * s;
  };
  return adaptive_simpson(f, std::log(tr.lo), std::log(tr.hi),
                          spec.budget.tol, spec.budget.max_evals);
}

double sample_jump_sum(JumpLaw law, long long m, RngStream& rng) {
  if (m < 0) throw std::domain_error("sample_jump_sum: negative count");
  if (m == 0) return 0.0;
  switch (law) {
    case JumpLaw::Rademacher:
      return double(2 * sample_binomial(m, 0.5, rng) - m);
    case JumpLaw::StandardNormal:
      return std::sqrt(double(m)) * rng.normal();
    case JumpLaw::CenteredUniform: {
      double s = 0.0;
      for (long long i = 0; i < m; ++i)
        s += kUniformHalfWidth * (2.0 * rng.uniform01() - 1.0);
      return s;
    }
  }
  throw std::domain_error("sample_jump_sum: unknown law");
}

std::vector<double> simulate_ctrw(JumpLaw law, const SurvivalSpec& spec,
                                  double scale_n, const TimeGrid& grid,
                                  RngStream& rng) {
  grid.validate();
  if (!(scale_n >= 1.0)) throw std::domain_error("simulate_ctrw: n >= 1");
  const double l = sample_mixing_rate(spec.mixing, rng);
  const double root_n = std::sqrt(scale_n);
  std::vector<double> out(grid.size());
  double pos = 0.0, prev = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double dt = grid.times[i] - prev;
    const long long jumps = sample_poisson(l * scale_n * dt, rng);
    pos += sample_jump_sum(law, jumps, rng);
    out[i] = pos / root_n;
    prev = grid.times[i];
  }
  return out;
}

void SampleBlock::push(const std::vector<double>& row) {
  if (row.size() != dim)
    throw std::domain_error("SampleBlock: row dimension mismatch");
  data.insert(data.end(), row.begin(), row.end());
}

ECFEstimate ecf(const SampleBlock& samples, const std::vector<double>& xi) {
  const std::size_t n = samples.count();
  if (n < 2) throw std::domain_error("ecf: need at least two samples");
  if (xi.size() != samples.dim)
    throw std::domain_error("ecf: dimension mismatch");
  double re = 0.0, im = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double phase = 0.0;
    for (std::size_t c = 0; c < samples.dim; ++c)
      phase += xi[c] * samples.data[r * samples.dim + c];
    re += std::cos(phase);
    im += std::sin(phase);
  }
  const std::complex<double> mean(re / double(n), im / double(n));
  const double se =
      std::sqrt(std::max(0.0, 1.0 - std::norm(mean)) / double(n));
  return {mean, se, (long long)n};
}

std::vector<ConvergenceRow> convergence_report(
    const SurvivalSpec& spec, JumpLaw law, const TimeGrid& grid,
    const std::vector<std::vector<double>>& xi_grid,
    const std::vector<double>& n_list, long long paths,
    std::uint64_t master_seed, std::uint64_t stream_base) {
  grid.validate();
  std::vector<ConvergenceRow> rows;
  for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
    const double n = n_list[ni];
    RngStream rng(master_seed, stream_base + ni);
    SampleBlock block;
    block.dim = grid.size();
    block.data.reserve(paths * grid.size());
    for (long long p = 0; p < paths; ++p)
      block.push(simulate_ctrw(law, spec, n, grid, rng));
    for (const auto& xi : xi_grid) {
      const auto est = ecf(block, xi);
      const double target = anomalous_charfn(spec, grid, xi);
      ConvergenceRow row;
      row.n = n;
      row.xi = xi;
      row.ecf_value = est.value;
      row.se = est.se;
      row.target = target;
      row.abs_dev = std::abs(est.value - std::complex<double>(target, 0.0));
      row.bias_budget = 2.0 / std::sqrt(n);
      row.pass = row.abs_dev <= 3.0 * est.se + row.bias_budget;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace paramarkov
