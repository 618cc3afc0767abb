#include "paramarkov/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramarkov {
namespace {

constexpr double kPi = 3.14159265358979323846;

// Grunwald-Letnikov binomial weights (-1)^k C(alpha, k).
std::vector<double> gl_weights(double alpha, int count) {
  std::vector<double> g(count + 1);
  g[0] = 1.0;
  for (int k = 1; k <= count; ++k) g[k] = g[k - 1] * (k - 1 - alpha) / k;
  return g;
}

int grid_index(double t, double h, int m, const char* who) {
  const double k = t / h;
  const int ki = (int)std::llround(k);
  if (ki < 0 || ki > m || std::fabs(k - ki) > 1e-6)
    throw std::domain_error(std::string(who) + ": t is not a grid point");
  return ki;
}

}  // namespace

GridFunction::GridFunction(double step, std::vector<double> values)
    : h_(step), v_(std::move(values)) {
  if (!(h_ > 0.0) || v_.size() < 2)
    throw std::domain_error("GridFunction: need h > 0 and >= 2 points");
  for (double x : v_)
    if (!std::isfinite(x))
      throw std::domain_error("GridFunction: non-finite value");
}

int GridFunction::index_of(double t) const {
  return grid_index(t, h_, grid_count(), "GridFunction");
}

MatrixGridFunction::MatrixGridFunction(double step, std::vector<Matrix> values)
    : h_(step), v_(std::move(values)) {
  if (!(h_ > 0.0) || v_.size() < 2)
    throw std::domain_error("MatrixGridFunction: need h > 0 and >= 2 points");
}

int MatrixGridFunction::index_of(double t) const {
  return grid_index(t, h_, grid_count(), "MatrixGridFunction");
}

double generalized_caputo(double alpha, const GridFunction& f, double t) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("generalized_caputo: alpha must lie in (0, 1]");
  const int m = f.grid_count();
  const int k = f.index_of(t);
  if (k < 1)
    throw std::domain_error("generalized_caputo: insufficient history");
  const double h = f.step();
  if (alpha == 1.0) {
    // classical derivative
    if (k >= 2 && k + 2 <= m)
      return (f.value(k - 2) - 8.0 * f.value(k - 1) + 8.0 * f.value(k + 1) -
              f.value(k + 2)) /
             (12.0 * h);
    if (k >= 2)
      return (3.0 * f.value(k) - 4.0 * f.value(k - 1) + f.value(k - 2)) /
             (2.0 * h);
    return (f.value(k) - f.value(k - 1)) / h;
  }
  const double g1 = gamma_fn(1.0 - alpha);
  const double fk = f.value(k);
  // first panel: the difference vanishes linearly at tau = 0, so the
  // singular weight integrates in closed form
  double acc = (fk - f.value(k - 1)) / h * alpha / g1 *
               std::pow(h, 1.0 - alpha) / (1.0 - alpha);
  for (int j = 1; j < k; ++j) {
    const double a = j * h, b = (j + 1) * h;
    const double m0 = (std::pow(a, -alpha) - std::pow(b, -alpha)) / g1;
    const double m1 = alpha / g1 *
                          (std::pow(b, 1.0 - alpha) - std::pow(a, 1.0 - alpha)) /
                          (1.0 - alpha) -
                      a * m0;
    acc += (fk - f.value(k - j)) * m0 +
           (f.value(k - j) - f.value(k - j - 1)) / h * m1;
  }
  acc += (fk - f.initial()) * stable_levy_tail(alpha, t);
  return acc;
}

double gl_caputo(double alpha, const GridFunction& f, double t) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("gl_caputo: alpha must lie in (0, 1]");
  const int k = f.index_of(t);
  if (k < 1) throw std::domain_error("gl_caputo: insufficient history");
  const double h = f.step();
  if (alpha == 1.0) return (f.value(k) - f.value(k - 1)) / h;
  const auto g = gl_weights(alpha, k);
  const double f0 = f.initial();
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) acc += g[j] * (f.value(k - j) - f0);
  return acc * std::pow(h, -alpha);
}

double eigenfunction_residual(const MLParams& p, double t_lo, double t_hi,
                              double h) {
  p.validate();
  if (!(0.0 < t_lo && t_lo < t_hi) || !(h > 0.0))
    throw std::domain_error("eigenfunction_residual: bad grid");
  const int m = (int)std::llround(t_hi / h);
  if (p.alpha == 1.0) {
    double worst = 0.0;
    for (int k = 2; k + 2 <= m; ++k) {
      const double t = k * h;
      if (t < t_lo) continue;
      auto S = [&](double u) { return std::exp(-p.lambda * u); };
      const double d = (S(t - 2 * h) - 8.0 * S(t - h) + 8.0 * S(t + h) -
                        S(t + 2 * h)) /
                       (12.0 * h);
      worst = std::max(worst, std::fabs(d + p.lambda * S(t)));
    }
    return worst;
  }
  GridFunction f = GridFunction::tabulate(
      h, m, [&](double t) { return ml_survival(p, t); });
  const auto g = gl_weights(p.alpha, m);
  const double hpow = std::pow(h, -p.alpha);
  double worst = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double t = k * h;
    if (t < t_lo - 1e-12) continue;
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += g[j] * (f.value(k - j) - 1.0);
    const double res = acc * hpow + p.lambda * f.value(k);
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

void PmfVector::validate() const {
  if (probs.empty()) throw std::domain_error("PmfVector: empty");
  double s = 0.0;
  for (double p : probs) {
    if (p < -1e-9) throw std::domain_error("PmfVector: negative entry");
    s += p;
  }
  if (s > 1.0 + 1e-9 || s < 1.0 - trunc_mass_bound - 1e-9)
    throw std::domain_error("PmfVector: mass outside [1 - trunc, 1]");
}

std::vector<double> resolvent_prefix(const PmfVector& p) {
  p.validate();
  std::vector<double> out(p.probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < p.probs.size(); ++i) {
    acc += p.probs[i];
    out[i] = acc;
  }
  return out;
}

std::vector<double> fractional_lag_apply(double alpha,
                                         const std::vector<double>& p) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("fractional_lag_apply: alpha must lie in (0, 1]");
  const int n = (int)p.size();
  const auto b = gl_weights(alpha, n - 1);
  std::vector<double> out(n, 0.0);
  for (int x = 0; x < n; ++x)
    for (int k = 0; k <= x; ++k) out[x] += b[k] * p[x - k];
  return out;
}

std::vector<double> fractional_lag_power(double alpha, double lambda_pow,
                                         const PmfVector& p) {
  p.validate();
  if (p.trunc_mass_bound >= 1e-10)
    throw std::domain_error(
        "fractional_lag_power: pmf truncation mass bound above 1e-10");
  auto out = fractional_lag_apply(alpha, p.probs);
  for (double& v : out) v *= -lambda_pow;
  return out;
}

double fcaa_residual(const MLParams& p, double t, double h, int kmax) {
  p.validate();
  if (!(t > 0.0) || !(h > 0.0) || kmax < 0)
    throw std::domain_error("fcaa_residual: bad arguments");
  const int m = (int)std::llround(t / h);
  if (std::fabs(m * h - t) > 1e-9 || m < 1)
    throw std::domain_error("fcaa_residual: t must sit on the grid");

  if (p.alpha == 1.0) {
    // classical master equation d/dt p = -lambda (I - B) p with the exact
    // Poisson pmf; five-point stencil for the time derivative
    auto pmf = [&](double s) {
      SurvivalSpec spec{PointMassMixing{p.lambda}, {}};
      return mixture_poisson_pmf(spec, s, kmax);
    };
    const auto pc = pmf(t);
    const auto pm1 = pmf(t - h), pp1 = pmf(t + h);
    const auto pm2 = pmf(t - 2 * h), pp2 = pmf(t + 2 * h);
    double worst = 0.0;
    for (int x = 0; x <= kmax; ++x) {
      const double d =
          (pm2[x] - 8.0 * pm1[x] + 8.0 * pp1[x] - pp2[x]) / (12.0 * h);
      const double rhs = -p.lambda * (pc[x] - (x > 0 ? pc[x - 1] : 0.0));
      worst = std::max(worst, std::fabs(d - rhs));
    }
    return worst;
  }

  SurvivalSpec spec{LampertiMixing{p.alpha, p.lambda}, {}};
  // pmf history on the grid
  std::vector<std::vector<double>> path(m + 1);
  for (int k = 0; k <= m; ++k) path[k] = mixture_poisson_pmf(spec, k * h, kmax);
  const auto g = gl_weights(p.alpha, m);
  const double hpow = std::pow(h, -p.alpha);
  const auto lag = fractional_lag_apply(p.alpha, path[m]);
  const double scale = std::pow(p.lambda, p.alpha);
  double worst = 0.0;
  for (int x = 0; x <= kmax; ++x) {
    const double p0 = (x == 0) ? 1.0 : 0.0;
    double acc = 0.0;
    for (int j = 0; j <= m; ++j) acc += g[j] * (path[m - j][x] - p0);
    const double res = acc * hpow + scale * lag[x];
    worst = std::max(worst, std::fabs(res));
  }
  return worst;
}

MatrixNonlocalOperator::MatrixNonlocalOperator(double alpha, Matrix generator,
                                               int laguerre_nodes)
    : alpha_(alpha), g_(std::move(generator)) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error(
        "MatrixNonlocalOperator: alpha must lie in (0, 1)");
  if (g_.rows() != g_.cols())
    throw std::domain_error("MatrixNonlocalOperator: square generator only");
  const std::size_t n = g_.rows();
  double rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double off = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (g_(i, j) < -1e-12)
        throw std::domain_error(
            "MatrixNonlocalOperator: negative off-diagonal entry");
      off += g_(i, j);
    }
    // conservative rows sum to 0; killed states may leak mass (sum < 0)
    if (off + g_(i, i) > 1e-9)
      throw std::domain_error(
          "MatrixNonlocalOperator: row sums must be non-positive");
    rate = std::max(rate, -g_(i, i));
  }
  if (!(rate > 0.0))
    throw std::domain_error("MatrixNonlocalOperator: zero generator");

  // M_alpha = sin(pi a)/pi int_0^inf G e^{G w} w^a dw via generalized
  // Gauss-Laguerre: with P = G/rate + I, the integrand is
  // G e^{(rate w)(P - I)} and the weight absorbs e^{-w} w^a.
  Matrix p = g_ * (1.0 / rate) + Matrix::identity(n);
  const auto rule = gauss_laguerre(laguerre_nodes, alpha);
  Matrix acc(n, n);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double z = rule.nodes[i];
    // e^{G z} e^{z} = e^{z (1 - rate)} e^{rate z P}; keep it as
    // e^{G z} * e^{z} computed stably through uniformization of e^{Gz}
    Matrix egz = expm_uniformized(p, rate * z);
    acc.axpy(rule.weights[i] * std::exp(z), g_ * egz);
  }
  m_alpha_ = acc * (std::sin(kPi * alpha) / kPi);
}

Matrix MatrixNonlocalOperator::apply(const MatrixGridFunction& u,
                                     double t) const {
  const int k = u.index_of(t);
  if (k < 1)
    throw std::domain_error("MatrixNonlocalOperator: insufficient history");
  const double h = u.step();
  const double a = alpha_;
  const std::size_t n = g_.rows();
  const Matrix& uk = u.value(k);

  Matrix inner(n, n);
  // first panel: the difference is linear through zero, and
  // (1/h) int_0^h tau tau^{-1-a} dtau = h^{-a} / (1-a)
  inner.axpy(std::pow(h, -a) / (1.0 - a), uk - u.value(k - 1));
  for (int j = 1; j < k; ++j) {
    const double lo = j * h, hi = (j + 1) * h;
    const double n0 = (std::pow(lo, -a) - std::pow(hi, -a)) / a;
    const double n1 =
        (std::pow(hi, 1.0 - a) - std::pow(lo, 1.0 - a)) / (1.0 - a) - lo * n0;
    inner.axpy(n0, uk - u.value(k - j));
    inner.axpy(n1 / h, u.value(k - j) - u.value(k - j - 1));
  }
  // zero history extension plus the explicit initial-datum tail combine to
  // the Marchaud form: tail weight acts on u(t) - u(0)
  inner.axpy(std::pow(t, -a) / a, uk - u.initial());
  return (m_alpha_ * inner) * -1.0;
}

Matrix matrix_nonlocal_apply(double alpha, const Matrix& generator,
                             const MatrixGridFunction& u, double t) {
  return MatrixNonlocalOperator(alpha, generator).apply(u, t);
}

GoverningReport governing_residual(const TransitionMatrix& p,
                                   const SurvivalSpec& spec, double t_lo,
                                   double t_hi, double h) {
  validate(spec.mixing);
  if (!(0.0 < t_lo && t_lo < t_hi) || !(h > 0.0))
    throw std::domain_error("governing_residual: bad grid");
  const int m = (int)std::llround(t_hi / h) + 2;  // stencil headroom

  if (const auto* pm = std::get_if<PointMassMixing>(&spec.mixing)) {
    const double lam = pm->lambda;
    const auto path = para_transition_path(p, spec, h, m);
    const Matrix g = p.matrix() - Matrix::identity(p.states());
    double worst = 0.0;
    for (int k = 2; k + 2 <= m; ++k) {
      if (k * h < t_lo || k * h > t_hi + 1e-12) continue;
      Matrix d = path[k - 2] * (1.0 / (12.0 * h));
      d.axpy(-8.0 / (12.0 * h), path[k - 1]);
      d.axpy(8.0 / (12.0 * h), path[k + 1]);
      d.axpy(-1.0 / (12.0 * h), path[k + 2]);
      const Matrix r = d - (g * path[k]) * lam;
      worst = std::max(worst, r.inf_norm());
    }
    return {worst, worst};
  }

  const auto* lm = std::get_if<LampertiMixing>(&spec.mixing);
  if (lm == nullptr)
    throw std::domain_error(
        "governing_residual: stable-family (Lamperti) or point mixing only");
  const double lam = lm->lambda;
  const auto path = para_transition_path(p, spec, h, m);
  MatrixGridFunction u(h, path);
  const Matrix g = p.matrix() - Matrix::identity(p.states());
  const MatrixNonlocalOperator op(lm->alpha, g);
  const Matrix stationary = markov_limit(p.matrix()) * lam;
  double worst = 0.0, worst_centered = 0.0;
  for (int k = 1; k <= m; ++k) {
    const double t = k * h;
    if (t < t_lo - 1e-12 || t > t_hi + 1e-12) continue;
    Matrix r = op.apply(u, t);
    r.axpy(lam, u.value(k));
    worst = std::max(worst, r.inf_norm());
    worst_centered = std::max(worst_centered, (r - stationary).inf_norm());
  }
  return {worst, worst_centered};
}

}  // namespace paramarkov
