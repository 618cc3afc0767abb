#include "paramarkov/processes.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramarkov {

TransitionMatrix::TransitionMatrix(Matrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols() || p_.rows() == 0)
    throw std::domain_error("TransitionMatrix: square, non-empty required");
  for (std::size_t i = 0; i < p_.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < p_.cols(); ++j) {
      if (p_(i, j) < 0.0 || p_(i, j) > 1.0)
        throw std::domain_error("TransitionMatrix: entries must be in [0,1]");
      s += p_(i, j);
    }
    if (std::fabs(s - 1.0) > 1e-12)
      throw std::domain_error("TransitionMatrix: rows must sum to 1");
  }
}

GeneratorMatrix::GeneratorMatrix(Matrix g, double uniformization_rate)
    : g_(std::move(g)), rate_(uniformization_rate) {
  if (g_.rows() != g_.cols())
    throw std::domain_error("GeneratorMatrix: square required");
  if (!(rate_ > 0.0))
    throw std::domain_error("GeneratorMatrix: rate must be positive");
  for (std::size_t i = 0; i < g_.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < g_.cols(); ++j) {
      if (i != j && g_(i, j) < 0.0)
        throw std::domain_error(
            "GeneratorMatrix: off-diagonal entries must be >= 0");
      s += g_(i, j);
    }
    if (std::fabs(s) > 1e-12)
      throw std::domain_error("GeneratorMatrix: rows must sum to 0");
  }
}

GeneratorMatrix GeneratorMatrix::from_transition(const TransitionMatrix& p,
                                                 double rate) {
  const std::size_t n = p.states();
  Matrix g = (p.matrix() - Matrix::identity(n)) * rate;
  return GeneratorMatrix(std::move(g), rate);
}

int JumpPath::state_at(double t) const {
  if (t < 0.0) throw std::domain_error("JumpPath: negative time");
  std::size_t k =
      std::upper_bound(epochs.begin(), epochs.end(), t) - epochs.begin();
  return states[k];
}

void JumpPath::validate() const {
  if (states.size() != epochs.size() + 1)
    throw std::domain_error("JumpPath: need one more state than epochs");
  double prev = 0.0;
  for (double e : epochs) {
    if (!(e > prev)) throw std::domain_error("JumpPath: epochs not increasing");
    prev = e;
  }
  if (!truncated && !epochs.empty() && epochs.back() > horizon)
    throw std::domain_error("JumpPath: epoch beyond horizon");
}

namespace {

// Shared renewal-path builder: next_wait() supplies each waiting time,
// next_state(k) the state after the k-th jump.
template <class Wait, class State>
JumpPath build_path(double horizon, Wait&& next_wait, State&& next_state,
                    int initial, long long max_events) {
  if (!(horizon > 0.0)) throw std::domain_error("simulate: horizon <= 0");
  JumpPath path;
  path.horizon = horizon;
  path.states.push_back(initial);
  double t = 0.0;
  for (long long k = 0;; ++k) {
    if (k >= max_events) {
      path.truncated = true;
      break;
    }
    const double w = next_wait();
    t += w;
    if (t > horizon) break;
    path.epochs.push_back(t);
    path.states.push_back(next_state(k));
  }
  return path;
}

}  // namespace

JumpPath simulate_poisson(double rate, double horizon, RngStream& rng,
                          long long max_events) {
  if (!(rate > 0.0)) throw std::domain_error("simulate_poisson: rate <= 0");
  int count = 0;
  return build_path(
      horizon, [&] { return sample_exponential(rate, rng); },
      [&](long long) { return ++count; }, 0, max_events);
}

JumpPath simulate_para_markov_counting(const SurvivalSpec& spec,
                                       double horizon, RngStream& rng,
                                       long long max_events) {
  validate(spec.mixing);
  const double l = sample_mixing_rate(spec.mixing, rng);
  int count = 0;
  return build_path(
      horizon, [&] { return sample_exponential(1.0, rng) / l; },
      [&](long long) { return ++count; }, 0, max_events);
}

JumpPath simulate_fractional_poisson(const MLParams& p, double horizon,
                                     RngStream& rng, long long max_events) {
  p.validate();
  int count = 0;
  return build_path(
      horizon, [&] { return sample_ml_waiting_time(p, rng); },
      [&](long long) { return ++count; }, 0, max_events);
}

namespace {

int step_embedded(const TransitionMatrix& p, int state, RngStream& rng) {
  double u = rng.uniform01();
  const std::size_t n = p.states();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double q = p(state, j);
    if (u < q) return (int)j;
    u -= q;
  }
  return (int)(n - 1);
}

}  // namespace

JumpPath simulate_ctmc(const TransitionMatrix& p, double rate, int initial,
                       double horizon, RngStream& rng, long long max_events) {
  if (!(rate > 0.0)) throw std::domain_error("simulate_ctmc: rate <= 0");
  if (initial < 0 || (std::size_t)initial >= p.states())
    throw std::domain_error("simulate_ctmc: initial state out of range");
  int state = initial;
  return build_path(
      horizon, [&] { return sample_exponential(rate, rng); },
      [&](long long) {
        state = step_embedded(p, state, rng);
        return state;
      },
      initial, max_events);
}

JumpPath simulate_para_markov_chain(const TransitionMatrix& p,
                                    const SurvivalSpec& spec, int initial,
                                    double horizon, RngStream& rng,
                                    long long max_events) {
  validate(spec.mixing);
  if (initial < 0 || (std::size_t)initial >= p.states())
    throw std::domain_error("simulate_para_markov_chain: bad initial state");
  const double l = sample_mixing_rate(spec.mixing, rng);
  int state = initial;
  return build_path(
      horizon, [&] { return sample_exponential(1.0, rng) / l; },
      [&](long long) {
        state = step_embedded(p, state, rng);
        return state;
      },
      initial, max_events);
}

std::vector<std::pair<double, double>> mixture_nodes(
    const MixingMeasure& mixing, const QuadratureBudget& budget,
    double probe_horizon) {
  validate(mixing);
  std::vector<std::pair<double, double>> nodes;
  if (const auto* pm = std::get_if<PointMassMixing>(&mixing)) {
    nodes.emplace_back(pm->lambda, 1.0);
    return nodes;
  }
  if (const auto* da = std::get_if<DiscreteAtomsMixing>(&mixing)) {
    for (const auto& a : da->atoms) nodes.emplace_back(a.location, a.weight);
    return nodes;
  }
  const auto& m = std::get<LampertiMixing>(mixing);
  const TruncationInterval tr =
      lamperti_truncation(m.alpha, m.lambda, budget.tail_tol);
  const double ulo = std::log(tr.lo), uhi = std::log(tr.hi);
  SurvivalSpec spec{mixing, budget};
  const double probes[3] = {0.05 * probe_horizon, 0.5 * probe_horizon,
                            probe_horizon};
  double target[3];
  for (int i = 0; i < 3; ++i) target[i] = survival_from_mixture(spec, probes[i]);

  for (int panels = 512; panels <= (1 << 17); panels *= 2) {
    nodes.clear();
    nodes.reserve(panels + 1);
    const double du = (uhi - ulo) / panels;
    for (int k = 0; k <= panels; ++k) {
      const double u = ulo + k * du;
      const double s = std::exp(u);
      double w = lamperti_density(m.alpha, m.lambda, s) * s * du;
      if (k == 0 || k == panels)
        w /= 3.0;
      else if (k % 2 == 1)
        w *= 4.0 / 3.0;
      else
        w *= 2.0 / 3.0;
      nodes.emplace_back(s, w);
    }
    bool ok = true;
    for (int i = 0; i < 3 && ok; ++i) {
      double acc = 0.0;
      for (const auto& [l, w] : nodes) acc += w * std::exp(-l * probes[i]);
      if (std::fabs(acc - target[i]) > 1e-10) ok = false;
    }
    if (ok) return nodes;
  }
  throw QuadratureError("mixture_nodes: probe match not reached", 1e-10);
}

Matrix para_transition_matrix(const TransitionMatrix& p,
                              const SurvivalSpec& spec, double t) {
  if (!(t >= 0.0)) throw std::domain_error("para_transition_matrix: t < 0");
  const std::size_t n = p.states();
  if (t == 0.0) return Matrix::identity(n);
  const auto nodes = mixture_nodes(spec.mixing, spec.budget, std::max(t, 1.0));
  Matrix acc(n, n);
  double total_w = 0.0;
  for (const auto& [l, w] : nodes) {
    acc.axpy(w, expm_uniformized(p.matrix(), l * t));
    total_w += w;
  }
  // assign the truncated tail mass to the long-run limit so the rows keep
  // their full probability mass
  if (1.0 - total_w > 1e-13) acc.axpy(1.0 - total_w, markov_limit(p.matrix()));
  return acc;
}

std::vector<Matrix> para_transition_path(const TransitionMatrix& p,
                                         const SurvivalSpec& spec, double h,
                                         int count) {
  if (!(h > 0.0) || count < 1)
    throw std::domain_error("para_transition_path: bad grid");
  const std::size_t n = p.states();
  const auto nodes =
      mixture_nodes(spec.mixing, spec.budget, h * double(count));
  std::vector<Matrix> out;
  out.reserve(count + 1);
  out.push_back(Matrix::identity(n));

  struct NodeState {
    Matrix value;
    Matrix step;
    double weight;
  };
  std::vector<NodeState> ns;
  ns.reserve(nodes.size());
  double total_w = 0.0;
  for (const auto& [l, w] : nodes) {
    ns.push_back({Matrix::identity(n), expm_uniformized(p.matrix(), l * h), w});
    total_w += w;
  }
  const Matrix limit = markov_limit(p.matrix());
  const double tail_w = std::max(0.0, 1.0 - total_w);
  for (int k = 1; k <= count; ++k) {
    Matrix acc(n, n);
    for (auto& s : ns) {
      s.value = s.value * s.step;
      acc.axpy(s.weight, s.value);
    }
    if (tail_w > 1e-13) acc.axpy(tail_w, limit);
    out.push_back(std::move(acc));
  }
  return out;
}

double schur_joint_survival(const SurvivalSpec& spec,
                            const std::vector<double>& thresholds) {
  double total = 0.0;
  for (double t : thresholds) {
    if (!(t >= 0.0))
      throw std::domain_error("schur_joint_survival: negative threshold");
    total += t;
  }
  return survival_from_mixture(spec, total);
}

SurvivalEstimate empirical_joint_survival(
    const std::vector<std::vector<double>>& samples,
    const std::vector<double>& thresholds) {
  if (samples.empty())
    throw std::domain_error("empirical_joint_survival: empty sample");
  long long hits = 0;
  for (const auto& v : samples) {
    if (v.size() < thresholds.size())
      throw std::domain_error("empirical_joint_survival: dimension mismatch");
    bool all = true;
    for (std::size_t k = 0; k < thresholds.size(); ++k)
      if (!(v[k] > thresholds[k])) {
        all = false;
        break;
      }
    if (all) ++hits;
  }
  const double n = double(samples.size());
  const double p = hits / n;
  return {p, std::sqrt(p * (1.0 - p) / n), (long long)samples.size()};
}

std::vector<double> mixture_poisson_pmf(const SurvivalSpec& spec, double t,
                                        int kmax) {
  validate(spec.mixing);
  if (!(t >= 0.0) || kmax < 0)
    throw std::domain_error("mixture_poisson_pmf: bad arguments");
  std::vector<double> pmf(kmax + 1, 0.0);
  if (t == 0.0) {
    pmf[0] = 1.0;
    return pmf;
  }
  auto poisson_vec = [&](double mean) {
    std::vector<double> v(kmax + 1);
    double term = std::exp(-mean);
    if (term == 0.0) {
      // far tail: go through logs
      for (int k = 0; k <= kmax; ++k)
        v[k] = std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
      return v;
    }
    for (int k = 0; k <= kmax; ++k) {
      v[k] = term;
      term *= mean / (k + 1);
    }
    return v;
  };
  struct Visitor {
    double t;
    int kmax;
    const QuadratureBudget& budget;
    decltype(poisson_vec)& pv;
    std::vector<double> operator()(const PointMassMixing& m) const {
      return pv(m.lambda * t);
    }
    std::vector<double> operator()(const DiscreteAtomsMixing& m) const {
      std::vector<double> acc(kmax + 1, 0.0);
      for (const auto& a : m.atoms) {
        auto v = pv(a.location * t);
        for (int k = 0; k <= kmax; ++k) acc[k] += a.weight * v[k];
      }
      return acc;
    }
    std::vector<double> operator()(const LampertiMixing& m) const {
      TruncationInterval tr =
          lamperti_truncation(m.alpha, m.lambda, budget.tail_tol);
      auto g = [&](double u) {
        const double s = std::exp(u);
        auto v = pv(s * t);
        const double d = lamperti_density(m.alpha, m.lambda, s) * s;
        for (double& x : v) x *= d;
        return v;
      };
      return adaptive_simpson(g, std::log(tr.lo), std::log(tr.hi), budget.tol,
                              budget.max_evals);
    }
  };
  return std::visit(Visitor{t, kmax, spec.budget, poisson_vec}, spec.mixing);
}

std::vector<double> sample_para_waiting_times(const SurvivalSpec& spec,
                                              int count, RngStream& rng) {
  validate(spec.mixing);
  const double l = sample_mixing_rate(spec.mixing, rng);
  std::vector<double> j(count);
  for (auto& v : j) v = sample_exponential(1.0, rng) / l;
  return j;
}

long long sample_para_count(const SurvivalSpec& spec, double t,
                            RngStream& rng) {
  validate(spec.mixing);
  if (!(t >= 0.0)) throw std::domain_error("sample_para_count: t < 0");
  const double l = sample_mixing_rate(spec.mixing, rng);
  return sample_poisson(l * t, rng);
}

}  // namespace paramarkov
