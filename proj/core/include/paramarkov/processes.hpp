#ifndef PARAMARKOV_PROCESSES_HPP
#define PARAMARKOV_PROCESSES_HPP

#include <cstdint>
#include <vector>

#include "paramarkov/matrix.hpp"
#include "paramarkov/sampling.hpp"
#include "paramarkov/specfun.hpp"

namespace paramarkov {

// Row-stochastic transition matrix of the embedded chain.
class TransitionMatrix {
 public:
  explicit TransitionMatrix(Matrix p);
  const Matrix& matrix() const { return p_; }
  std::size_t states() const { return p_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return p_(i, j); }

 private:
  Matrix p_;
};

// Conservative generator, representable as rate (P - I).
class GeneratorMatrix {
 public:
  GeneratorMatrix(Matrix g, double uniformization_rate);
  static GeneratorMatrix from_transition(const TransitionMatrix& p,
                                         double rate);
  const Matrix& matrix() const { return g_; }
  double uniformization_rate() const { return rate_; }

 private:
  Matrix g_;
  double rate_;
};

// A realized trajectory.  states[k] is the value held on
// [epochs[k-1], epochs[k]) with epochs[-1] := 0; there is one more state
// than epochs.  truncated marks paths stopped by the event cap rather than
// the horizon.
struct JumpPath {
  std::vector<double> epochs;
  std::vector<int> states;
  double horizon = 0.0;
  bool truncated = false;

  int state_at(double t) const;  // right-continuous evaluation
  void validate() const;
};

inline constexpr long long kDefaultEventCap = 20'000'000;

JumpPath simulate_poisson(double rate, double horizon, RngStream& rng,
                          long long max_events = kDefaultEventCap);

// One draw of the random rate, then a unit-rate Poisson path on the
// stretched clock; waiting times are W_k / L and jointly Schur-constant.
JumpPath simulate_para_markov_counting(const SurvivalSpec& spec,
                                       double horizon, RngStream& rng,
                                       long long max_events = kDefaultEventCap);

// Renewal contrast case: an independent Mittag-Leffler time per interval.
JumpPath simulate_fractional_poisson(const MLParams& p, double horizon,
                                     RngStream& rng,
                                     long long max_events = kDefaultEventCap);

JumpPath simulate_ctmc(const TransitionMatrix& p, double rate, int initial,
                       double horizon, RngStream& rng,
                       long long max_events = kDefaultEventCap);

JumpPath simulate_para_markov_chain(const TransitionMatrix& p,
                                    const SurvivalSpec& spec, int initial,
                                    double horizon, RngStream& rng,
                                    long long max_events = kDefaultEventCap);

// Quadrature nodes (l_i, w_i) approximating the mixing measure with
// neglected mass below the budget's tail tolerance.  Panel count doubles
// until the induced survival values match the adaptive route at three
// probe times to 1e-10.
std::vector<std::pair<double, double>> mixture_nodes(
    const MixingMeasure& mixing, const QuadratureBudget& budget,
    double probe_horizon);

// Transition probabilities of the time-changed chain,
// int e^{(P-I) l t} nu(dl), each exponential by uniformization.
Matrix para_transition_matrix(const TransitionMatrix& p,
                              const SurvivalSpec& spec, double t);

// Same law tabulated on the uniform grid {0, h, ..., count h}, computed by
// per-node propagation e^{G l (t+h)} = e^{G l t} e^{G l h}.
std::vector<Matrix> para_transition_path(const TransitionMatrix& p,
                                         const SurvivalSpec& spec, double h,
                                         int count);

// P[J_1 > t_1, ..., J_n > t_n] = S(sum t_k).
double schur_joint_survival(const SurvivalSpec& spec,
                            const std::vector<double>& thresholds);

struct SurvivalEstimate {
  double value;
  double se;
  long long n;
};

// Fraction of sample vectors exceeding the thresholds coordinatewise, with
// binomial standard error.
SurvivalEstimate empirical_joint_survival(
    const std::vector<std::vector<double>>& samples,
    const std::vector<double>& thresholds);

// P(N(t) = k), k = 0..kmax, by mixture-Poisson quadrature.
std::vector<double> mixture_poisson_pmf(const SurvivalSpec& spec, double t,
                                        int kmax);

// First `count` waiting times of the counting process (one mixing draw).
std::vector<double> sample_para_waiting_times(const SurvivalSpec& spec,
                                              int count, RngStream& rng);

// Marginal count at time t (Poisson with randomized rate).
long long sample_para_count(const SurvivalSpec& spec, double t,
                            RngStream& rng);

}  // namespace paramarkov

#endif
