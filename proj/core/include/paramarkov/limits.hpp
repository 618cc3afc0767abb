#ifndef PARAMARKOV_LIMITS_HPP
#define PARAMARKOV_LIMITS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "paramarkov/matrix.hpp"
#include "paramarkov/processes.hpp"
#include "paramarkov/sampling.hpp"
#include "paramarkov/specfun.hpp"
#include "paramarkov/stablelaw.hpp"

namespace paramarkov {

// Strictly increasing positive observation times.
struct TimeGrid {
  std::vector<double> times;
  void validate() const;
  int size() const { return (int)times.size(); }
};

// Q_ij = t_i ^ t_j (entrywise minimum), the Brownian covariance kernel.
Matrix build_cov_matrix(const TimeGrid& grid);

// Finite-dimensional characteristic function of the time-changed diffusion,
// S(0.5 xi^T Q xi); real-valued and in (0, 1].
double anomalous_charfn(const SurvivalSpec& spec, const TimeGrid& grid,
                        const std::vector<double>& xi);

// One draw of the random clock rate, then a Brownian path read at the
// stretched times.
std::vector<double> simulate_anomalous_diffusion(const SurvivalSpec& spec,
                                                 const TimeGrid& grid,
                                                 RngStream& rng);

// Gaussian-mixture density int N(0, sQ)(x) nu(ds); requires strictly
// increasing times (positive definite Q).
double anomalous_density(const SurvivalSpec& spec, const TimeGrid& grid,
                         const std::vector<double>& x);

// i.i.d. jump law with mean 0, variance 1.
enum class JumpLaw { Rademacher, StandardNormal, CenteredUniform };

// Sum of m i.i.d. jumps.  Rademacher and Gaussian sums are drawn in O(1)
// through their exact aggregate laws (binomial count, sqrt(m) normal);
// uniform jumps accumulate one by one, so their cost grows with the count.
double sample_jump_sum(JumpLaw law, long long m, RngStream& rng);

// Rescaled CTRW positions (1/sqrt(n)) sum_{k <= N(n t_i)} X_k at the grid
// times.  Counts at the grid times are drawn from the exact conditional
// Poisson law given the mixing draw.
std::vector<double> simulate_ctrw(JumpLaw law, const SurvivalSpec& spec,
                                  double scale_n, const TimeGrid& grid,
                                  RngStream& rng);

// Row-major sample block: n rows of dim coordinates each.
struct SampleBlock {
  std::size_t dim = 1;
  std::vector<double> data;
  std::size_t count() const { return dim == 0 ? 0 : data.size() / dim; }
  void push(const std::vector<double>& row);
};

// Complex sample mean of e^{i <xi, X>} with the delta-method error bound
// sqrt((1 - |mean|^2) / N).
ECFEstimate ecf(const SampleBlock& samples, const std::vector<double>& xi);

struct ConvergenceRow {
  double n;                 // CTRW scale
  std::vector<double> xi;   // frequency vector
  std::complex<double> ecf_value;
  double se;
  double target;            // S(0.5 xi^T Q xi)
  double abs_dev;
  double bias_budget;       // 2 / sqrt(n)
  bool pass;                // abs_dev <= 3 se + bias budget
};

// ECF-vs-law table over a ladder of scales; one row per (n, xi).
std::vector<ConvergenceRow> convergence_report(
    const SurvivalSpec& spec, JumpLaw law, const TimeGrid& grid,
    const std::vector<std::vector<double>>& xi_grid,
    const std::vector<double>& n_list, long long paths,
    std::uint64_t master_seed, std::uint64_t stream_base);

}  // namespace paramarkov

#endif
