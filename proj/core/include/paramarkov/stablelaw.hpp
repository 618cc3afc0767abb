#ifndef PARAMARKOV_STABLELAW_HPP
#define PARAMARKOV_STABLELAW_HPP

#include <complex>
#include <string>
#include <vector>

#include "paramarkov/matrix.hpp"
#include "paramarkov/sampling.hpp"
#include "paramarkov/specfun.hpp"

namespace paramarkov {

// Atom of a (signed) spectral measure on the increasing cone: a unit
// direction with non-negative, non-decreasing coordinates.
struct SpectralAtom {
  std::vector<double> direction;
  double weight;
};

// Discrete spectral family Gamma_t(ds) = sum_j t_j^{H alpha} nu_j(ds).
struct SpectralFamily {
  double alpha;  // stability index in (0,1)
  double hurst;  // self-similarity index, > 0
  std::vector<std::vector<SpectralAtom>> nu;  // nu[j] is the measure nu_{j+1}

  int dimension() const { return (int)nu.size(); }
  // checks atom geometry and the marginal condition I_j(xi_k e_k) = 0 for
  // j != k; throws with a diagnostic on failure
  void validate() const;

  static SpectralFamily from_json_text(const std::string& text);
  std::string to_json_text() const;
};

// A_n = I - (lower shift), B_n = lower-triangular ones; A_n B_n = I.
// A_n maps the running record (sigma(T_1), sigma(T_1+T_2), ...) to
// increments.
std::pair<Matrix, Matrix> build_transform_matrices(int n);

// Principal branch of (-i x)^alpha: |x|^alpha (cos(a pi/2) - i sign(x)
// sin(a pi/2)); zero at the origin.
std::complex<double> complex_alpha_power(double x, double alpha);

// Characteristic function of the increasing-stable vector at the given
// times: exp{ -sum_atoms w(t) (-i <xi, s>)^alpha } with w(t) the assembled
// measure; throws NegativeMeasureError if an assembled atom is negative.
std::complex<double> stable_vector_charfn(const SpectralFamily& fam,
                                          const std::vector<double>& times,
                                          const std::vector<double>& xi);

// I_j(xi) = sum over nu_j atoms of w ( -i <xi, s> )^alpha; j is 0-based.
std::complex<double> I_functional(const SpectralFamily& fam, int j,
                                  const std::vector<double>& xi);

// Closed-form joint waiting-time law at H = 1/alpha:
// prod_k lambda / (lambda + sum_{j>=k} I_j(A^T xi)).
std::complex<double> waiting_charfn_product(const SpectralFamily& fam,
                                            double lambda,
                                            const std::vector<double>& xi);

// A complex empirical-characteristic-function estimate.
struct ECFEstimate {
  std::complex<double> value;
  double se;
  long long n;
};

// Monte Carlo integral of the joint law: draw w ~ Exp(lambda)^n and average
// the stable characteristic function at the running times B_n w.
ECFEstimate waiting_charfn_mc(const SpectralFamily& fam, double lambda,
                              int n, const std::vector<double>& xi,
                              RngStream& rng, long long paths);

// Marginal law of J_1 for an H-sssi increasing stable time change:
// lambda int_0^inf e^{ -(-i xi)^alpha w^{H alpha} - lambda w } dw.
std::complex<double> hsssi_marginal_charfn(double alpha, double hurst,
                                           double lambda, double xi,
                                           const QuadratureBudget& budget = {});

// lambda / (lambda + (-i xi)^alpha), the Mittag-Leffler characteristic
// function; reduces to the exponential law at alpha = 1.
std::complex<double> ml_charfn(double alpha, double lambda, double xi);

// The worked two-atom family of the stable subordinator (independent
// increments), nu_1 = 2^{a/2} d_{(1/r2,1/r2)} - d_{(0,1)}, nu_2 = d_{(0,1)}.
SpectralFamily subordinator_family(double alpha);

// A dependent-increment H = 1/alpha family built on the direction
// (3/5, 4/5); satisfies the marginal condition with a non-subordinator law.
SpectralFamily dependent_family(double alpha);

}  // namespace paramarkov

#endif
