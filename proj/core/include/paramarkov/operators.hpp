#ifndef PARAMARKOV_OPERATORS_HPP
#define PARAMARKOV_OPERATORS_HPP

#include <vector>

#include "paramarkov/matrix.hpp"
#include "paramarkov/processes.hpp"
#include "paramarkov/quadrature.hpp"
#include "paramarkov/specfun.hpp"

namespace paramarkov {

// Scalar function tabulated on the uniform grid {0, h, ..., m h}.  The
// value at 0 is the initial datum of the Cauchy problem; history before 0
// extends by zero, which realizes the regularized (Marchaud) form of the
// generalized Caputo derivative below.
class GridFunction {
 public:
  GridFunction(double step, std::vector<double> values);
  template <class F>
  static GridFunction tabulate(double step, int count, F&& f) {
    std::vector<double> v(count + 1);
    for (int k = 0; k <= count; ++k) v[k] = f(k * step);
    return GridFunction(step, std::move(v));
  }
  double step() const { return h_; }
  int grid_count() const { return (int)v_.size() - 1; }  // m
  double initial() const { return v_.front(); }
  double value(int k) const { return v_[k]; }
  int index_of(double t) const;  // throws when t is off the grid

 private:
  double h_;
  std::vector<double> v_;
};

class MatrixGridFunction {
 public:
  MatrixGridFunction(double step, std::vector<Matrix> values);
  double step() const { return h_; }
  int grid_count() const { return (int)v_.size() - 1; }
  const Matrix& initial() const { return v_.front(); }
  const Matrix& value(int k) const { return v_[k]; }
  int index_of(double t) const;

 private:
  double h_;
  std::vector<Matrix> v_;
};

// Generalized Caputo derivative for the alpha-stable Levy density,
//   int_0^t (f(t) - f(t-tau)) mu(tau) dtau + (f(t) - f(0)) Obar(t),
// by product integration with f linear on each grid panel; the moments of
// mu over a panel are closed-form, so the tau -> 0 singularity carries no
// quadrature error.  alpha = 1 routes to the classical derivative.
double generalized_caputo(double alpha, const GridFunction& f, double t);

// Grunwald-Letnikov approximation of the Caputo derivative of order alpha,
// h^{-alpha} sum_k (-1)^k C(alpha,k) (f(t - k h) - f(0)).
double gl_caputo(double alpha, const GridFunction& f, double t);

// sup_{t in [t_lo, t_hi]} | D^alpha S + lambda S | for S(t) =
// E_alpha(-lambda t^alpha), using the GL scheme (a five-point stencil
// against the exact exponential when alpha = 1).
double eigenfunction_residual(const MLParams& p, double t_lo, double t_hi,
                              double h);

// Truncated probability mass function over states 0..K.
struct PmfVector {
  std::vector<double> probs;
  double trunc_mass_bound = 1e-10;
  void validate() const;
};

// Cumulative sums: entry x is P(N(t) <= x), the resolvent (I-B)^{-1}.
std::vector<double> resolvent_prefix(const PmfVector& p);

// (I - B)^alpha p through the binomial series; exact on truncated vectors.
std::vector<double> fractional_lag_apply(double alpha,
                                         const std::vector<double>& p);

// -lambda_pow (I - B)^alpha p, the right side of the fractional
// master equation.
std::vector<double> fractional_lag_power(double alpha, double lambda_pow,
                                         const PmfVector& p);

// sup_{x <= K} | d^alpha/dt^alpha p(x, t) + lambda^alpha ((I-B)^alpha p)(x, t) |
// with p the counting pmf of the mixture law at time t, time derivative by
// GL on the grid {0, h, ..., t}.
double fcaa_residual(const MLParams& p, double t, double h, int kmax);

// The operator-valued non-local derivative for a finite-state generator G
// with the alpha-stable kernel.  Through the kappa representation the
// kernel collapses to Phi(tau) = M_alpha tau^{-1-alpha} with the constant
// matrix M_alpha = sin(pi a)/pi int_0^inf G e^{G w} w^a dw evaluated once
// by generalized Gauss-Laguerre quadrature.
class MatrixNonlocalOperator {
 public:
  MatrixNonlocalOperator(double alpha, Matrix generator,
                         int laguerre_nodes = 96);
  // - int_0^inf G mu(-G tau)(u(t) - u(t-tau)) dtau + G int_t^inf mu(-G tau)
  // u(0) dtau, history extended by zero, tau integral by product
  // integration on the grid of u.
  Matrix apply(const MatrixGridFunction& u, double t) const;
  const Matrix& front_factor() const { return m_alpha_; }
  double alpha() const { return alpha_; }

 private:
  double alpha_;
  Matrix g_;
  Matrix m_alpha_;
};

Matrix matrix_nonlocal_apply(double alpha, const Matrix& generator,
                             const MatrixGridFunction& u, double t);

struct GoverningReport {
  // sup_t || D^{mu,-G} u(t) + lambda u(t) ||_inf as written
  double sup_residual;
  // the same with the time-invariant component lambda*P_inf removed; this
  // is the residual on the range of G, where the eigenvalue identity acts
  double centered_sup_residual;
};

// Residual of the non-local governing equation for u(t) = the mixture
// transition matrix.  PointMass mixing (the Markov case) is checked
// against the classical forward equation with a five-point derivative
// stencil; both report fields then carry the classical residual.
GoverningReport governing_residual(const TransitionMatrix& p,
                                   const SurvivalSpec& spec, double t_lo,
                                   double t_hi, double h);

}  // namespace paramarkov

#endif
