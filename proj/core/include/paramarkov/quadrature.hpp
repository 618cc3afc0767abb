#ifndef PARAMARKOV_QUADRATURE_HPP
#define PARAMARKOV_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "paramarkov/errors.hpp"

namespace paramarkov {

inline double quad_norm(double v) { return std::fabs(v); }
inline double quad_norm(const std::complex<double>& v) { return std::abs(v); }
inline double quad_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::fabs(x);
  return s;
}

inline void quad_axpy(double a, double x, double& y) { y += a * x; }
inline void quad_axpy(double a, const std::complex<double>& x,
                      std::complex<double>& y) {
  y += a * x;
}
inline void quad_axpy(double a, const std::vector<double>& x,
                      std::vector<double>& y) {
  if (y.empty()) y.assign(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

template <class T>
T quad_zero_like(const T&) {
  return T{};
}
inline std::vector<double> quad_zero_like(const std::vector<double>& v) {
  return std::vector<double>(v.size(), 0.0);
}

// Recursive adaptive Simpson with a global evaluation budget.  Works for
// double, complex and small vector values (see quad_* overloads above).
template <class T, class F>
class AdaptiveSimpson {
 public:
  AdaptiveSimpson(F& f, long max_evals) : f_(f), budget_(max_evals) {}

  T integrate(double a, double b, double tol) {
    T fa = eval(a), fb = eval(b), fm = eval(0.5 * (a + b));
    T whole = simpson(a, b, fa, fm, fb);
    return recurse(a, b, fa, fm, fb, whole, tol, 60);
  }

  long evals_used() const { return evals_; }

 private:
  T eval(double x) {
    if (++evals_ > budget_)
      throw QuadratureError("adaptive quadrature budget exhausted",
                            worst_interval_err_);
    return f_(x);
  }

  static T simpson(double a, double b, const T& fa, const T& fm, const T& fb) {
    T s = quad_zero_like(fa);
    const double w = (b - a) / 6.0;
    quad_axpy(w, fa, s);
    quad_axpy(4.0 * w, fm, s);
    quad_axpy(w, fb, s);
    return s;
  }

  T recurse(double a, double b, const T& fa, const T& fm, const T& fb,
            const T& whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    T fl = eval(0.5 * (a + m));
    T fr = eval(0.5 * (m + b));
    T left = simpson(a, m, fa, fl, fm);
    T right = simpson(m, b, fm, fr, fb);
    T sum = left;
    quad_axpy(1.0, right, sum);
    T diff = sum;
    quad_axpy(-1.0, whole, diff);
    const double err = quad_norm(diff);
    if (err <= 15.0 * tol || depth <= 0) {
      // Richardson correction term.
      quad_axpy(1.0 / 15.0, diff, sum);
      return sum;
    }
    if (err > worst_interval_err_) worst_interval_err_ = err;
    T l = recurse(a, m, fa, fl, fm, left, 0.5 * tol, depth - 1);
    T r = recurse(m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
    quad_axpy(1.0, r, l);
    return l;
  }

  F& f_;
  long budget_;
  long evals_ = 0;
  double worst_interval_err_ = 0.0;
};

template <class F>
auto adaptive_simpson(F&& f, double a, double b, double tol,
                      long max_evals = 200000) {
  using T = decltype(f(a));
  AdaptiveSimpson<T, F> q(f, max_evals);
  return q.integrate(a, b, tol);
}

// Nodes and weights for generalized Gauss-Laguerre quadrature,
// integral f(x) x^alf e^{-x} dx on (0, inf).  Newton iteration on the
// Laguerre recurrence, initial guesses as in the classic gaulag routine.
struct GaussLaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLaguerreRule gauss_laguerre(int n, double alf);

}  // namespace paramarkov

#endif
