#ifndef PARAMARKOV_MATRIX_HPP
#define PARAMARKOV_MATRIX_HPP

#include <cstddef>
#include <vector>

namespace paramarkov {

// Dense row-major matrix sized for finite-state chains (a handful of states).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Matrix operator*(const Matrix& rhs) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix operator*(double s) const;
  Matrix& operator+=(const Matrix& rhs);
  Matrix& axpy(double a, const Matrix& x);  // *this += a x

  // sup (max absolute row sum) norm
  double inf_norm() const;
  double max_abs() const;
  std::vector<double> row_sums() const;

  const std::vector<double>& data() const { return a_; }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

inline Matrix operator*(double s, const Matrix& m) { return m * s; }

// e^{s (P - I)} for a row-stochastic P by uniformization,
// e^{-s} sum_k s^k P^k / k!, with the truncation order certified by a
// Chernoff bound on the Poisson tail (< 1e-13).  Arguments beyond s = 64
// are handled by squaring, which keeps every intermediate a stochastic
// matrix.
Matrix expm_uniformized(const Matrix& p, double s);

// Limit of e^{s(P-I)} as s -> inf, by repeated squaring of e^{64(P-I)}.
Matrix markov_limit(const Matrix& p);

// Cholesky factor (lower) of a symmetric positive definite matrix; throws
// std::domain_error when a pivot fails.
Matrix cholesky(const Matrix& spd);

// Solve L L^T x = b given the Cholesky factor.
std::vector<double> cholesky_solve(const Matrix& chol,
                                   const std::vector<double>& b);

}  // namespace paramarkov

#endif
