#include "paramarkov/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace paramarkov {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::domain_error("Matrix: size mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double v = a_[i * cols_ + k];
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j)
        out(i, j) += v * rhs(k, j);
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  Matrix out = *this;
  out += rhs;
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  Matrix out = *this;
  out.axpy(-1.0, rhs);
  return out;
}

Matrix Matrix::operator*(double s) const {
  Matrix out = *this;
  for (double& v : out.a_) v *= s;
  return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::domain_error("Matrix: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::axpy(double a, const Matrix& x) {
  if (rows_ != x.rows_ || cols_ != x.cols_)
    throw std::domain_error("Matrix: size mismatch");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += a * x.a_[i];
  return *this;
}

double Matrix::inf_norm() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::fabs((*this)(i, j));
    if (s > best) best = s;
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : a_)
    if (std::fabs(v) > best) best = std::fabs(v);
  return best;
}

std::vector<double> Matrix::row_sums() const {
  std::vector<double> s(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) s[i] += (*this)(i, j);
  return s;
}

namespace {

// Smallest K with Poisson(s) tail mass past K below 1e-13 (Chernoff).
int poisson_truncation(double s) {
  int k = (int)std::ceil(s + 8.0 * std::sqrt(s + 1.0)) + 8;
  while (true) {
    // Chernoff: P(X > k) <= exp(k+1 - s - (k+1) log((k+1)/s))
    const double bound = (k + 1) - s - (k + 1) * std::log((k + 1) / s);
    if (bound < std::log(1e-13)) return k;
    ++k;
  }
}

Matrix expm_small(const Matrix& p, double s) {
  const std::size_t n = p.rows();
  Matrix sum = Matrix::identity(n) * std::exp(-s);
  Matrix term = sum;
  const int kmax = poisson_truncation(s);
  for (int k = 1; k <= kmax; ++k) {
    term = term * p;
    term = term * (s / k);
    sum += term;
  }
  return sum;
}

}  // namespace

namespace {

void renormalize_rows(Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double rs = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) rs += m(i, j);
    if (rs > 0.0)
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) /= rs;
  }
}

}  // namespace

Matrix expm_uniformized(const Matrix& p, double s) {
  if (p.rows() != p.cols()) throw std::domain_error("expm: square only");
  if (!(s >= 0.0)) throw std::domain_error("expm: negative time scale");
  if (s == 0.0) return Matrix::identity(p.rows());
  bool stochastic = true;
  for (double rs : p.row_sums())
    if (std::fabs(rs - 1.0) > 1e-9) stochastic = false;
  int squarings = 0;
  double s0 = s;
  while (s0 > 64.0) {
    s0 *= 0.5;
    ++squarings;
  }
  Matrix m = expm_small(p, s0);
  // for a stochastic P, rounding in a row sum would compound through the
  // squaring chain as (1 + eps)^{2^m}; renormalizing each step keeps the
  // drift additive.  Substochastic inputs (killed chains) must keep their
  // decaying row mass.
  for (int i = 0; i < squarings; ++i) {
    m = m * m;
    if (stochastic) renormalize_rows(m);
  }
  return m;
}

Matrix markov_limit(const Matrix& p) {
  Matrix m = expm_uniformized(p, 64.0);
  for (int i = 0; i < 40; ++i) {
    Matrix sq = m * m;
    renormalize_rows(sq);
    if ((sq - m).max_abs() < 1e-14) return sq;
    m = sq;
  }
  return m;
}

Matrix cholesky(const Matrix& spd) {
  if (spd.rows() != spd.cols())
    throw std::domain_error("cholesky: square only");
  const std::size_t n = spd.rows();
  Matrix l(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = spd(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (!(s > 0.0))
          throw std::domain_error("cholesky: matrix not positive definite");
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

std::vector<double> cholesky_solve(const Matrix& chol,
                                   const std::vector<double>& b) {
  const std::size_t n = chol.rows();
  if (b.size() != n) throw std::domain_error("cholesky_solve: size mismatch");
  std::vector<double> y(n), x(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol(i, k) * y[k];
    y[i] = s / chol(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= chol(k, ii) * x[k];
    x[ii] = s / chol(ii, ii);
  }
  return x;
}

}  // namespace paramarkov
