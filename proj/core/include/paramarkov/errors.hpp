#ifndef PARAMARKOV_ERRORS_HPP
#define PARAMARKOV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace paramarkov {

// Thrown when an adaptive quadrature exhausts its evaluation budget.
// Carries the tolerance actually achieved so callers can decide whether
// the partial answer is still usable.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_tol)
      : std::runtime_error(what + " (achieved tolerance " +
                           std::to_string(achieved_tol) + ")"),
        achieved_tolerance(achieved_tol) {}
  double achieved_tolerance;
};

// An assembled spectral measure came out negative on some atom.
class NegativeMeasureError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A characteristic-function denominator vanished.
class PoleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace paramarkov

#endif
