#ifndef PARAMARKOV_SAMPLING_HPP
#define PARAMARKOV_SAMPLING_HPP

#include <cstdint>

#include "paramarkov/specfun.hpp"

namespace paramarkov {

// Counter-based uniform stream.  A stream is addressed by (master seed,
// stream index); draws are a pure function of the address and the counter,
// so parallel workers own disjoint indices with no state handoff and a run
// is bit-reproducible given (seed, index, draw count).
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t next_u64();

  // Uniform on the open interval (0,1); both endpoints are unreachable.
  double uniform01();

  // Standard normal via Box-Muller; consumes exactly two uniforms.
  double normal();

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }
  std::uint64_t draws() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// Inverse-CDF exponential draw, -ln(U)/rate.
double sample_exponential(double rate, RngStream& rng);

// One-sided alpha-stable with E e^{-eta S} = e^{-eta^alpha}, 0 < alpha < 1,
// by Kanter's trigonometric representation.
double sample_positive_stable(double alpha, RngStream& rng);

// Lamperti law via the stable-ratio representation lam^{1/alpha} S1/S2.
double sample_lamperti(double alpha, double lambda, RngStream& rng);

// Mittag-Leffler waiting time W/L with W ~ Exp(1), L ~ Lamperti(alpha,
// lambda), fresh draws each call; Exp(lambda) directly when alpha = 1.
double sample_ml_waiting_time(const MLParams& p, RngStream& rng);

// Single-time marginal of the inverse stable subordinator, (t/S)^alpha.
double sample_inverse_stable(double alpha, double t, RngStream& rng);

// A draw from the mixing measure (the random rate of the time change).
double sample_mixing_rate(const MixingMeasure& mixing, RngStream& rng);

// Exact Poisson and binomial counts by chop-down inversion from the mode;
// cost O(sqrt(mean)), valid for arbitrarily large parameters.
long long sample_poisson(double mean, RngStream& rng);
long long sample_binomial(long long n, double p, RngStream& rng);

}  // namespace paramarkov

#endif
