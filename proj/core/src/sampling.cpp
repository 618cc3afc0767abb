#include "paramarkov/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace paramarkov {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : seed_(master_seed), stream_(stream_index) {
  base_ = mix64(master_seed + kGolden) ^
          mix64(stream_index * kGolden + 0x632be59bd9b4e019ull);
}

std::uint64_t RngStream::next_u64() {
  ++counter_;
  return mix64(base_ + counter_ * kGolden);
}

double RngStream::uniform01() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  const double u1 = uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double sample_exponential(double rate, RngStream& rng) {
  if (!(rate > 0.0))
    throw std::domain_error("sample_exponential: rate must be positive");
  return -std::log(rng.uniform01()) / rate;
}

double sample_positive_stable(double alpha, RngStream& rng) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error(
        "sample_positive_stable: alpha must lie in (0, 1)");
  // Kanter: S = (a(theta)/W)^{(1-alpha)/alpha}, theta ~ U(0,pi), W ~ Exp(1)
  const double theta = kPi * rng.uniform01();
  const double w = -std::log(rng.uniform01());
  const double num = std::sin((1.0 - alpha) * theta) *
                     std::pow(std::sin(alpha * theta), alpha / (1.0 - alpha));
  const double den = std::pow(std::sin(theta), 1.0 / (1.0 - alpha));
  const double a_theta = num / den;
  return std::pow(a_theta / w, (1.0 - alpha) / alpha);
}

double sample_lamperti(double alpha, double lambda, RngStream& rng) {
  if (!(lambda > 0.0))
    throw std::domain_error("sample_lamperti: lambda must be positive");
  const double s1 = sample_positive_stable(alpha, rng);
  const double s2 = sample_positive_stable(alpha, rng);
  return std::pow(lambda, 1.0 / alpha) * (s1 / s2);
}

double sample_ml_waiting_time(const MLParams& p, RngStream& rng) {
  p.validate();
  if (p.alpha == 1.0) return sample_exponential(p.lambda, rng);
  const double w = sample_exponential(1.0, rng);
  const double l = sample_lamperti(p.alpha, p.lambda, rng);
  return w / l;
}

double sample_inverse_stable(double alpha, double t, RngStream& rng) {
  if (!(t >= 0.0))
    throw std::domain_error("sample_inverse_stable: negative time");
  if (t == 0.0) return 0.0;
  const double s = sample_positive_stable(alpha, rng);
  return std::pow(t / s, alpha);
}

double sample_mixing_rate(const MixingMeasure& mixing, RngStream& rng) {
  struct Visitor {
    RngStream& rng;
    double operator()(const LampertiMixing& m) const {
      return sample_lamperti(m.alpha, m.lambda, rng);
    }
    double operator()(const PointMassMixing& m) const { return m.lambda; }
    double operator()(const DiscreteAtomsMixing& m) const {
      double u = rng.uniform01();
      for (const auto& a : m.atoms) {
        if (u < a.weight) return a.location;
        u -= a.weight;
      }
      return m.atoms.back().location;
    }
  };
  return std::visit(Visitor{rng}, mixing);
}

namespace {

// Chop-down inversion over a mode-centered enumeration of the support.
// The pmf is carried along by its up/down ratio recursions, one multiply
// per step.  Exact for any parameter size; work is O(sigma) draws.
template <class RatioUp, class RatioDown>
long long chopdown(long long mode, long long lo, long long hi, double p_mode,
                   RatioUp&& ratio_up, RatioDown&& ratio_down,
                   RngStream& rng) {
  double u = rng.uniform01() - p_mode;
  if (u <= 0.0) return mode;
  long long up = mode, down = mode;
  double p_up = p_mode, p_down = p_mode;
  while (up < hi || down > lo) {
    if (up < hi) {
      p_up *= ratio_up(up);
      ++up;
      u -= p_up;
      if (u <= 0.0) return up;
    }
    if (down > lo) {
      p_down *= ratio_down(down);
      --down;
      u -= p_down;
      if (u <= 0.0) return down;
    }
  }
  return mode;  // u was within rounding of the total mass
}

}  // namespace

long long sample_poisson(double mean, RngStream& rng) {
  if (!(mean >= 0.0))
    throw std::domain_error("sample_poisson: negative mean");
  if (mean == 0.0) return 0;
  if (mean < 30.0) {
    // multiplication method
    const double limit = std::exp(-mean);
    double prod = rng.uniform01();
    long long k = 0;
    while (prod > limit) {
      prod *= rng.uniform01();
      ++k;
    }
    return k;
  }
  const long long mode = (long long)std::floor(mean);
  const double p_mode =
      std::exp(mode * std::log(mean) - mean - std::lgamma(double(mode) + 1.0));
  const long long hi = (long long)(mean + 60.0 * std::sqrt(mean) + 60.0);
  return chopdown(
      mode, 0ll, hi, p_mode,
      [&](long long k) { return mean / double(k + 1); },
      [&](long long k) { return double(k) / mean; }, rng);
}

long long sample_binomial(long long n, double p, RngStream& rng) {
  if (n < 0 || !(p >= 0.0) || !(p <= 1.0))
    throw std::domain_error("sample_binomial: invalid parameters");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  if (n < 64) {
    long long k = 0;
    for (long long i = 0; i < n; ++i)
      if (rng.uniform01() < p) ++k;
    return k;
  }
  const double q = 1.0 - p;
  const double r = p / q;
  long long mode = (long long)std::floor((double(n) + 1.0) * p);
  const double sigma = std::sqrt(double(n) * p * q);
  const long long lo =
      std::max(0ll, (long long)(double(n) * p - 60.0 * sigma - 60.0));
  const long long hi =
      std::min(n, (long long)(double(n) * p + 60.0 * sigma + 60.0));
  mode = std::min(std::max(mode, lo), hi);
  const double p_mode = std::exp(
      std::lgamma(double(n) + 1.0) - std::lgamma(double(mode) + 1.0) -
      std::lgamma(double(n - mode) + 1.0) + mode * std::log(p) +
      (n - mode) * std::log(q));
  return chopdown(
      mode, lo, hi, p_mode,
      [&](long long k) { return r * double(n - k) / double(k + 1); },
      [&](long long k) { return double(k) / (r * double(n - k + 1)); }, rng);
}

}  // namespace paramarkov
