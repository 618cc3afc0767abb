#ifndef PARAMARKOV_SELFTEST_HPP
#define PARAMARKOV_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace paramarkov {

// One verification criterion of the toolkit: simulation laws against
// closed forms, operator identities against tabulated solutions, scaling
// limits against their target laws.  Criteria run with fixed seeds and
// desk-scale sample sizes.
struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

inline constexpr int kCriterionCount = 10;
inline constexpr std::uint64_t kSelftestSeed = 20260809;

// Runs criterion `id` (1-based).  Throws std::domain_error for unknown ids.
CriterionResult run_criterion(int id, std::uint64_t seed = kSelftestSeed);

std::vector<CriterionResult> run_all_criteria(
    std::uint64_t seed = kSelftestSeed);

// "[PASS] 3 sampler-ks ..." one-line rendering.
std::string format_criterion(const CriterionResult& r);

}  // namespace paramarkov

#endif
