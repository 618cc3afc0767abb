#include "paramarkov/stablelaw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "paramarkov/quadrature.hpp"

namespace paramarkov {
namespace {

constexpr double kPi = 3.14159265358979323846;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Assembled measure sum_j t_j^{H a} nu_j with atoms merged by direction.
struct AssembledAtom {
  std::vector<double> direction;
  double weight;
};

std::vector<AssembledAtom> assemble(const SpectralFamily& fam,
                                    const std::vector<double>& times) {
  std::vector<AssembledAtom> atoms;
  for (std::size_t j = 0; j < fam.nu.size(); ++j) {
    const double scale = std::pow(times[j], fam.hurst * fam.alpha);
    for (const auto& a : fam.nu[j]) {
      bool merged = false;
      for (auto& out : atoms) {
        double dist = 0.0;
        for (std::size_t i = 0; i < a.direction.size(); ++i)
          dist = std::max(dist, std::fabs(out.direction[i] - a.direction[i]));
        if (dist < 1e-12) {
          out.weight += scale * a.weight;
          merged = true;
          break;
        }
      }
      if (!merged) atoms.push_back({a.direction, scale * a.weight});
    }
  }
  for (const auto& a : atoms)
    if (a.weight < -1e-9)
      throw NegativeMeasureError(
          "assembled spectral measure has a negative atom");
  return atoms;
}

}  // namespace

void SpectralFamily::validate() const {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("SpectralFamily: alpha must lie in (0, 1)");
  if (!(hurst > 0.0))
    throw std::domain_error("SpectralFamily: hurst must be positive");
  const int n = dimension();
  if (n == 0) throw std::domain_error("SpectralFamily: empty family");
  for (const auto& measure : nu) {
    for (const auto& a : measure) {
      if ((int)a.direction.size() != n)
        throw std::domain_error("SpectralFamily: atom dimension mismatch");
      double norm2 = 0.0, prev = 0.0;
      for (double c : a.direction) {
        if (c < -1e-12 || c < prev - 1e-12)
          throw std::domain_error(
              "SpectralFamily: directions must be non-negative and "
              "non-decreasing");
        prev = c;
        norm2 += c * c;
      }
      if (std::fabs(norm2 - 1.0) > 1e-10)
        throw std::domain_error("SpectralFamily: directions must be unit");
    }
  }
  // marginal condition: I_j(xi e_k) must vanish for j != k
  for (int k = 0; k < n; ++k) {
    std::vector<double> xi(n, 0.0);
    xi[k] = 1.7;  // arbitrary probe
    for (int j = 0; j < n; ++j) {
      if (j == k) continue;
      const auto v = I_functional(*this, j, xi);
      if (std::abs(v) > 1e-10)
        throw std::domain_error(
            "SpectralFamily: marginal condition I_j(xi e_k) = 0 fails for "
            "j = " +
            std::to_string(j + 1) + ", k = " + std::to_string(k + 1) +
            " (|I| = " + std::to_string(std::abs(v)) + ")");
    }
  }
}

SpectralFamily SpectralFamily::from_json_text(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SpectralFamily fam;
  fam.alpha = j.at("alpha").get<double>();
  fam.hurst = j.at("hurst").get<double>();
  for (const auto& measure : j.at("nu")) {
    std::vector<SpectralAtom> atoms;
    for (const auto& atom : measure) {
      SpectralAtom a;
      a.direction = atom.at("s").get<std::vector<double>>();
      a.weight = atom.at("w").get<double>();
      atoms.push_back(std::move(a));
    }
    fam.nu.push_back(std::move(atoms));
  }
  fam.validate();
  return fam;
}

std::string SpectralFamily::to_json_text() const {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["hurst"] = hurst;
  j["nu"] = nlohmann::json::array();
  for (const auto& measure : nu) {
    nlohmann::json m = nlohmann::json::array();
    for (const auto& a : measure)
      m.push_back({{"s", a.direction}, {"w", a.weight}});
    j["nu"].push_back(std::move(m));
  }
  return j.dump(2);
}

std::pair<Matrix, Matrix> build_transform_matrices(int n) {
  if (n < 1) throw std::domain_error("build_transform_matrices: n >= 1");
  Matrix a = Matrix::identity(n);
  Matrix b(n, n);
  for (int i = 0; i < n; ++i) {
    if (i > 0) a(i, i - 1) = -1.0;
    for (int j = 0; j <= i; ++j) b(i, j) = 1.0;
  }
  return {a, b};
}

std::complex<double> complex_alpha_power(double x, double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("complex_alpha_power: alpha must lie in (0, 1)");
  if (x == 0.0) return {0.0, 0.0};
  const double mag = std::pow(std::fabs(x), alpha);
  const double ang = alpha * kPi / 2.0;
  const double sgn = (x > 0.0) ? 1.0 : -1.0;
  return {mag * std::cos(ang), -sgn * mag * std::sin(ang)};
}

std::complex<double> stable_vector_charfn(const SpectralFamily& fam,
                                          const std::vector<double>& times,
                                          const std::vector<double>& xi) {
  if ((int)times.size() != fam.dimension() ||
      (int)xi.size() != fam.dimension())
    throw std::domain_error("stable_vector_charfn: dimension mismatch");
  const auto atoms = assemble(fam, times);
  std::complex<double> expo = 0.0;
  for (const auto& a : atoms)
    expo += std::max(a.weight, 0.0) *
            complex_alpha_power(dot(xi, a.direction), fam.alpha);
  return std::exp(-expo);
}

std::complex<double> I_functional(const SpectralFamily& fam, int j,
                                  const std::vector<double>& xi) {
  if (j < 0 || j >= fam.dimension())
    throw std::domain_error("I_functional: index out of range");
  if ((int)xi.size() != fam.dimension())
    throw std::domain_error("I_functional: dimension mismatch");
  std::complex<double> acc = 0.0;
  for (const auto& a : fam.nu[j])
    acc += a.weight * complex_alpha_power(dot(xi, a.direction), fam.alpha);
  return acc;
}

std::complex<double> waiting_charfn_product(const SpectralFamily& fam,
                                            double lambda,
                                            const std::vector<double>& xi) {
  if (std::fabs(fam.hurst * fam.alpha - 1.0) > 1e-12)
    throw std::domain_error(
        "waiting_charfn_product: requires the Levy scaling H = 1/alpha");
  if (!(lambda > 0.0))
    throw std::domain_error("waiting_charfn_product: lambda must be positive");
  const int n = fam.dimension();
  if ((int)xi.size() != n)
    throw std::domain_error("waiting_charfn_product: dimension mismatch");
  const auto [a, b] = build_transform_matrices(n);
  std::vector<double> at_xi(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) at_xi[i] += a(r, i) * xi[r];
  std::complex<double> prod = 1.0;
  for (int k = 0; k < n; ++k) {
    std::complex<double> den = lambda;
    for (int j = k; j < n; ++j) den += I_functional(fam, j, at_xi);
    if (std::abs(den) < 1e-14)
      throw PoleError("waiting_charfn_product: vanishing denominator");
    prod *= lambda / den;
  }
  return prod;
}

ECFEstimate waiting_charfn_mc(const SpectralFamily& fam, double lambda,
                              int n, const std::vector<double>& xi,
                              RngStream& rng, long long paths) {
  if (n != fam.dimension())
    throw std::domain_error("waiting_charfn_mc: dimension mismatch");
  if ((int)xi.size() != n)
    throw std::domain_error("waiting_charfn_mc: xi dimension mismatch");
  if (paths < 2) throw std::domain_error("waiting_charfn_mc: paths >= 2");
  const auto [a, b] = build_transform_matrices(n);
  std::vector<double> at_xi(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int r = 0; r < n; ++r) at_xi[i] += a(r, i) * xi[r];

  // unique directions with their per-measure weights and the complex power
  // evaluated once
  std::vector<std::vector<double>> dirs;
  std::vector<std::vector<double>> weight_by_j;  // [dir][j]
  for (int j = 0; j < n; ++j) {
    for (const auto& atom : fam.nu[j]) {
      std::size_t slot = dirs.size();
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        double dist = 0.0;
        for (int i = 0; i < n; ++i)
          dist = std::max(dist, std::fabs(dirs[d][i] - atom.direction[i]));
        if (dist < 1e-12) {
          slot = d;
          break;
        }
      }
      if (slot == dirs.size()) {
        dirs.push_back(atom.direction);
        weight_by_j.emplace_back(n, 0.0);
      }
      weight_by_j[slot][j] += atom.weight;
    }
  }
  std::vector<std::complex<double>> powers(dirs.size());
  for (std::size_t d = 0; d < dirs.size(); ++d)
    powers[d] = complex_alpha_power(dot(at_xi, dirs[d]), fam.alpha);

  const double ha = fam.hurst * fam.alpha;
  std::vector<double> running(n);
  std::complex<double> acc = 0.0;
  for (long long it = 0; it < paths; ++it) {
    double run = 0.0;
    for (int i = 0; i < n; ++i) {
      run += sample_exponential(lambda, rng);
      running[i] = std::pow(run, ha);
    }
    std::complex<double> expo = 0.0;
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      double w = 0.0;
      for (int j = 0; j < n; ++j) w += running[j] * weight_by_j[d][j];
      if (w < -1e-9)
        throw NegativeMeasureError(
            "waiting_charfn_mc: negative assembled atom");
      expo += std::max(w, 0.0) * powers[d];
    }
    acc += std::exp(-expo);
  }
  const std::complex<double> mean = acc / double(paths);
  const double se =
      std::sqrt(std::max(0.0, 1.0 - std::norm(mean)) / double(paths));
  return {mean, se, paths};
}

std::complex<double> hsssi_marginal_charfn(double alpha, double hurst,
                                           double lambda, double xi,
                                           const QuadratureBudget& budget) {
  if (!(hurst > 0.0) || hurst * alpha > 1.0 + 1e-12)
    throw std::domain_error(
        "hsssi_marginal_charfn: need 0 < H and H alpha <= 1");
  if (!(lambda > 0.0))
    throw std::domain_error("hsssi_marginal_charfn: lambda must be positive");
  if (xi == 0.0) return {1.0, 0.0};
  const std::complex<double> pw = complex_alpha_power(xi, alpha);
  const double ha = hurst * alpha;
  // upper limit: both the exponential weight and Re pw damp the integrand
  const double cap = 50.0 / lambda;
  auto f = [&](double w) {
    return std::exp(-pw * std::pow(w, ha) - lambda * w);
  };
  std::complex<double> v =
      adaptive_simpson(f, 0.0, cap, budget.tol, budget.max_evals);
  return lambda * v;
}

std::complex<double> ml_charfn(double alpha, double lambda, double xi) {
  if (!(alpha > 0.0) || !(alpha <= 1.0))
    throw std::domain_error("ml_charfn: alpha must lie in (0, 1]");
  if (!(lambda > 0.0))
    throw std::domain_error("ml_charfn: lambda must be positive");
  if (xi == 0.0) return {1.0, 0.0};
  const std::complex<double> pw =
      (alpha == 1.0) ? std::complex<double>(0.0, -xi)
                     : complex_alpha_power(xi, alpha);
  return lambda / (lambda + pw);
}

SpectralFamily subordinator_family(double alpha) {
  const double r = 1.0 / std::sqrt(2.0);
  SpectralFamily fam;
  fam.alpha = alpha;
  fam.hurst = 1.0 / alpha;
  fam.nu = {{{{r, r}, std::pow(2.0, alpha / 2.0)}, {{0.0, 1.0}, -1.0}},
            {{{0.0, 1.0}, 1.0}}};
  fam.validate();
  return fam;
}

SpectralFamily dependent_family(double alpha) {
  // nu_1 = c d_u - c u2^alpha d_{(0,1)}, nu_2 = d_{(0,1)}, u = (3/5, 4/5);
  // the assembled measure stays non-negative since c u2^alpha < 1
  const double u1 = 0.6, u2 = 0.8;
  SpectralFamily fam;
  fam.alpha = alpha;
  fam.hurst = 1.0 / alpha;
  fam.nu = {{{{u1, u2}, 1.0}, {{0.0, 1.0}, -std::pow(u2, alpha)}},
            {{{0.0, 1.0}, 1.0}}};
  fam.validate();
  return fam;
}

}  // namespace paramarkov
