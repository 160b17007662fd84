#pragma once

// Distribution families with exact significand laws:
//   ScaledBenford(m)     m * 10^U[0,1), Benford for every m > 0
//   BoundedUniform(l,h)  U[l,h], never Benford
//   PaperDensity         density (x-1) log e / x^2 on [1,10) and
//                        10 log e / x^2 on [10,100); Benford, although its
//                        density is not of the m * 10^U form
//
// Sampling is a pure function of (spec, n, seed).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "benford/error.hpp"
#include "benford/significand.hpp"

namespace benford {

inline constexpr double kLog10E = std::numbers::log10e;

struct ScaledBenford {
  double scale = 1.0;
  friend bool operator==(const ScaledBenford&, const ScaledBenford&) = default;
};

struct BoundedUniform {
  double lo = 0.0;
  double hi = 1.0;
  friend bool operator==(const BoundedUniform&, const BoundedUniform&) = default;
};

struct PaperDensity {
  friend bool operator==(const PaperDensity&, const PaperDensity&) = default;
};

using DistributionSpec = std::variant<ScaledBenford, BoundedUniform, PaperDensity>;

inline void validate(const DistributionSpec& spec) {
  if (const auto* s = std::get_if<ScaledBenford>(&spec)) {
    if (!std::isfinite(s->scale) || !(s->scale > 0.0)) {
      detail::fail(ErrorKind::Domain, "scaled-benford: scale must be positive and finite");
    }
  } else if (const auto* u = std::get_if<BoundedUniform>(&spec)) {
    if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || !(u->lo > 0.0) || !(u->lo < u->hi)) {
      detail::fail(ErrorKind::Domain, "uniform: need 0 < lo < hi, both finite");
    }
  }
}

inline DistributionSpec scaled_benford(double scale) {
  DistributionSpec spec = ScaledBenford{scale};
  validate(spec);
  return spec;
}

inline DistributionSpec bounded_uniform(double lo, double hi) {
  DistributionSpec spec = BoundedUniform{lo, hi};
  validate(spec);
  return spec;
}

inline std::string family_name(const DistributionSpec& spec) {
  switch (spec.index()) {
    case 0: return "scaled-benford";
    case 1: return "uniform";
    default: return "paper-density";
  }
}

struct Support {
  double lo;
  double hi;
  bool hi_closed;

  bool contains(double x) const noexcept {
    return x >= lo && (hi_closed ? x <= hi : x < hi);
  }
};

inline Support support(const DistributionSpec& spec) {
  return std::visit(
      [](const auto& s) -> Support {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ScaledBenford>) {
          return {s.scale, 10.0 * s.scale, true};
        } else if constexpr (std::is_same_v<T, BoundedUniform>) {
          return {s.lo, s.hi, true};
        } else {
          return {1.0, 100.0, false};
        }
      },
      spec);
}

// ---------------------------------------------------------------------------
// Benford law

// P(S(X) <= t) = log10 t for a Benford X.
inline double benford_cdf(double t) {
  if (!(t >= 1.0 && t <= 10.0)) detail::fail(ErrorKind::Domain, "benford_cdf: t must lie in [1,10]");
  return std::log10(t);
}

// P(D1(X) = d) = log10(1 + 1/d).
inline double first_digit_law(int d) {
  if (d < 1 || d > 9) detail::fail(ErrorKind::Domain, "first_digit_law: digit must be in 1..9");
  return std::log10(1.0 + 1.0 / d);
}

// ---------------------------------------------------------------------------
// PaperDensity

inline double paper_density_pdf(double x) {
  if (x >= 1.0 && x < 10.0) return (x - 1.0) / (x * x) * kLog10E;
  if (x >= 10.0 && x < 100.0) return 10.0 / (x * x) * kLog10E;
  return 0.0;
}

inline double paper_density_cdf(double x) {
  if (x <= 1.0) return 0.0;
  if (x < 10.0) return kLog10E * (std::log(x) + 1.0 / x - 1.0);
  const double at_ten = kLog10E * (std::numbers::ln10 + 0.1 - 1.0);
  if (x < 100.0) return at_ten + 10.0 * kLog10E * (0.1 - 1.0 / x);
  return 1.0;
}

// Inverse of paper_density_cdf by bisection on [1,100); stops once the CDF
// matches u within 1e-12 or the bracket stops shrinking.
inline double paper_density_quantile(double u) {
  if (!(u >= 0.0 && u < 1.0)) detail::fail(ErrorKind::Domain, "paper_density_quantile: u must lie in [0,1)");
  if (u == 0.0) return 1.0;
  double lo = 1.0;
  double hi = 100.0;
  double mid = lo;
  for (;;) {
    mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return lo;
    const double f = paper_density_cdf(mid);
    if (std::fabs(f - u) <= 1e-12) return mid;
    if (f < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
}

// ---------------------------------------------------------------------------
// Random generation

// Seedable 64-bit engine. Uniform draws take the top 53 bits of a
// std::mt19937_64 output, so u is an exact multiple of 2^-53 in [0,1).
// split() derives an independent child stream via splitmix64.
class SampleEngine {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64/top53";

  explicit SampleEngine(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return gen_(); }

  SampleEngine split(std::uint64_t stream) const {
    return SampleEngine(splitmix64(seed_ ^ splitmix64(stream + 0x9e3779b97f4a7c15ULL)));
  }

  static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

struct GeneratedFrom {
  DistributionSpec spec;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::string algorithm;
};

struct ExternalSource {
  std::string source;
};

using Provenance = std::variant<GeneratedFrom, ExternalSource>;

struct Sample {
  std::vector<double> values;
  Provenance provenance = ExternalSource{};
};

inline Sample sample_from_values(std::vector<double> values, std::string source = "in-memory") {
  for (double v : values) detail::require_finite(v, "sample");
  return {std::move(values), ExternalSource{std::move(source)}};
}

inline double draw(const DistributionSpec& spec, SampleEngine& engine) {
  const double u = engine.uniform01();
  return std::visit(
      [u](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ScaledBenford>) {
          return s.scale * std::pow(10.0, u);
        } else if constexpr (std::is_same_v<T, BoundedUniform>) {
          return std::min(s.hi, s.lo + (s.hi - s.lo) * u);
        } else {
          return paper_density_quantile(u);
        }
      },
      spec);
}

inline Sample sample(const DistributionSpec& spec, std::size_t n, std::uint64_t seed) {
  validate(spec);
  if (n == 0) detail::fail(ErrorKind::Domain, "sample: n must be at least 1");
  SampleEngine engine(seed);
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) values.push_back(draw(spec, engine));
  return {std::move(values), GeneratedFrom{spec, seed, n, std::string(SampleEngine::kAlgorithm)}};
}

// ---------------------------------------------------------------------------
// Exact significand laws

namespace detail {

inline void require_significand_arg(double t, const char* what) {
  if (!(t >= 1.0 && t <= 10.0)) fail(ErrorKind::Domain, std::string(what) + ": t must lie in [1,10]");
}

// Lebesgue measure of {x in [lo,hi] : S(x) <= t}, summed over the decades
// meeting [lo,hi].
inline double uniform_mass_below(const BoundedUniform& u, double t) {
  const int k_lo = decade_exponent(u.lo);
  const int k_hi = decade_exponent(u.hi);
  double mass = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double p = std::pow(10.0, k);
    const double left = std::max(u.lo, p);
    const double right = std::min(u.hi, p * t);
    if (right > left) mass += right - left;
  }
  return mass;
}

// Density of X at x, with half-open supports so that decade folding never
// double counts an endpoint.
inline double density(const DistributionSpec& spec, double x) {
  return std::visit(
      [x](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ScaledBenford>) {
          return (x >= s.scale && x < 10.0 * s.scale) ? kLog10E / x : 0.0;
        } else if constexpr (std::is_same_v<T, BoundedUniform>) {
          return (x >= s.lo && x < s.hi) ? 1.0 / (s.hi - s.lo) : 0.0;
        } else {
          return paper_density_pdf(x);
        }
      },
      spec);
}

}  // namespace detail

// P(S(X) <= t) for X ~ spec.
inline double exact_significand_cdf(const DistributionSpec& spec, double t) {
  detail::require_significand_arg(t, "exact_significand_cdf");
  validate(spec);
  if (const auto* u = std::get_if<BoundedUniform>(&spec)) {
    if (t == 10.0) return 1.0;
    const double p = detail::uniform_mass_below(*u, t) / (u->hi - u->lo);
    return std::clamp(p, 0.0, 1.0);
  }
  // Both remaining families are Benford.
  return std::log10(t);
}

// Density of S(X) at t: the sum over k of 10^k * f(10^k t).
inline double fold_to_significand_density(const DistributionSpec& spec, double t) {
  if (!(t >= 1.0 && t < 10.0)) {
    detail::fail(ErrorKind::Domain, "fold_to_significand_density: t must lie in [1,10)");
  }
  validate(spec);
  const Support sup = support(spec);
  const int k_lo = decade_exponent(sup.lo) - 1;
  const int k_hi = decade_exponent(sup.hi) + 1;
  double total = 0.0;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double p = std::pow(10.0, k);
    total += p * detail::density(spec, p * t);
  }
  return total;
}

// sup over t in [1,10] of |P(S(X) <= t) - log10 t|.
//
// For a uniform, the significand CDF G is piecewise linear with breakpoints
// at S(lo) and S(hi); G - log10 is convex on each piece, so its extremes sit
// at breakpoints or at the stationary point t = log10(e) / slope.
inline double ks_distance_exact(const DistributionSpec& spec) {
  validate(spec);
  const auto* u = std::get_if<BoundedUniform>(&spec);
  if (u == nullptr) return 0.0;

  std::vector<double> breaks = {1.0, significand(u->lo), significand(u->hi), 10.0};
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  const auto deviation = [&](double t) { return std::fabs(exact_significand_cdf(spec, t) - std::log10(t)); };
  const int k_lo = decade_exponent(u->lo);
  const int k_hi = decade_exponent(u->hi);

  double best = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double left = breaks[i];
    const double right = breaks[i + 1];
    best = std::max({best, deviation(left), deviation(right)});
    const double mid = 0.5 * (left + right);
    double slope = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
      const double x = std::pow(10.0, k) * mid;
      if (x >= u->lo && x <= u->hi) slope += std::pow(10.0, k);
    }
    slope /= (u->hi - u->lo);
    if (slope > 0.0) {
      const double stationary = kLog10E / slope;
      if (stationary > left && stationary < right) best = std::max(best, deviation(stationary));
    }
  }
  return best;
}

}  // namespace benford
