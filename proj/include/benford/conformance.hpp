#pragma once

// Empirical conformance of a sample with Benford's law.
//
// Zeros have no significand in [1,10) and are excluded from every statistic
// (reported in DigitFrequencies::excluded). Negative values enter through
// |x|. No p-values or verdicts are produced; the caller gets distances.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "benford/distributions.hpp"
#include "benford/error.hpp"
#include "benford/significand.hpp"

namespace benford {

struct DigitFrequencies {
  std::array<std::uint64_t, 9> counts{};  // counts[d - 1] for first digit d
  std::uint64_t n = 0;
  std::uint64_t excluded = 0;

  std::uint64_t count(int d) const { return counts.at(static_cast<std::size_t>(d - 1)); }

  double proportion(int d) const {
    return n == 0 ? 0.0 : static_cast<double>(count(d)) / static_cast<double>(n);
  }

  // Merging partial tallies is associative and commutative.
  DigitFrequencies& operator+=(const DigitFrequencies& other) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    n += other.n;
    excluded += other.excluded;
    return *this;
  }

  friend DigitFrequencies operator+(DigitFrequencies lhs, const DigitFrequencies& rhs) {
    lhs += rhs;
    return lhs;
  }

  friend bool operator==(const DigitFrequencies&, const DigitFrequencies&) = default;
};

struct ConformanceReport {
  std::uint64_t n = 0;
  DigitFrequencies digit_freqs;
  double ks = 0.0;
  double chi_square = 0.0;
  double mad = 0.0;
  double span_orders = 0.0;
  double observed_min = 0.0;  // of |x| over nonzero x
  double observed_max = 0.0;

  friend bool operator==(const ConformanceReport&, const ConformanceReport&) = default;
};

namespace detail {

inline std::vector<double> nonzero_significands(std::span<const double> values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (double v : values) {
    if (v != 0.0) out.push_back(significand(v));
  }
  if (out.empty()) fail(ErrorKind::EmptySample, "sample has no nonzero values");
  return out;
}

// KS distance between the step function of sorted significands and log10 t.
inline double ks_sorted(std::span<const double> sorted) {
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = std::log10(sorted[i]);
    const double above = static_cast<double>(i + 1) / n - f;
    const double below = f - static_cast<double>(i) / n;
    d = std::max({d, above, below});
  }
  return d;
}

}  // namespace detail

// Fraction of nonzero values whose significand is <= t.
inline double empirical_significand_cdf(std::span<const double> values, double t) {
  detail::require_significand_arg(t, "empirical_significand_cdf");
  const auto sig = detail::nonzero_significands(values);
  const auto below = std::count_if(sig.begin(), sig.end(), [t](double s) { return s <= t; });
  return static_cast<double>(below) / static_cast<double>(sig.size());
}

inline double empirical_significand_cdf(const Sample& s, double t) {
  return empirical_significand_cdf(std::span<const double>(s.values), t);
}

// One-sample KS distance against the continuous Benford CDF, evaluated
// exactly at every order statistic from both sides.
inline double ks_statistic(std::span<const double> values) {
  auto sig = detail::nonzero_significands(values);
  std::sort(sig.begin(), sig.end());
  return detail::ks_sorted(sig);
}

inline double ks_statistic(const Sample& s) { return ks_statistic(std::span<const double>(s.values)); }

inline DigitFrequencies first_digit_frequencies(std::span<const double> values) {
  DigitFrequencies f;
  for (double v : values) {
    if (v == 0.0) {
      ++f.excluded;
      continue;
    }
    ++f.counts[static_cast<std::size_t>(first_digit(v) - 1)];
    ++f.n;
  }
  return f;
}

inline DigitFrequencies first_digit_frequencies(const Sample& s) {
  return first_digit_frequencies(std::span<const double>(s.values));
}

// Pearson statistic against n * log10(1 + 1/d).
inline double chi_square_statistic(const DigitFrequencies& f) {
  if (f.n == 0) detail::fail(ErrorKind::EmptySample, "chi_square_statistic: no counted digits");
  const double n = static_cast<double>(f.n);
  double chi = 0.0;
  for (int d = 1; d <= 9; ++d) {
    const double expected = n * first_digit_law(d);
    const double diff = static_cast<double>(f.count(d)) - expected;
    chi += diff * diff / expected;
  }
  return chi;
}

// Mean absolute deviation of digit proportions from the first-digit law.
inline double mad_statistic(const DigitFrequencies& f) {
  if (f.n == 0) detail::fail(ErrorKind::EmptySample, "mad_statistic: no counted digits");
  double total = 0.0;
  for (int d = 1; d <= 9; ++d) total += std::fabs(f.proportion(d) - first_digit_law(d));
  return total / 9.0;
}

inline ConformanceReport conformance_report(std::span<const double> values) {
  ConformanceReport r;
  r.digit_freqs = first_digit_frequencies(values);
  if (r.digit_freqs.n == 0) detail::fail(ErrorKind::EmptySample, "sample has no nonzero values");
  r.n = r.digit_freqs.n;
  r.ks = ks_statistic(values);
  r.chi_square = chi_square_statistic(r.digit_freqs);
  r.mad = mad_statistic(r.digit_freqs);

  r.observed_min = std::numeric_limits<double>::infinity();
  r.observed_max = 0.0;
  for (double v : values) {
    if (v == 0.0) continue;
    const double a = std::fabs(v);
    r.observed_min = std::min(r.observed_min, a);
    r.observed_max = std::max(r.observed_max, a);
  }
  r.span_orders = std::log10(r.observed_max / r.observed_min);
  return r;
}

inline ConformanceReport conformance_report(const Sample& s) {
  return conformance_report(std::span<const double>(s.values));
}

}  // namespace benford
