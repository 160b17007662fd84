#pragma once

// End-to-end reproduction of the worked examples and the acceptance
// criteria, run by `benford verify-paper`. Every check records what it
// expected, what it observed and the tolerance used.
//
// Statistical bounds are stated for n = 10^6 draws; a smaller n widens them
// by sqrt(10^6 / n).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "benford/conformance.hpp"
#include "benford/distributions.hpp"
#include "benford/range_analysis.hpp"
#include "benford/significand.hpp"

namespace benford {

struct CheckResult {
  int criterion = 0;
  std::string name;
  std::string expected;
  std::string observed;
  std::string tolerance;
  bool passed = false;
};

struct VerifyOptions {
  std::size_t n = 1'000'000;
  std::uint64_t seed = 20211;
  std::size_t property_cases = 10'000;
};

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

class CheckLog {
 public:
  explicit CheckLog(std::vector<CheckResult>& out) : out_(out) {}

  void exact(int crit, std::string name, double expected, double observed) {
    out_.push_back({crit, std::move(name), num(expected), num(observed), "exact", expected == observed});
  }

  void near(int crit, std::string name, double expected, double observed, double tol) {
    out_.push_back({crit, std::move(name), num(expected), num(observed), "+/- " + num(tol),
                    std::fabs(expected - observed) <= tol});
  }

  void below(int crit, std::string name, double bound, double observed) {
    out_.push_back({crit, std::move(name), "< " + num(bound), num(observed), "bound", observed < bound});
  }

  void above(int crit, std::string name, double bound, double observed) {
    out_.push_back({crit, std::move(name), "> " + num(bound), num(observed), "bound", observed > bound});
  }

  void truth(int crit, std::string name, std::string expected, std::string observed, bool ok) {
    out_.push_back({crit, std::move(name), std::move(expected), std::move(observed), "exact", ok});
  }

 private:
  std::vector<CheckResult>& out_;
};

inline std::string describe_gap(const IntervalSet& s) {
  std::ostringstream os;
  os << std::setprecision(12);
  for (const auto& iv : s.intervals) {
    os << (iv.lo_closed ? "[" : "(") << iv.lo << "," << iv.hi << (iv.hi_closed ? "]" : ")");
  }
  return os.str();
}

// Membership by direct decade search, independent of significand_image.
inline bool attainable_significand(const RangeSpec& r, double t) {
  const int k_lo = decade_exponent(r.a()) - 1;
  const int k_hi = decade_exponent(r.b()) + 1;
  for (int k = k_lo; k <= k_hi; ++k) {
    const double x = t * std::pow(10.0, k);
    if (x >= r.a() && x <= r.b()) return true;
  }
  return false;
}

// 10^u for u uniform on [lo, hi).
inline double log_uniform(SampleEngine& eng, double lo, double hi) {
  return std::pow(10.0, lo + (hi - lo) * eng.uniform01());
}

inline double open_unit(SampleEngine& eng) {
  double u = 0.0;
  while (u == 0.0) u = eng.uniform01();
  return u;
}

inline void criterion_1(CheckLog& log) {
  log.exact(1, "S(2019) = 2.019", 2.019, significand(2019.0));
  log.exact(1, "S(0.02019) = 2.019", 2.019, significand(0.02019));
  log.exact(1, "S(-20.19) = 2.019", 2.019, significand(-20.19));
  log.exact(1, "S(0) = 0", 0.0, significand(0.0));
  const int expected_digits[] = {2, 0, 1, 9};
  for (int p = 1; p <= 4; ++p) {
    log.exact(1, "D" + std::to_string(p) + "(2019)", expected_digits[p - 1], digit(2019.0, p));
  }
  int nonzero_tail = 0;
  for (int p = 5; p <= 800; ++p) nonzero_tail += digit(2019.0, p) != 0;
  log.exact(1, "D_k(2019) = 0 for 4 < k <= 800", 0, nonzero_tail);
  log.exact(1, "D1(0.0219) = 2", 2, digit(0.0219, 1));
  log.exact(1, "D1(-20.19) = 2", 2, digit(-20.19, 1));
  log.exact(1, "S(-0.0219) = S(0.0219)", significand(0.0219), significand(-0.0219));
  log.exact(1, "S(0.0219) = S(2.19)", significand(2.19), significand(0.0219));
  log.exact(1, "S(-20.19) = S(2019)", significand(2019.0), significand(-20.19));
  log.exact(1, "D1(-0.0219) = D1(219)", digit(219.0, 1), digit(-0.0219, 1));
}

inline void criterion_2(CheckLog& log) {
  {
    const RangeSpec r(100.0, 999.0);
    const auto c = classify_range(r);
    const auto* inf = std::get_if<Infeasible>(&c);
    const IntervalSet want{{{9.99, 10.0, false, false}}};
    log.truth(2, "[100,999] infeasible, gap (9.99,10)", "infeasible " + describe_gap(want),
              std::string(case_name(c)) + (inf ? " " + describe_gap(inf->gap) : ""), inf && inf->gap == want);
  }
  {
    const RangeSpec r(73.0, 729.99);
    const auto c = classify_range(r);
    const auto* inf = std::get_if<Infeasible>(&c);
    const IntervalSet want{{{7.2999, 7.3, false, false}}};
    log.truth(2, "[73,729.99] infeasible, gap (7.2999,7.3)", "infeasible " + describe_gap(want),
              std::string(case_name(c)) + (inf ? " " + describe_gap(inf->gap) : ""), inf && inf->gap == want);
  }
  {
    const auto c = classify_range(RangeSpec(73.0, 730.0));
    const auto* uni = std::get_if<UniqueBenford>(&c);
    const bool ok = uni && uni->witness == DistributionSpec(ScaledBenford{73.0});
    log.truth(2, "[73,730] unique Benford, witness scale 73", "unique-benford scale=73", case_name(c), ok);
  }
  {
    const auto c = classify_range(RangeSpec(100.0, 1000.0));
    const auto* uni = std::get_if<UniqueBenford>(&c);
    const bool ok = uni && uni->witness == DistributionSpec(ScaledBenford{100.0});
    log.truth(2, "[100,1000] unique Benford, witness scale 100", "unique-benford scale=100", case_name(c), ok);
  }
  {
    const auto c = classify_range(RangeSpec(100.0, 1000.0001));
    const auto* rich = std::get_if<Rich>(&c);
    log.truth(2, "[100,1000.0001] rich", "rich", case_name(c), rich != nullptr);
    if (rich) {
      // 1000.0001 is not a double; its rounding moves b - 10a by 2.5e-14.
      log.exact(2, "benford c-interval lower end", 0.0, rich->benford_c.lo);
      log.near(2, "benford c-interval upper end", 1e-5, rich->benford_c.hi, 1e-14);
      log.exact(2, "non-benford c-interval lower end", 0.0, rich->non_benford_c.lo);
      log.near(2, "non-benford c-interval upper end", 1e-4, rich->non_benford_c.hi, 1e-13);
    }
  }
  {
    const auto c = classify_range(RangeSpec(73.0, 730.01));
    log.truth(2, "[73,730.01] rich", "rich", case_name(c), std::holds_alternative<Rich>(c));
  }
}

inline void criterion_3(CheckLog& log, const VerifyOptions& opt, double widen) {
  const Sample s = sample(ScaledBenford{73.0}, opt.n, opt.seed);
  const auto report = conformance_report(s);
  log.below(3, "ks of ScaledBenford(73) sample", 0.003 * widen, report.ks);
  log.truth(3, "span_orders of the same sample <= 1", "<= 1", num(report.span_orders), report.span_orders <= 1.0);
  const Support sup = support(ScaledBenford{73.0});
  const bool inside = std::all_of(s.values.begin(), s.values.end(), [&](double v) { return sup.contains(v); });
  log.truth(3, "all ScaledBenford(73) draws in [73,730]", "true", inside ? "true" : "false", inside);
}

inline void criterion_4(CheckLog& log, const VerifyOptions& opt, double widen) {
  constexpr double kUniformDecadeKs = 0.26884;
  for (double a : {1.0, 73.0, 100.0}) {
    const DistributionSpec spec = BoundedUniform{a, 10.0 * a};
    const double exact = ks_distance_exact(spec);
    log.near(4, "exact ks of U[" + num(a) + "," + num(10 * a) + "]", kUniformDecadeKs, exact, 0.0005);
    const double empirical = ks_statistic(sample(spec, opt.n, opt.seed));
    log.near(4, "empirical ks of U[" + num(a) + "," + num(10 * a) + "] vs exact", exact, empirical, 0.01 * widen);
  }
  const double t_star = 9.0 * kLog10E;
  log.near(4, "U[1,10] deviation at t* = 9 log10 e", kUniformDecadeKs,
           std::log10(t_star) - exact_significand_cdf(BoundedUniform{1.0, 10.0}, t_star), 0.0005);
}

inline void criterion_5(CheckLog& log, const VerifyOptions& opt, double widen) {
  using boost::math::quadrature::gauss_kronrod;
  const double lower = gauss_kronrod<double, 61>::integrate(paper_density_pdf, 1.0, 10.0, 15, 1e-15);
  const double upper = gauss_kronrod<double, 61>::integrate(paper_density_pdf, 10.0, 100.0, 15, 1e-15);
  log.near(5, "integral of paper density over [1,100)", 1.0, lower + upper, 1e-9);

  double worst = 0.0;
  constexpr int kGrid = 10'000;
  for (int i = 0; i < kGrid; ++i) {
    const double t = 1.0 + 9.0 * i / kGrid;
    worst = std::max(worst, std::fabs(fold_to_significand_density(PaperDensity{}, t) - kLog10E / t));
  }
  log.below(5, "max |fold(t) - log10(e)/t| on 10^4 grid", 1e-12, worst);

  const Sample s = sample(PaperDensity{}, opt.n, opt.seed);
  log.below(5, "ks of paper-density draws", 0.003 * widen, ks_statistic(s));
  const bool inside = std::all_of(s.values.begin(), s.values.end(), [](double v) { return v >= 1.0 && v < 100.0; });
  log.truth(5, "paper-density draws in [1,100)", "true", inside ? "true" : "false", inside);
}

inline void criterion_6(CheckLog& log, const VerifyOptions& opt, double widen) {
  double total = 0.0;
  for (int d = 1; d <= 9; ++d) total += first_digit_law(d);
  log.near(6, "sum of first-digit law", 1.0, total, 1e-12);
  const auto freqs = first_digit_frequencies(sample(ScaledBenford{1.0}, opt.n, opt.seed));
  for (int d = 1; d <= 9; ++d) {
    log.near(6, "frequency of first digit " + std::to_string(d), first_digit_law(d), freqs.proportion(d),
             0.002 * widen);
  }
  log.below(6, "mad of Benford draws", 0.002 * widen, mad_statistic(freqs));
}

inline void criterion_7(CheckLog& log, const VerifyOptions& opt, double widen) {
  const Sample base = sample(ScaledBenford{1.0}, opt.n, opt.seed);
  const double ks0 = ks_statistic(base);
  for (double s : {2.0, 3.7, 10.0, 0.04}) {
    std::vector<double> scaled = base.values;
    for (double& v : scaled) v *= s;
    const double ks = ks_statistic(scaled);
    log.below(7, "|ks change| after scaling by " + num(s), 0.005 * widen, std::fabs(ks - ks0));
    if (s == 10.0) log.exact(7, "ks after scaling by 10 (bit-level)", ks0, ks);
  }
}

struct PropertyTally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  void record(bool ok) {
    ++cases;
    failures += ok ? 0 : 1;
  }
};

inline void criterion_8(CheckLog& log, const VerifyOptions& opt) {
  const SampleEngine root(opt.seed);
  const std::size_t cases = opt.property_cases;

  {
    SampleEngine eng = root.split(1);
    PropertyTally idem, decade, recon;
    for (std::size_t i = 0; i < cases; ++i) {
      // Wide-exponent values, subnormals included.
      const double x = (eng.uniform01() < 0.5 ? -1.0 : 1.0) * (1.0 + 9.0 * eng.uniform01()) *
                       std::pow(10.0, std::floor(-320.0 + 628.0 * eng.uniform01()));
      if (x != 0.0 && std::isfinite(x)) {
        const double s = significand(x);
        idem.record(significand(s) == s && significand(-x) == s && s >= 1.0 && s < 10.0);
      }
      // Exactly representable decade shift: m * 2^-j times 10^k, m < 2^40.
      const double m = std::floor(1.0 + eng.uniform01() * 0x1.0p40);
      const double base = std::ldexp(m, -static_cast<int>(eng.next_u64() % 60));
      const int k = 1 + static_cast<int>(eng.next_u64() % 3);
      const double shifted = base * std::pow(10.0, k);
      decade.record(significand(shifted) == significand(base));
      // Reconstruction within one ulp, moderate exponents.
      const double y = (1.0 + 9.0 * eng.uniform01()) * std::pow(10.0, std::floor(-20.0 + 40.0 * eng.uniform01()));
      const int ky = decade_exponent(y);
      const long double back = static_cast<long double>(significand(y)) * std::pow(10.0L, ky);
      const long double ulp = std::nextafter(y, std::numeric_limits<double>::infinity()) - y;
      recon.record(std::fabs(back - static_cast<long double>(y)) <= ulp);
    }
    log.exact(8, "significand idempotence and sign (" + std::to_string(idem.cases) + " cases)", 0, idem.failures);
    log.exact(8, "significand decade invariance (" + std::to_string(decade.cases) + " cases)", 0, decade.failures);
    log.exact(8, "significand reconstruction (" + std::to_string(recon.cases) + " cases)", 0, recon.failures);
  }

  {
    SampleEngine eng = root.split(2);
    PropertyTally coverage;
    for (std::size_t i = 0; i < cases; ++i) {
      const double a = log_uniform(eng, -6.0, 6.0);
      const RangeSpec r(a, a * log_uniform(eng, 0.001, 2.0));
      const IntervalSet image = significand_image(r);
      bool ok = image.covers_all_significands() == (span_orders(r) >= 1.0);
      constexpr int kGrid = 200;
      for (int j = 0; j < kGrid && ok; ++j) {
        const double t = 1.0 + 9.0 * (j + 0.5) / kGrid;
        ok = image.contains(t) == attainable_significand(r, t);
      }
      coverage.record(ok);
    }
    log.exact(8, "image coverage vs brute-force grid (" + std::to_string(coverage.cases) + " cases)", 0,
              coverage.failures);
  }

  {
    SampleEngine eng = root.split(3);
    PropertyTally witness;
    for (std::size_t i = 0; i < cases; ++i) {
      const double a = log_uniform(eng, -3.0, 3.0);
      // Spans from barely over one decade to 2.5 decades.
      const double b = i % 2 == 0 ? 10.0 * a * (1.0 + log_uniform(eng, -6.0, 0.0)) : a * log_uniform(eng, 1.0, 2.5);
      const RangeSpec r(a, b);
      if (!(r.excess_over_decade() > 0.0)) continue;
      const auto x = benford_witness(r, open_unit(eng) * benford_c_interval(r).hi);
      const auto y = non_benford_witness(r, open_unit(eng) * non_benford_c_interval(r).hi);
      const Support sx = support(x);
      const Support sy = support(y);
      witness.record(sx.lo >= a && sx.hi <= b && sy.lo >= a && sy.hi <= b && ks_distance_exact(x) == 0.0 &&
                     ks_distance_exact(y) > 0.05);
    }
    log.exact(8, "witness validity (" + std::to_string(witness.cases) + " cases)", 0, witness.failures);
  }

  {
    SampleEngine eng = root.split(4);
    PropertyTally det;
    for (std::size_t i = 0; i < cases; ++i) {
      DistributionSpec spec;
      switch (i % 3) {
        case 0: spec = ScaledBenford{log_uniform(eng, -5.0, 5.0)}; break;
        case 1: {
          const double lo = log_uniform(eng, -5.0, 5.0);
          spec = BoundedUniform{lo, lo * log_uniform(eng, 0.01, 3.0)};
          break;
        }
        default: spec = PaperDensity{}; break;
      }
      const std::uint64_t seed = eng.next_u64();
      const Sample first = sample(spec, 32, seed);
      const Sample second = sample(spec, 32, seed);
      const Support sup = support(spec);
      const bool inside = std::all_of(first.values.begin(), first.values.end(), [&](double v) { return sup.contains(v); });
      det.record(first.values == second.values && inside);
    }
    log.exact(8, "sampling determinism and support (" + std::to_string(det.cases) + " cases)", 0, det.failures);
  }
}

}  // namespace detail

inline std::vector<CheckResult> run_paper_checks(const VerifyOptions& opt = {}) {
  std::vector<CheckResult> out;
  detail::CheckLog log(out);
  const double widen = std::max(1.0, std::sqrt(1e6 / static_cast<double>(std::max<std::size_t>(opt.n, 1))));
  detail::criterion_1(log);
  detail::criterion_2(log);
  detail::criterion_3(log, opt, widen);
  detail::criterion_4(log, opt, widen);
  detail::criterion_5(log, opt, widen);
  detail::criterion_6(log, opt, widen);
  detail::criterion_7(log, opt, widen);
  detail::criterion_8(log, opt);
  return out;
}

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

inline std::string format_checks(const std::vector<CheckResult>& checks) {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::ostringstream os;
  os << std::left << "crit  " << std::setw(static_cast<int>(width)) << "check"
     << "  " << std::setw(26) << "expected" << "  " << std::setw(26) << "observed" << "  " << std::setw(14)
     << "tolerance" << "  result\n";
  for (const auto& c : checks) {
    os << std::setw(6) << c.criterion << std::setw(static_cast<int>(width)) << c.name << "  " << std::setw(26)
       << c.expected << "  " << std::setw(26) << c.observed << "  " << std::setw(14) << c.tolerance << "  "
       << (c.passed ? "PASS" : "FAIL") << "\n";
  }
  std::size_t failed = 0;
  for (const auto& c : checks) failed += c.passed ? 0 : 1;
  os << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  return os.str();
}

}  // namespace benford
