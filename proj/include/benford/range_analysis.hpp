#pragma once

// Classification of a support range [a,b] by which Benford distributions it
// can carry:
//
//   b <  10a  Infeasible     the range misses some significands entirely
//   b == 10a  UniqueBenford  a * 10^U[0,1] is the only Benford law on it
//   b >  10a  Rich           X_c = (a+c) 10^U[0,1] is Benford for every c in
//                            (0, b/10 - a); Y_c = U[a+c, 10a+c] is not
//                            Benford for every c in (0, b - 10a)
//
// The comparison of b with 10a is exact (see RangeSpec::excess_over_decade).

#include <cmath>
#include <sstream>
#include <string>
#include <variant>

#include "benford/distributions.hpp"
#include "benford/error.hpp"
#include "benford/significand.hpp"

namespace benford {

// Open interval (lo, hi).
struct OpenInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double c) const noexcept { return c > lo && c < hi; }
  friend bool operator==(const OpenInterval&, const OpenInterval&) = default;
};

struct Infeasible {
  IntervalSet gap;
  friend bool operator==(const Infeasible&, const Infeasible&) = default;
};

struct UniqueBenford {
  DistributionSpec witness;
  friend bool operator==(const UniqueBenford&, const UniqueBenford&) = default;
};

struct Rich {
  OpenInterval benford_c;      // (0, b/10 - a)
  OpenInterval non_benford_c;  // (0, b - 10a)
  friend bool operator==(const Rich&, const Rich&) = default;
};

using RangeClassification = std::variant<Infeasible, UniqueBenford, Rich>;

inline const char* case_name(const RangeClassification& c) {
  switch (c.index()) {
    case 0: return "infeasible";
    case 1: return "unique-benford";
    default: return "rich";
  }
}

// Open c-intervals for the Rich case. b - 10a is formed with a single
// rounding, so it is positive exactly when b > 10a.
inline OpenInterval benford_c_interval(const RangeSpec& r) {
  return {0.0, r.excess_over_decade() / 10.0};
}

inline OpenInterval non_benford_c_interval(const RangeSpec& r) {
  return {0.0, r.excess_over_decade()};
}

// Significands a Benford variable must hit with positive probability but
// that no value in [a,b] has. Only defined for b < 10a.
inline IntervalSet infeasibility_certificate(const RangeSpec& range) {
  if (range.excess_over_decade() >= 0.0) {
    detail::fail(ErrorKind::WrongCase, "infeasibility_certificate: range spans a full decade (b >= 10a)");
  }
  return significand_image(range).complement();
}

inline RangeClassification classify_range(const RangeSpec& range) {
  const double excess = range.excess_over_decade();
  if (excess < 0.0) return Infeasible{infeasibility_certificate(range)};
  if (excess == 0.0) return UniqueBenford{ScaledBenford{range.a()}};
  return Rich{benford_c_interval(range), non_benford_c_interval(range)};
}

namespace detail {

inline void require_rich(const RangeSpec& range, const char* what) {
  if (!(range.excess_over_decade() > 0.0)) {
    std::ostringstream os;
    os << what << ": range [" << range.a() << ", " << range.b()
       << "] needs b > 10a; the c-interval is empty";
    fail(ErrorKind::ParameterOutOfRange, os.str());
  }
}

[[noreturn]] inline void c_out_of_range(const char* what, double c, const OpenInterval& valid) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": c = " << c << " outside the open interval (" << valid.lo << ", " << valid.hi << ")";
  fail(ErrorKind::ParameterOutOfRange, os.str());
}

}  // namespace detail

// X_c = (a+c) 10^U[0,1], supported on [a+c, 10(a+c)] inside [a,b].
inline DistributionSpec benford_witness(const RangeSpec& range, double c) {
  detail::require_rich(range, "benford_witness");
  const OpenInterval valid = benford_c_interval(range);
  if (!valid.contains(c)) detail::c_out_of_range("benford_witness", c, valid);
  const double scale = range.a() + c;
  // c within an ulp of the upper end can round the support past b.
  if (10.0 * scale > range.b()) detail::c_out_of_range("benford_witness", c, valid);
  return ScaledBenford{scale};
}

// Y_c = U[a+c, 10a+c], supported inside [a,b].
inline DistributionSpec non_benford_witness(const RangeSpec& range, double c) {
  detail::require_rich(range, "non_benford_witness");
  const OpenInterval valid = non_benford_c_interval(range);
  if (!valid.contains(c)) detail::c_out_of_range("non_benford_witness", c, valid);
  const double lo = range.a() + c;
  const double hi = std::fma(10.0, range.a(), c);
  if (hi > range.b() || !(lo < hi)) detail::c_out_of_range("non_benford_witness", c, valid);
  return BoundedUniform{lo, hi};
}

}  // namespace benford
