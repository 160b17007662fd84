#pragma once

// Decimal significand and significant-digit arithmetic.
//
// S(x) is the unique t in [1,10) with |x| = 10^k * t, and S(0) = 0. All
// routines here work from the exact value of the binary double: the decade
// exponent k is found by exact comparison against powers of ten, and t is
// the correctly rounded quotient |x| / 10^k. The only exception to correct
// rounding is at the top of a decade: when |x| / 10^k rounds up to 10.0 the
// largest double below 10 is returned instead, keeping t inside [1,10).

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "benford/error.hpp"

namespace benford {

namespace detail {

inline constexpr std::array<double, 23> kPow10 = {
    1e0,  1e1,  1e2,  1e3,  1e4,  1e5,  1e6,  1e7,  1e8,  1e9,  1e10, 1e11,
    1e12, 1e13, 1e14, 1e15, 1e16, 1e17, 1e18, 1e19, 1e20, 1e21, 1e22};

// Below 10.0 by one ulp.
inline constexpr double kBelowTen = 9.999999999999998;

inline void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) {
    fail(ErrorKind::Domain, std::string(what) + ": input must be finite");
  }
}

// Exact test of ax >= 10^k for ax > 0 and -22 <= k <= 22.
inline bool at_least_pow10(double ax, int k) {
  if (k >= 0) return ax >= kPow10[static_cast<std::size_t>(k)];
  const double scale = kPow10[static_cast<std::size_t>(-k)];
  const double p = ax * scale;
  if (p != 1.0) return p > 1.0;
  // p rounded to exactly 1; the residual carries the sign of ax*scale - 1.
  return std::fma(ax, scale, -1.0) >= 0.0;
}

// Window in which the table-driven path is exact. Outside it (including
// subnormals) the full decimal expansion is used.
inline bool in_fast_window(double ax) { return ax >= 1e-21 && ax < 1e21; }

// Exact decimal expansion of a finite nonzero double in scientific form,
// "d.ddd...e[+-]XX". 780 fractional digits exceed the longest exact
// expansion a double can have, so nothing is rounded.
inline std::string exact_scientific(double ax) {
  std::string buf(820, '\0');
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), ax,
                                 std::chars_format::scientific, 780);
  buf.resize(static_cast<std::size_t>(res.ptr - buf.data()));
  return buf;
}

inline int exponent_of(const std::string& sci) {
  const auto e = sci.find('e');
  int k = 0;
  const char* first = sci.data() + e + 1;
  if (*first == '+') ++first;
  std::from_chars(first, sci.data() + sci.size(), k);
  return k;
}

}  // namespace detail

// Exact decade exponent: the integer k with 10^k <= |x| < 10^(k+1).
// Requires x finite and nonzero.
inline int decade_exponent(double x) {
  detail::require_finite(x, "decade_exponent");
  if (x == 0.0) detail::fail(ErrorKind::Domain, "decade_exponent: zero has no decade");
  const double ax = std::fabs(x);
  if (!detail::in_fast_window(ax)) {
    return detail::exponent_of(detail::exact_scientific(ax));
  }
  int k = static_cast<int>(std::floor(std::log10(ax)));
  if (k < -21) k = -21;
  if (k > 21) k = 21;
  // log10 is off by at most one near decade boundaries.
  while (!detail::at_least_pow10(ax, k)) --k;
  while (k < 22 && detail::at_least_pow10(ax, k + 1)) ++k;
  return k;
}

inline double significand(double x) {
  detail::require_finite(x, "significand");
  if (x == 0.0) return 0.0;
  const double ax = std::fabs(x);
  double t = 0.0;
  if (detail::in_fast_window(ax)) {
    const int k = decade_exponent(ax);
    // One correctly rounded operation on exact operands.
    t = k >= 0 ? ax / detail::kPow10[static_cast<std::size_t>(k)]
               : ax * detail::kPow10[static_cast<std::size_t>(-k)];
  } else {
    const std::string sci = detail::exact_scientific(ax);
    const auto e = sci.find('e');
    std::from_chars(sci.data(), sci.data() + e, t);
  }
  return t < 10.0 ? t : detail::kBelowTen;
}

// Leading digit of S(x), 0 for x == 0. Agrees with digit(x, 1).
inline int first_digit(double x) {
  return static_cast<int>(significand(x));
}

// The position-th significant decimal digit of x (position 1 is leftmost).
// Digits are those of the shortest decimal string that reads back as S(x),
// so they depend on x only through S(x), and positions past that string
// are 0. Zero has digit 0 at every position.
inline int digit(double x, int position) {
  detail::require_finite(x, "digit");
  if (position < 1) detail::fail(ErrorKind::Domain, "digit: position must be >= 1");
  const double t = significand(x);
  if (t == 0.0) return 0;
  if (position == 1) return static_cast<int>(t);
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, t, std::chars_format::scientific);
  // buf = "d.ddde+00" or "de+00"; digit p sits at index p for p >= 2.
  const std::string_view sci(buf, static_cast<std::size_t>(res.ptr - buf));
  const auto e = sci.find('e');
  const auto idx = static_cast<std::size_t>(position);
  if (e < 2 || idx >= e) return 0;
  return sci[idx] - '0';
}

// log10(S(x)), the fractional part of log10|x|, in [0,1).
inline double log_mantissa(double x) {
  detail::require_finite(x, "log_mantissa");
  if (x == 0.0) detail::fail(ErrorKind::Domain, "log_mantissa: zero has no mantissa");
  const double m = std::log10(significand(x));
  return m < 1.0 ? m : std::nextafter(1.0, 0.0);
}

// A closed interval [a,b] with 0 < a < b.
class RangeSpec {
 public:
  RangeSpec(double a, double b) : a_(a), b_(b) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a > 0.0) || !(a < b)) {
      detail::fail(ErrorKind::Domain, "range must satisfy 0 < a < b with finite endpoints");
    }
  }

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }

  // Exact sign of b - 10a: fma rounds the difference once, which never
  // flips its sign or produces a spurious zero.
  double excess_over_decade() const noexcept { return std::fma(-10.0, a_, b_); }

  friend bool operator==(const RangeSpec&, const RangeSpec&) = default;

 private:
  double a_;
  double b_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(double t) const noexcept {
    const bool above = lo_closed ? t >= lo : t > lo;
    const bool below = hi_closed ? t <= hi : t < hi;
    return above && below;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

// Sorted, pairwise disjoint subintervals of [1,10).
struct IntervalSet {
  std::vector<Interval> intervals;

  bool empty() const noexcept { return intervals.empty(); }

  bool contains(double t) const noexcept {
    for (const auto& iv : intervals) {
      if (iv.contains(t)) return true;
    }
    return false;
  }

  bool covers_all_significands() const noexcept {
    return intervals.size() == 1 && intervals[0].lo == 1.0 && intervals[0].lo_closed &&
           intervals[0].hi == 10.0;
  }

  // [1,10) minus this set.
  IntervalSet complement() const {
    IntervalSet out;
    double cur = 1.0;
    bool cur_closed = true;
    for (const auto& iv : intervals) {
      if (cur < iv.lo || (cur == iv.lo && cur_closed && !iv.lo_closed)) {
        out.intervals.push_back({cur, iv.lo, cur_closed, !iv.lo_closed});
      }
      cur = iv.hi;
      cur_closed = !iv.hi_closed;
    }
    if (cur < 10.0) out.intervals.push_back({cur, 10.0, cur_closed, false});
    return out;
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
};

// {S(x) : x in [a,b]}. The full set [1,10) exactly when b >= 10a; otherwise
// one closed interval (a and b in the same decade) or two pieces wrapping
// around the decade boundary.
inline IntervalSet significand_image(const RangeSpec& range) {
  if (range.excess_over_decade() >= 0.0) return {{{1.0, 10.0, true, false}}};
  const double sa = significand(range.a());
  const double sb = significand(range.b());
  if (decade_exponent(range.a()) == decade_exponent(range.b())) {
    return {{{sa, sb, true, true}}};
  }
  // Adjacent decades with b < 10a, so S(b) < S(a) exactly. Rounding can
  // collapse the two when they are within an ulp; keep the pieces disjoint.
  const double upper_lo = sa > sb ? sa : std::nextafter(sb, 10.0);
  return {{{1.0, sb, true, true}, {upper_lo, 10.0, true, false}}};
}

// Orders of magnitude spanned by the range, log10(b/a).
inline double span_orders(const RangeSpec& range) {
  return std::log10(range.b() / range.a());
}

}  // namespace benford
