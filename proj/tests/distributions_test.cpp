#include "benford/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "benford/conformance.hpp"
#include "gtest/gtest.h"

namespace {

using benford::BoundedUniform;
using benford::DistributionSpec;
using benford::ErrorKind;
using benford::PaperDensity;
using benford::ScaledBenford;

// Frozen with mpmath at 30 digits.
constexpr double kLog2 = 0.30102999566398119521;
constexpr double kLog10Over9 = 0.045757490560675125410;
constexpr double kLogE = 0.43429448190325182765;
constexpr double kUniformDecadeKs = 0.26884344994772094717;  // log10(t*) - (t*-1)/9, t* = 9 log10 e
constexpr double kUniform73Ks = 0.17326220047913575236;      // U[73,730], stationary t = 6.57 log10 e

template <typename F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const benford::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected benford::Error";
  return ErrorKind::Usage;
}

// Sup distance between G and log10 found by scanning a dense grid. G is
// evaluated independently of the library: the fraction of a fine midpoint
// grid over [lo,hi] whose significand lies at or below t.
double grid_ks(double lo, double hi) {
  constexpr int kCells = 200000;
  std::vector<double> sig(kCells);
  for (int i = 0; i < kCells; ++i) sig[i] = benford::significand(lo + (hi - lo) * (i + 0.5) / kCells);
  std::sort(sig.begin(), sig.end());
  double worst = 0.0;
  for (int j = 0; j <= 4000; ++j) {
    const double t = 1.0 + 9.0 * j / 4000.0;
    const double g = static_cast<double>(std::upper_bound(sig.begin(), sig.end(), t) - sig.begin()) / kCells;
    worst = std::max(worst, std::fabs(g - std::log10(t)));
  }
  return worst;
}

TEST(BenfordLaw, Cdf) {
  EXPECT_EQ(benford::benford_cdf(1.0), 0.0);
  EXPECT_EQ(benford::benford_cdf(10.0), 1.0);
  EXPECT_NEAR(benford::benford_cdf(2.0), kLog2, 1e-16);
  EXPECT_EQ(kind_of([] { benford::benford_cdf(0.5); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { benford::benford_cdf(10.5); }), ErrorKind::Domain);
}

TEST(BenfordLaw, FirstDigitLaw) {
  EXPECT_NEAR(benford::first_digit_law(1), kLog2, 1e-16);
  EXPECT_NEAR(benford::first_digit_law(9), kLog10Over9, 1e-16);
  double total = 0.0;
  for (int d = 1; d <= 9; ++d) total += benford::first_digit_law(d);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_EQ(kind_of([] { benford::first_digit_law(0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { benford::first_digit_law(10); }), ErrorKind::Domain);
}

TEST(Specs, ValidationAndSupport) {
  EXPECT_EQ(kind_of([] { benford::scaled_benford(0.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { benford::scaled_benford(-1.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { benford::bounded_uniform(0.0, 1.0); }), ErrorKind::Domain);
  EXPECT_EQ(kind_of([] { benford::bounded_uniform(5.0, 5.0); }), ErrorKind::Domain);
  const auto s = benford::support(ScaledBenford{73.0});
  EXPECT_EQ(s.lo, 73.0);
  EXPECT_EQ(s.hi, 730.0);
  const auto p = benford::support(PaperDensity{});
  EXPECT_EQ(p.lo, 1.0);
  EXPECT_EQ(p.hi, 100.0);
  EXPECT_FALSE(p.contains(100.0));
}

TEST(PaperDensityTest, PdfValues) {
  EXPECT_EQ(benford::paper_density_pdf(1.0), 0.0);
  EXPECT_NEAR(benford::paper_density_pdf(10.0), 0.043429448190325183, 1e-17);
  EXPECT_EQ(benford::paper_density_pdf(150.0), 0.0);
  EXPECT_EQ(benford::paper_density_pdf(0.5), 0.0);
  EXPECT_EQ(benford::paper_density_pdf(100.0), 0.0);
}

TEST(PaperDensityTest, NormalizedAndCdfMatchesQuadrature) {
  using boost::math::quadrature::gauss_kronrod;
  const auto integral = [](double a, double b) {
    return gauss_kronrod<double, 61>::integrate(benford::paper_density_pdf, a, b, 15, 1e-15);
  };
  EXPECT_NEAR(integral(1.0, 10.0) + integral(10.0, 100.0), 1.0, 1e-9);
  for (double x : {1.5, 2.0, 5.0, 9.99, 10.0, 25.0, 60.0, 99.0}) {
    const double q = x <= 10.0 ? integral(1.0, x) : integral(1.0, 10.0) + integral(10.0, x);
    EXPECT_NEAR(benford::paper_density_cdf(x), q, 1e-12) << x;
  }
  EXPECT_EQ(benford::paper_density_cdf(1.0), 0.0);
  EXPECT_NEAR(benford::paper_density_cdf(100.0), 1.0, 1e-15);
}

TEST(PaperDensityTest, QuantileInvertsCdf) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 5000; ++i) {
    const double u = u01(gen);
    const double x = benford::paper_density_quantile(u);
    ASSERT_GE(x, 1.0);
    ASSERT_LT(x, 100.0);
    ASSERT_NEAR(benford::paper_density_cdf(x), u, 1e-12);
  }
  EXPECT_EQ(benford::paper_density_quantile(0.0), 1.0);
}

TEST(Fold, PaperDensityIsBenford) {
  EXPECT_NEAR(benford::fold_to_significand_density(PaperDensity{}, 2.0), 0.21714724095162591, 1e-15);
  EXPECT_NEAR(benford::fold_to_significand_density(PaperDensity{}, 1.0), kLogE, 1e-15);
  for (int i = 0; i < 10000; ++i) {
    const double t = 1.0 + 9.0 * i / 10000.0;
    ASSERT_NEAR(benford::fold_to_significand_density(PaperDensity{}, t), kLogE / t, 1e-12) << t;
  }
}

TEST(Fold, OtherFamilies) {
  for (double t : {1.0, 2.5, 9.9}) {
    EXPECT_NEAR(benford::fold_to_significand_density(BoundedUniform{1.0, 10.0}, t), 1.0 / 9.0, 1e-15);
    EXPECT_NEAR(benford::fold_to_significand_density(ScaledBenford{73.0}, t), kLogE / t, 1e-14);
  }
  // U[73,730]: 100/657 below 7.3, 10/657 above.
  EXPECT_NEAR(benford::fold_to_significand_density(BoundedUniform{73.0, 730.0}, 3.0), 100.0 / 657.0, 1e-14);
  EXPECT_NEAR(benford::fold_to_significand_density(BoundedUniform{73.0, 730.0}, 8.0), 10.0 / 657.0, 1e-14);
  EXPECT_EQ(kind_of([] { benford::fold_to_significand_density(PaperDensity{}, 10.0); }), ErrorKind::Domain);
}

TEST(ExactCdf, Examples) {
  for (double t : {1.0, 2.0, 3.9, 7.25, 10.0}) {
    EXPECT_NEAR(benford::exact_significand_cdf(BoundedUniform{1.0, 10.0}, t), (t - 1.0) / 9.0, 1e-15);
  }
  for (double m : {1e-7, 0.3, 1.0, 73.0, 5e9}) {
    EXPECT_NEAR(benford::exact_significand_cdf(ScaledBenford{m}, 2.0), kLog2, 1e-16);
  }
  EXPECT_EQ(benford::exact_significand_cdf(BoundedUniform{8.0, 20.0}, 10.0), 1.0);
  EXPECT_NEAR(benford::exact_significand_cdf(PaperDensity{}, 5.0), std::log10(5.0), 1e-16);
  EXPECT_EQ(kind_of([] { benford::exact_significand_cdf(PaperDensity{}, 0.9); }), ErrorKind::Domain);
}

TEST(ExactCdf, UniformMatchesGridMeasure) {
  const std::vector<std::pair<double, double>> ranges = {{8.0, 20.0}, {73.0, 730.0}, {0.02, 3.5}, {150.0, 151.0}};
  for (const auto& [lo, hi] : ranges) {
    constexpr int kCells = 100000;
    std::vector<double> sig(kCells);
    for (int i = 0; i < kCells; ++i) sig[i] = benford::significand(lo + (hi - lo) * (i + 0.5) / kCells);
    std::sort(sig.begin(), sig.end());
    for (double t : {1.2, 2.0, 4.5, 7.3, 9.5}) {
      const double grid = static_cast<double>(std::upper_bound(sig.begin(), sig.end(), t) - sig.begin()) / kCells;
      EXPECT_NEAR(benford::exact_significand_cdf(BoundedUniform{lo, hi}, t), grid, 2e-5) << lo << " " << t;
    }
  }
}

TEST(KsExact, Values) {
  EXPECT_EQ(benford::ks_distance_exact(ScaledBenford{1.0}), 0.0);
  EXPECT_EQ(benford::ks_distance_exact(ScaledBenford{73.0}), 0.0);
  EXPECT_EQ(benford::ks_distance_exact(PaperDensity{}), 0.0);
  EXPECT_NEAR(benford::ks_distance_exact(BoundedUniform{1.0, 10.0}), kUniformDecadeKs, 1e-12);
  EXPECT_NEAR(benford::ks_distance_exact(BoundedUniform{100.0, 1000.0}), kUniformDecadeKs, 1e-12);
  EXPECT_NEAR(benford::ks_distance_exact(BoundedUniform{1e-5, 1e-4}), kUniformDecadeKs, 1e-12);
  // Not the same for every a: only decade-aligned a repeat the U[1,10] law.
  EXPECT_NEAR(benford::ks_distance_exact(BoundedUniform{73.0, 730.0}), kUniform73Ks, 1e-12);
}

TEST(KsExact, AgreesWithGridScan) {
  std::mt19937_64 gen(29);
  std::uniform_real_distribution<double> log_lo(-3.0, 3.0);
  std::uniform_real_distribution<double> log_ratio(0.01, 2.0);
  for (int i = 0; i < 40; ++i) {
    const double lo = std::pow(10.0, log_lo(gen));
    const double hi = lo * std::pow(10.0, log_ratio(gen));
    const double exact = benford::ks_distance_exact(BoundedUniform{lo, hi});
    const double scan = grid_ks(lo, hi);
    EXPECT_GE(exact, scan - 1e-4) << lo << " " << hi;
    EXPECT_LE(exact, scan + 3e-3) << lo << " " << hi;
  }
}

TEST(KsExact, EveryUniformIsBoundedAwayFromBenford) {
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> log_lo(-5.0, 5.0);
  std::uniform_real_distribution<double> log_ratio(1e-4, 4.0);
  for (int i = 0; i < 10000; ++i) {
    const double lo = std::pow(10.0, log_lo(gen));
    const double hi = lo * std::pow(10.0, log_ratio(gen));
    ASSERT_GT(benford::ks_distance_exact(BoundedUniform{lo, hi}), 0.05) << lo << " " << hi;
  }
}

TEST(Sampling, SupportAndDeterminism) {
  const std::vector<DistributionSpec> specs = {ScaledBenford{73.0}, BoundedUniform{2.0, 11.0}, PaperDensity{},
                                               BoundedUniform{1.0, 10.0}, ScaledBenford{1e-9}};
  for (const auto& spec : specs) {
    const auto a = benford::sample(spec, 20000, 99);
    const auto b = benford::sample(spec, 20000, 99);
    ASSERT_EQ(a.values, b.values);
    const auto sup = benford::support(spec);
    for (double v : a.values) ASSERT_TRUE(sup.contains(v)) << benford::family_name(spec) << " " << v;
    const auto* prov = std::get_if<benford::GeneratedFrom>(&a.provenance);
    ASSERT_NE(prov, nullptr);
    EXPECT_EQ(prov->seed, 99u);
    EXPECT_EQ(prov->n, 20000u);
    EXPECT_EQ(prov->algorithm, "mt19937_64/top53");
    EXPECT_EQ(prov->spec, spec);
  }
  EXPECT_NE(benford::sample(ScaledBenford{1.0}, 10, 1).values, benford::sample(ScaledBenford{1.0}, 10, 2).values);
  EXPECT_EQ(kind_of([] { benford::sample(PaperDensity{}, 0, 1); }), ErrorKind::Domain);
}

TEST(Sampling, SplitStreamsAreDistinctAndStable) {
  const benford::SampleEngine root(5);
  auto a = root.split(1);
  auto b = root.split(1);
  auto c = root.split(2);
  const auto x = a.next_u64();
  EXPECT_EQ(x, b.next_u64());
  EXPECT_NE(x, c.next_u64());
}

// The empirical significand CDF of 10^6 draws stays within 0.005 of the
// exact law for every family.
TEST(Sampling, EmpiricalMatchesExactLaw) {
  const std::vector<DistributionSpec> specs = {ScaledBenford{1.0}, ScaledBenford{73.0}, BoundedUniform{1.0, 10.0},
                                               BoundedUniform{73.0, 730.0}, BoundedUniform{2.0, 11.0},
                                               PaperDensity{}};
  for (const auto& spec : specs) {
    const auto s = benford::sample(spec, 1000000, 20211);
    std::vector<double> sig;
    sig.reserve(s.values.size());
    for (double v : s.values) sig.push_back(benford::significand(v));
    std::sort(sig.begin(), sig.end());
    const double n = static_cast<double>(sig.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < sig.size(); i += 97) {
      const double f = benford::exact_significand_cdf(spec, sig[i]);
      worst = std::max({worst, std::fabs((i + 1) / n - f), std::fabs(i / n - f)});
    }
    EXPECT_LT(worst, 0.005) << benford::family_name(spec);
    EXPECT_LT(std::fabs(benford::ks_statistic(s) - benford::ks_distance_exact(spec)), 0.01)
        << benford::family_name(spec);
  }
}

TEST(Sampling, ScaleInvarianceOfBenfordDraws) {
  const auto s = benford::sample(ScaledBenford{1.0}, 1000000, 4242);
  for (double scale : {2.0, 3.7, 0.04, 1234.5}) {
    std::vector<double> scaled = s.values;
    for (double& v : scaled) v *= scale;
    EXPECT_LT(benford::ks_statistic(scaled), 0.003) << scale;
  }
}

}  // namespace
