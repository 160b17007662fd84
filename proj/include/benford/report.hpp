#pragma once

// JSON and plain-text rendering of conformance reports and range
// classifications. The JSON form is versioned and round-trips losslessly:
// doubles are written in shortest round-trip form and keys are ordered.

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "benford/conformance.hpp"
#include "benford/distributions.hpp"
#include "benford/range_analysis.hpp"
#include "benford/significand.hpp"

namespace benford {

inline constexpr const char* kReportVersion = "benford-report/1";

struct ColumnReport {
  std::string name;
  std::uint64_t skipped = 0;
  ConformanceReport report;
  std::optional<RangeClassification> classification;  // of the observed range

  friend bool operator==(const ColumnReport&, const ColumnReport&) = default;
};

struct CommandRecord {
  std::string name;
  std::vector<std::string> arguments;

  friend bool operator==(const CommandRecord&, const CommandRecord&) = default;
};

struct ReportDocument {
  std::string version = kReportVersion;
  CommandRecord command;
  std::vector<ColumnReport> columns;
  std::optional<RangeSpec> range;  // classify only
  std::optional<RangeClassification> classification;
  nlohmann::json provenance = nlohmann::json::object();

  friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

// ---------------------------------------------------------------------------
// to_json / from_json (found by ADL from nlohmann::json)

inline void to_json(nlohmann::json& j, const DigitFrequencies& f) {
  j = {{"counts", f.counts}, {"n", f.n}, {"excluded", f.excluded}};
}

inline void from_json(const nlohmann::json& j, DigitFrequencies& f) {
  j.at("counts").get_to(f.counts);
  j.at("n").get_to(f.n);
  j.at("excluded").get_to(f.excluded);
}

inline void to_json(nlohmann::json& j, const ConformanceReport& r) {
  j = {{"n", r.n},
       {"digit_freqs", r.digit_freqs},
       {"ks", r.ks},
       {"chi_square", r.chi_square},
       {"mad", r.mad},
       {"span_orders", r.span_orders},
       {"observed_range", {r.observed_min, r.observed_max}}};
}

inline void from_json(const nlohmann::json& j, ConformanceReport& r) {
  j.at("n").get_to(r.n);
  j.at("digit_freqs").get_to(r.digit_freqs);
  j.at("ks").get_to(r.ks);
  j.at("chi_square").get_to(r.chi_square);
  j.at("mad").get_to(r.mad);
  j.at("span_orders").get_to(r.span_orders);
  r.observed_min = j.at("observed_range").at(0).get<double>();
  r.observed_max = j.at("observed_range").at(1).get<double>();
}

inline void to_json(nlohmann::json& j, const DistributionSpec& spec) {
  j = {{"family", family_name(spec)}};
  if (const auto* s = std::get_if<ScaledBenford>(&spec)) {
    j["scale"] = s->scale;
  } else if (const auto* u = std::get_if<BoundedUniform>(&spec)) {
    j["lo"] = u->lo;
    j["hi"] = u->hi;
  }
}

inline void from_json(const nlohmann::json& j, DistributionSpec& spec) {
  const auto family = j.at("family").get<std::string>();
  if (family == "scaled-benford") {
    spec = ScaledBenford{j.at("scale").get<double>()};
  } else if (family == "uniform") {
    spec = BoundedUniform{j.at("lo").get<double>(), j.at("hi").get<double>()};
  } else if (family == "paper-density") {
    spec = PaperDensity{};
  } else {
    throw nlohmann::json::other_error::create(501, "unknown distribution family " + family, &j);
  }
}

inline void to_json(nlohmann::json& j, const Interval& iv) {
  j = {{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}};
}

inline void from_json(const nlohmann::json& j, Interval& iv) {
  j.at("lo").get_to(iv.lo);
  j.at("hi").get_to(iv.hi);
  j.at("lo_closed").get_to(iv.lo_closed);
  j.at("hi_closed").get_to(iv.hi_closed);
}

inline void to_json(nlohmann::json& j, const IntervalSet& s) { j = s.intervals; }
inline void from_json(const nlohmann::json& j, IntervalSet& s) { j.get_to(s.intervals); }

inline void to_json(nlohmann::json& j, const OpenInterval& iv) { j = {{"lo", iv.lo}, {"hi", iv.hi}}; }

inline void from_json(const nlohmann::json& j, OpenInterval& iv) {
  j.at("lo").get_to(iv.lo);
  j.at("hi").get_to(iv.hi);
}

inline void to_json(nlohmann::json& j, const RangeClassification& c) {
  j = {{"case", case_name(c)}};
  if (const auto* inf = std::get_if<Infeasible>(&c)) {
    j["gap"] = inf->gap;
  } else if (const auto* uni = std::get_if<UniqueBenford>(&c)) {
    j["witness"] = uni->witness;
  } else {
    const auto& rich = std::get<Rich>(c);
    j["benford_c"] = rich.benford_c;
    j["non_benford_c"] = rich.non_benford_c;
  }
}

inline void from_json(const nlohmann::json& j, RangeClassification& c) {
  const auto name = j.at("case").get<std::string>();
  if (name == "infeasible") {
    c = Infeasible{j.at("gap").get<IntervalSet>()};
  } else if (name == "unique-benford") {
    c = UniqueBenford{j.at("witness").get<DistributionSpec>()};
  } else if (name == "rich") {
    c = Rich{j.at("benford_c").get<OpenInterval>(), j.at("non_benford_c").get<OpenInterval>()};
  } else {
    throw nlohmann::json::other_error::create(501, "unknown classification case " + name, &j);
  }
}

inline void to_json(nlohmann::json& j, const ColumnReport& c) {
  j = {{"name", c.name}, {"skipped", c.skipped}, {"report", c.report}};
  if (c.classification) j["classification"] = *c.classification;
}

inline void from_json(const nlohmann::json& j, ColumnReport& c) {
  j.at("name").get_to(c.name);
  j.at("skipped").get_to(c.skipped);
  j.at("report").get_to(c.report);
  if (j.contains("classification")) c.classification = j.at("classification").get<RangeClassification>();
}

inline void to_json(nlohmann::json& j, const ReportDocument& d) {
  j = {{"version", d.version},
       {"command", {{"name", d.command.name}, {"arguments", d.command.arguments}}},
       {"columns", d.columns},
       {"provenance", d.provenance}};
  if (d.range) j["range"] = {{"a", d.range->a()}, {"b", d.range->b()}};
  if (d.classification) j["classification"] = *d.classification;
}

inline void from_json(const nlohmann::json& j, ReportDocument& d) {
  j.at("version").get_to(d.version);
  j.at("command").at("name").get_to(d.command.name);
  j.at("command").at("arguments").get_to(d.command.arguments);
  j.at("columns").get_to(d.columns);
  d.provenance = j.at("provenance");
  if (j.contains("range")) d.range = RangeSpec(j.at("range").at("a").get<double>(), j.at("range").at("b").get<double>());
  if (j.contains("classification")) d.classification = j.at("classification").get<RangeClassification>();
}

inline nlohmann::json provenance_json(const Provenance& p) {
  if (const auto* g = std::get_if<GeneratedFrom>(&p)) {
    return {{"spec", g->spec}, {"seed", g->seed}, {"n", g->n}, {"algorithm", g->algorithm}};
  }
  return {{"source", std::get<ExternalSource>(p).source}};
}

inline std::string to_json_text(const ReportDocument& d) { return nlohmann::json(d).dump(2) + "\n"; }

inline ReportDocument parse_report(const std::string& text) {
  return nlohmann::json::parse(text).get<ReportDocument>();
}

// ---------------------------------------------------------------------------
// Plain text

namespace detail {

inline std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline std::string describe(const Interval& iv) {
  return std::string(iv.lo_closed ? "[" : "(") + fmt(iv.lo, 10) + ", " + fmt(iv.hi, 10) + (iv.hi_closed ? "]" : ")");
}

inline std::string describe(const DistributionSpec& spec) {
  if (const auto* s = std::get_if<ScaledBenford>(&spec)) return "scaled-benford(scale=" + fmt(s->scale, 17) + ")";
  if (const auto* u = std::get_if<BoundedUniform>(&spec)) {
    return "uniform(lo=" + fmt(u->lo, 17) + ", hi=" + fmt(u->hi, 17) + ")";
  }
  return "paper-density";
}

inline void write_classification(std::ostream& os, const RangeClassification& c) {
  os << "  case: " << case_name(c) << "\n";
  if (const auto* inf = std::get_if<Infeasible>(&c)) {
    os << "  unattainable significands:";
    for (const auto& iv : inf->gap.intervals) os << " " << describe(iv);
    os << "\n";
  } else if (const auto* uni = std::get_if<UniqueBenford>(&c)) {
    os << "  witness: " << describe(uni->witness) << "\n";
  } else {
    const auto& rich = std::get<Rich>(c);
    os << "  benford c-interval:     (" << fmt(rich.benford_c.lo, 10) << ", " << fmt(rich.benford_c.hi, 10) << ")\n";
    os << "  non-benford c-interval: (" << fmt(rich.non_benford_c.lo, 10) << ", " << fmt(rich.non_benford_c.hi, 10)
       << ")\n";
  }
}

}  // namespace detail

inline std::string to_text(const ReportDocument& d) {
  std::ostringstream os;
  if (d.range) {
    os << "range [" << detail::fmt(d.range->a(), 17) << ", " << detail::fmt(d.range->b(), 17) << "]\n";
    os << "  span_orders: " << detail::fmt(span_orders(*d.range), 10) << "\n";
  }
  if (d.classification) detail::write_classification(os, *d.classification);
  for (const auto& col : d.columns) {
    const auto& r = col.report;
    os << "column " << col.name << "\n";
    os << "  n           " << r.n << "\n";
    os << "  zeros       " << r.digit_freqs.excluded << "\n";
    os << "  skipped     " << col.skipped << "\n";
    os << "  ks          " << detail::fmt(r.ks) << "\n";
    os << "  chi_square  " << detail::fmt(r.chi_square) << "\n";
    os << "  mad         " << detail::fmt(r.mad) << "\n";
    os << "  range       [" << detail::fmt(r.observed_min, 10) << ", " << detail::fmt(r.observed_max, 10) << "]\n";
    os << "  span_orders " << detail::fmt(r.span_orders) << "\n";
    os << "  digit  count      observed  benford\n";
    for (int dgt = 1; dgt <= 9; ++dgt) {
      os << "  " << std::setw(5) << dgt << "  " << std::left << std::setw(9) << r.digit_freqs.count(dgt) << "  "
         << std::setw(8) << std::fixed << std::setprecision(5) << r.digit_freqs.proportion(dgt) << "  "
         << first_digit_law(dgt) << std::right << std::defaultfloat << "\n";
    }
    if (col.classification) {
      os << "  observed-range classification\n";
      std::ostringstream inner;
      detail::write_classification(inner, *col.classification);
      std::istringstream lines(inner.str());
      for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    }
  }
  return os.str();
}

}  // namespace benford
