#pragma once

// Command-line front end: analyze, sample, classify, verify-paper.
//
// run() never writes to the process streams itself; it returns the exit
// code together with the complete stdout and stderr text, which main()
// writes once.

#include <charconv>
#include <fstream>
#include <cstdint>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "benford/conformance.hpp"
#include "benford/distributions.hpp"
#include "benford/error.hpp"
#include "benford/ingest.hpp"
#include "benford/range_analysis.hpp"
#include "benford/report.hpp"
#include "benford/verification.hpp"

namespace benford::cli {

struct Outcome {
  int exit_code = 0;
  std::string out;
  std::string err;
};

inline constexpr int kVerificationFailed = 1;

namespace detail {

inline std::string shortest(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline ColumnReport analyze_column(const std::string& path, const std::string& column, InputFormat format) {
  DatasetColumn data = ingest(path, column, format);
  ColumnReport col;
  col.name = data.name;
  col.skipped = data.skipped;
  col.report = conformance_report(std::span<const double>(data.values));
  if (col.report.observed_min < col.report.observed_max) {
    col.classification = classify_range(RangeSpec(col.report.observed_min, col.report.observed_max));
  }
  return col;
}

inline std::string render(const ReportDocument& doc, const std::string& output) {
  return output == "json" ? to_json_text(doc) : to_text(doc);
}

}  // namespace detail

struct AnalyzeArgs {
  std::string path;
  std::vector<std::string> columns;
  std::string format = "csv";
  std::string output = "json";
};

// Columns are analyzed concurrently; the document is assembled in the
// order the columns were requested.
inline ReportDocument cmd_analyze(const AnalyzeArgs& args, std::vector<std::string> argv) {
  const InputFormat format = args.format == "jsonl" ? InputFormat::Jsonl : InputFormat::Csv;
  std::vector<std::string> columns = args.columns;
  if (columns.empty()) columns.emplace_back();

  std::vector<std::future<ColumnReport>> pending;
  for (const auto& column : columns) {
    pending.push_back(std::async(std::launch::async, detail::analyze_column, args.path, column, format));
  }
  ReportDocument doc;
  doc.command = {"analyze", std::move(argv)};
  for (auto& f : pending) doc.columns.push_back(f.get());
  doc.provenance = {{"source", args.path}, {"format", args.format}};
  return doc;
}

struct SampleArgs {
  std::string family;
  std::size_t n = 1000;
  std::uint64_t seed = 0;
  std::optional<double> scale, lo, hi, a, b, c;
  std::string out;  // empty: stdout
};

inline DistributionSpec spec_from(const SampleArgs& args) {
  const auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) benford::detail::fail(ErrorKind::Usage, args.family + " requires " + flag);
    return *v;
  };
  if (args.family == "scaled-benford") return scaled_benford(need(args.scale, "--scale"));
  if (args.family == "uniform") return bounded_uniform(need(args.lo, "--lo"), need(args.hi, "--hi"));
  if (args.family == "paper-density") return PaperDensity{};
  const RangeSpec range(need(args.a, "--a"), need(args.b, "--b"));
  if (args.family == "benford-witness") return benford_witness(range, need(args.c, "--c"));
  if (args.family == "non-benford-witness") return non_benford_witness(range, need(args.c, "--c"));
  benford::detail::fail(ErrorKind::Usage, "unknown family '" + args.family + "'");
}

// One value per line after a '#' header recording spec, seed and n.
inline std::string cmd_sample(const SampleArgs& args) {
  const DistributionSpec spec = spec_from(args);
  const Sample s = sample(spec, args.n, args.seed);
  std::string text = "# benford sample " + nlohmann::json(spec).dump() + " seed=" + std::to_string(args.seed) +
                     " n=" + std::to_string(args.n) + " algorithm=" + std::string(SampleEngine::kAlgorithm) + "\n";
  text += "value\n";
  for (double v : s.values) {
    text += detail::shortest(v);
    text += '\n';
  }
  return text;
}

inline ReportDocument cmd_classify(double a, double b, std::vector<std::string> argv) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    benford::detail::fail(ErrorKind::Usage, "classify needs 0 < a < b");
  }
  ReportDocument doc;
  doc.command = {"classify", std::move(argv)};
  doc.range = RangeSpec(a, b);
  doc.classification = classify_range(*doc.range);
  doc.provenance = {{"source", "command-line"}};
  return doc;
}

inline Outcome run(const std::vector<std::string>& argv) {
  CLI::App app{"Benford's law significand analysis"};
  app.require_subcommand(1);

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Conformance report for numeric columns of a file");
  analyze_cmd->add_option("path", analyze.path, "Input file")->required();
  analyze_cmd->add_option("--column", analyze.columns, "Column name or 0-based index (repeatable)");
  analyze_cmd->add_option("--format", analyze.format, "Input format")->check(CLI::IsMember({"csv", "jsonl"}));
  analyze_cmd->add_option("--output", analyze.output, "Report format")->check(CLI::IsMember({"json", "text"}));

  SampleArgs sample_args;
  auto* sample_cmd = app.add_subcommand("sample", "Draw values from a distribution family");
  sample_cmd
      ->add_option("family", sample_args.family,
                   "scaled-benford | uniform | paper-density | benford-witness | non-benford-witness")
      ->required();
  sample_cmd->add_option("--n", sample_args.n, "Number of draws")->check(CLI::PositiveNumber);
  sample_cmd->add_option("--seed", sample_args.seed, "64-bit seed");
  sample_cmd->add_option("--scale", sample_args.scale);
  sample_cmd->add_option("--lo", sample_args.lo);
  sample_cmd->add_option("--hi", sample_args.hi);
  sample_cmd->add_option("--a", sample_args.a);
  sample_cmd->add_option("--b", sample_args.b);
  sample_cmd->add_option("--c", sample_args.c);
  sample_cmd->add_option("-o,--out", sample_args.out, "Output file (default stdout)");

  std::optional<double> pos_a, pos_b, flag_a, flag_b;
  std::string classify_output = "json";
  auto* classify_cmd = app.add_subcommand("classify", "Classify a support range [a,b]");
  classify_cmd->add_option("lower", pos_a, "Lower end a");
  classify_cmd->add_option("upper", pos_b, "Upper end b");
  classify_cmd->add_option("--a", flag_a);
  classify_cmd->add_option("--b", flag_b);
  classify_cmd->add_option("--output", classify_output)->check(CLI::IsMember({"json", "text"}));

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Reproduce the worked examples and acceptance checks");
  verify_cmd->add_option("--n", verify.n, "Draws per Monte Carlo check")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify.seed);
  verify_cmd->add_option("--cases", verify.property_cases, "Cases per property suite")->check(CLI::PositiveNumber);

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::vector<std::string> reversed(args.rbegin(), args.rend());

  Outcome result;
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    result.out = app.help();
    return result;
  } catch (const CLI::ParseError& e) {
    std::ostringstream err;
    err << "error: " << e.what() << "\n" << app.help();
    return {exit_code(ErrorKind::Usage), "", err.str()};
  }

  try {
    if (analyze_cmd->parsed()) {
      result.out = detail::render(cmd_analyze(analyze, args), analyze.output);
    } else if (sample_cmd->parsed()) {
      const std::string text = cmd_sample(sample_args);
      if (sample_args.out.empty()) {
        result.out = text;
      } else {
        std::ofstream file(sample_args.out, std::ios::binary);
        if (!file) benford::detail::fail(ErrorKind::MissingFile, "cannot write '" + sample_args.out + "'");
        file << text;
      }
    } else if (classify_cmd->parsed()) {
      const auto a = flag_a ? flag_a : pos_a;
      const auto b = flag_b ? flag_b : pos_b;
      if (!a || !b) benford::detail::fail(ErrorKind::Usage, "classify needs a and b");
      result.out = detail::render(cmd_classify(*a, *b, args), classify_output);
    } else if (verify_cmd->parsed()) {
      const auto checks = run_paper_checks(verify);
      result.out = format_checks(checks);
      if (!all_passed(checks)) {
        result.exit_code = kVerificationFailed;
        for (const auto& c : checks) {
          if (!c.passed) result.err += "FAILED [" + std::to_string(c.criterion) + "] " + c.name + "\n";
        }
      }
    }
  } catch (const Error& e) {
    return {exit_code(e.kind()), "", std::string("error (") + to_string(e.kind()) + "): " + e.what() + "\n"};
  }
  return result;
}

}  // namespace benford::cli
