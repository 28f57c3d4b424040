// ineqcheck: verification campaigns, falsification, tightness studies and
// report export for the integral-inequality evaluators.
//
// Exit codes: 0 all checked inequalities hold (or nothing was falsified),
// 1 a violation was found, 2 usage or runtime error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ineq/harness.hpp"
#include "ineq/report.hpp"

namespace {

using nlohmann::json;
namespace h = ineq::harness;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kFailure = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string theorems;
  std::string theorem;
  std::string variant = "as-derived";
  std::size_t cases = 100;
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  bool compare_printed = false;
  std::optional<double> rel_tol;
  std::optional<double> abs_tol;
  std::string out;
  std::string format = "json";
  std::string in;
  std::string config;
};

// Fills settings from the config file for every option not given on the
// command line.
void apply_config(Settings& s, const CLI::App& cmd) {
  if (s.config.empty()) return;
  std::ifstream in(s.config);
  if (!in) throw UsageError("cannot read config file " + s.config);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError("config " + s.config + ": " + e.what());
  }
  const auto unset = [&](const char* flag) {
    const auto* opt = cmd.get_option_no_throw(flag);
    return opt == nullptr || opt->count() == 0;
  };
  try {
    if (j.contains("theorems") && unset("--theorems")) {
      if (j["theorems"].is_array()) {
        s.theorems.clear();
        for (const auto& t : j["theorems"]) s.theorems += t.get<std::string>() + ",";
      } else {
        s.theorems = j["theorems"].get<std::string>();
      }
    }
    if (j.contains("theorem") && unset("--theorem")) s.theorem = j["theorem"].get<std::string>();
    if (j.contains("variant") && unset("--variant")) s.variant = j["variant"].get<std::string>();
    if (j.contains("cases") && unset("--cases")) s.cases = j["cases"].get<std::size_t>();
    if (j.contains("budget") && unset("--budget")) s.budget = j["budget"].get<std::size_t>();
    if (j.contains("seed") && unset("--seed")) s.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("compare_printed") && unset("--compare-printed")) s.compare_printed = j["compare_printed"].get<bool>();
    if (j.contains("rel_tol") && unset("--rel-tol")) s.rel_tol = j["rel_tol"].get<double>();
    if (j.contains("abs_tol") && unset("--abs-tol")) s.abs_tol = j["abs_tol"].get<double>();
    if (j.contains("out") && unset("--out")) s.out = j["out"].get<std::string>();
    if (j.contains("format") && unset("--format")) s.format = j["format"].get<std::string>();
  } catch (const json::exception& e) {
    throw UsageError("config " + s.config + ": " + e.what());
  }
  if (s.cases == 0 || s.budget == 0) throw UsageError("cases and budget must be >= 1");
}

h::HarnessOptions harness_options(const Settings& s) {
  h::HarnessOptions opts;
  if (s.rel_tol) opts.eval.quad.rel_tol = *s.rel_tol;
  if (s.abs_tol) opts.eval.quad.abs_tol = *s.abs_tol;
  if (opts.eval.quad.rel_tol <= 0.0 || opts.eval.quad.abs_tol < 0.0) throw UsageError("tolerances must be positive");
  return opts;
}

std::vector<ineq::bounds::Variant> variants_of(const std::string& text) {
  if (text == "both") return {ineq::bounds::Variant::AsDerived, ineq::bounds::Variant::AsPrinted};
  try {
    return {h::parse_variant(text)};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

std::vector<h::TheoremId> theorems_of(const std::string& text) {
  if (text.empty()) return h::all_theorems();
  try {
    auto ids = h::parse_theorem_ids(text);
    if (ids.empty()) throw UsageError("no theorem ids given");
    return ids;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

h::TheoremId single_theorem(const std::string& text) {
  const auto ids = theorems_of(text);
  if (text.empty() || ids.size() != 1) throw UsageError("--theorem takes exactly one theorem id");
  return ids.front();
}

std::string output_path(const Settings& s, const std::string& stem) {
  if (!s.out.empty()) return s.out;
  const char* dir = std::getenv("INEQCHECK_OUT_DIR");
  const std::string ext = s.format == "csv" ? ".csv" : ".json";
  return (std::filesystem::path(dir && *dir ? dir : ".") / (stem + ext)).string();
}

std::string fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(6) << v;
  return o.str();
}

void print_case(const h::TheoremCase& c) {
  std::cout << "  theorem  " << h::to_string(c.theorem) << " (" << ineq::bounds::to_string(c.variant) << ")\n"
            << "  f        " << c.f.to_string() << "\n"
            << "  g        " << c.g.to_string() << "\n"
            << "  interval [" << c.interval.a() << ", " << c.interval.b() << "]\n";
  if (!c.params.empty()) {
    std::cout << "  params  ";
    for (const auto& [k, v] : c.params) std::cout << ' ' << k << '=' << v;
    std::cout << '\n';
  }
}

int run_verify(const Settings& s) {
  if (s.format != "json" && s.format != "csv") throw UsageError("--format must be json or csv");
  const auto opts = harness_options(s);
  h::Plan plan;
  plan.seed = s.seed;
  for (auto id : theorems_of(s.theorems)) {
    std::vector<ineq::bounds::Variant> vs;
    for (auto v : variants_of(s.variant)) {
      if (!h::has_printed_variant(id)) v = ineq::bounds::Variant::AsDerived;
      if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    }
    if (s.compare_printed && h::has_printed_variant(id) &&
        std::find(vs.begin(), vs.end(), ineq::bounds::Variant::AsPrinted) == vs.end()) {
      vs.push_back(ineq::bounds::Variant::AsPrinted);
    }
    for (auto v : vs) plan.entries.push_back({id, v, s.cases});
  }

  const auto report = h::sweep(plan, opts);

  std::cout << std::left << std::setw(7) << "theorem" << std::setw(12) << "variant" << std::right << std::setw(7)
            << "cases" << std::setw(7) << "holds" << std::setw(7) << "viol" << std::setw(7) << "inc" << std::setw(7)
            << "skip" << std::setw(7) << "err" << std::setw(14) << "min_slack" << '\n';
  for (const auto& t : report.summary) {
    std::cout << std::left << std::setw(7) << h::to_string(t.theorem) << std::setw(12)
              << ineq::bounds::to_string(t.variant) << std::right << std::setw(7) << t.cases << std::setw(7)
              << t.holds << std::setw(7) << t.violations << std::setw(7) << t.inconclusive << std::setw(7) << t.skips
              << std::setw(7) << t.errors << std::setw(14) << (t.min_slack ? fmt(*t.min_slack) : "-") << '\n';
  }
  std::cout << "cases " << report.outcomes.size() << ", violations " << report.violations()
            << ", quadrature evaluations " << report.total_quad_evaluations << ", " << fmt(report.wall_time_s)
            << " s\n";

  const auto path = output_path(s, "ineqcheck-report");
  const std::string body =
      s.format == "csv" ? ineq::report::to_csv(report) : ineq::report::to_json(report).dump(2) + "\n";
  ineq::report::write_atomic(path, body);
  std::cout << "report written to " << path << '\n';
  return report.violations() > 0 ? kViolation : kOk;
}

int run_falsify(const Settings& s) {
  const auto id = single_theorem(s.theorem);
  const auto variants = variants_of(s.variant);
  if (variants.size() != 1) throw UsageError("falsify takes a single variant");
  const auto cx = h::falsify(id, variants.front(), s.budget, s.seed, harness_options(s));
  json doc = {{"theorem_id", h::to_string(id)},
              {"variant", ineq::bounds::to_string(variants.front())},
              {"budget", s.budget},
              {"seed", s.seed},
              {"found", cx.has_value()}};
  if (cx) {
    doc["counterexample"] = ineq::report::to_json(*cx);
    std::cout << "counterexample found (" << cx->shrink_steps << " shrink steps)\n";
    print_case(cx->case_);
    std::cout << "  lhs " << std::setprecision(12) << cx->report.lhs << "  rhs " << cx->report.rhs
              << "  violation " << cx->violation << '\n';
  } else {
    std::cout << "no counterexample in " << s.budget << " cases\n";
  }
  if (!s.out.empty() || std::getenv("INEQCHECK_OUT_DIR")) {
    const auto path = output_path(s, "ineqcheck-falsify");
    ineq::report::write_atomic(path, doc.dump(2) + "\n");
    std::cout << "result written to " << path << '\n';
  }
  return cx ? kViolation : kOk;
}

int run_tightness(const Settings& s) {
  const auto id = single_theorem(s.theorem);
  const auto variants = variants_of(s.variant);
  if (variants.size() != 1) throw UsageError("tightness takes a single variant");
  const auto stats = h::tightness(id, variants.front(), s.budget, s.seed, harness_options(s));
  std::cout << h::to_string(id) << " (" << ineq::bounds::to_string(stats.variant) << "): " << stats.evaluated
            << " evaluated, " << stats.skipped << " skipped, " << stats.violations << " violations\n";
  if (stats.evaluated > 0) {
    std::cout << "min slack " << std::setprecision(6) << stats.min_slack << '\n';
    for (const auto& [level, slack] : stats.quantiles) std::cout << "  q" << level << "  " << slack << '\n';
    if (stats.argmin) {
      std::cout << "argmin case:\n";
      print_case(*stats.argmin);
    }
  }
  if (!s.out.empty() || std::getenv("INEQCHECK_OUT_DIR")) {
    const auto path = output_path(s, "ineqcheck-tightness");
    ineq::report::write_atomic(path, ineq::report::to_json(stats).dump(2) + "\n");
    std::cout << "result written to " << path << '\n';
  }
  return stats.violations > 0 ? kViolation : kOk;
}

int run_report(const Settings& s) {
  if (s.in.empty()) throw UsageError("report needs --in");
  std::ifstream in(s.in);
  if (!in) throw std::runtime_error("cannot read " + s.in);
  json j;
  in >> j;
  const auto report = ineq::report::report_from_json(j);
  std::string body;
  if (s.format == "csv") {
    body = ineq::report::to_csv(report);
  } else if (s.format == "json") {
    body = j.dump(2) + "\n";
  } else {
    throw UsageError("--format must be json or csv");
  }
  if (s.out.empty()) {
    std::cout << body;
  } else {
    ineq::report::write_atomic(s.out, body);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks of integral inequalities for generalized convex functions."};
  app.require_subcommand(1);
  Settings s;

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", s.seed, "master seed");
    cmd->add_option("--variant", s.variant, "as-printed | as-derived | both");
    cmd->add_option("--rel-tol", s.rel_tol, "quadrature relative tolerance");
    cmd->add_option("--abs-tol", s.abs_tol, "quadrature absolute tolerance");
    cmd->add_option("--out", s.out, "output path (default: $INEQCHECK_OUT_DIR)");
    cmd->add_option("--config", s.config, "JSON config; command-line flags take precedence");
  };

  auto* verify = app.add_subcommand("verify", "randomized verification campaign");
  common(verify);
  verify->add_option("--theorems", s.theorems, "comma-separated ids, e.g. T3,thm6,C5,HH (default: all)");
  verify->add_option("--cases", s.cases, "cases per theorem and variant")->check(CLI::PositiveNumber);
  verify->add_flag("--compare-printed", s.compare_printed, "also run the printed forms where they differ");
  verify->add_option("--format", s.format, "json | csv");

  auto* falsify = app.add_subcommand("falsify", "search for and shrink a counterexample");
  common(falsify);
  falsify->add_option("--theorem", s.theorem, "theorem id");
  falsify->add_option("--budget", s.budget, "random cases to try")->check(CLI::PositiveNumber);

  auto* tight = app.add_subcommand("tightness", "slack distribution of a bound");
  common(tight);
  tight->add_option("--theorem", s.theorem, "theorem id");
  tight->add_option("--budget", s.budget, "random cases to evaluate")->check(CLI::PositiveNumber);

  auto* conv = app.add_subcommand("report", "convert a saved report");
  conv->add_option("--in", s.in, "report JSON")->required();
  conv->add_option("--format", s.format, "json | csv");
  conv->add_option("--out", s.out, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    if (*verify) {
      apply_config(s, *verify);
      return run_verify(s);
    }
    if (*falsify) {
      apply_config(s, *falsify);
      return run_falsify(s);
    }
    if (*tight) {
      apply_config(s, *tight);
      return run_tightness(s);
    }
    return run_report(s);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << '\n';
    return kFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
}
