#include "ineq/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "ineq/spec_io.hpp"

namespace ineq::report {

using harness::CheckOutcome;
using harness::Status;
using harness::TheoremCase;

namespace {

constexpr const char* kFormat = "ineqcheck-report";
constexpr int kVersion = 1;

// nlohmann writes NaN as null; read it back the same way.
double number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

// Undefined values (a printed root of a negative number) are stored as null.
json finite_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

harness::TheoremId theorem_from(const std::string& name) {
  const auto ids = harness::parse_theorem_ids(name);
  if (ids.size() != 1) throw std::invalid_argument("bad theorem id '" + name + "'");
  return ids.front();
}

bounds::Verdict verdict_from(const std::string& s) {
  if (s == "Holds") return bounds::Verdict::Holds;
  if (s == "ViolatedBy") return bounds::Verdict::Violated;
  if (s == "Inconclusive") return bounds::Verdict::Inconclusive;
  throw std::invalid_argument("bad verdict '" + s + "'");
}

Status status_from(const std::string& s) {
  if (s == "checked") return Status::Checked;
  if (s == "skipped") return Status::Skipped;
  if (s == "error") return Status::Error;
  throw std::invalid_argument("bad status '" + s + "'");
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

json outcome_to_json(const CheckOutcome& o) {
  json j = case_to_json(o.case_);
  j["status"] = harness::to_string(o.status);
  j["reason"] = o.reason;
  const json b = bound_to_json(o.report);
  for (auto it = b.begin(); it != b.end(); ++it) j[it.key()] = it.value();
  j["quad_evaluations"] = o.quad_evaluations;
  return j;
}

json summary_to_json(const harness::TheoremSummary& s) {
  return {{"theorem_id", harness::to_string(s.theorem)},
          {"variant", bounds::to_string(s.variant)},
          {"cases", s.cases},
          {"holds", s.holds},
          {"violations", s.violations},
          {"inconclusive", s.inconclusive},
          {"skips", s.skips},
          {"errors", s.errors},
          {"min_slack", s.min_slack ? json(*s.min_slack) : json(nullptr)},
          {"quad_evaluations", s.quad_evaluations}};
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

}  // namespace

json case_to_json(const TheoremCase& c) {
  json params = json::object();
  for (const auto& [k, v] : c.params) params[k] = v;
  return {{"case_id", c.case_id},
          {"theorem_id", harness::to_string(c.theorem)},
          {"variant", bounds::to_string(c.variant)},
          {"params", params},
          {"f_spec", funclib::to_json(c.f)},
          {"g_spec", funclib::to_json(c.g)},
          {"interval", {{"a", c.interval.a()}, {"b", c.interval.b()}}},
          {"seed", c.seed}};
}

TheoremCase case_from_json(const json& j) {
  TheoremCase c;
  c.case_id = j.value("case_id", std::size_t{0});
  c.theorem = theorem_from(j.at("theorem_id").get<std::string>());
  c.variant = harness::parse_variant(j.value("variant", std::string("as-derived")));
  for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it) c.params[it.key()] = it.value().get<double>();
  c.f = funclib::spec_from_json(j.at("f_spec"));
  c.g = funclib::spec_from_json(j.at("g_spec"));
  c.interval = quad::Interval(j.at("interval").at("a").get<double>(), j.at("interval").at("b").get<double>());
  c.seed = j.value("seed", std::uint64_t{0});
  return c;
}

json bound_to_json(const bounds::BoundReport& r) {
  return {{"lhs", finite_or_null(r.lhs)},
          {"rhs", finite_or_null(r.rhs)},
          {"slack", finite_or_null(r.slack)},
          {"tol", finite_or_null(r.tol)},
          {"verdict", bounds::to_string(r.verdict)},
          {"violation", finite_or_null(r.violation)},
          {"diagnostic", r.diagnostic}};
}

json to_json(const harness::Report& report) {
  json cases = json::array();
  json times = json::array();
  for (const auto& o : report.outcomes) {
    cases.push_back(outcome_to_json(o));
    times.push_back(o.wall_time_s);
  }
  json summary = json::array();
  for (const auto& s : report.summary) summary.push_back(summary_to_json(s));
  return {{"format", kFormat},
          {"version", kVersion},
          {"seed", report.seed},
          {"cases", cases},
          {"summary", {{"theorems", summary},
                       {"total_cases", report.outcomes.size()},
                       {"total_violations", report.violations()},
                       {"total_quad_evaluations", report.total_quad_evaluations}}},
          {"meta", {{"generated_at", utc_now()}, {"wall_time_total_s", report.wall_time_s}, {"case_wall_time_s", times}}}};
}

harness::Report report_from_json(const json& j) {
  if (j.value("format", std::string()) != kFormat) throw std::invalid_argument("not an ineqcheck report");
  harness::Report r;
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& rec : j.at("cases")) {
    CheckOutcome o;
    o.case_ = case_from_json(rec);
    o.status = status_from(rec.at("status").get<std::string>());
    o.reason = rec.value("reason", std::string());
    o.report.lhs = number(rec.at("lhs"));
    o.report.rhs = number(rec.at("rhs"));
    o.report.slack = number(rec.at("slack"));
    o.report.tol = number(rec.at("tol"));
    o.report.verdict = verdict_from(rec.at("verdict").get<std::string>());
    o.report.violation = number(rec.at("violation"));
    o.report.diagnostic = rec.value("diagnostic", std::string());
    o.quad_evaluations = rec.value("quad_evaluations", 0L);
    o.report.evaluations = o.quad_evaluations;
    r.outcomes.push_back(std::move(o));
  }
  for (const auto& s : j.at("summary").at("theorems")) {
    harness::TheoremSummary t;
    t.theorem = theorem_from(s.at("theorem_id").get<std::string>());
    t.variant = harness::parse_variant(s.at("variant").get<std::string>());
    t.cases = s.at("cases").get<std::size_t>();
    t.holds = s.at("holds").get<std::size_t>();
    t.violations = s.at("violations").get<std::size_t>();
    t.inconclusive = s.at("inconclusive").get<std::size_t>();
    t.skips = s.at("skips").get<std::size_t>();
    t.errors = s.at("errors").get<std::size_t>();
    if (!s.at("min_slack").is_null()) t.min_slack = s.at("min_slack").get<double>();
    t.quad_evaluations = s.at("quad_evaluations").get<long>();
    r.summary.push_back(t);
  }
  r.total_quad_evaluations = j.at("summary").at("total_quad_evaluations").get<long>();
  if (j.contains("meta")) r.wall_time_s = j["meta"].value("wall_time_total_s", 0.0);
  return r;
}

json comparison_payload(const json& doc) {
  json out = doc;
  out.erase("meta");
  return out;
}

json to_json(const harness::Counterexample& cx) {
  return {{"case", case_to_json(cx.case_)},
          {"f_compact", cx.case_.f.to_string()},
          {"g_compact", cx.case_.g.to_string()},
          {"violation", cx.violation},
          {"shrink_steps", cx.shrink_steps},
          {"report", bound_to_json(cx.report)}};
}

json to_json(const harness::TightnessStats& stats) {
  json quantiles = json::array();
  for (const auto& [level, slack] : stats.quantiles) quantiles.push_back({{"level", level}, {"slack", slack}});
  json j = {{"theorem_id", harness::to_string(stats.theorem)},
            {"variant", bounds::to_string(stats.variant)},
            {"evaluated", stats.evaluated},
            {"skipped", stats.skipped},
            {"violations", stats.violations},
            {"min_slack", stats.evaluated ? json(stats.min_slack) : json(nullptr)},
            {"quantiles", quantiles}};
  if (stats.argmin) j["argmin"] = case_to_json(*stats.argmin);
  if (stats.argmin_report) j["argmin_report"] = bound_to_json(*stats.argmin_report);
  return j;
}

std::string to_csv(const harness::Report& report) {
  std::ostringstream out;
  out << "case_id,theorem_id,variant,params,f_spec,g_spec,a,b,lhs,rhs,slack,tol,verdict,violation,status,seed\n";
  for (const auto& o : report.outcomes) {
    const auto& c = o.case_;
    std::string params;
    for (const auto& [k, v] : c.params) {
      if (!params.empty()) params += ';';
      params += k + "=" + csv_number(v);
    }
    out << c.case_id << ',' << harness::to_string(c.theorem) << ',' << bounds::to_string(c.variant) << ','
        << csv_field(params) << ',' << csv_field(c.f.to_string()) << ',' << csv_field(c.g.to_string()) << ','
        << csv_number(c.interval.a()) << ',' << csv_number(c.interval.b()) << ',' << csv_number(o.report.lhs) << ','
        << csv_number(o.report.rhs) << ',' << csv_number(o.report.slack) << ',' << csv_number(o.report.tol) << ','
        << bounds::to_string(o.report.verdict) << ',' << csv_number(o.report.violation) << ','
        << harness::to_string(o.status) << ',' << c.seed << '\n';
  }
  return out.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace ineq::report
