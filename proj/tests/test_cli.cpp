#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path& work_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "ineqcheck_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + INEQCHECK_EXE + " " + args + " > " + (work_dir() / "stdout.txt").string() +
                          " 2> " + (work_dir() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("verify on valid theorems exits 0 and writes a report") {
  const auto out = work_dir() / "report.json";
  CHECK(run("verify --theorems T3,T6 --cases 200 --seed 1 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["cases"].size() == 400);
  CHECK(slurp(work_dir() / "stdout.txt").find("violations 0") != std::string::npos);
}

TEST_CASE("falsify on the printed Theorem 5 exits 1 with a counterexample") {
  CHECK(run("falsify --theorem T5 --variant as-printed --budget 500") == 1);
  CHECK(slurp(work_dir() / "stdout.txt").find("counterexample found") != std::string::npos);
}

TEST_CASE("falsify without a hit exits 0") {
  CHECK(run("falsify --theorem thm3 --budget 50 --seed 4") == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("verify --theorems BOGUS") == 2);
  CHECK(slurp(work_dir() / "stderr.txt").find("BOGUS") != std::string::npos);
  CHECK(run("verify --no-such-flag") == 2);
  CHECK(run("verify --cases 0") == 2);
  CHECK(run("") == 2);
  CHECK(run("verify --variant sideways --theorems T3") == 2);
  CHECK(run("falsify --theorem T3,T4") == 2);
  CHECK(run("report --in " + (work_dir() / "missing.json").string()) == 2);
}

TEST_CASE("compare-printed adds printed runs and reports violations") {
  const auto out = work_dir() / "c5.json";
  CHECK(run("verify --theorems C5 --cases 30 --compare-printed --out " + out.string()) == 1);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["summary"]["theorems"].size() == 2);
}

TEST_CASE("config file with flag overrides") {
  const auto cfg = work_dir() / "cfg.json";
  const auto out = work_dir() / "cfg_report.json";
  std::ofstream(cfg) << R"({"theorems": ["T4", "C1"], "cases": 7, "seed": 3, "out": ")" << out.string() << R"("})";
  CHECK(run("verify --config " + cfg.string() + " --cases 5") == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["cases"].size() == 10);
  CHECK(j["seed"] == 3);
}

TEST_CASE("default output directory comes from the environment") {
  const auto dir = work_dir() / "envout";
  CHECK(run("verify --theorems T8 --cases 5 --seed 2", "INEQCHECK_OUT_DIR=" + dir.string()) == 0);
  CHECK(fs::exists(dir / "ineqcheck-report.json"));
}

TEST_CASE("report converts JSON to CSV") {
  const auto in = work_dir() / "small.json";
  CHECK(run("verify --theorems T3 --cases 4 --out " + in.string()) == 0);
  const auto csv = work_dir() / "small.csv";
  CHECK(run("report --in " + in.string() + " --format csv --out " + csv.string()) == 0);
  const auto body = slurp(csv);
  CHECK(body.rfind("case_id,theorem_id", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 5);
}
