#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "commands.hpp"
#include "config.hpp"
#include "doctest.h"
#include "figures.hpp"
#include "output.hpp"

using namespace catalynet;
using namespace catalynet::app;
namespace fs = std::filesystem;

namespace {

const std::string kBase = R"({
  "family": "cwc",
  "fixed": {"m": 3, "d": 4, "n_resource": 1.0},
  "sweep": {"parameter": "theta", "start": 0.0, "stop": 1.2, "count": 7},
  "outputs": ["H", "P", "G"],
  "reference": {"family": "wc"}
})";

std::string config_error(const std::string& text) {
  try {
    auto cfg = parse_sweep_config(text, "cfg.json");
    validate(cfg);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(CATALYNET_TEST_DIR) / "cli_scratch";
  fs::create_directories(dir);
  return dir / name;
}

int run_cli(const std::string& args, const fs::path& stderr_file = {}) {
  std::string cmd = std::string("\"") + CATALYNET_CLI + "\" " + args;
  cmd += stderr_file.empty() ? " 2>/dev/null" : " 2>\"" + stderr_file.string() + "\"";
  cmd += " >/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("config diagnostics carry line and field") {
  const std::string bad_key = R"({
  "family": "cwc",
  "fixed": {"m": 3,
            "dd": 4},
  "sweep": {"parameter": "theta", "start": 0, "stop": 1, "count": 3},
  "outputs": ["H"]
})";
  const auto msg = config_error(bad_key);
  CHECK(msg.find("cfg.json:4:") != std::string::npos);
  CHECK(msg.find("/fixed/dd") != std::string::npos);

  const std::string bad_family = R"({
  "family": "xyz",
  "sweep": {"parameter": "theta", "start": 0, "stop": 1, "count": 3},
  "outputs": ["H"]
})";
  CHECK(config_error(bad_family).find("cfg.json:2:") != std::string::npos);

  const std::string broken = "{\n  \"family\": \"cwc\",\n  \"outputs\": [\"H\",]\n}";
  const auto j = config_error(broken);
  CHECK(j.find("cfg.json:3:") != std::string::npos);
  CHECK(j.find("invalid JSON") != std::string::npos);
}

TEST_CASE("config cross-field checks") {
  const std::string no_ref = R"({
  "family": "cwc",
  "sweep": {"parameter": "theta", "start": 0, "stop": 1, "count": 3},
  "outputs": ["H", "G"]
})";
  CHECK(config_error(no_ref).find("/reference") != std::string::npos);

  const std::string bad_int = R"({
  "family": "cwc",
  "sweep": {"parameter": "m", "start": 0, "stop": 1, "count": 3},
  "outputs": ["H"]
})";
  CHECK(config_error(bad_int).find("/sweep") != std::string::npos);

  const std::string squeezed_phi = R"({
  "family": "cws",
  "sweep": {"parameter": "phi", "start": 0, "stop": 1, "count": 3},
  "outputs": ["delta_phi"]
})";
  CHECK(config_error(squeezed_phi).find("delta_phi") != std::string::npos);
  CHECK(config_error(kBase).empty());
}

TEST_CASE("overrides replace config fields") {
  auto cfg = parse_sweep_config(kBase);
  Overrides o;
  o.family = "pcwc";
  o.s = 2;
  o.d = 6;
  o.format = "json";
  apply_overrides(cfg, o);
  CHECK(cfg.probe.family == Family::pcwc);
  CHECK(cfg.probe.s == 2);
  CHECK(cfg.probe.d == 6);
  CHECK(cfg.format == "json");
  o = {};
  o.family = "nope";
  CHECK_THROWS_AS(apply_overrides(cfg, o), ConfigError);
}

TEST_CASE("grids") {
  GridSpec one{0.4, 0.9, 1, Spacing::linear};
  CHECK(one.values() == std::vector<double>{0.4});
  GridSpec lg{0.01, 10.0, 121, Spacing::log};
  const auto v = lg.values();
  REQUIRE(v.size() == 121);
  CHECK(v.front() == 0.01);
  CHECK(v.back() == 10.0);
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i] > v[i - 1]);
  GridSpec lin{0.0, 1.2, 7, Spacing::linear};
  CHECK(lin.values().back() == 1.2);
}

TEST_CASE("run_sweep") {
  auto cfg = parse_sweep_config(kBase);
  const auto t = run_sweep(cfg);
  CHECK(t.columns == std::vector<std::string>{"theta", "H", "P", "G"});
  CHECK(t.rows.size() == 7);
  CHECK(t.rows[0][3] == doctest::Approx(0.0).epsilon(1e-12));

  cfg.grid.count = 1;
  const auto csv = to_csv(run_sweep(cfg));
  CHECK(count_lines(csv) == 2);
  CHECK(csv.rfind("theta,H,P,G\n", 0) == 0);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("figure datasets") {
  SUBCASE("fig6 argmax rows") {
    const auto fig = build_figure("fig6");
    const auto& t = fig.panels.at(0).table;
    const auto col = [&](const std::string& name) {
      return static_cast<std::size_t>(std::find(t.columns.begin(), t.columns.end(), name) - t.columns.begin());
    };
    const auto im = col("m"), is = col("s"), ig = col("gain_db_solver");
    REQUIRE(ig < t.columns.size());
    std::map<int, std::pair<double, int>> best;
    for (const auto& row : t.rows) {
      const int m = static_cast<int>(row[im]);
      auto it = best.find(m);
      if (it == best.end() || row[ig] > it->second.first) best[m] = {row[ig], static_cast<int>(row[is])};
    }
    CHECK(best.at(5).second == 9);
    CHECK(best.at(10).second == 11);
    CHECK(best.at(15).second == 12);
    CHECK(best.at(20).second == 12);
  }
  SUBCASE("fig15 columns and annotations") {
    const auto fig = build_figure("fig15");
    const auto& a = fig.panels.at(0).table;
    CHECK(a.columns.at(0) == "eta");
    CHECK(std::find(a.columns.begin(), a.columns.end(), "H_cwc_l") != a.columns.end());
    CHECK(a.rows.size() == grids::eta().size());
    CHECK(fig.annotations.at("a").contains("published_global"));
  }
  SUBCASE("figS2") {
    const auto fig = build_figure("figS2");
    REQUIRE(fig.panels.size() == 2);
    CHECK(fig.panels[0].table.rows.size() == 21);
    CHECK(fig.fixed.at("r").get<double>() == 0.8814);
  }
  CHECK_THROWS_AS(build_figure("fig99"), std::invalid_argument);
}

TEST_CASE("CLI exit codes and reproducibility") {
  const auto cfg_path = scratch("sweep.json");
  {
    std::ofstream f(cfg_path);
    f << kBase;
  }
  const auto out1 = scratch("a.csv"), out2 = scratch("b.csv");
  CHECK(run_cli("sweep --config \"" + cfg_path.string() + "\" --out \"" + out1.string() + "\"") == 0);
  CHECK(run_cli("sweep --config \"" + cfg_path.string() + "\" --out \"" + out2.string() + "\"") == 0);
  const auto a = slurp(out1);
  CHECK(a == slurp(out2));
  CHECK(count_lines(a) == 8);

  const auto bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << "{\n \"family\": \"cwc\",\n \"bogus\": 1\n}";
  }
  const auto err = scratch("err.txt");
  CHECK(run_cli("sweep --config \"" + bad.string() + "\"", err) == 2);
  CHECK(slurp(err).find(":3:") != std::string::npos);

  const auto degenerate = scratch("degenerate.json");
  {
    std::ofstream f(degenerate);
    f << R"({"family": "cwc", "fixed": {"theta": 1.5707963267, "m": 2, "amplitude": 1.0},
            "sweep": {"parameter": "d", "start": 1, "stop": 3, "count": 3}, "outputs": ["H"]})";
  }
  CHECK(run_cli("sweep --config \"" + degenerate.string() + "\" --out \"" + scratch("c.csv").string() + "\"") == 4);
  CHECK(run_cli("sweep --config \"" + scratch("missing.json").string() + "\"") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("optimize modes --family pcws --d 20 --m 8 --theta 1.0471975512 --out \"" +
                scratch("opt.json").string() + "\"") == 0);

  const auto figdir = scratch("figs");
  CHECK(run_cli("figure figS2 --out-dir \"" + figdir.string() + "\"") == 0);
  CHECK(fs::exists(figdir / "figS2a.csv"));
  CHECK(fs::exists(figdir / "figS2.json"));
  CHECK(fs::exists(figdir / "figS2.gp"));
}
