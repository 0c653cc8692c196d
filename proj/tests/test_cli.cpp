#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qgraph/cli.hpp"

using namespace qgraph;
namespace fs = std::filesystem;

namespace {

const fs::path kConfigs = QGRAPH_CONFIG_DIR;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qgraph_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Run {
  int code;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "qgraph");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, err.str()};
}

std::vector<std::string> lines(const fs::path& p) {
  std::ifstream f(p);
  std::vector<std::string> out;
  for (std::string l; std::getline(f, l);) out.push_back(l);
  return out;
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream f(p);
  return nlohmann::json::parse(f);
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("spectrum of the Neumann interval") {
  const auto out = scratch("neumann");
  const auto r = run({"spectrum", "--config", (kConfigs / "interval_neumann.json").string(),
                      "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto csv = lines(out / "spectrum.csv");
  REQUIRE(csv.size() == 22);
  CHECK(csv[0] == "k,multiplicity,sign");
  CHECK(csv[1] == "0,1,zero");
  for (int n = 1; n <= 20; ++n) {
    std::istringstream row(csv[n + 1]);
    std::string k, m, sign;
    std::getline(row, k, ',');
    std::getline(row, m, ',');
    std::getline(row, sign);
    CHECK(std::abs(std::stod(k) - n) < 1e-10);
    CHECK(m == "1");
    CHECK(sign == "positive");
  }
  const auto weyl = lines(out / "weyl.csv");
  CHECK(weyl[0] == "K,N,weyl");
  const auto j = read_json(out / "spectrum.json");
  CHECK(j["job"]["kmax"] == 20.0);
  CHECK(j["defaults"]["kmax"] == defaults::kmax);
  CHECK(j["defaults"]["nmax"] == defaults::nmax);
  CHECK(j["defaults"]["t"] == defaults::t);
}

TEST_CASE("Robin spectrum carries negative eigenvalues and condition flags") {
  const auto out = scratch("robin");
  REQUIRE(run({"spectrum", "--config", (kConfigs / "robin_interval.json").string(), "--out",
               out.string()})
              .code == 0);
  const auto j = read_json(out / "spectrum.json");
  REQUIRE(j.contains("negative"));
  CHECK(j["negative"].size() == 2);
  REQUIRE(j.contains("condition_flags"));
  CHECK(j["condition_flags"].contains("phase_monotone"));
  const auto csv = lines(out / "spectrum.csv");
  CHECK(csv.back().find(",negative") != std::string::npos);
}

TEST_CASE("spectrum JSON round trip reproduces the trace-formula LHS") {
  const auto out = scratch("roundtrip");
  REQUIRE(run({"spectrum", "--config", (kConfigs / "robin_interval.json").string(), "--out",
               out.string(), "--kmax", "80"})
              .code == 0);
  const auto cfg = load_config(kConfigs / "robin_interval.json");
  const auto g = build_graph(cfg);
  const ScatteringModel m(g, build_boundary(cfg, g));
  const Spectrum direct = compute_spectrum(m, 80.0);
  const Spectrum loaded = spectrum_from_json(read_json(out / "spectrum.json"));
  for (double t : {0.01, 0.1, 0.5}) {
    const auto h = TestFunction::gaussian(t);
    CHECK(spectral_sum(loaded, h) == spectral_sum(direct, h));
  }
  CHECK(spectral_sum(loaded, TestFunction::cauchy(3.0)) ==
        spectral_sum(direct, TestFunction::cauchy(3.0)));
  CHECK(spectrum_to_json(loaded) == spectrum_to_json(direct));
  CHECK(full_heat_trace(loaded, 0.2) == full_heat_trace(direct, 0.2));
}

TEST_CASE("configuration errors exit with 2 and name the key") {
  const auto dir = scratch("config_errors");
  auto code_for = [&](const std::string& text) {
    const auto p = write_config(dir, text);
    return run({"check", "--config", p.string(), "--out", (dir / "o").string()});
  };
  auto r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": "x"}],
                        "boundary": {"type": "neumann"}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("edges[0].length") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}]})");
  CHECK(r.code == 2);
  CHECK(r.err.find("boundary") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}],
                   "boundary": {"type": "periodic"}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("boundary.type") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}],
                   "boundary": {"type": "neumann"}, "job": {"kmax": -3}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("kmax") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}],
                   "boundary": {"type": "neumann"}, "job": {"speed": 1}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("job.speed") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}],)");
  CHECK(r.code == 2);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 0}],
                   "boundary": {"type": "neumann"}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("NonPositiveLength") != std::string::npos);

  r = code_for(R"({"vertices": 2, "edges": [{"from": 0, "to": 1, "length": 1}],
                   "boundary": {"type": "robin", "params": {"lambda": [1, 2, 3]}}})");
  CHECK(r.code == 2);
  CHECK(r.err.find("WrongParameterCount") != std::string::npos);

  CHECK(run({"check", "--config", (dir / "missing.json").string()}).code == 2);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"frobnicate", "--config", "x"}).code == 2);
  CHECK(run({"verify", "--config", (kConfigs / "loop.json").string(), "--test-fn", "box",
             "--out", (dir / "o").string()})
            .code == 2);
  CHECK(run({"verify", "--config", (kConfigs / "loop.json").string(), "--identity", "tf9",
             "--out", (dir / "o").string()})
            .code == 2);
}

TEST_CASE("verify writes the report and the convergence table") {
  const auto out = scratch("verify");
  auto r = run({"verify", "--config", (kConfigs / "interval_neumann.json").string(), "--out",
                out.string(), "--identity", "tf2", "--t", "0.05"});
  REQUIRE(r.code == 0);
  auto j = read_json(out / "report.json");
  CHECK(j["report"]["grouping"] == "tf2");
  CHECK(j["report"]["residual"].get<double>() < 1e-8);
  CHECK(j["job"]["t"] == 0.05);
  const auto conv = lines(out / "convergence.csv");
  CHECK(conv[0] == "cutoff,lhs,rhs,residual");
  CHECK(conv.size() == static_cast<std::size_t>(defaults::nmax + 1));

  const auto heat = scratch("verify_heat");
  r = run({"verify", "--config", (kConfigs / "robin_interval.json").string(), "--out",
           heat.string(), "--identity", "heat"});
  REQUIRE(r.code == 0);
  const auto rows = lines(heat / "convergence.csv");
  CHECK(rows[0] == "t,lhs,rhs,residual");
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i].substr(rows[i].rfind(',') + 1)) < 1e-6);
  }
  j = read_json(heat / "report.json");
  CHECK(std::abs(j["asymptotics"]["gamma_fit"].get<double>() -
                 j["asymptotics"]["gamma_formula"].get<double>()) < 1e-3);

  // TF2 requested where the length condition fails: TF1 grouping and a warning
  const auto dir = scratch("verify_downgrade");
  const auto p = write_config(dir, R"({"vertices": 2,
      "edges": [{"from": 0, "to": 1, "length": 1.0}],
      "boundary": {"type": "robin", "params": {"lambda": 1.0}}})");
  r = run({"verify", "--config", p.string(), "--out", dir.string(), "--identity", "tf2"});
  CHECK(r.code == 0);
  CHECK(r.err.find("warning: ConditionViolated") != std::string::npos);
  CHECK(read_json(dir / "report.json")["report"]["grouping"] == "tf1");
}

TEST_CASE("check runs the identity suite") {
  const auto out = scratch("check");
  REQUIRE(run({"check", "--config", (kConfigs / "star3_kirchhoff.json").string(), "--out",
               out.string()})
              .code == 0);
  const auto j = read_json(out / "identities.json");
  CHECK(j["all_passed"] == true);
  for (const auto& r : j["results"]) {
    if (r["name"] == "unitarity_S") CHECK(r["max_residual"].get<double>() < 1e-12);
  }

  const auto dir = scratch("check_rank");
  const auto p = write_config(dir, R"({"vertices": 2,
      "edges": [{"from": 0, "to": 1, "length": 1.0}],
      "boundary": {"type": "explicit", "A": [[1, 0], [0, 0]], "B": [[0, 0], [0, 0]]}})");
  const auto r = run({"check", "--config", p.string(), "--out", dir.string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("RankDeficient") != std::string::npos);
}

TEST_CASE("explicit conditions with complex entries") {
  const auto dir = scratch("explicit");
  // A = [[1, 0], [0, 0.5]], B = [[0, 0], [0, 1]] written with [re, im] pairs
  const auto p = write_config(dir, R"({"vertices": 2,
      "edges": [{"from": 0, "to": 1, "length": 3.0}],
      "boundary": {"type": "explicit",
                   "A": [[[1, 0], [0, 0]], [[0, 0], [0.5, 0]]],
                   "B": [[0, 0], [0, [1, 0]]]}})");
  const auto cfg = load_config(p);
  CHECK(cfg.A(1, 1) == cplx(0.5, 0.0));
  CHECK(cfg.B(1, 1) == cplx(1.0, 0.0));
  CHECK(run({"check", "--config", p.string(), "--out", dir.string()}).code == 0);
}

TEST_CASE("installed executable") {
  const auto out = scratch("exe");
  const std::string cmd = std::string(QGRAPH_EXE) + " spectrum --config " +
                          (kConfigs / "loop.json").string() + " --out " + out.string() +
                          " --kmax 10 2> " + (out / "log.txt").string();
  CHECK(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(out / "spectrum.csv"));
  const std::string bad = std::string(QGRAPH_EXE) + " spectrum 2> /dev/null";
  const int status = std::system(bad.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}
