#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgraph/boundary.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/identities.hpp"
#include "qgraph/spectrum.hpp"
#include "qgraph/traceformula.hpp"

namespace qgraph {

namespace defaults {
inline constexpr double kmax = 50.0;
inline constexpr int nmax = 10;
inline constexpr double t = 0.05;
inline constexpr double cauchy_a = 3.0;
inline constexpr double tolerance = 1e-6;
inline const char* const test_fn = "gaussian";
inline const char* const identity = "tf2";
inline const std::vector<double> heat_t = {0.01, 0.05, 0.1, 0.5};
}  // namespace defaults

struct JobConfig {
  int vertices = 0;
  std::vector<Edge> edges;
  std::string boundary_type;
  BoundaryParams params;
  CMatrix A;  // explicit conditions only
  CMatrix B;
  bool local = true;

  double kmax = defaults::kmax;
  int nmax = defaults::nmax;
  double t = defaults::t;
  std::string test_fn = defaults::test_fn;
  double cauchy_a = defaults::cauchy_a;
  std::string identity = defaults::identity;
  std::vector<double> heat_t = defaults::heat_t;
  double tolerance = defaults::tolerance;
  std::filesystem::path out = ".";
};

/// Parses the experiment description. Throws Error(Config) naming the offending key.
JobConfig parse_config(const nlohmann::json& j);
/// Reads and parses a config file; JSON syntax errors become Error(Config).
JobConfig load_config(const std::filesystem::path& path);
/// Rejects non-positive K_max, t, tolerances and unknown option values.
void validate_job(const JobConfig& cfg);

MetricGraph build_graph(const JobConfig& cfg);
BoundaryConditions build_boundary(const JobConfig& cfg, const MetricGraph& g);

/// Floats go through nlohmann's shortest round-trip formatting; infinities become null.
nlohmann::json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const nlohmann::json& j);
nlohmann::json report_to_json(const TraceReport& r);
nlohmann::json heat_asymptotics_to_json(const HeatAsymptotics& h);
nlohmann::json identities_to_json(const IdentitySuite& suite);
nlohmann::json job_to_json(const JobConfig& cfg);

/// Each command writes its files into cfg.out and returns the process exit code:
/// 0 success, 1 computation or identity failure, 2 configuration error.
int cmd_spectrum(const JobConfig& cfg, std::ostream& log);
int cmd_verify(const JobConfig& cfg, std::ostream& log);
int cmd_check(const JobConfig& cfg, std::ostream& log);

/// Exit code for an error raised while running a command.
int exit_code_for(ErrorCode code);

/// Full command-line entry point.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace qgraph
