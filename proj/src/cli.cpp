#include "qgraph/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qgraph/scattering.hpp"

namespace qgraph {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& what) {
  throw Error(ErrorCode::Config, key + ": " + what);
}

double get_number(const json& j, const std::string& key) {
  if (!j.is_number()) config_error(key, "expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& key) {
  if (!j.is_number_integer()) config_error(key, "expected an integer");
  return j.get<int>();
}

std::vector<double> number_list(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) config_error(key, "expected a number or an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(get_number(j[i], key + "[" + std::to_string(i) + "]"));
  }
  return out;
}

cplx complex_entry(const json& j, const std::string& key) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error(key, "expected a number or a [re, im] pair");
}

CMatrix complex_matrix(const json& j, const std::string& key) {
  if (!j.is_array() || j.empty()) config_error(key, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  std::size_t cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rk = key + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) config_error(rk, "expected a row array");
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) config_error(rk, "row length differs from the first row");
  }
  CMatrix M(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      M(r, c) = complex_entry(j[r][c],
                              key + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return M;
}

// Accepts {"mu": x}, {"lambda": x}, or the value itself.
std::vector<double> scalar_params(const json& params, const char* name, const std::string& key) {
  if (params.is_null()) return {};
  if (params.is_object()) {
    if (!params.contains(name)) return {};
    return number_list(params[name], key + "." + name);
  }
  return number_list(params, key);
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double number_from(const json& j) { return j.is_null() ? kInfinity : j.get<double>(); }

json job_defaults() {
  return {{"kmax", defaults::kmax},         {"nmax", defaults::nmax},
          {"t", defaults::t},               {"test_fn", defaults::test_fn},
          {"cauchy_a", defaults::cauchy_a}, {"identity", defaults::identity},
          {"heat_t", defaults::heat_t},     {"tolerance", defaults::tolerance}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

void write_json(const std::filesystem::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

struct Prepared {
  MetricGraph graph;
  BoundaryConditions bc;
};

Prepared prepare(const JobConfig& cfg) {
  validate_job(cfg);
  MetricGraph g = build_graph(cfg);
  BoundaryConditions bc = build_boundary(cfg, g);
  std::filesystem::create_directories(cfg.out);
  return {std::move(g), std::move(bc)};
}

TestFunction test_function(const JobConfig& cfg) {
  return cfg.test_fn == "cauchy" ? TestFunction::cauchy(cfg.cauchy_a)
                                 : TestFunction::gaussian(cfg.t);
}

void print_warnings(const TraceReport& r, std::ostream& log) {
  for (const auto& w : r.warnings) log << "warning: " << w << "\n";
}

// A residual above tolerance fails only when the identity is expected to hold to it.
bool report_passes(const TraceReport& r, double tol) {
  if (r.residual <= tol) return true;
  if (!r.tail_controlled) return true;
  return std::any_of(r.warnings.begin(), r.warnings.end(), [](const std::string& w) {
    return w.rfind("ConditionViolated", 0) == 0;
  });
}

}  // namespace

JobConfig parse_config(const json& j) {
  if (!j.is_object()) config_error("<root>", "expected an object");
  JobConfig cfg;
  if (!j.contains("vertices")) config_error("vertices", "missing");
  cfg.vertices = get_int(j["vertices"], "vertices");
  if (!j.contains("edges")) config_error("edges", "missing");
  if (!j["edges"].is_array()) config_error("edges", "expected an array");
  for (std::size_t i = 0; i < j["edges"].size(); ++i) {
    const json& e = j["edges"][i];
    const std::string key = "edges[" + std::to_string(i) + "]";
    if (!e.is_object()) config_error(key, "expected an object");
    for (const char* f : {"from", "to", "length"}) {
      if (!e.contains(f)) config_error(key + "." + f, "missing");
    }
    cfg.edges.push_back({get_int(e["from"], key + ".from"), get_int(e["to"], key + ".to"),
                         get_number(e["length"], key + ".length")});
  }

  if (!j.contains("boundary")) config_error("boundary", "missing");
  const json& b = j["boundary"];
  if (!b.is_object()) config_error("boundary", "expected an object");
  if (!b.contains("type") || !b["type"].is_string()) {
    config_error("boundary.type", "missing or not a string");
  }
  cfg.boundary_type = b["type"].get<std::string>();
  const json params = b.value("params", json());
  if (cfg.boundary_type == "kirchhoff") {
    cfg.params.mu = scalar_params(params, "mu", "boundary.params");
  } else if (cfg.boundary_type == "robin") {
    cfg.params.robin = scalar_params(params, "lambda", "boundary.params");
    if (cfg.params.robin.empty()) config_error("boundary.params.lambda", "missing");
  } else if (cfg.boundary_type == "explicit") {
    if (!b.contains("A")) config_error("boundary.A", "missing");
    if (!b.contains("B")) config_error("boundary.B", "missing");
    cfg.A = complex_matrix(b["A"], "boundary.A");
    cfg.B = complex_matrix(b["B"], "boundary.B");
    if (b.contains("local")) {
      if (!b["local"].is_boolean()) config_error("boundary.local", "expected a boolean");
      cfg.local = b["local"].get<bool>();
    }
  } else if (cfg.boundary_type != "dirichlet" && cfg.boundary_type != "neumann") {
    config_error("boundary.type", "unknown type '" + cfg.boundary_type + "'");
  }

  if (j.contains("job")) {
    const json& job = j["job"];
    if (!job.is_object()) config_error("job", "expected an object");
    for (auto it = job.begin(); it != job.end(); ++it) {
      const std::string key = "job." + it.key();
      if (it.key() == "kmax") {
        cfg.kmax = get_number(*it, key);
      } else if (it.key() == "nmax") {
        cfg.nmax = get_int(*it, key);
      } else if (it.key() == "t") {
        cfg.t = get_number(*it, key);
      } else if (it.key() == "cauchy_a") {
        cfg.cauchy_a = get_number(*it, key);
      } else if (it.key() == "tolerance") {
        cfg.tolerance = get_number(*it, key);
      } else if (it.key() == "heat_t") {
        cfg.heat_t = number_list(*it, key);
      } else if (it.key() == "test_fn" || it.key() == "identity") {
        if (!it->is_string()) config_error(key, "expected a string");
        (it.key() == "test_fn" ? cfg.test_fn : cfg.identity) = it->get<std::string>();
      } else {
        config_error(key, "unknown option");
      }
    }
  }
  return cfg;
}

JobConfig load_config(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) config_error("--config", "cannot open '" + path.string() + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    config_error(path.string(), std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

void validate_job(const JobConfig& cfg) {
  if (!(cfg.kmax > 0.0) || !std::isfinite(cfg.kmax)) config_error("kmax", "must be positive");
  if (cfg.nmax < 1) config_error("nmax", "must be at least 1");
  if (!(cfg.t > 0.0)) config_error("t", "must be positive");
  if (!(cfg.cauchy_a > 0.0)) config_error("cauchy_a", "must be positive");
  if (!(cfg.tolerance > 0.0)) config_error("tolerance", "must be positive");
  if (cfg.heat_t.empty()) config_error("heat_t", "must not be empty");
  for (double t : cfg.heat_t) {
    if (!(t > 0.0)) config_error("heat_t", "entries must be positive");
  }
  if (cfg.test_fn != "gaussian" && cfg.test_fn != "cauchy") {
    config_error("test_fn", "expected gaussian or cauchy");
  }
  if (cfg.identity != "tf1" && cfg.identity != "tf2" && cfg.identity != "heat") {
    config_error("identity", "expected tf1, tf2 or heat");
  }
}

MetricGraph build_graph(const JobConfig& cfg) { return MetricGraph::build(cfg.vertices, cfg.edges); }

BoundaryConditions build_boundary(const JobConfig& cfg, const MetricGraph& g) {
  if (cfg.boundary_type == "explicit") {
    BoundaryConditions bc{cfg.A, cfg.B, std::nullopt};
    if (cfg.local) bc.locality_blocks = g.ends_at_vertex();
    return bc;
  }
  if (cfg.boundary_type == "robin" && cfg.params.robin.size() == 1) {
    return robin(g, std::vector<double>(2 * g.edge_count(), cfg.params.robin.front()));
  }
  if (cfg.boundary_type == "kirchhoff" && cfg.params.mu.size() == 1) {
    return kirchhoff(g, std::vector<double>(g.vertex_count(), cfg.params.mu.front()));
  }
  const auto kind = boundary_kind_from_string(cfg.boundary_type);
  if (!kind) config_error("boundary.type", "unknown type '" + cfg.boundary_type + "'");
  return make_boundary(*kind, g, cfg.params);
}

json spectrum_to_json(const Spectrum& s) {
  json pos = json::array();
  for (const auto& e : s.positive) {
    pos.push_back({{"k", e.k},
                   {"multiplicity", e.multiplicity},
                   {"contour_order", e.contour_order},
                   {"verified", e.verified}});
  }
  json neg = json::array();
  for (const auto& e : s.negative) {
    neg.push_back({{"kappa", e.kappa},
                   {"eigenvalue", -e.kappa * e.kappa},
                   {"multiplicity", e.multiplicity},
                   {"zero_order", e.zero_order},
                   {"resolved", e.resolved},
                   {"note", e.note}});
  }
  const auto& c = s.flags.tf2;
  return {
      {"total_length", s.total_length},
      {"K_max", s.K_max},
      {"s_bound", s.s_bound},
      {"zero", {{"g0", s.zero.g0}, {"N", s.zero.N}, {"sample_k", s.zero.sample_k},
                {"g0_samples", s.zero.g0_samples}}},
      {"positive", pos},
      {"negative", neg},
      {"imaginary_axis",
       {{"pole_orders", s.imaginary.pole_orders},
        {"pole_kappa", s.imaginary.pole_kappa},
        {"zero_order_sum", s.imaginary.zero_order_sum},
        {"pole_order_sum", s.imaginary.pole_order_sum},
        {"enclosing_winding", s.imaginary.enclosing_winding},
        {"consistent", s.imaginary.consistent}}},
      {"condition_flags",
       {{"phase_monotone", s.flags.phase_monotone},
        {"tf2",
         {{"sigma", number_or_null(c.sigma)},
          {"l_sigma", number_or_null(c.l_sigma)},
          {"l_min", c.l_min},
          {"satisfied", c.satisfied},
          {"required_r", number_or_null(c.required_r)}}}}},
      {"multiplicities_verified", s.multiplicities_verified},
  };
}

Spectrum spectrum_from_json(const json& j) {
  try {
    Spectrum s;
    s.total_length = j.at("total_length").get<double>();
    s.K_max = j.at("K_max").get<double>();
    s.s_bound = j.at("s_bound").get<double>();
    const json& z = j.at("zero");
    s.zero.g0 = z.at("g0").get<int>();
    s.zero.N = z.at("N").get<int>();
    s.zero.sample_k = z.at("sample_k").get<std::vector<double>>();
    s.zero.g0_samples = z.at("g0_samples").get<std::vector<int>>();
    for (const json& e : j.at("positive")) {
      s.positive.push_back({e.at("k").get<double>(), e.at("multiplicity").get<int>(),
                            e.at("contour_order").get<int>(), e.at("verified").get<bool>()});
    }
    for (const json& e : j.at("negative")) {
      s.negative.push_back({e.at("kappa").get<double>(), e.at("multiplicity").get<int>(),
                            e.at("zero_order").get<int>(), e.at("resolved").get<bool>(),
                            e.at("note").get<std::string>()});
    }
    const json& im = j.at("imaginary_axis");
    s.imaginary.pole_orders = im.at("pole_orders").get<std::vector<int>>();
    s.imaginary.pole_kappa = im.at("pole_kappa").get<std::vector<double>>();
    s.imaginary.zero_order_sum = im.at("zero_order_sum").get<int>();
    s.imaginary.pole_order_sum = im.at("pole_order_sum").get<int>();
    s.imaginary.enclosing_winding = im.at("enclosing_winding").get<int>();
    s.imaginary.consistent = im.at("consistent").get<bool>();
    const json& f = j.at("condition_flags");
    s.flags.phase_monotone = f.at("phase_monotone").get<bool>();
    const json& c = f.at("tf2");
    s.flags.tf2.sigma = number_from(c.at("sigma"));
    s.flags.tf2.l_sigma = number_from(c.at("l_sigma"));
    s.flags.tf2.l_min = c.at("l_min").get<double>();
    s.flags.tf2.satisfied = c.at("satisfied").get<bool>();
    s.flags.tf2.required_r = number_from(c.at("required_r"));
    s.multiplicities_verified = j.at("multiplicities_verified").get<bool>();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("spectrum JSON: ") + e.what());
  }
}

json report_to_json(const TraceReport& r) {
  const auto& q = r.quadrature;
  std::vector<json> partial;
  for (std::size_t i = 0; i < r.partial_rhs.size(); ++i) {
    partial.push_back({{"length", i + 1},
                       {"orbits", r.orbit_counts[i]},
                       {"contribution", r.orbit_by_length[i]},
                       {"rhs", r.partial_rhs[i]},
                       {"residual", r.partial_residual[i]},
                       {"tail_estimate", number_or_null(r.tail_estimate[i])}});
  }
  return {{"identity", r.identity},
          {"grouping", r.grouping},
          {"test_function", r.test_function},
          {"test_param", r.test_param},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"residual", r.residual},
          {"volume_term", r.volume_term},
          {"zero_term", r.zero_term},
          {"integral_term", r.integral_term},
          {"by_length", partial},
          {"K_max", r.K_max},
          {"n_max", r.n_max},
          {"quadrature",
           {{"method", q.method},
            {"cutoff", q.cutoff},
            {"spacing", q.spacing},
            {"nodes", q.nodes},
            {"refinement_change", q.refinement_change}}},
          {"spectral_tail", r.spectral_tail},
          {"tail_controlled", r.tail_controlled},
          {"condition",
           {{"sigma", number_or_null(r.condition.sigma)},
            {"l_sigma", number_or_null(r.condition.l_sigma)},
            {"l_min", r.condition.l_min},
            {"satisfied", r.condition.satisfied},
            {"required_r", number_or_null(r.condition.required_r)}}},
          {"warnings", r.warnings}};
}

json heat_asymptotics_to_json(const HeatAsymptotics& h) {
  return {{"gamma_fit", h.gamma_fit},
          {"fit_sqrt_coeff", h.fit_sqrt_coeff},
          {"gamma_formula", h.gamma_formula},
          {"gamma_half_weights", h.gamma_half_weights},
          {"quarter_trace_S", h.quarter_trace_S},
          {"non_robin", h.non_robin},
          {"quarter_trace_exact", h.quarter_trace_exact},
          {"t_min", h.t_min},
          {"t_max", h.t_max},
          {"fit_condition", h.fit_condition},
          {"fit_rms", h.fit_rms}};
}

json identities_to_json(const IdentitySuite& suite) {
  json results = json::array();
  for (const auto& r : suite.results) {
    results.push_back({{"name", r.name},
                       {"passed", r.passed},
                       {"max_residual", r.max_residual},
                       {"tolerance", r.tolerance},
                       {"samples", r.samples},
                       {"detail", r.detail}});
  }
  return {{"all_passed", suite.all_passed()}, {"results", results}};
}

json job_to_json(const JobConfig& cfg) {
  return {{"defaults", job_defaults()},
          {"job",
           {{"kmax", cfg.kmax},
            {"nmax", cfg.nmax},
            {"t", cfg.t},
            {"test_fn", cfg.test_fn},
            {"cauchy_a", cfg.cauchy_a},
            {"identity", cfg.identity},
            {"heat_t", cfg.heat_t},
            {"tolerance", cfg.tolerance},
            {"boundary", cfg.boundary_type},
            {"threads", worker_count()}}}};
}

int cmd_spectrum(const JobConfig& cfg, std::ostream& log) {
  const Prepared p = prepare(cfg);
  const ScatteringModel model(p.graph, p.bc);
  const Spectrum s = compute_spectrum(model, cfg.kmax);

  std::ostringstream csv;
  csv << "k,multiplicity,sign\n";
  if (s.zero.g0 > 0) csv << "0," << s.zero.g0 << ",zero\n";
  for (const auto& e : s.positive) csv << fmt17(e.k) << "," << e.multiplicity << ",positive\n";
  for (const auto& e : s.negative) {
    csv << fmt17(e.kappa) << "," << e.multiplicity << ",negative\n";
  }
  write_text(cfg.out / "spectrum.csv", csv.str());

  json j = spectrum_to_json(s);
  j.update(job_to_json(cfg));
  write_json(cfg.out / "spectrum.json", j);

  std::ostringstream weyl;
  weyl << "K,N,weyl\n";
  std::vector<double> Ks;
  for (int i = 1; i <= 200; ++i) Ks.push_back(cfg.kmax * i / 200.0);
  for (const auto& row : weyl_check(s, Ks)) {
    weyl << fmt17(row.K) << "," << row.count << "," << fmt17(row.weyl) << "\n";
  }
  write_text(cfg.out / "weyl.csv", weyl.str());

  log << "spectrum: " << s.positive.size() << " positive levels up to k = " << cfg.kmax
      << ", g0 = " << s.zero.g0 << ", negative = " << s.negative_count() << "\n";
  for (const auto& e : s.negative) {
    if (!e.resolved) log << "warning: negative eigenvalue near kappa = " << fmt17(e.kappa)
                         << " " << e.note << "\n";
  }
  return 0;
}

int cmd_verify(const JobConfig& cfg, std::ostream& log) {
  const Prepared p = prepare(cfg);
  const ScatteringModel model(p.graph, p.bc);
  const double L = p.graph.total_length();
  json out = job_to_json(cfg);
  out["identity"] = cfg.identity;
  bool ok = true;

  if (cfg.identity == "heat") {
    double K = std::max(cfg.kmax, heat_spectrum_cutoff(1e-4));
    for (double t : cfg.heat_t) {
      K = std::max(K, required_spectrum_cutoff(L, TestFunction::gaussian(t)));
    }
    const Spectrum s = compute_spectrum(model, K);
    std::ostringstream csv;
    csv << "t,lhs,rhs,residual\n";
    json reports = json::array();
    for (double t : cfg.heat_t) {
      const TraceReport r = heat_trace(model, s, t, cfg.nmax);
      print_warnings(r, log);
      ok = ok && report_passes(r, cfg.tolerance);
      csv << fmt17(t) << "," << fmt17(r.lhs) << "," << fmt17(r.rhs) << "," << fmt17(r.residual)
          << "\n";
      reports.push_back(report_to_json(r));
      log << "heat t = " << t << ": residual " << r.residual << "\n";
    }
    out["reports"] = reports;
    try {
      const HeatAsymptotics h = heat_asymptotics(model, s);
      out["asymptotics"] = heat_asymptotics_to_json(h);
      log << "gamma fit = " << fmt17(h.gamma_fit) << ", formula = " << fmt17(h.gamma_formula)
          << "\n";
    } catch (const Error& e) {
      out["asymptotics"] = {{"error", e.what()}};
      log << "warning: " << e.what() << "\n";
    }
    write_text(cfg.out / "convergence.csv", csv.str());
  } else {
    const TestFunction h = test_function(cfg);
    const double needed = required_spectrum_cutoff(L, h);
    const double K = std::isfinite(needed) ? std::max(cfg.kmax, needed) : cfg.kmax;
    const Spectrum s = compute_spectrum(model, K);
    const TraceReport r = evaluate_tf(model, s, h, cfg.nmax, cfg.identity == "tf2");
    print_warnings(r, log);
    ok = report_passes(r, cfg.tolerance);
    std::ostringstream csv;
    csv << "cutoff,lhs,rhs,residual\n";
    for (std::size_t l = 0; l < r.partial_rhs.size(); ++l) {
      csv << l + 1 << "," << fmt17(r.lhs) << "," << fmt17(r.partial_rhs[l]) << ","
          << fmt17(r.partial_residual[l]) << "\n";
    }
    write_text(cfg.out / "convergence.csv", csv.str());
    out["report"] = report_to_json(r);
    log << r.identity << " (" << r.grouping << " grouping), " << r.test_function
        << ": residual " << r.residual << "\n";
  }
  out["passed"] = ok;
  write_json(cfg.out / "report.json", out);
  if (!ok) log << "error: residual exceeds tolerance " << cfg.tolerance << "\n";
  return ok ? 0 : 1;
}

int cmd_check(const JobConfig& cfg, std::ostream& log) {
  const Prepared p = prepare(cfg);
  const ScatteringModel model(p.graph, p.bc);
  const IdentitySuite suite = run_identity_suite(model);
  json j = identities_to_json(suite);
  j.update(job_to_json(cfg));
  write_json(cfg.out / "identities.json", j);
  for (const auto& r : suite.results) {
    if (!r.passed) {
      log << "identity failed: " << r.name << " (max residual " << r.max_residual
          << ", tolerance " << r.tolerance << ")\n";
    }
  }
  if (suite.all_passed()) log << "all " << suite.results.size() << " identities passed\n";
  return suite.all_passed() ? 0 : 1;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Config:
    case ErrorCode::EmptyGraph:
    case ErrorCode::NonPositiveLength:
    case ErrorCode::DanglingVertexReference:
    case ErrorCode::WrongParameterCount:
      return 2;
    default:
      return 1;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectra and trace formulae of quantum graphs", "qgraph"};
  app.require_subcommand(1, 1);
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> kmax, t;
  std::optional<int> nmax;
  std::optional<std::string> test_fn, identity;

  for (auto* sub : {app.add_subcommand("spectrum", "positive, zero and negative spectrum"),
                    app.add_subcommand("verify", "check a trace identity against the spectrum"),
                    app.add_subcommand("check", "run the scattering identity suite")}) {
    sub->add_option("--config", config_path, "experiment JSON")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--kmax", kmax, "spectral cutoff");
    sub->add_option("--nmax", nmax, "largest topological orbit length");
    sub->add_option("--t", t, "Gaussian width parameter");
    sub->add_option("--test-fn", test_fn, "gaussian or cauchy");
    sub->add_option("--identity", identity, "tf1, tf2 or heat");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    JobConfig cfg = load_config(config_path);
    cfg.out = out_dir;
    if (kmax) cfg.kmax = *kmax;
    if (nmax) cfg.nmax = *nmax;
    if (t) cfg.t = *t;
    if (test_fn) cfg.test_fn = *test_fn;
    if (identity) cfg.identity = *identity;

    const std::string cmd = app.get_subcommands().front()->get_name();
    if (cmd == "spectrum") return cmd_spectrum(cfg, err);
    if (cmd == "verify") return cmd_verify(cfg, err);
    return cmd_check(cfg, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "error: ConfigError: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace qgraph
