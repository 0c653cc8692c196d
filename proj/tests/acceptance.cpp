// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "qgraph/identities.hpp"
#include "qgraph/traceformula.hpp"

using namespace qgraph;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

MetricGraph interval(double l) { return MetricGraph::build(2, {{0, 1, l}}); }
MetricGraph star3() { return MetricGraph::build(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}); }
MetricGraph loop() { return MetricGraph::build(1, {{0, 0, 2.0}}); }
MetricGraph theta() { return MetricGraph::build(2, {{0, 1, 1.0}, {0, 1, 1.4}, {1, 0, 2.1}}); }
MetricGraph tree_with_cycle() {
  return MetricGraph::build(5, {{0, 1, 1.0}, {1, 2, 1.2}, {2, 0, 0.9}, {2, 3, 1.7}, {3, 4, 0.6}});
}

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

Outcome exact_spectrum() {
  const auto t0 = Clock::now();
  const auto g = interval(kPi);
  double worst = 0.0;
  bool counts = true;
  for (const auto& bc : {neumann(g), dirichlet(g)}) {
    const auto s = compute_spectrum(ScatteringModel(g, bc), 50.5);
    counts = counts && s.positive.size() == 50;
    for (std::size_t n = 0; n < s.positive.size() && n < 50; ++n) {
      worst = std::max(worst, std::abs(s.positive[n].k - (n + 1.0)));
      counts = counts && s.positive[n].multiplicity == 1;
    }
  }
  const double dt = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "max |k_n - n| = %.2e over 2x50 levels, %.2f s", worst, dt);
  return {counts && worst < 1e-10 && dt < 5.0, buf};
}

Outcome robin_negative() {
  const auto g = interval(4.0);
  const ScatteringModel m(g, robin(g, {1.0, 1.0}));
  const auto s = compute_spectrum(m, 10.0);
  const double oracle = bisect([](double x) { return x * std::tanh(2.0 * x) - 1.0; }, 0.1, 5.0);
  double err = kInfinity;
  for (const auto& e : s.negative) err = std::min(err, std::abs(e.kappa - oracle));
  const int count = s.negative_count();
  std::snprintf(buf, sizeof buf, "kappa = %.15f, bisection %.15f, |diff| = %.1e, count = %d",
                s.negative.empty() ? 0.0 : s.negative.front().kappa, oracle, err, count);
  return {err < 1e-9 && count >= 1 && count <= 2, buf};
}

Outcome weyl_law() {
  const auto t0 = Clock::now();
  const auto g = star3();
  const auto s = compute_spectrum(ScatteringModel(g, kirchhoff(g)), 200.0);
  // extremes of N(K) - 3K/pi occur just before and at each level
  std::vector<double> Ks = {200.0};
  for (const auto& e : s.positive) {
    Ks.push_back(e.k);
    Ks.push_back(e.k * (1.0 - 1e-12));
  }
  double worst = 0.0;
  for (const auto& row : weyl_check(s, Ks)) worst = std::max(worst, std::abs(row.deviation));
  const double dt = seconds_since(t0);
  std::snprintf(buf, sizeof buf, "max |N(K) - 3K/pi| = %.3f for K <= 200, N(200) = %d, %.2f s",
                worst, s.counting(200.0), dt);
  return {worst <= 5.0 && dt < 60.0, buf};
}

Outcome tf2_star() {
  const auto g = star3();
  const ScatteringModel m(g, kirchhoff(g));
  const auto h = TestFunction::gaussian(0.05);
  const auto s = compute_spectrum(m, std::max(60.0, required_spectrum_cutoff(3.0, h)));
  const auto r = evaluate_tf(m, s, h, 12, true);
  int knee = 0;
  while (knee < 12 && r.orbit_counts[knee] == 0) ++knee;
  bool monotone = true;
  for (int l = knee + 1; l < 12; ++l) {
    const double prev = r.partial_residual[l - 1];
    monotone = monotone && r.partial_residual[l] <= prev * (1.0 + 1e-9) + 1e-13;
  }
  std::snprintf(buf, sizeof buf,
                "residual %.2e at n_max = 12 (%s grouping), non-increasing from l = %d: %s",
                r.residual, r.grouping.c_str(), knee + 1, monotone ? "yes" : "no");
  return {r.residual < 1e-6 && r.grouping == "tf2" && monotone, buf};
}

Outcome tf3() {
  const auto gi = interval(4.0);
  const auto gs = star3();
  const ScatteringModel rb(gi, robin(gi, {1.0, 1.0}));
  const ScatteringModel st(gs, kirchhoff(gs));
  const double K = required_spectrum_cutoff(4.0, TestFunction::gaussian(0.01));
  const auto sr = compute_spectrum(rb, K);
  const auto ss = compute_spectrum(st, K);
  double worst = 0.0;
  bool erfc_active = true;
  for (double t : {0.01, 0.05, 0.1, 0.5}) {
    const auto a = heat_trace(rb, sr, t, 12);
    const auto b = heat_trace(st, ss, t, 12);
    worst = std::max({worst, a.residual, b.residual});
    erfc_active = erfc_active && a.integral_term != 0.0;
  }
  std::snprintf(buf, sizeof buf,
                "max residual %.2e over Robin interval and 3-star, t in {0.01,0.05,0.1,0.5}, "
                "erfc term %s",
                worst, erfc_active ? "active" : "missing");
  return {worst < 1e-6 && erfc_active, buf};
}

Outcome heat_constant() {
  const double K = heat_spectrum_cutoff(1e-4);
  bool ok = true;
  double worst = 0.0;
  auto check = [&](const MetricGraph& g, const BoundaryConditions& bc, bool kirchhoff_graph) {
    const ScatteringModel m(g, bc);
    const auto h = heat_asymptotics(m, compute_spectrum(m, K));
    worst = std::max(worst, std::abs(h.gamma_fit - h.gamma_formula));
    if (h.non_robin) ok = ok && h.quarter_trace_exact;
    if (kirchhoff_graph) {
      ok = ok && h.gamma_formula == 0.5 * (g.vertex_count() - g.edge_count());
    }
  };
  const auto s = star3();
  const auto i4 = interval(4.0);
  const auto ip = interval(kPi);
  check(s, kirchhoff(s), true);
  check(loop(), kirchhoff(loop()), true);
  check(theta(), kirchhoff(theta()), true);
  check(ip, neumann(ip), false);
  check(ip, dirichlet(ip), false);
  check(i4, robin(i4, {1.0, 1.0}), false);
  std::snprintf(buf, sizeof buf,
                "max |gamma_fit - gamma_formula| = %.2e over 6 cases; 4g0-2N = tr S exact and "
                "Kirchhoff gamma = (V-E)/2",
                worst);
  return {ok && worst < 1e-3, buf};
}

Outcome identity_suite() {
  const auto s = star3();
  const auto i4 = interval(4.0);
  const char* names[] = {"unitarity_S",
                         "unitarity_U",
                         "functional_equation",
                         "S_prime_finite_difference",
                         "theta_prime_finite_difference",
                         "norm_bound_small_kappa",
                         "norm_bound_large_kappa",
                         "norm_bound_U"};
  bool ok = true;
  double unit = 0.0, feq = 0.0, sp = 0.0, tp = 0.0;
  for (const auto& m : {ScatteringModel(s, kirchhoff(s)),
                        ScatteringModel(i4, robin(i4, {1.0, 1.0})),
                        ScatteringModel(s, kirchhoff(s, {1.0, 0.0, -0.5, 2.0}))}) {
    const auto suite = run_identity_suite(m);
    ok = ok && suite.all_passed();
    for (const char* n : names) ok = ok && suite.find(n) && suite.find(n)->passed;
    unit = std::max({unit, suite.find("unitarity_S")->max_residual,
                     suite.find("unitarity_U")->max_residual});
    feq = std::max(feq, suite.find("functional_equation")->max_residual);
    sp = std::max(sp, suite.find("S_prime_finite_difference")->max_residual);
    tp = std::max(tp, suite.find("theta_prime_finite_difference")->max_residual);
  }
  std::snprintf(buf, sizeof buf,
                "unitarity %.1e, functional equation %.1e, S' fd %.1e, theta' fd %.1e, "
                "norm bounds held",
                unit, feq, sp, tp);
  return {ok, buf};
}

Outcome orbit_oracle() {
  const auto i = interval(1.5);
  const auto s = star3();
  bool ok = true;
  double worst = 0.0;
  for (const auto& m : {ScatteringModel(i, neumann(i)), ScatteringModel(i, robin(i, {1.0, 0.5})),
                        ScatteringModel(loop(), kirchhoff(loop())),
                        ScatteringModel(s, kirchhoff(s))}) {
    const auto suite = run_identity_suite(m);
    for (const char* n : {"orbit_length_sum", "orbit_derivative_sum", "orbit_lambda_trace",
                          "orbit_walk_count"}) {
      const auto* r = suite.find(n);
      ok = ok && r && r->passed;
      if (r) worst = std::max(worst, r->max_residual);
    }
  }
  std::snprintf(buf, sizeof buf,
                "orbit sums vs tr[D U^l], tr[R U^l], tr[Lambda U^l] for l <= 6: max %.1e", worst);
  return {ok && worst < 1e-9, buf};
}

Outcome zero_modes() {
  bool ok = true;
  std::string detail;
  for (const auto& g : {star3(), loop(), theta(), tree_with_cycle()}) {
    const auto z = zero_mode_multiplicities(ScatteringModel(g, kirchhoff(g)));
    const int expectN = g.edge_count() - g.vertex_count() + 2;
    ok = ok && z.g0 == 1 && z.N == expectN;
    for (int v : z.g0_samples) ok = ok && v == z.g0;
    std::snprintf(buf, sizeof buf, "%s(%d,%d)", detail.empty() ? "" : " ", z.g0, z.N);
    detail += buf;
  }
  std::snprintf(buf, sizeof buf,
                "(g0,N) = %s for 3-star, loop, theta, 5-vertex graph; g0 equal at k = 1,2,3",
                detail.c_str());
  return {ok, buf};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"exact interval spectra", exact_spectrum},
      {"Robin negative eigenvalue", robin_negative},
      {"Weyl law on the 3-star", weyl_law},
      {"TF2 Gaussian on the 3-star", tf2_star},
      {"heat trace identity", tf3},
      {"heat asymptotic constant", heat_constant},
      {"scattering identity suite", identity_suite},
      {"orbit sums vs matrix powers", orbit_oracle},
      {"zero-mode multiplicities", zero_modes},
  };
  int failures = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
