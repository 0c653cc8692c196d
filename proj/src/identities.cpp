#include "qgraph/identities.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qgraph/spectrum.hpp"
#include "qgraph/traceformula.hpp"

namespace qgraph {

bool IdentitySuite::all_passed() const {
  return std::all_of(results.begin(), results.end(),
                     [](const IdentityResult& r) { return r.passed; });
}

const IdentityResult* IdentitySuite::find(const std::string& name) const {
  for (const auto& r : results) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

namespace {

class Recorder {
 public:
  Recorder(std::string name, double tol) { r_.name = std::move(name), r_.tolerance = tol; }
  void add(double residual) {
    ++r_.samples;
    if (!(residual <= r_.max_residual)) r_.max_residual = residual;
  }
  IdentityResult done(std::string detail = {}) {
    r_.passed = r_.max_residual <= r_.tolerance;
    r_.detail = std::move(detail);
    return r_;
  }

 private:
  IdentityResult r_;
};

}  // namespace

IdentitySuite run_identity_suite(const ScatteringModel& model, const IdentityOptions& opts) {
  IdentitySuite suite;
  std::mt19937_64 rng(opts.seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto& c = model.constants();
  const MetricGraph& g = model.graph();
  const int n = model.size();
  const CMatrix I = CMatrix::Identity(n, n);

  auto real_k = [&] {
    double k;
    do {
      k = -30.0 + 60.0 * uni(rng);
    } while (std::abs(k) < 1e-3);
    return k;
  };
  auto complex_k = [&] {
    cplx k;
    do {
      k = cplx(-20.0 + 40.0 * uni(rng), -0.5 + uni(rng));
    } while (std::abs(k) < 1e-3 || model.near_pole(k, 1e-3));
    return k;
  };

  {
    Recorder s("unitarity_S", 1e-12);
    Recorder u("unitarity_U", 1e-12);
    Recorder d("S_direct_formula", 1e-10);
    for (int i = 0; i < opts.samples; ++i) {
      const double k = real_k();
      const CMatrix S = model.S(k);
      s.add(identity_deviation(S * S.adjoint()));
      const CMatrix U = model.U(k);
      u.add(identity_deviation(U * U.adjoint()));
      d.add((S - model.S_direct(k)).norm());
    }
    suite.results.push_back(s.done());
    suite.results.push_back(u.done());
    suite.results.push_back(d.done());
  }

  {
    Recorder r("inverse_relation", 1e-10);
    for (int i = 0; i < opts.samples; ++i) {
      const cplx k = complex_k();
      r.add(identity_deviation(model.S(k) * model.S(-k)));
    }
    suite.results.push_back(r.done());
  }

  {
    Recorder r("functional_equation", 1e-10);
    const int M = g.edge_count() + model.canonical().d() + model.canonical().s;
    const double sign = M % 2 == 0 ? 1.0 : -1.0;
    for (int i = 0; i < opts.samples; ++i) {
      const cplx k = complex_k();
      const cplx lhs = secular_F(model, k);
      const cplx rhs = sign * std::exp(2.0 * kI * k * g.total_length()) *
                       model.robin_phase_product(k) * secular_F(model, -k);
      r.add(std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    suite.results.push_back(r.done("M = " + std::to_string(M)));
  }

  {
    Recorder fd("S_prime_finite_difference", 1e-6);
    Recorder inv("S_prime_inverse_form", 1e-10);
    const double h = 1e-6;
    for (int i = 0; i < opts.derivative_samples; ++i) {
      const double k = real_k();
      const CMatrix sp = model.S_prime(k);
      const CMatrix diff = (model.S(k + h) - model.S(k - h)) / (2.0 * h);
      fd.add((diff - sp).norm() / std::max(sp.norm(), 1e-4));
      inv.add((model.S_prime_from_inverse(k) - sp).norm());
    }
    suite.results.push_back(fd.done());
    suite.results.push_back(inv.done());
  }

  {
    Recorder fd("theta_prime_finite_difference", 1e-5);
    Recorder bounds("theta_prime_bounds", 1e-10);
    EigenphaseTracker tracker(model);
    const auto [lo, hi] = tracker.derivative_bounds();
    std::vector<double> ks;
    for (int i = 0; i < opts.derivative_samples; ++i) ks.push_back(0.5 + 29.5 * uni(rng));
    std::sort(ks.begin(), ks.end());
    const double h = 1e-5;
    PhaseState cur = tracker.start(0.0);
    int skipped = 0;
    for (double k : ks) {
      if (k - h <= cur.k) continue;
      const PhaseState a = tracker.advance(cur, k - h);
      const PhaseState b = tracker.advance(a, k);
      const PhaseState e = tracker.advance(b, k + h);
      cur = e;
      for (int j = 0; j < n; ++j) {
        double gap = kInfinity;
        for (int m = 0; m < n; ++m) {
          if (m != j) gap = std::min(gap, std::abs(wrap_angle(b.theta(j) - b.theta(m))));
        }
        const double tp = tracker.theta_prime(b, j);
        bounds.add(std::max({0.0, lo - tp, tp - hi}));
        if (gap > 1e-9 && gap < 1e-3) {
          ++skipped;
          continue;
        }
        fd.add(std::abs(tp - (e.theta(j) - a.theta(j)) / (2.0 * h)));
      }
    }
    suite.results.push_back(fd.done("near-degenerate branches skipped: " +
                                    std::to_string(skipped)));
    suite.results.push_back(bounds.done("bounds [" + fmt17(lo) + ", " + fmt17(hi) + "]"));
  }

  {
    Recorder small("norm_bound_small_kappa", 1e-10);
    Recorder large("norm_bound_large_kappa", 1e-10);
    Recorder unorm("norm_bound_U", 1e-10);
    const double top = std::isfinite(c.lambda_plus_min) ? c.lambda_plus_min : 5.0;
    for (int i = 0; i < opts.samples; ++i) {
      const double k = -30.0 + 60.0 * uni(rng);
      const double kappa = top * (0.001 + 0.998 * uni(rng));
      const cplx up(k, kappa);
      const double bound = model.S_bound_small(kappa);
      if (model.near_pole(up, 1e-6) || model.near_pole(cplx(-k, kappa), 1e-6)) continue;
      small.add(std::max(0.0, operator_norm(model.S(up)) - bound));
      small.add(std::max(0.0, operator_norm(model.S(cplx(-k, kappa))) - bound));
      unorm.add(std::max(0.0, operator_norm(model.U(up)) - model.U_bound(kappa)));

      const double kl = c.lambda_max + 0.01 + 10.0 * uni(rng);
      const double bl = model.S_bound_large(kl);
      large.add(std::max(0.0, operator_norm(model.S(cplx(k, kl))) - bl));
      large.add(std::max(0.0, operator_norm(model.S(cplx(-k, kl))) - bl));
    }
    suite.results.push_back(small.done());
    suite.results.push_back(large.done());
    suite.results.push_back(unorm.done());
  }

  if (model.canonical().is_robin()) {
    const int terms = 12;
    const double margin = 10.0 * std::sqrt(static_cast<double>(n));
    Recorder high("expansion_large_k", 2.0 * std::pow(0.25, terms + 1) / 0.75 * margin);
    Recorder low("expansion_small_k", 2.0 * std::pow(0.25, terms + 1) / 0.75 * margin);
    for (int i = 0; i < 20; ++i) {
      const double phi = 2.0 * kPi * uni(rng);
      const cplx kh = 4.0 * c.lambda_max * std::polar(1.0, phi);
      high.add((model.S(kh) - model.S_series_high(kh, terms)).norm());
      const cplx kl = 0.25 * c.lambda_min * std::polar(1.0, phi);
      low.add((model.S(kl) - model.S_series_low(kl, terms)).norm());
    }
    suite.results.push_back(high.done());
    suite.results.push_back(low.done());
  } else {
    Recorder r("constant_S_limits", 1e-12);
    r.add((model.S_infinity() - model.S_zero()).norm());
    for (int i = 0; i < 20; ++i) r.add((model.S(real_k()) - model.S_infinity()).norm());
    suite.results.push_back(r.done("S independent of k"));
  }

  {
    Recorder r("duality_inverse_k", 1e-10);
    const ScatteringModel dual(g, swapped(model.conditions()));
    for (int i = 0; i < 20; ++i) {
      const double k = real_k();
      if (dual.near_pole(1.0 / k, 1e-3)) continue;
      r.add((model.S(k) + dual.S(1.0 / k)).norm());
    }
    suite.results.push_back(r.done());
  }

  {
    Recorder len("orbit_length_sum", 1e-9);
    Recorder der("orbit_derivative_sum", 1e-9);
    Recorder lam("orbit_lambda_trace", 1e-9);
    Recorder cnt("orbit_walk_count", 0.0);
    const TransitionMask mask = model.transition_mask();
    const OrbitCatalogue cat = enumerate_orbits(g, mask, opts.orbit_length);
    for (int l = 1; l <= opts.orbit_length; ++l) {
      double walks = 0.0;
      for (const auto& p : cat.by_length[l]) walks += p.walk_count();
      cnt.add(std::abs(walks - mask.closed_walk_count(l)));
      for (int i = 0; i < opts.orbit_samples; ++i) {
        const double k = 0.1 + 29.9 * uni(rng);
        CMatrix Ul = I;
        const CMatrix U = model.U(k);
        for (int m = 0; m < l; ++m) Ul = Ul * U;
        const cplx dtr = (model.D() * Ul).trace();
        const cplx rtr = -2.0 * (model.L_resolvent(k) * Ul).trace();
        const cplx ls = grouped_length_sum(model, cat.by_length[l], k);
        const cplx ds = grouped_derivative_sum(model, cat.by_length[l], k);
        len.add(std::abs(ls - dtr) / std::max(1.0, std::abs(dtr)));
        der.add(std::abs(ds - rtr) / std::max(1.0, std::abs(rtr)));
        const cplx mt = matrix_trace_term(model, l, k);
        lam.add(std::abs(kI * (ls + ds) - mt) / std::max(1.0, std::abs(mt)));
      }
    }
    suite.results.push_back(len.done());
    suite.results.push_back(der.done());
    suite.results.push_back(lam.done());
    suite.results.push_back(cnt.done());

    if (!model.canonical().is_robin()) {
      Recorder r("amplitude_constant", 1e-12);
      for (int l = 1; l <= opts.orbit_length; ++l) {
        for (const auto& p : cat.by_length[l]) {
          const cplx lead = orbit_amplitude_leading(model, p);
          for (double k : {1.0, 10.0, 50.0, 100.0}) {
            r.add(std::abs(orbit_amplitude(model, p, k).A - lead));
          }
        }
      }
      suite.results.push_back(r.done());
    }
  }

  {
    Recorder r("zero_mode_k_independence", 0.0);
    std::vector<int> g0;
    for (double k : {1.0, 2.0, 3.0}) g0.push_back(zero_mode_multiplicity_at(model, k));
    for (int v : g0) r.add(std::abs(v - g0.front()));
    suite.results.push_back(r.done("g0 = " + std::to_string(g0.front())));
  }
  return suite;
}

}  // namespace qgraph
