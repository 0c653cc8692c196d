#include "qgraph/traceformula.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qgraph {

TestFunction TestFunction::gaussian(double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::Config, "gaussian parameter t must be positive");
  return TestFunction(Kind::Gaussian, t);
}

TestFunction TestFunction::cauchy(double a) {
  if (!(a > 0.0)) throw Error(ErrorCode::Config, "cauchy parameter a must be positive");
  return TestFunction(Kind::Cauchy, a);
}

std::string TestFunction::name() const {
  return kind_ == Kind::Gaussian ? "gaussian" : "cauchy";
}

cplx TestFunction::h(cplx k) const {
  if (kind_ == Kind::Gaussian) return std::exp(-param_ * k * k);
  return 1.0 / (k * k + param_ * param_);
}

double TestFunction::hhat(double x) const {
  if (kind_ == Kind::Gaussian) {
    return std::exp(-x * x / (4.0 * param_)) / std::sqrt(4.0 * kPi * param_);
  }
  return std::exp(-param_ * std::abs(x)) / (2.0 * param_);
}

double TestFunction::strip() const {
  return kind_ == Kind::Gaussian ? kInfinity : param_;
}

double TestFunction::tail_integral(double K) const {
  if (kind_ == Kind::Gaussian) {
    return 0.5 * std::sqrt(kPi / param_) * std::erfc(K * std::sqrt(param_));
  }
  return (0.5 * kPi - std::atan(K / param_)) / param_;
}

double TestFunction::cutoff() const {
  const double ratio = std::log(1e14);
  if (kind_ == Kind::Gaussian) return std::sqrt(ratio / param_);
  return param_ * std::sqrt(1e14 - 1.0);
}

double TestFunction::imaginary_trace_term(const RVector& lambdas) const {
  double sum = 0.0;
  for (int a = 0; a < lambdas.size(); ++a) {
    const double lam = lambdas(a);
    const double sgn = lam > 0 ? 1.0 : -1.0;
    const double m = std::abs(lam);
    if (kind_ == Kind::Gaussian) {
      sum -= 0.5 * sgn * erfcx(m * std::sqrt(param_));
    } else {
      sum -= sgn / (2.0 * param_ * (param_ + m));
    }
  }
  return sum;
}

OrbitAmplitude orbit_amplitude(const MetricGraph& g, const PeriodicOrbit& p, const CMatrix& S,
                               const CMatrix& S_prime) {
  const auto& j = p.rep;
  const int n = static_cast<int>(j.size());
  std::vector<cplx> f(n);
  std::vector<cplx> fp(n);
  for (int m = 0; m < n; ++m) {
    const int next = j[(m + 1) % n];
    const int w = g.omega(j[m]);
    f[m] = S(next, w);
    fp[m] = S_prime.size() ? S_prime(next, w) : cplx(0.0);
  }
  std::vector<cplx> prefix(n + 1, 1.0);
  std::vector<cplx> suffix(n + 1, 1.0);
  for (int m = 0; m < n; ++m) prefix[m + 1] = prefix[m] * f[m];
  for (int m = n - 1; m >= 0; --m) suffix[m] = suffix[m + 1] * f[m];
  OrbitAmplitude a;
  a.A1 = prefix[n];
  cplx inserted = 0.0;
  for (int s = 0; s < n; ++s) inserted += prefix[s] * fp[s] * suffix[s + 1];
  a.A2 = -kI * inserted / static_cast<double>(p.repetition);
  a.A = p.primitive_length * a.A1 + a.A2;
  return a;
}

OrbitAmplitude orbit_amplitude(const ScatteringModel& model, const PeriodicOrbit& p, cplx k) {
  return orbit_amplitude(model.graph(), p, model.S(k), model.S_prime(k));
}

cplx orbit_amplitude_leading(const ScatteringModel& model, const PeriodicOrbit& p) {
  return orbit_amplitude(model.graph(), p, model.S_infinity(), CMatrix()).A;
}

cplx matrix_trace_term(const ScatteringModel& model, int l, cplx k) {
  const CMatrix base = l >= 0 ? model.U(k) : model.U_inverse(k);
  CMatrix power = CMatrix::Identity(model.size(), model.size());
  for (int i = 0; i < std::abs(l); ++i) power = power * base;
  return (model.Lambda(k) * power).trace();
}

cplx grouped_length_sum(const ScatteringModel& model, const std::vector<PeriodicOrbit>& orbits,
                        cplx k) {
  const CMatrix S = model.S(k);
  cplx sum = 0.0;
  for (const auto& p : orbits) {
    sum += p.primitive_length * orbit_amplitude(model.graph(), p, S, CMatrix()).A1 *
           std::exp(kI * k * p.metric_length);
  }
  return sum;
}

cplx grouped_derivative_sum(const ScatteringModel& model,
                            const std::vector<PeriodicOrbit>& orbits, cplx k) {
  const CMatrix S = model.S(k);
  const CMatrix Sp = model.S_prime(k);
  cplx sum = 0.0;
  for (const auto& p : orbits) {
    sum += orbit_amplitude(model.graph(), p, S, Sp).A2 * std::exp(kI * k * p.metric_length);
  }
  return sum;
}

namespace {

// Real-line trapezoid sums on a shared grid; `stride` 2 gives the coarse grid.
std::vector<Convolution> trapezoid_sums(const ScatteringModel& model,
                                        const std::vector<const PeriodicOrbit*>& orbits,
                                        const TestFunction& h, const std::vector<double>& nodes,
                                        const std::vector<CMatrix>& S,
                                        const std::vector<CMatrix>& Sp, double spacing,
                                        int stride) {
  std::vector<Convolution> out(orbits.size());
  parallel_for(orbits.size(), [&](std::size_t o) {
    const PeriodicOrbit& p = *orbits[o];
    cplx direct = 0.0;
    cplx conjugate = 0.0;
    for (std::size_t i = 0; i < nodes.size(); i += stride) {
      const double k = nodes[i];
      const cplx a = orbit_amplitude(model.graph(), p, S[i], Sp[i]).A;
      const double hk = h.h(k);
      const cplx phase = std::exp(kI * k * p.metric_length);
      direct += hk * a * phase;
      conjugate += hk * std::conj(a) * std::conj(phase);
    }
    const double w = spacing * stride / (2.0 * kPi);
    out[o] = {direct * w, conjugate * w};
  });
  return out;
}

// Circle in the upper half plane enclosing i*a and every i*lambda with lambda > 0.
std::vector<Convolution> contour_sums(const ScatteringModel& model,
                                      const std::vector<const PeriodicOrbit*>& orbits,
                                      const TestFunction& h, int nodes, double center,
                                      double radius) {
  std::vector<cplx> z(nodes);
  std::vector<cplx> dz(nodes);
  std::vector<CMatrix> S(nodes);
  std::vector<CMatrix> Sp(nodes);
  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t i) {
    const double phi = 2.0 * kPi * static_cast<double>(i) / nodes;
    const cplx e = std::polar(1.0, phi);
    z[i] = cplx(0.0, center) + radius * e;
    dz[i] = kI * radius * e * (2.0 * kPi / nodes);
    S[i] = model.S(z[i]);
    Sp[i] = model.S_prime(z[i]);
  });
  std::vector<Convolution> out(orbits.size());
  parallel_for(orbits.size(), [&](std::size_t o) {
    const PeriodicOrbit& p = *orbits[o];
    cplx direct = 0.0;
    cplx conjugate = 0.0;
    for (int i = 0; i < nodes; ++i) {
      const cplx a = orbit_amplitude(model.graph(), p, S[i], Sp[i]).A;
      direct += h.h(z[i]) * a * std::exp(kI * z[i] * p.metric_length) * dz[i];
      // the mirrored circle runs clockwise and closes the real line from below
      const cplx zl = std::conj(z[i]);
      const cplx dzl = std::conj(dz[i]);
      conjugate += h.h(zl) * std::conj(a) * std::exp(-kI * zl * p.metric_length) * dzl;
    }
    out[o] = {direct / (2.0 * kPi), conjugate / (2.0 * kPi)};
  });
  return out;
}

double max_change(const std::vector<Convolution>& a, const std::vector<Convolution>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i].direct - b[i].direct));
    m = std::max(m, std::abs(a[i].conjugate - b[i].conjugate));
  }
  return m;
}

}  // namespace

std::vector<Convolution> convolution_terms(const ScatteringModel& model,
                                           const std::vector<const PeriodicOrbit*>& orbits,
                                           const TestFunction& h, QuadratureInfo* info) {
  QuadratureInfo q;
  std::vector<Convolution> out(orbits.size());
  if (orbits.empty()) {
    q.method = "none";
    if (info) *info = q;
    return out;
  }

  if (!model.canonical().is_robin()) {
    q.method = "closed-form";
    for (std::size_t o = 0; o < orbits.size(); ++o) {
      const cplx a = orbit_amplitude_leading(model, *orbits[o]);
      const double hh = h.hhat(orbits[o]->metric_length);
      out[o] = {a * hh, std::conj(a) * hh};
    }
    if (info) *info = q;
    return out;
  }

  if (h.kind() == TestFunction::Kind::Cauchy) {
    q.method = "contour";
    const auto& c = model.constants();
    const double a = h.param();
    double lo = a;
    double hi = a;
    if (c.d_plus > 0) {
      lo = std::min(lo, c.lambda_plus_min);
      hi = std::max(hi, c.lambda_plus_max);
    }
    const double bottom = 0.5 * lo;
    const double top = hi + 1.0;
    const double center = 0.5 * (bottom + top);
    const double radius = 0.5 * (top - bottom);
    double scale = 0.0;
    std::vector<Convolution> prev = contour_sums(model, orbits, h, 128, center, radius);
    for (int n = 256; n <= (1 << 16); n *= 2) {
      std::vector<Convolution> cur = contour_sums(model, orbits, h, n, center, radius);
      for (const auto& v : cur) scale = std::max(scale, std::abs(v.direct));
      const double change = max_change(prev, cur);
      prev = std::move(cur);
      q.nodes = n;
      q.refinement_change = change;
      if (change < 1e-12 * std::max(1.0, scale)) break;
    }
    q.cutoff = radius;
    q.spacing = 2.0 * kPi * radius / q.nodes;
    if (q.refinement_change >= 1e-10 * std::max(1.0, scale)) {
      throw Error(ErrorCode::QuadratureNotConverged,
                  "contour refinement change " + fmt17(q.refinement_change));
    }
    if (info) *info = q;
    return prev;
  }

  q.method = "trapezoid";
  double lmax = 0.0;
  for (const auto* p : orbits) lmax = std::max(lmax, p->metric_length);
  const double K = h.cutoff();
  // the coarse grid (every second node) already meets the pi/(8 l) resolution
  double spacing = kPi / (16.0 * lmax);
  for (int attempt = 0; attempt < 4; ++attempt) {
    const int half = static_cast<int>(std::ceil(K / spacing));
    const int count = 2 * half + 1;
    std::vector<double> nodes(count);
    for (int i = 0; i < count; ++i) nodes[i] = (i - half) * spacing;
    std::vector<CMatrix> S(count);
    std::vector<CMatrix> Sp(count);
    parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
      S[i] = model.S(nodes[i]);
      Sp[i] = model.S_prime(nodes[i]);
    });
    const auto fine = trapezoid_sums(model, orbits, h, nodes, S, Sp, spacing, 1);
    const auto coarse = trapezoid_sums(model, orbits, h, nodes, S, Sp, spacing, 2);
    q.cutoff = half * spacing;
    q.spacing = spacing;
    q.nodes = count;
    q.refinement_change = max_change(fine, coarse);
    if (q.refinement_change < 1e-10) {
      if (info) *info = q;
      return fine;
    }
    spacing *= 0.5;
  }
  throw Error(ErrorCode::QuadratureNotConverged,
              "grid halving change " + fmt17(q.refinement_change));
}

Convolution convolution_term(const ScatteringModel& model, const PeriodicOrbit& p,
                             const TestFunction& h) {
  return convolution_terms(model, {&p}, h).front();
}

double spectral_tail_bound(double total_length, const TestFunction& h, double K) {
  return total_length / kPi * 1.2 * h.tail_integral(K);
}

double required_spectrum_cutoff(double total_length, const TestFunction& h, double tol) {
  auto f = [&](double K) { return spectral_tail_bound(total_length, h, K) - tol; };
  double hi = 1.0;
  while (f(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e9) return kInfinity;
  }
  return bisect(f, 0.0, hi, 1e-12);
}

double spectral_sum(const Spectrum& spectrum, const TestFunction& h) {
  double sum = spectrum.zero.g0 * h.h(0.0);
  for (const auto& ev : spectrum.positive) sum += ev.multiplicity * h.h(ev.k);
  return sum;
}

TraceReport evaluate_tf(const ScatteringModel& model, const Spectrum& spectrum,
                        const TestFunction& h, int n_max, bool tf2, std::size_t orbit_cap) {
  TraceReport r;
  r.identity = tf2 ? "tf2" : "tf1";
  r.test_function = h.name();
  r.test_param = h.param();
  r.n_max = n_max;
  r.K_max = spectrum.K_max;
  r.condition = sigma_and_lkappa(model);
  r.grouping = tf2 ? "tf2" : "tf1";
  if (tf2 && !r.condition.satisfied) {
    r.grouping = "tf1";
    r.warnings.push_back("ConditionViolated: l_min = " + fmt17(r.condition.l_min) +
                         " <= l(sigma) = " + fmt17(r.condition.l_sigma) +
                         "; falling back to tf1 grouping");
  }
  if (!(model.graph().min_length() > 2.0 / model.constants().lambda_plus_min)) {
    r.warnings.push_back("ConditionViolated: l_min <= 2/lambda_plus_min, the identity is "
                         "not expected to hold");
  }
  if (h.strip() <= r.condition.required_r) {
    r.warnings.push_back("test function strip " + fmt17(h.strip()) +
                         " does not exceed the required r = " + fmt17(r.condition.required_r));
  }

  r.lhs = spectral_sum(spectrum, h);
  r.spectral_tail = spectral_tail_bound(spectrum.total_length, h, spectrum.K_max);
  r.tail_controlled = r.spectral_tail < 1e-10;
  if (!r.tail_controlled) {
    r.warnings.push_back("TailNotControlled: spectral tail bound " + fmt17(r.spectral_tail));
  }

  const MetricGraph& g = model.graph();
  r.volume_term = g.total_length() * h.hhat(0.0);
  r.zero_term = (spectrum.zero.g0 - 0.5 * spectrum.zero.N) * h.h(0.0);
  r.integral_term = h.imaginary_trace_term(model.canonical().lambdas);

  const OrbitCatalogue cat = enumerate_orbits(g, model.transition_mask(), n_max, orbit_cap);
  std::vector<const PeriodicOrbit*> all;
  for (int l = 1; l <= n_max; ++l) {
    for (const auto& p : cat.by_length[l]) all.push_back(&p);
  }
  const std::vector<Convolution> conv = convolution_terms(model, all, h, &r.quadrature);

  r.orbit_by_length.assign(n_max, 0.0);
  r.orbit_counts.assign(n_max, 0);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int l = all[i]->topo_length();
    r.orbit_by_length[l - 1] += 0.5 * (conv[i].direct + conv[i].conjugate).real();
    r.orbit_counts[l - 1] += 1;
  }

  double rhs = r.volume_term + r.zero_term + r.integral_term;
  for (int l = 0; l < n_max; ++l) {
    rhs += r.orbit_by_length[l];
    r.partial_rhs.push_back(rhs);
    r.partial_residual.push_back(std::abs(r.lhs - rhs));
  }
  r.rhs = rhs;
  r.residual = std::abs(r.lhs - r.rhs);

  // geometric tail model C q^l from the length condition
  const int E = g.edge_count();
  const auto& c = model.constants();
  double q;
  if (std::isfinite(c.lambda_plus_min)) {
    const double kappa = r.condition.sigma;
    q = 2.0 * E * (c.lambda_plus_min + kappa) / (c.lambda_plus_min - kappa) *
        std::exp(-kappa * g.min_length());
  } else {
    q = 1.0 / (2.0 * E);
  }
  double C = 0.0;
  for (int l = 0; l < n_max && C == 0.0; ++l) {
    if (r.orbit_by_length[l] != 0.0) C = std::abs(r.orbit_by_length[l]) / std::pow(q, l + 1);
  }
  for (int l = 1; l <= n_max; ++l) {
    r.tail_estimate.push_back(q < 1.0 ? C * std::pow(q, l + 1) / (1.0 - q) : kInfinity);
  }
  return r;
}

TraceReport heat_trace(const ScatteringModel& model, const Spectrum& spectrum, double t,
                       int n_max, std::size_t orbit_cap) {
  TraceReport r = evaluate_tf(model, spectrum, TestFunction::gaussian(t), n_max, true, orbit_cap);
  r.identity = "tf3";
  return r;
}

double full_heat_trace(const Spectrum& spectrum, double t) {
  double sum = spectral_sum(spectrum, TestFunction::gaussian(t));
  for (const auto& ev : spectrum.negative) {
    sum += ev.multiplicity * std::exp(ev.kappa * ev.kappa * t);
  }
  return sum;
}

double heat_spectrum_cutoff(double t_min) { return std::sqrt(37.0 / t_min); }

HeatAsymptotics heat_asymptotics(const ScatteringModel& model, const Spectrum& spectrum,
                                 double t_min, double t_max, int samples) {
  HeatAsymptotics out;
  const double L = spectrum.total_length;
  const auto& c = model.constants();
  const auto& canon = model.canonical();

  for (int attempt = 0; attempt < 2; ++attempt) {
    if (spectrum.K_max < heat_spectrum_cutoff(t_min) * (1.0 - 1e-12)) {
      throw Error(ErrorCode::FitIllConditioned,
                  "spectrum reaches K = " + fmt17(spectrum.K_max) + ", the fit window needs " +
                      fmt17(heat_spectrum_cutoff(t_min)));
    }
    out.t_grid.clear();
    out.full_trace.clear();
    Eigen::MatrixXd X(samples, 4);
    RVector y(samples);
    for (int i = 0; i < samples; ++i) {
      const double t = t_min * std::pow(t_max / t_min, static_cast<double>(i) / (samples - 1));
      const double tr = full_heat_trace(spectrum, t);
      out.t_grid.push_back(t);
      out.full_trace.push_back(tr);
      const double st = std::sqrt(t);
      X(i, 0) = 1.0;
      X(i, 1) = st;
      X(i, 2) = t;
      X(i, 3) = t * st;
      y(i) = tr - L / std::sqrt(4.0 * kPi * t);
    }
    // column scaling keeps the condition number meaningful
    RVector scale = X.colwise().norm().transpose();
    const Eigen::MatrixXd Xs = X * scale.cwiseInverse().asDiagonal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Xs);
    const RVector& sv = svd.singularValues();
    out.fit_condition = sv(0) / sv(sv.size() - 1);
    if (out.fit_condition > 1e10) {
      t_max *= 10.0;
      continue;
    }
    const RVector coef =
        Xs.colPivHouseholderQr().solve(y).cwiseQuotient(scale);
    out.gamma_fit = coef(0);
    out.fit_sqrt_coeff = coef(1);
    out.fit_rms = std::sqrt((X * coef - y).squaredNorm() / samples);
    out.t_min = t_min;
    out.t_max = t_max;
    break;
  }
  if (out.t_grid.empty() || out.fit_condition > 1e10) {
    throw Error(ErrorCode::FitIllConditioned, "condition number " + fmt17(out.fit_condition));
  }

  double negatives = 0.0;
  for (const auto& ev : spectrum.negative) negatives += ev.multiplicity;
  const auto& im = spectrum.imaginary;
  const double base = spectrum.zero.g0 - 0.5 * spectrum.zero.N + negatives;
  const double d_term = 0.5 * (c.d_plus - c.d_minus);
  out.gamma_formula = base - (im.zero_order_sum - im.pole_order_sum) - d_term;
  out.gamma_half_weights = base - 0.5 * im.zero_order_sum + 0.5 * im.pole_order_sum - d_term;

  out.non_robin = !canon.is_robin();
  const int trace_S = canon.r - canon.s;  // S = 1 on the r block, -1 on ker B
  out.quarter_trace_S = 0.25 * trace_S;
  out.quarter_trace_exact =
      !out.non_robin || 4 * spectrum.zero.g0 - 2 * spectrum.zero.N == trace_S;
  return out;
}

}  // namespace qgraph
