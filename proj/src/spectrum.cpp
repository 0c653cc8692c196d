#include "qgraph/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace qgraph {

cplx secular_F(const ScatteringModel& model, cplx k) {
  const CMatrix u = model.U(k);
  return (CMatrix::Identity(u.rows(), u.cols()) - u).partialPivLu().determinant();
}

namespace {

struct Decomposition {
  CVector eigenvalues;
  CMatrix vectors;
  std::vector<std::vector<int>> clusters;
  std::vector<bool> degenerate;  // cluster whose derivative operator is degenerate too
};

std::vector<std::vector<int>> cluster_indices(const CVector& e, double tol) {
  const int n = static_cast<int>(e.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(e(i) - e(j)) < tol) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].push_back(i);
  }
  return out;
}

Decomposition decompose(const ScatteringModel& model, double k, double tol) {
  const CMatrix u = model.U(k);
  Eigen::ComplexSchur<CMatrix> schur(u);
  Decomposition d;
  d.eigenvalues = schur.matrixT().diagonal();
  d.vectors = schur.matrixU();
  d.clusters = cluster_indices(d.eigenvalues, tol);
  d.degenerate.assign(d.clusters.size(), false);
  CMatrix H;
  for (std::size_t c = 0; c < d.clusters.size(); ++c) {
    const auto& idx = d.clusters[c];
    const int m = static_cast<int>(idx.size());
    if (m == 1) continue;
    if (H.size() == 0) H = model.D() - 2.0 * model.L_resolvent(k);
    CMatrix wc(u.rows(), m);
    for (int t = 0; t < m; ++t) wc.col(t) = d.vectors.col(idx[t]);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(wc.adjoint() * H * wc);
    const CMatrix rotated = wc * eig.eigenvectors();
    for (int t = 0; t < m; ++t) d.vectors.col(idx[t]) = rotated.col(t);
    const RVector& ev = eig.eigenvalues();
    const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
    for (int t = 1; t < m; ++t) {
      if (ev(t) - ev(t - 1) < 1e-6 * scale) d.degenerate[c] = true;
    }
  }
  return d;
}

}  // namespace

EigenphaseTracker::EigenphaseTracker(const ScatteringModel& model, TrackerOptions opts)
    : model_(model), opts_(opts) {
  const auto [lo, hi] = derivative_bounds();
  max_step_ = (kPi / 4.0) / std::max(std::abs(lo), std::abs(hi));
}

std::pair<double, double> EigenphaseTracker::derivative_bounds() const {
  const auto& c = model_.constants();
  const auto& g = model_.graph();
  return {g.min_length() - 2.0 / c.lambda_plus_min, g.max_length() + 2.0 / c.lambda_minus_min};
}

double EigenphaseTracker::total_phase_model(double k) const {
  double phase = 2.0 * k * model_.graph().total_length();
  const auto& lam = model_.canonical().lambdas;
  for (int a = 0; a < lam.size(); ++a) phase -= 2.0 * std::atan(k / lam(a));
  return phase;
}

PhaseState EigenphaseTracker::start(double k) const {
  const Decomposition d = decompose(model_, k, opts_.cluster_tol);
  PhaseState s;
  s.k = k;
  s.vectors = d.vectors;
  const int n = static_cast<int>(d.eigenvalues.size());
  s.theta.resize(n);
  for (int j = 0; j < n; ++j) {
    double phi = std::arg(d.eigenvalues(j));
    if (k == 0.0 && std::abs(phi) < 1e-9) phi = 0.0;
    s.theta(j) = phi;
  }
  return s;
}

bool EigenphaseTracker::try_step(const PhaseState& from, double k, double cluster_tol,
                                 PhaseState& out) const {
  const Decomposition d = decompose(model_, k, cluster_tol);
  const int n = static_cast<int>(d.eigenvalues.size());
  const int nc = static_cast<int>(d.clusters.size());
  const Eigen::MatrixXd P = (from.vectors.adjoint() * d.vectors).cwiseAbs2();

  // assign old branches to new clusters by projected weight
  struct Score {
    double weight;
    int branch;
    int cluster;
  };
  std::vector<Score> scores;
  scores.reserve(static_cast<std::size_t>(n) * nc);
  for (int c = 0; c < nc; ++c) {
    for (int i = 0; i < n; ++i) {
      double w = 0.0;
      for (int j : d.clusters[c]) w += P(i, j);
      scores.push_back({w, i, c});
    }
  }
  std::sort(scores.begin(), scores.end(),
            [](const Score& a, const Score& b) { return a.weight > b.weight; });
  std::vector<int> branch_cluster(n, -1);
  std::vector<std::vector<int>> members(nc);
  for (const Score& s : scores) {
    if (branch_cluster[s.branch] >= 0) continue;
    if (members[s.cluster].size() >= d.clusters[s.cluster].size()) continue;
    branch_cluster[s.branch] = s.cluster;
    members[s.cluster].push_back(s.branch);
  }

  CMatrix next(n, n);
  for (int c = 0; c < nc; ++c) {
    const auto& idx = d.clusters[c];
    const auto& old = members[c];
    const int m = static_cast<int>(idx.size());
    if (m == 1) {
      next.col(old[0]) = d.vectors.col(idx[0]);
      continue;
    }
    if (!d.degenerate[c]) {
      // separated derivative eigenvalues: match vector by vector
      std::vector<Score> pairs;
      for (int i : old) {
        for (int t = 0; t < m; ++t) pairs.push_back({P(i, idx[t]), i, t});
      }
      std::sort(pairs.begin(), pairs.end(),
                [](const Score& a, const Score& b) { return a.weight > b.weight; });
      std::vector<bool> used_old(n, false);
      std::vector<bool> used_new(m, false);
      for (const Score& s : pairs) {
        if (used_old[s.branch] || used_new[s.cluster]) continue;
        used_old[s.branch] = true;
        used_new[s.cluster] = true;
        next.col(s.branch) = d.vectors.col(idx[s.cluster]);
      }
      continue;
    }
    // degenerate subspace: rotate onto the previous vectors
    CMatrix wc(n, m);
    CMatrix vo(n, m);
    for (int t = 0; t < m; ++t) {
      wc.col(t) = d.vectors.col(idx[t]);
      vo.col(t) = from.vectors.col(old[t]);
    }
    Eigen::JacobiSVD<CMatrix> svd(wc.adjoint() * vo, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix rotated = wc * svd.matrixU() * svd.matrixV().adjoint();
    for (int t = 0; t < m; ++t) next.col(old[t]) = rotated.col(t);
  }

  const CMatrix u = model_.U(k);
  RVector theta(n);
  for (int i = 0; i < n; ++i) {
    const cplx overlap = from.vectors.col(i).dot(next.col(i));
    if (std::abs(overlap) < opts_.overlap_min) return false;
    const cplx ev = next.col(i).dot(u * next.col(i));
    const double delta = wrap_angle(std::arg(ev) - from.theta(i));
    if (std::abs(delta) > kPi / 2.0) return false;
    theta(i) = from.theta(i) + delta;
  }
  const double drift = (theta.sum() - from.theta.sum()) -
                       (total_phase_model(k) - total_phase_model(from.k));
  if (std::abs(drift) > 1e-6) return false;

  out.k = k;
  out.theta = std::move(theta);
  out.vectors = std::move(next);
  return true;
}

PhaseState EigenphaseTracker::advance(const PhaseState& from, double k) const {
  if (k < from.k) throw Error(ErrorCode::TrackingLoss, "tracking runs forward only");
  PhaseState cur = from;
  const double full = std::min(max_step_, k - from.k);
  double h = full;
  int failures = 0;
  while (cur.k < k) {
    double target = cur.k + h;
    if (target >= k - 1e-14 * std::max(1.0, k)) target = k;
    PhaseState next;
    if (try_step(cur, target, opts_.cluster_tol, next)) {
      cur = std::move(next);
      failures = 0;
      h = std::min(2.0 * h, full);
      continue;
    }
    if (++failures <= opts_.max_refine) {
      h *= 0.5;
      continue;
    }
    bool rescued = false;
    for (double tol = 100.0 * opts_.cluster_tol; tol <= 1e-3 && !rescued; tol *= 100.0) {
      rescued = try_step(cur, target, tol, next);
    }
    if (!rescued) {
      throw Error(ErrorCode::TrackingLoss,
                  "eigenvector matching failed near k = " + fmt17(cur.k));
    }
    cur = std::move(next);
    failures = 0;
  }
  return cur;
}

std::vector<PhaseState> EigenphaseTracker::track(double k0, double k1) const {
  std::vector<PhaseState> states;
  states.push_back(start(k0));
  const int steps = std::max(1, static_cast<int>(std::ceil((k1 - k0) / max_step_)));
  for (int i = 1; i <= steps; ++i) {
    const double k = i == steps ? k1 : k0 + (k1 - k0) * i / steps;
    states.push_back(advance(states.back(), k));
  }
  return states;
}

double EigenphaseTracker::theta_prime(const PhaseState& s, int branch) const {
  const CVector v = s.vectors.col(branch);
  const CMatrix H = model_.D() - 2.0 * model_.L_resolvent(s.k);
  return v.dot(H * v).real();
}

double condition_length(int edge_count, double lambda_plus_min, double kappa) {
  const double base = std::log(2.0 * edge_count) / kappa;
  if (!std::isfinite(lambda_plus_min)) return base;
  return base + (2.0 / kappa) * std::atanh(kappa / lambda_plus_min);
}

ConditionReport sigma_and_lkappa(const ScatteringModel& model) {
  ConditionReport r;
  const int E = model.graph().edge_count();
  const double lp = model.constants().lambda_plus_min;
  r.l_min = model.graph().min_length();
  if (!std::isfinite(lp)) {
    r.sigma = kInfinity;
    r.l_sigma = 0.0;
    r.satisfied = true;
    r.required_r = std::log(2.0 * E) / r.l_min;
    return r;
  }
  auto l = [&](double kappa) { return condition_length(E, lp, kappa); };
  r.sigma = golden_section_min(l, 1e-12 * lp, lp * (1.0 - 1e-12), 1e-13);
  r.l_sigma = l(r.sigma);
  r.satisfied = r.l_min > r.l_sigma;
  r.required_r = r.sigma;
  return r;
}

double negative_bound_s(const ScatteringModel& model) {
  const double lam = model.constants().lambda_plus_max;
  if (!(lam > 0.0)) return 0.0;
  const double l = model.graph().min_length();
  auto f = [&](double s) { return s * std::tanh(0.5 * s * l) - lam; };
  double hi = lam + 1.0;
  while (f(hi) < 0.0) hi *= 2.0;
  return bisect(f, 0.0, hi, 1e-16);
}

namespace {

int nullity(const CMatrix& m, double tol) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  int count = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    if (svd.singularValues()(i) < tol) ++count;
  }
  return count;
}

int robust_winding(const std::function<cplx(cplx)>& f, cplx center, double radius) {
  for (double scale : {1.0, 0.73, 1.31, 0.57}) {
    try {
      return winding_number(f, center, radius * scale);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ContourThroughZero) throw;
    }
  }
  throw Error(ErrorCode::ContourThroughZero, "all perturbed contours failed");
}

}  // namespace

std::vector<PositiveEigenvalue> find_positive_eigenvalues(const ScatteringModel& model,
                                                          double K_max,
                                                          const SpectrumOptions& opts) {
  EigenphaseTracker tracker(model, opts.tracker);
  const std::vector<PhaseState> states = tracker.track(0.0, K_max);
  const bool monotone = tracker.derivative_bounds().first > 0.0;

  struct Task {
    std::size_t step;
    int branch;
    double level;
  };
  std::vector<Task> tasks;
  for (std::size_t a = 0; a + 1 < states.size(); ++a) {
    for (int j = 0; j < states[a].theta.size(); ++j) {
      const double t0 = states[a].theta(j);
      const double t1 = states[a + 1].theta(j);
      const double lo = std::min(t0, t1);
      const double hi = std::max(t0, t1);
      for (long m = static_cast<long>(std::floor(lo / (2.0 * kPi))) + 1;
           2.0 * kPi * m <= hi; ++m) {
        const double level = 2.0 * kPi * m;
        if (lo < level) tasks.push_back({a, j, level});
      }
    }
  }

  std::vector<double> roots(tasks.size());
  parallel_for(tasks.size(), [&](std::size_t t) {
    const Task& task = tasks[t];
    const PhaseState& left = states[task.step];
    const PhaseState& right = states[task.step + 1];
    auto f = [&](double k) {
      return tracker.advance(left, k).theta(task.branch) - task.level;
    };
    double lo = left.k;
    double hi = right.k;
    double flo = left.theta(task.branch) - task.level;
    const double fhi = right.theta(task.branch) - task.level;
    if (fhi == 0.0) {
      roots[t] = hi;
      return;
    }
    double mid = 0.5 * (lo + hi);
    while (hi - lo > 1e-15 * std::max(1.0, hi)) {
      mid = 0.5 * (lo + hi);
      const double fm = f(mid);
      if (std::abs(fm) < 1e-12) break;
      if ((fm < 0.0) == (flo < 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    roots[t] = mid;
  });

  std::sort(roots.begin(), roots.end());
  std::vector<PositiveEigenvalue> out;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j] - roots[j - 1] < opts.root_cluster_tol) ++j;
    double mean = 0.0;
    for (std::size_t t = i; t < j; ++t) mean += roots[t];
    mean /= static_cast<double>(j - i);
    if (mean > 1e-8) {
      PositiveEigenvalue ev;
      ev.k = mean;
      ev.multiplicity = static_cast<int>(j - i);
      out.push_back(ev);
    }
    i = j;
  }

  auto F = [&](cplx k) { return secular_F(model, k); };
  std::vector<std::size_t> check;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!monotone || out[i].k < opts.contour_check_below) check.push_back(i);
  }
  parallel_for(check.size(), [&](std::size_t t) {
    const std::size_t i = check[t];
    double radius = std::min(1e-3, 0.3 * out[i].k);
    if (i > 0) radius = std::min(radius, 0.3 * (out[i].k - out[i - 1].k));
    if (i + 1 < out.size()) radius = std::min(radius, 0.3 * (out[i + 1].k - out[i].k));
    out[i].contour_order = robust_winding(F, out[i].k, radius);
    out[i].verified = monotone && out[i].contour_order == out[i].multiplicity;
  });
  if (!monotone) {
    for (auto& ev : out) ev.verified = false;
  }
  return out;
}

std::vector<NegativeEigenvalue> find_negative_eigenvalues(const ScatteringModel& model) {
  std::vector<NegativeEigenvalue> out;
  const double s = negative_bound_s(model);
  if (!(s > 0.0)) return out;

  const auto& lam = model.canonical().lambdas;
  auto near_pole = [&](double kappa, double r) {
    for (int a = 0; a < lam.size(); ++a) {
      if (std::abs(kappa - std::abs(lam(a))) < r) return true;
    }
    return false;
  };
  auto F = [&](cplx k) { return secular_F(model, k); };
  auto absF = [&](double kappa) { return std::abs(F(cplx(0.0, kappa))); };

  const int n = 2000;
  const double top = 1.05 * s;
  std::vector<double> kap(n);
  std::vector<double> val(n, -1.0);
  for (int i = 0; i < n; ++i) {
    kap[i] = top * (i + 1) / n;
    if (!near_pole(kap[i], 1e-4)) val[i] = absF(kap[i]);
  }

  std::vector<double> found;
  for (int i = 1; i + 1 < n; ++i) {
    if (val[i - 1] < 0 || val[i] < 0 || val[i + 1] < 0) continue;
    if (!(val[i] <= val[i - 1] && val[i] <= val[i + 1])) continue;
    double kappa = golden_section_min(absF, kap[i - 1], kap[i + 1], 1e-15);
    bool duplicate = false;
    for (double f : found) duplicate = duplicate || std::abs(f - kappa) < 1e-9;
    if (duplicate) continue;

    NegativeEigenvalue ev;
    if (near_pole(kappa, 1e-3)) {
      ev.kappa = kappa;
      ev.resolved = false;
      ev.note = "unresolved near pole";
      ev.multiplicity = nullity(CMatrix::Identity(model.size(), model.size()) -
                                    model.U(cplx(0.0, kappa)),
                                1e-7);
      if (ev.multiplicity == 0) continue;
      found.push_back(kappa);
      out.push_back(ev);
      continue;
    }
    const int order = robust_winding(F, cplx(0.0, kappa), 1e-3);
    if (order <= 0) continue;
    if (order == 1) {
      // secant polish in the complex plane
      cplx k0(0.0, kappa);
      cplx k1(0.0, kappa * (1.0 + 1e-7));
      cplx f0 = F(k0);
      cplx f1 = F(k1);
      for (int it = 0; it < 30 && std::abs(f1 - f0) > 0.0 && std::abs(k1 - k0) > 1e-16; ++it) {
        const cplx k2 = k1 - f1 * (k1 - k0) / (f1 - f0);
        k0 = k1;
        f0 = f1;
        k1 = k2;
        f1 = F(k1);
      }
      if (std::abs(k1 - cplx(0.0, kappa)) < 1e-6) kappa = k1.imag();
    }
    ev.kappa = kappa;
    ev.zero_order = order;
    ev.multiplicity =
        nullity(CMatrix::Identity(model.size(), model.size()) - model.U(cplx(0.0, kappa)), 1e-7);
    if (ev.multiplicity == 0) {
      ev.multiplicity = order;
      ev.note = "multiplicity from zero order";
    }
    found.push_back(kappa);
    out.push_back(ev);
  }
  std::sort(out.begin(), out.end(),
            [](const NegativeEigenvalue& a, const NegativeEigenvalue& b) {
              return a.kappa > b.kappa;
            });
  int total = 0;
  for (const auto& ev : out) total += ev.multiplicity;
  if (total > model.constants().d_plus) {
    throw Error(ErrorCode::ConditionViolated,
                std::to_string(total) + " negative eigenvalues exceed d_+ = " +
                    std::to_string(model.constants().d_plus));
  }
  return out;
}

ImaginaryAxisData imaginary_axis_data(const ScatteringModel& model,
                                      const std::vector<NegativeEigenvalue>& negative) {
  ImaginaryAxisData out;
  const auto& lam = model.canonical().lambdas;
  std::vector<double> poles;
  for (int a = 0; a < lam.size(); ++a) {
    if (lam(a) <= 0.0) continue;
    bool seen = false;
    for (double p : poles) seen = seen || std::abs(p - lam(a)) < 1e-9 * std::max(1.0, p);
    if (!seen) poles.push_back(lam(a));
  }
  std::sort(poles.begin(), poles.end());
  auto F = [&](cplx k) { return secular_F(model, k); };

  for (const auto& ev : negative) {
    if (ev.resolved) out.zero_order_sum += ev.zero_order;
  }
  for (std::size_t i = 0; i < poles.size(); ++i) {
    double r = 2e-3;
    for (std::size_t j = 0; j < poles.size(); ++j) {
      if (j != i) r = std::min(r, 0.4 * std::abs(poles[j] - poles[i]));
    }
    for (const auto& ev : negative) {
      if (ev.resolved) r = std::min(r, 0.4 * std::abs(ev.kappa - poles[i]));
    }
    r = std::min(r, 0.4 * poles[i]);
    const int w = robust_winding(F, cplx(0.0, poles[i]), r);
    out.pole_kappa.push_back(poles[i]);
    out.pole_orders.push_back(-w);
    out.pole_order_sum += -w;
  }
  if (poles.empty() && negative.empty()) return out;

  double low = 1.0;
  double high = negative_bound_s(model);
  for (double p : poles) {
    low = std::min(low, p);
    high = std::max(high, p);
  }
  for (const auto& ev : negative) {
    low = std::min(low, ev.kappa);
    high = std::max(high, ev.kappa);
  }
  const double eps = 0.5 * low;
  const double beta = 1.2 * high + 1.0;
  const double c = 0.5 * (beta + eps);
  out.enclosing_winding = robust_winding(F, cplx(0.0, c), c - eps);
  out.consistent = out.enclosing_winding == out.zero_order_sum - out.pole_order_sum;
  return out;
}

int zero_mode_multiplicity_at(const ScatteringModel& model, double k) {
  const int E = model.graph().edge_count();
  const int n = 2 * E;
  const cplx ik = kI / k;
  CMatrix cp = CMatrix::Zero(n, n);
  CMatrix cm = CMatrix::Zero(n, n);
  for (int e = 0; e < E; ++e) {
    const double l = model.graph().edges()[e].length;
    cp(e, e) = 1.0;
    cp(e, E + e) = ik;
    cp(E + e, e) = 1.0;
    cp(E + e, E + e) = -ik + l;
    cm(e, e) = 1.0;
    cm(e, E + e) = -ik;
    cm(E + e, e) = 1.0;
    cm(E + e, E + e) = ik + l;
  }
  const CMatrix C = cp * cm.inverse();
  const CMatrix M = model.S(k) * C - CMatrix::Identity(n, n);
  Eigen::JacobiSVD<CMatrix> svd(M);
  int count = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i) {
    const double sv = svd.singularValues()(i);
    if (sv < 1e-9) {
      ++count;
    } else if (sv < 1e-6) {
      throw Error(ErrorCode::EigenvalueClusterAmbiguous,
                  "singular value " + fmt17(sv) + " of S C - 1 at k = " + fmt17(k));
    }
  }
  return count;
}

ZeroModes zero_mode_multiplicities(const ScatteringModel& model) {
  ZeroModes z;
  for (double k : {1.0, 2.0, 3.0}) {
    z.sample_k.push_back(k);
    z.g0_samples.push_back(zero_mode_multiplicity_at(model, k));
  }
  z.g0 = z.g0_samples.front();

  Eigen::ComplexEigenSolver<CMatrix> eig(model.U(0.0));
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    const double dist = std::abs(eig.eigenvalues()(i) - 1.0);
    if (dist < 1e-9) {
      ++z.N;
    } else if (dist < 1e-6) {
      throw Error(ErrorCode::EigenvalueClusterAmbiguous,
                  "eigenvalue of U(0) at distance " + fmt17(dist) + " from one");
    }
  }
  return z;
}

int Spectrum::counting(double K) const {
  int n = zero.g0;
  for (const auto& ev : positive) {
    if (ev.k <= K) n += ev.multiplicity;
  }
  return n;
}

int Spectrum::negative_count() const {
  int n = 0;
  for (const auto& ev : negative) n += ev.multiplicity;
  return n;
}

Spectrum compute_spectrum(const ScatteringModel& model, double K_max,
                          const SpectrumOptions& opts) {
  Spectrum s;
  s.K_max = K_max;
  s.total_length = model.graph().total_length();
  s.zero = zero_mode_multiplicities(model);
  s.positive = find_positive_eigenvalues(model, K_max, opts);
  s.negative = find_negative_eigenvalues(model);
  s.imaginary = imaginary_axis_data(model, s.negative);
  s.s_bound = negative_bound_s(model);
  s.flags.phase_monotone =
      model.graph().min_length() > 2.0 / model.constants().lambda_plus_min;
  s.flags.tf2 = sigma_and_lkappa(model);
  s.multiplicities_verified = s.flags.phase_monotone;
  for (const auto& ev : s.positive) {
    if (ev.contour_order >= 0 && ev.contour_order != ev.multiplicity) {
      s.multiplicities_verified = false;
    }
  }
  return s;
}

std::vector<WeylRow> weyl_check(const Spectrum& spectrum, const std::vector<double>& Ks) {
  std::vector<WeylRow> rows;
  for (double K : Ks) {
    WeylRow r;
    r.K = K;
    r.count = spectrum.counting(K);
    r.weyl = spectrum.total_length * K / kPi;
    r.deviation = r.count - r.weyl;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace qgraph
