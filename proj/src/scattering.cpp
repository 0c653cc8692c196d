#include "qgraph/scattering.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

namespace qgraph {

double operator_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

ScatteringModel::ScatteringModel(const MetricGraph& g, const BoundaryConditions& bc,
                                 double exclusion_radius)
    : graph_(g), bc_(validate(bc, g)), canon_(canonicalize(bc)) {
  V_ = canon_.eigenvectors();
  lengths_ = graph_.duplicated_lengths();
  radius_ = exclusion_radius >= 0.0
                ? exclusion_radius
                : 1e-6 * std::max(1.0, canon_.constants.lambda_max);
}

bool ScatteringModel::near_pole(cplx k, double radius) const {
  for (int a = 0; a < canon_.d(); ++a) {
    const double lam = canon_.lambdas(a);
    if (std::abs(k - kI * lam) < radius || std::abs(k + kI * lam) < radius) return true;
  }
  return false;
}

void ScatteringModel::check_domain(cplx k) const {
  if (near_pole(k, radius_)) {
    throw Error(ErrorCode::PoleProximity,
                "k = (" + fmt17(k.real()) + ", " + fmt17(k.imag()) + ") is within " +
                    fmt17(radius_) + " of a pole");
  }
}

CMatrix ScatteringModel::spectral(const CVector& diag) const {
  return V_ * diag.asDiagonal() * V_.adjoint();
}

CMatrix ScatteringModel::S(cplx k) const {
  check_domain(k);
  const int n = size();
  const int d = canon_.d();
  CVector diag(n);
  for (int a = 0; a < d; ++a) {
    const double lam = canon_.lambdas(a);
    diag(a) = -(lam - kI * k) / (lam + kI * k);
  }
  for (int a = d; a < d + canon_.r; ++a) diag(a) = 1.0;
  for (int a = d + canon_.r; a < n; ++a) diag(a) = -1.0;
  return spectral(diag);
}

CMatrix ScatteringModel::S_direct(cplx k) const {
  const CMatrix plus = bc_.A + kI * k * bc_.B;
  const CMatrix minus = bc_.A - kI * k * bc_.B;
  return -plus.partialPivLu().solve(minus);
}

CMatrix ScatteringModel::L_resolvent(cplx k) const {
  check_domain(k);
  CVector diag = CVector::Zero(size());
  for (int a = 0; a < canon_.d(); ++a) {
    const double lam = canon_.lambdas(a);
    diag(a) = lam / (lam * lam + k * k);
  }
  return spectral(diag);
}

CMatrix ScatteringModel::S_prime(cplx k) const {
  if (!canon_.is_robin()) return CMatrix::Zero(size(), size());
  return -2.0 * kI * L_resolvent(k) * S(k);
}

CMatrix ScatteringModel::S_prime_from_inverse(cplx k) const {
  const CMatrix s = S(k);
  return -(1.0 / (2.0 * k)) * (s - S(-k)) * s;
}

CMatrix ScatteringModel::T(cplx k) const {
  const int n = size();
  CMatrix t = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) t(j, graph_.omega(j)) = std::exp(kI * k * lengths_(j));
  return t;
}

CMatrix ScatteringModel::U(cplx k) const { return S(k) * T(k); }

CMatrix ScatteringModel::U_inverse(cplx k) const { return T(-k) * S(-k); }

CMatrix ScatteringModel::D() const { return lengths_.cast<cplx>().asDiagonal(); }

CMatrix ScatteringModel::Lambda(cplx k) const {
  return -2.0 * kI * L_resolvent(k) + kI * D();
}

CMatrix ScatteringModel::S_infinity() const {
  return CMatrix::Identity(size(), size()) - 2.0 * canon_.P;
}

CMatrix ScatteringModel::S_zero() const {
  return -CMatrix::Identity(size(), size()) + 2.0 * canon_.P_tilde;
}

CMatrix ScatteringModel::S_series_high(cplx k, int terms) const {
  CMatrix sum = S_infinity();
  const CMatrix step = (kI / k) * canon_.L;
  CMatrix power = CMatrix::Identity(size(), size());
  for (int n = 1; n <= terms; ++n) {
    power = power * step;
    sum += 2.0 * power;
  }
  return sum;
}

CMatrix ScatteringModel::S_series_low(cplx k, int terms) const {
  CMatrix sum = S_zero();
  const CMatrix step = (kI * k) * canon_.L_tilde;
  CMatrix power = CMatrix::Identity(size(), size());
  for (int n = 1; n <= terms; ++n) {
    power = power * step;
    sum -= 2.0 * power;
  }
  return sum;
}

cplx ScatteringModel::robin_phase_product(cplx k) const {
  cplx p = 1.0;
  for (int a = 0; a < canon_.d(); ++a) {
    const double lam = canon_.lambdas(a);
    p *= (lam - kI * k) / (lam + kI * k);
  }
  return p;
}

double ScatteringModel::S_bound_small(double kappa) const {
  const double lp = canon_.constants.lambda_plus_min;
  if (!std::isfinite(lp)) return 1.0;
  return std::max(1.0, (lp + kappa) / (lp - kappa));
}

double ScatteringModel::S_bound_large(double kappa) const {
  const double lm = canon_.constants.lambda_max;
  return (kappa + lm) / (kappa - lm);
}

double ScatteringModel::U_bound(double kappa) const {
  return S_bound_small(kappa) * std::exp(-kappa * graph_.min_length());
}

TransitionMask ScatteringModel::transition_mask() const {
  const int n = size();
  // two generic wave numbers guard against accidental zeros of an entry
  const CMatrix s1 = S(1.0);
  const CMatrix s2 = S(std::sqrt(2.0) + 0.3);
  TransitionMask mask(n);
  for (int j = 0; j < n; ++j) {
    const int w = graph_.omega(j);
    for (int j2 = 0; j2 < n; ++j2) {
      mask.set(j, j2, std::abs(s1(j2, w)) > 1e-14 || std::abs(s2(j2, w)) > 1e-14);
    }
  }
  return mask;
}

}  // namespace qgraph
