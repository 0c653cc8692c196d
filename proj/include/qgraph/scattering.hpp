#pragma once

#include "qgraph/boundary.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/numerics.hpp"

namespace qgraph {

/// Edge S-matrix, quantum map and related matrices for fixed (graph, conditions).
///
/// Immutable after construction; every evaluation is const and thread safe.
/// Evaluations refuse wave numbers within `exclusion_radius()` of the points
/// +-i*lambda for the nonzero eigenvalues lambda of L and throw PoleProximity.
class ScatteringModel {
 public:
  /// Validates and canonicalises. A negative radius selects the default
  /// 1e-6 * max(1, lambda_max).
  ScatteringModel(const MetricGraph& g, const BoundaryConditions& bc,
                  double exclusion_radius = -1.0);

  const MetricGraph& graph() const { return graph_; }
  const BoundaryConditions& conditions() const { return bc_; }
  const CanonicalBC& canonical() const { return canon_; }
  const LConstants& constants() const { return canon_.constants; }
  double exclusion_radius() const { return radius_; }
  int size() const { return graph_.end_count(); }

  bool near_pole(cplx k, double radius) const;
  void check_domain(cplx k) const;

  CMatrix S(cplx k) const;
  /// -(A + ikB)^{-1}(A - ikB); undefined where A + ikB is singular.
  CMatrix S_direct(cplx k) const;
  /// -2i L/(L^2+k^2) S(k).
  CMatrix S_prime(cplx k) const;
  /// -(1/2k)[S - S^{-1}] S, for k != 0.
  CMatrix S_prime_from_inverse(cplx k) const;
  /// L/(L^2+k^2).
  CMatrix L_resolvent(cplx k) const;

  CMatrix T(cplx k) const;
  CMatrix U(cplx k) const;
  /// U(k)^{-1} = T(-k) S(-k).
  CMatrix U_inverse(cplx k) const;
  /// -2i L/(L^2+k^2) + i D.
  CMatrix Lambda(cplx k) const;
  /// D: edge lengths per edge end.
  CMatrix D() const;

  CMatrix S_infinity() const;
  CMatrix S_zero() const;
  /// Large-|k| series truncated after `terms` powers of 1/k.
  CMatrix S_series_high(cplx k, int terms) const;
  /// Small-|k| series truncated after `terms` powers of k.
  CMatrix S_series_low(cplx k, int terms) const;

  /// det of the factor prod_alpha (lambda - ik)/(lambda + ik).
  cplx robin_phase_product(cplx k) const;

  /// Bound on ||S(k + i kappa)|| for 0 < kappa < lambda_plus_min.
  double S_bound_small(double kappa) const;
  /// Bound on ||S(k + i kappa)|| for kappa > lambda_max.
  double S_bound_large(double kappa) const;
  /// Bound on ||U(k + i kappa)|| for 0 < kappa < lambda_plus_min.
  double U_bound(double kappa) const;

  /// Transitions j -> j2 with nonvanishing S_{j2, omega(j)} at generic k.
  TransitionMask transition_mask() const;

 private:
  CMatrix spectral(const CVector& diag) const;

  MetricGraph graph_;
  BoundaryConditions bc_;
  CanonicalBC canon_;
  CMatrix V_;
  RVector lengths_;
  double radius_;
};

/// Operator 2-norm.
double operator_norm(const CMatrix& m);

}  // namespace qgraph
