#pragma once

#include <string>
#include <vector>

#include "qgraph/scattering.hpp"

namespace qgraph {

/// det(1 - U(k)).
cplx secular_F(const ScatteringModel& model, cplx k);

/// Eigenphases of U(k) along the real axis, unwrapped per branch.
struct PhaseState {
  double k = 0.0;
  RVector theta;    // theta(j) of branch j
  CMatrix vectors;  // column j is the eigenvector of branch j
};

struct TrackerOptions {
  double cluster_tol = 1e-7;
  double overlap_min = 0.9;
  int max_refine = 40;
};

class EigenphaseTracker {
 public:
  explicit EigenphaseTracker(const ScatteringModel& model, TrackerOptions opts = {});

  /// Step whose predicted phase advance stays below pi/4.
  double max_step() const { return max_step_; }
  /// Eigenphases at k in (-pi, pi]; phases within 1e-9 of zero at k = 0 are set to 0.
  PhaseState start(double k) const;
  /// Continues `from` to k, halving the step when matching fails. Throws TrackingLoss.
  PhaseState advance(const PhaseState& from, double k) const;
  /// All states from k0 to k1 at steps of at most max_step().
  std::vector<PhaseState> track(double k0, double k1) const;

  /// sum_i l_i |v_i|^2 - 2 <v, L/(L^2+k^2) v> for branch j.
  double theta_prime(const PhaseState& s, int branch) const;
  /// Lower and upper bound on every eigenphase derivative.
  std::pair<double, double> derivative_bounds() const;
  /// 2kL - 2 sum_alpha atan(k/lambda_alpha): sum of eigenphases up to a constant.
  double total_phase_model(double k) const;

 private:
  bool try_step(const PhaseState& from, double k, double cluster_tol, PhaseState& out) const;

  const ScatteringModel& model_;
  TrackerOptions opts_;
  double max_step_;
};

struct PositiveEigenvalue {
  double k = 0.0;
  int multiplicity = 0;
  int contour_order = -1;  // argument-principle order of F, -1 when not checked
  bool verified = true;
};

struct NegativeEigenvalue {
  double kappa = 0.0;  // eigenvalue -kappa^2
  int multiplicity = 0;
  int zero_order = 0;  // order of the zero of F at i*kappa
  bool resolved = true;
  std::string note;
};

struct ZeroModes {
  int g0 = 0;
  int N = 0;
  std::vector<double> sample_k;
  std::vector<int> g0_samples;
};

/// l(kappa) = log(2E)/kappa + (2/kappa) artanh(kappa/lambda_plus_min).
double condition_length(int edge_count, double lambda_plus_min, double kappa);

struct ConditionReport {
  double sigma = kInfinity;
  double l_sigma = 0.0;
  double l_min = 0.0;
  bool satisfied = true;  // l_min > l(sigma)
  /// Smallest strip half-width a test function needs: sigma, or log(2E)/l_min when L has
  /// no positive eigenvalue.
  double required_r = 0.0;
};

/// Minimiser sigma of l(kappa) on (0, lambda_plus_min) and the l_min > l(sigma) check.
ConditionReport sigma_and_lkappa(const ScatteringModel& model);

struct ConditionFlags {
  bool phase_monotone = true;  // l_min > 2/lambda_plus_min
  ConditionReport tf2;
};

/// Zeros and poles of F on the positive imaginary axis.
struct ImaginaryAxisData {
  std::vector<int> pole_orders;    // at i*lambda for distinct lambda > 0
  std::vector<double> pole_kappa;  // the corresponding lambda
  int zero_order_sum = 0;          // total order of zeros at i*kappa_n
  int pole_order_sum = 0;
  /// Net order (zeros minus poles) on a contour enclosing the whole segment.
  int enclosing_winding = 0;
  bool consistent = true;
};

struct Spectrum {
  std::vector<PositiveEigenvalue> positive;
  ZeroModes zero;
  std::vector<NegativeEigenvalue> negative;
  ImaginaryAxisData imaginary;
  double K_max = 0.0;
  double s_bound = 0.0;
  ConditionFlags flags;
  bool multiplicities_verified = true;
  double total_length = 0.0;

  /// N(K): eigenvalues k_n^2 >= 0 with k_n <= K, including the zero mode.
  int counting(double K) const;
  int negative_count() const;
};

struct SpectrumOptions {
  /// Roots below this k are cross-checked by the argument principle.
  double contour_check_below = 30.0;
  double root_cluster_tol = 1e-9;
  TrackerOptions tracker;
};

/// Solution s >= 0 of s tanh(s l_min/2) = lambda_plus_max.
double negative_bound_s(const ScatteringModel& model);

std::vector<PositiveEigenvalue> find_positive_eigenvalues(const ScatteringModel& model,
                                                          double K_max,
                                                          const SpectrumOptions& opts = {});

/// Zeros of F on (0, 1.05 s] of the imaginary axis. Throws ConditionViolated when more
/// than d_+ are found.
std::vector<NegativeEigenvalue> find_negative_eigenvalues(const ScatteringModel& model);

/// Orders of the poles at i*lambda_alpha and the enclosing-contour cross-check.
ImaginaryAxisData imaginary_axis_data(const ScatteringModel& model,
                                      const std::vector<NegativeEigenvalue>& negative);

/// g0 from the eigenvalue one of S(k)C(l;k) at k = 1, 2, 3; N from U(0).
/// Throws EigenvalueClusterAmbiguous.
ZeroModes zero_mode_multiplicities(const ScatteringModel& model);

/// Multiplicity of the eigenvalue one of S(k)C(l;k).
int zero_mode_multiplicity_at(const ScatteringModel& model, double k);

Spectrum compute_spectrum(const ScatteringModel& model, double K_max,
                          const SpectrumOptions& opts = {});

struct WeylRow {
  double K = 0.0;
  int count = 0;
  double weyl = 0.0;
  double deviation = 0.0;
};

std::vector<WeylRow> weyl_check(const Spectrum& spectrum, const std::vector<double>& Ks);

}  // namespace qgraph
