#pragma once

#include <string>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/spectrum.hpp"

namespace qgraph {

/// Even test function h with closed-form Fourier transform
/// hhat(x) = (1/2pi) int h(k) e^{ikx} dk.
class TestFunction {
 public:
  enum class Kind { Gaussian, Cauchy };

  /// h(k) = exp(-t k^2).
  static TestFunction gaussian(double t);
  /// h(k) = 1/(k^2 + a^2).
  static TestFunction cauchy(double a);

  Kind kind() const { return kind_; }
  double param() const { return param_; }
  std::string name() const;

  cplx h(cplx k) const;
  double h(double k) const { return h(cplx(k, 0.0)).real(); }
  double hhat(double x) const;
  /// Half-width of the strip of analyticity (infinite for the Gaussian).
  double strip() const;
  /// int_K^inf |h(k)| dk.
  double tail_integral(double K) const;
  /// Smallest K with |h(K)| < 1e-14 max|h|.
  double cutoff() const;
  /// -(1/4pi) int h(k) Im tr S(k)/k dk for the nonzero eigenvalues of L.
  double imaginary_trace_term(const RVector& lambdas) const;

 private:
  TestFunction(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

/// Amplitudes of one orbit at one wave number.
struct OrbitAmplitude {
  cplx A1;
  cplx A2;
  cplx A;
};

/// A1 from products of S entries along the orbit, A2 with one S' factor inserted
/// at each position (divided by the repetition number), A = l# A1 + A2.
OrbitAmplitude orbit_amplitude(const MetricGraph& g, const PeriodicOrbit& p, const CMatrix& S,
                               const CMatrix& S_prime);
OrbitAmplitude orbit_amplitude(const ScatteringModel& model, const PeriodicOrbit& p, cplx k);
/// Leading coefficient of A_p for |k| -> infinity, from S_infinity.
cplx orbit_amplitude_leading(const ScatteringModel& model, const PeriodicOrbit& p);

/// tr[Lambda(k) U(k)^l], negative l through U(k)^{-1}.
cplx matrix_trace_term(const ScatteringModel& model, int l, cplx k);

/// sum_{p in P_l} l#_p A1_p e^{ik l_p}; equals tr[D U^l].
cplx grouped_length_sum(const ScatteringModel& model, const std::vector<PeriodicOrbit>& orbits,
                        cplx k);
/// sum_{p in P_l} A2_p e^{ik l_p}; equals -2 tr[L/(L^2+k^2) U^l].
cplx grouped_derivative_sum(const ScatteringModel& model,
                            const std::vector<PeriodicOrbit>& orbits, cplx k);

/// Convolution (1/2pi) int h A_p e^{ik l_p} dk and its companion with conj(A_p).
struct Convolution {
  cplx direct;
  cplx conjugate;
};

/// Quadrature settings actually used for the orbit integrals.
struct QuadratureInfo {
  std::string method;  // "closed-form", "trapezoid" or "contour"
  double cutoff = 0.0;
  double spacing = 0.0;
  int nodes = 0;
  double refinement_change = 0.0;
};

/// Convolution terms for a batch of orbits sharing one quadrature grid.
/// Throws QuadratureNotConverged.
std::vector<Convolution> convolution_terms(const ScatteringModel& model,
                                           const std::vector<const PeriodicOrbit*>& orbits,
                                           const TestFunction& h, QuadratureInfo* info = nullptr);
Convolution convolution_term(const ScatteringModel& model, const PeriodicOrbit& p,
                             const TestFunction& h);

/// (L/pi) * 1.2 * int_K^inf |h|: Weyl-law bound on the omitted spectral sum.
double spectral_tail_bound(double total_length, const TestFunction& h, double K);
/// Smallest K with spectral_tail_bound below `tol`; infinity when unattainable below 1e9.
double required_spectrum_cutoff(double total_length, const TestFunction& h, double tol = 1e-10);

/// sum g_n h(k_n) over k_n^2 >= 0, the zero mode included.
double spectral_sum(const Spectrum& spectrum, const TestFunction& h);

struct TraceReport {
  std::string identity;  // "tf1", "tf2" or "tf3"
  std::string grouping;  // "tf1" or "tf2"
  std::string test_function;
  double test_param = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double volume_term = 0.0;
  double zero_term = 0.0;
  double integral_term = 0.0;
  std::vector<double> orbit_by_length;  // index l-1 holds the contribution of P_l
  std::vector<double> partial_rhs;      // rhs including lengths 1..l
  std::vector<double> partial_residual;
  std::vector<double> tail_estimate;    // geometric bound on lengths > l
  std::vector<std::size_t> orbit_counts;
  double K_max = 0.0;
  int n_max = 0;
  QuadratureInfo quadrature;
  double spectral_tail = 0.0;
  bool tail_controlled = true;
  ConditionReport condition;
  std::vector<std::string> warnings;
};

/// Both sides of the trace formula for h. TF2 grouping is requested with `tf2`; when the
/// length condition fails the report falls back to TF1 grouping with a warning.
TraceReport evaluate_tf(const ScatteringModel& model, const Spectrum& spectrum,
                        const TestFunction& h, int n_max, bool tf2 = true,
                        std::size_t orbit_cap = kDefaultOrbitCap);

/// Heat-trace identity: evaluate_tf with h = exp(-t k^2), tagged "tf3".
TraceReport heat_trace(const ScatteringModel& model, const Spectrum& spectrum, double t,
                       int n_max, std::size_t orbit_cap = kDefaultOrbitCap);

struct HeatAsymptotics {
  double gamma_fit = 0.0;
  double fit_sqrt_coeff = 0.0;
  double gamma_formula = 0.0;
  /// The expansion with half weights on imaginary zeros and poles, kept for comparison.
  double gamma_half_weights = 0.0;
  double quarter_trace_S = 0.0;  // meaningful for non-Robin conditions
  bool non_robin = true;
  /// 4 g0 - 2N == tr S, checked in integers (non-Robin only).
  bool quarter_trace_exact = true;
  double t_min = 0.0;
  double t_max = 0.0;
  double fit_condition = 0.0;
  double fit_rms = 0.0;
  std::vector<double> t_grid;
  std::vector<double> full_trace;
};

/// Spectrum cutoff needed to evaluate the heat trace down to t_min.
double heat_spectrum_cutoff(double t_min);

/// Fits tr e^{Delta t} - L/sqrt(4 pi t) on a small-t window and compares with the
/// formula built from g0, N, negative eigenvalues and the imaginary-axis orders.
/// Throws FitIllConditioned.
HeatAsymptotics heat_asymptotics(const ScatteringModel& model, const Spectrum& spectrum,
                                 double t_min = 1e-4, double t_max = 2e-3, int samples = 24);

/// Full heat trace including the negative eigenvalues.
double full_heat_trace(const Spectrum& spectrum, double t);

}  // namespace qgraph
