#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgraph {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

enum class ErrorCode {
  EmptyGraph,
  NonPositiveLength,
  DanglingVertexReference,
  IndexOutOfRange,
  CutoffTooLarge,
  RankDeficient,
  ABStarNotSelfAdjoint,
  NonLocalBlocks,
  NumericalRank,
  WrongParameterCount,
  PoleProximity,
  TrackingLoss,
  ContourThroughZero,
  EigenvalueClusterAmbiguous,
  QuadratureNotConverged,
  ConditionViolated,
  TailNotControlled,
  FitIllConditioned,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Wrap an angle into (-pi, pi].
double wrap_angle(double a);

/// Frobenius-norm deviation of M from the identity.
double identity_deviation(const CMatrix& m);

/// Number of times f winds around the origin on the circle |z - center| = radius.
///
/// Samples adaptively: the sample count doubles until every consecutive
/// argument increment is below pi/4. Throws ContourThroughZero when |f|
/// drops below `zero_guard` on the contour.
int winding_number(const std::function<cplx(cplx)>& f, cplx center, double radius,
                   double zero_guard = 1e-300, int initial_samples = 64,
                   int max_samples = 1 << 16);

/// Golden-section minimisation of a unimodal function on [a, b].
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double xtol = 1e-14, int max_iter = 200);

/// Root of a scalar function with f(a) f(b) <= 0 by bisection.
double bisect(const std::function<double(double)>& f, double a, double b,
              double xtol = 1e-15, int max_iter = 400);

/// exp(x^2) erfc(x) for x >= 0 without overflow.
double erfcx(double x);

/// Hard cap on worker threads; honours QGRAPH_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Format with 17 significant digits (round-trip exact for doubles).
std::string fmt17(double x);

}  // namespace qgraph
