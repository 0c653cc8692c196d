#include "qgraph/numerics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace qgraph {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyGraph: return "EmptyGraph";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::DanglingVertexReference: return "DanglingVertexReference";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::CutoffTooLarge: return "CutoffTooLarge";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ABStarNotSelfAdjoint: return "ABStarNotSelfAdjoint";
    case ErrorCode::NonLocalBlocks: return "NonLocalBlocks";
    case ErrorCode::NumericalRank: return "NumericalRank";
    case ErrorCode::WrongParameterCount: return "WrongParameterCount";
    case ErrorCode::PoleProximity: return "PoleProximity";
    case ErrorCode::TrackingLoss: return "TrackingLoss";
    case ErrorCode::ContourThroughZero: return "ContourThroughZero";
    case ErrorCode::EigenvalueClusterAmbiguous: return "EigenvalueClusterAmbiguous";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::ConditionViolated: return "ConditionViolated";
    case ErrorCode::TailNotControlled: return "TailNotControlled";
    case ErrorCode::FitIllConditioned: return "FitIllConditioned";
    case ErrorCode::Config: return "ConfigError";
  }
  return "Unknown";
}

double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double identity_deviation(const CMatrix& m) {
  return (m - CMatrix::Identity(m.rows(), m.cols())).norm();
}

int winding_number(const std::function<cplx(cplx)>& f, cplx center, double radius,
                   double zero_guard, int initial_samples, int max_samples) {
  for (int n = initial_samples; n <= max_samples; n *= 2) {
    std::vector<cplx> vals(n);
    for (int i = 0; i < n; ++i) {
      const double phi = 2.0 * kPi * i / n;
      vals[i] = f(center + radius * std::polar(1.0, phi));
      if (!(std::abs(vals[i]) > zero_guard)) {
        throw Error(ErrorCode::ContourThroughZero, "function vanishes on the contour");
      }
    }
    double total = 0.0;
    bool resolved = true;
    for (int i = 0; i < n; ++i) {
      const double step = std::arg(vals[(i + 1) % n] / vals[i]);
      if (std::abs(step) > kPi / 4) {
        resolved = false;
        break;
      }
      total += step;
    }
    if (resolved) return static_cast<int>(std::lround(total / (2.0 * kPi)));
  }
  throw Error(ErrorCode::ContourThroughZero, "argument increments not resolved on the contour");
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double xtol, int max_iter) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > xtol * std::max(1.0, std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double bisect(const std::function<double(double)>& f, double a, double b, double xtol,
              int max_iter) {
  double fa = f(a);
  if (fa == 0.0) return a;
  for (int it = 0; it < max_iter && (b - a) > xtol * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  // asymptotic series, accurate to ~1e-17 relative beyond x = 25
  const double x2 = x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 8; ++n) {
    term *= -(2.0 * n - 1.0) / (2.0 * x2);
    sum += term;
  }
  return sum / (x * std::sqrt(kPi));
}

unsigned worker_count() {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QGRAPH_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace qgraph
