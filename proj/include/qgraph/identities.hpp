#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgraph/scattering.hpp"

namespace qgraph {

struct IdentityResult {
  std::string name;
  bool passed = true;
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  std::string detail;
};

struct IdentityOptions {
  int samples = 100;
  int derivative_samples = 50;
  int orbit_length = 6;
  int orbit_samples = 20;
  std::uint64_t seed = 20240601;
};

struct IdentitySuite {
  std::vector<IdentityResult> results;

  bool all_passed() const;
  const IdentityResult* find(const std::string& name) const;
};

/// Unitarity, S against the direct formula, inverse relation, functional equation,
/// S' against finite differences and against the inverse form, eigenphase derivatives,
/// norm bounds, expansions, duality, orbit/matrix-power equality, amplitude constancy
/// and k-independence of g0.
IdentitySuite run_identity_suite(const ScatteringModel& model, const IdentityOptions& opts = {});

}  // namespace qgraph
