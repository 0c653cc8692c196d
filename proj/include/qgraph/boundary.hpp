#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/numerics.hpp"

namespace qgraph {

/// Raw boundary conditions A F_bv + B F'_bv = 0 in edge-end ordering.
struct BoundaryConditions {
  CMatrix A;
  CMatrix B;
  /// Edge-end groups (one per vertex) with respect to which A and B are block
  /// diagonal. Present when the conditions were declared local.
  std::optional<std::vector<std::vector<int>>> locality_blocks;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Spectral constants of L. Empty minima are +infinity so that 2/lambda vanishes.
struct LConstants {
  double lambda_plus_min = kInfinity;
  double lambda_minus_min = kInfinity;  // smallest |lambda| among negative ones
  double lambda_min = kInfinity;        // smallest |lambda| among nonzero ones
  double lambda_max = 0.0;              // largest |lambda|
  double lambda_plus_max = 0.0;         // 0 when there is no positive eigenvalue
  int d_plus = 0;
  int d_minus = 0;
};

/// Projector form of the boundary conditions: P F_bv = 0, L Q F_bv + Q F'_bv = 0.
struct CanonicalBC {
  CMatrix P;
  CMatrix Q;
  CMatrix L;  // self-adjoint, zero on ker B
  /// Unitary with W L W* = diag(lambda_1..lambda_d, 0_r, 0_s); the last s rows
  /// span ker B.
  CMatrix W;
  RVector lambdas;  // nonzero eigenvalues of L, with multiplicity
  int r = 0;
  int s = 0;
  LConstants constants;
  /// P and L of the swapped conditions (A, B) -> (-B, A).
  CMatrix P_tilde;
  CMatrix L_tilde;

  int size() const { return static_cast<int>(P.rows()); }
  int d() const { return static_cast<int>(lambdas.size()); }
  bool is_robin() const { return d() > 0; }
  /// Columns are the eigenvectors of L in the order of W's rows (V = W*).
  CMatrix eigenvectors() const { return W.adjoint(); }
};

inline constexpr double kRankThreshold = 1e-10;
inline constexpr double kSelfAdjointTolerance = 1e-10;

/// Checks size, maximal rank of (A, B), self-adjointness of A B* and, when
/// blocks are declared, locality. Throws RankDeficient, ABStarNotSelfAdjoint,
/// NonLocalBlocks or IndexOutOfRange.
BoundaryConditions validate(const BoundaryConditions& bc, const MetricGraph& g);

/// Projector data and the eigendecomposition of L. Throws NumericalRank when
/// the singular values of B have no clear gap at the rank threshold.
CanonicalBC canonicalize(const BoundaryConditions& bc);

/// Swap (A, B) -> (-B, A).
BoundaryConditions swapped(const BoundaryConditions& bc);

enum class BoundaryKind { Dirichlet, Neumann, Kirchhoff, Robin, Custom };

std::optional<BoundaryKind> boundary_kind_from_string(const std::string& name);

struct VertexBlock {
  CMatrix A;
  CMatrix B;
};

/// Parameters for the local-condition factory. Which fields are read depends on
/// the kind: `mu` (one per vertex) for Kirchhoff, `robin` (one per edge end)
/// for Robin, `blocks` (one per vertex) for Custom.
struct BoundaryParams {
  std::vector<double> mu;
  std::vector<double> robin;
  std::vector<VertexBlock> blocks;
};

/// Assembles block-diagonal local conditions in edge-end ordering.
/// Throws WrongParameterCount.
BoundaryConditions make_boundary(BoundaryKind kind, const MetricGraph& g,
                                 const BoundaryParams& params = {});

BoundaryConditions dirichlet(const MetricGraph& g);
BoundaryConditions neumann(const MetricGraph& g);
BoundaryConditions kirchhoff(const MetricGraph& g, std::vector<double> mu = {});
BoundaryConditions robin(const MetricGraph& g, std::vector<double> lambda_per_end);

/// Vertex blocks A_v, B_v of the (generalised) Kirchhoff conditions.
VertexBlock kirchhoff_block(int degree, double mu);

}  // namespace qgraph
