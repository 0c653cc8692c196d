#include "qgraph/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qgraph {

namespace {

void require_size(const CMatrix& m, int n, const char* name) {
  if (m.rows() != n || m.cols() != n) {
    throw Error(ErrorCode::IndexOutOfRange,
                std::string(name) + " must be " + std::to_string(n) + "x" + std::to_string(n));
  }
}

// Projector data and L without the tilde companion.
CanonicalBC canonical_core(const BoundaryConditions& bc) {
  const int n = static_cast<int>(bc.A.rows());
  CanonicalBC c;

  Eigen::JacobiSVD<CMatrix> svd(bc.B, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    const double rel = smax > 0 ? sv(i) / smax : 0.0;
    if (rel > 1e-12 && rel < 1e-8) {
      throw Error(ErrorCode::NumericalRank,
                  "singular value ratio " + fmt17(rel) + " of B sits in the rank-decision gap");
    }
    if (smax > 0 && sv(i) > kRankThreshold * smax) ++rank;
  }
  const CMatrix& V = svd.matrixV();
  const CMatrix Vq = V.leftCols(rank);
  const CMatrix Vp = V.rightCols(n - rank);
  c.P = Vp * Vp.adjoint();
  c.Q = CMatrix::Identity(n, n) - c.P;
  c.s = n - rank;

  // L = (B restricted to ran B*)^{-1} A Q = B^+ A Q
  CMatrix L = CMatrix::Zero(n, n);
  if (rank > 0) {
    const CMatrix Uq = svd.matrixU().leftCols(rank);
    RVector inv = sv.head(rank).cwiseInverse();
    L = Vq * inv.asDiagonal() * Uq.adjoint() * bc.A * c.Q;
    L = 0.5 * (L + L.adjoint()).eval();
  }

  std::vector<double> nonzero;
  CMatrix nonzero_vecs(n, 0);
  CMatrix zero_vecs(n, 0);
  if (rank > 0) {
    const CMatrix compressed = Vq.adjoint() * L * Vq;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(compressed);
    const RVector& mu = eig.eigenvalues();
    const double scale = std::max(1.0, mu.cwiseAbs().maxCoeff());
    std::vector<int> nz_idx;
    std::vector<int> z_idx;
    for (int i = 0; i < mu.size(); ++i) {
      (std::abs(mu(i)) > 1e-10 * scale ? nz_idx : z_idx).push_back(i);
    }
    nonzero_vecs.resize(n, static_cast<Eigen::Index>(nz_idx.size()));
    zero_vecs.resize(n, static_cast<Eigen::Index>(z_idx.size()));
    for (std::size_t i = 0; i < nz_idx.size(); ++i) {
      nonzero.push_back(mu(nz_idx[i]));
      nonzero_vecs.col(i) = Vq * eig.eigenvectors().col(nz_idx[i]);
    }
    for (std::size_t i = 0; i < z_idx.size(); ++i) {
      zero_vecs.col(i) = Vq * eig.eigenvectors().col(z_idx[i]);
    }
  }
  c.r = static_cast<int>(zero_vecs.cols());
  c.lambdas = Eigen::Map<RVector>(nonzero.data(), static_cast<Eigen::Index>(nonzero.size()));

  CMatrix Vall(n, n);
  Vall << nonzero_vecs, zero_vecs, Vp;
  c.W = Vall.adjoint();

  // rebuild L from its spectral data so that it is exactly zero on ker B
  c.L = nonzero_vecs * c.lambdas.cast<cplx>().asDiagonal() * nonzero_vecs.adjoint();

  LConstants& k = c.constants;
  for (double lam : nonzero) {
    const double a = std::abs(lam);
    k.lambda_min = std::min(k.lambda_min, a);
    k.lambda_max = std::max(k.lambda_max, a);
    if (lam > 0) {
      ++k.d_plus;
      k.lambda_plus_min = std::min(k.lambda_plus_min, lam);
      k.lambda_plus_max = std::max(k.lambda_plus_max, lam);
    } else {
      ++k.d_minus;
      k.lambda_minus_min = std::min(k.lambda_minus_min, a);
    }
  }
  return c;
}

}  // namespace

BoundaryConditions swapped(const BoundaryConditions& bc) {
  return BoundaryConditions{-bc.B, bc.A, bc.locality_blocks};
}

BoundaryConditions validate(const BoundaryConditions& bc, const MetricGraph& g) {
  const int n = g.end_count();
  require_size(bc.A, n, "A");
  require_size(bc.B, n, "B");

  CMatrix AB(n, 2 * n);
  AB << bc.A, bc.B;
  Eigen::JacobiSVD<CMatrix> svd(AB);
  const RVector& sv = svd.singularValues();
  const double smax = sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (smax > 0 && sv(i) > kRankThreshold * smax) ++rank;
  }
  if (rank != n) {
    throw Error(ErrorCode::RankDeficient,
                "(A,B) has rank " + std::to_string(rank) + ", expected " + std::to_string(n));
  }

  const CMatrix abs_ = bc.A * bc.B.adjoint();
  const double dev = (abs_ - abs_.adjoint()).norm();
  if (dev > kSelfAdjointTolerance * bc.A.norm() * bc.B.norm()) {
    throw Error(ErrorCode::ABStarNotSelfAdjoint, "||AB* - BA*|| = " + fmt17(dev));
  }

  if (bc.locality_blocks) {
    std::vector<int> group(n, -1);
    const auto& blocks = *bc.locality_blocks;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      for (int j : blocks[b]) {
        if (j < 0 || j >= n) throw Error(ErrorCode::IndexOutOfRange, "locality block index");
        group[j] = static_cast<int>(b);
      }
    }
    for (int j = 0; j < n; ++j) {
      if (group[j] < 0) throw Error(ErrorCode::NonLocalBlocks, "edge end not in any block");
    }
    // each block must sit at one vertex
    for (const auto& block : blocks) {
      for (int j : block) {
        if (g.end_vertex(j) != g.end_vertex(block.front())) {
          throw Error(ErrorCode::NonLocalBlocks, "block spans more than one vertex");
        }
      }
    }
    const double scale = 1e-14 * std::max({1.0, bc.A.cwiseAbs().maxCoeff(),
                                           bc.B.cwiseAbs().maxCoeff()});
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (group[i] == group[j]) continue;
        if (std::abs(bc.A(i, j)) > scale || std::abs(bc.B(i, j)) > scale) {
          throw Error(ErrorCode::NonLocalBlocks,
                      "entry (" + std::to_string(i) + "," + std::to_string(j) +
                          ") couples different vertices");
        }
      }
    }
  }
  return bc;
}

CanonicalBC canonicalize(const BoundaryConditions& bc) {
  require_size(bc.B, static_cast<int>(bc.A.rows()), "B");
  CanonicalBC c = canonical_core(bc);
  const CanonicalBC t = canonical_core(swapped(bc));
  c.P_tilde = t.P;
  c.L_tilde = t.L;
  return c;
}

std::optional<BoundaryKind> boundary_kind_from_string(const std::string& name) {
  if (name == "dirichlet") return BoundaryKind::Dirichlet;
  if (name == "neumann") return BoundaryKind::Neumann;
  if (name == "kirchhoff") return BoundaryKind::Kirchhoff;
  if (name == "robin") return BoundaryKind::Robin;
  if (name == "custom") return BoundaryKind::Custom;
  return std::nullopt;
}

VertexBlock kirchhoff_block(int degree, double mu) {
  VertexBlock b{CMatrix::Zero(degree, degree), CMatrix::Zero(degree, degree)};
  for (int i = 0; i + 1 < degree; ++i) {
    b.A(i, i) = 1.0;
    b.A(i, i + 1) = -1.0;
  }
  b.A(degree - 1, degree - 1) = mu;
  b.B.row(degree - 1).setOnes();
  return b;
}

BoundaryConditions make_boundary(BoundaryKind kind, const MetricGraph& g,
                                 const BoundaryParams& params) {
  const int n = g.end_count();
  const int nv = g.vertex_count();
  const auto& groups = g.ends_at_vertex();
  BoundaryConditions bc{CMatrix::Zero(n, n), CMatrix::Zero(n, n), std::nullopt};

  auto place = [&](int v, const VertexBlock& blk) {
    const auto& ends = groups[v];
    const int d = static_cast<int>(ends.size());
    if (blk.A.rows() != d || blk.A.cols() != d || blk.B.rows() != d || blk.B.cols() != d) {
      throw Error(ErrorCode::WrongParameterCount,
                  "vertex " + std::to_string(v) + " of degree " + std::to_string(d) +
                      " needs " + std::to_string(d) + "x" + std::to_string(d) + " blocks");
    }
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        bc.A(ends[a], ends[b]) = blk.A(a, b);
        bc.B(ends[a], ends[b]) = blk.B(a, b);
      }
    }
  };

  switch (kind) {
    case BoundaryKind::Dirichlet:
      bc.A.setIdentity();
      break;
    case BoundaryKind::Neumann:
      bc.B.setIdentity();
      break;
    case BoundaryKind::Kirchhoff: {
      std::vector<double> mu = params.mu;
      if (mu.empty()) mu.assign(nv, 0.0);
      if (static_cast<int>(mu.size()) != nv) {
        throw Error(ErrorCode::WrongParameterCount,
                    "kirchhoff needs one mu per vertex (" + std::to_string(nv) + "), got " +
                        std::to_string(mu.size()));
      }
      for (int v = 0; v < nv; ++v) {
        if (groups[v].empty()) continue;
        place(v, kirchhoff_block(static_cast<int>(groups[v].size()), mu[v]));
      }
      break;
    }
    case BoundaryKind::Robin: {
      if (static_cast<int>(params.robin.size()) != n) {
        throw Error(ErrorCode::WrongParameterCount,
                    "robin needs one lambda per edge end (" + std::to_string(n) + "), got " +
                        std::to_string(params.robin.size()));
      }
      for (int j = 0; j < n; ++j) bc.A(j, j) = params.robin[j];
      bc.B.setIdentity();
      break;
    }
    case BoundaryKind::Custom: {
      if (static_cast<int>(params.blocks.size()) != nv) {
        throw Error(ErrorCode::WrongParameterCount,
                    "custom needs one block pair per vertex (" + std::to_string(nv) +
                        "), got " + std::to_string(params.blocks.size()));
      }
      for (int v = 0; v < nv; ++v) {
        if (!groups[v].empty()) place(v, params.blocks[v]);
      }
      break;
    }
  }

  std::vector<std::vector<int>> blocks;
  for (const auto& ends : groups) {
    if (!ends.empty()) blocks.push_back(ends);
  }
  bc.locality_blocks = std::move(blocks);
  return bc;
}

BoundaryConditions dirichlet(const MetricGraph& g) {
  return make_boundary(BoundaryKind::Dirichlet, g);
}

BoundaryConditions neumann(const MetricGraph& g) {
  return make_boundary(BoundaryKind::Neumann, g);
}

BoundaryConditions kirchhoff(const MetricGraph& g, std::vector<double> mu) {
  BoundaryParams p;
  p.mu = std::move(mu);
  return make_boundary(BoundaryKind::Kirchhoff, g, p);
}

BoundaryConditions robin(const MetricGraph& g, std::vector<double> lambda_per_end) {
  BoundaryParams p;
  p.robin = std::move(lambda_per_end);
  return make_boundary(BoundaryKind::Robin, g, p);
}

}  // namespace qgraph
