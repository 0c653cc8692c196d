#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qgraph/numerics.hpp"

namespace qgraph {

struct Edge {
  int from = 0;
  int to = 0;
  double length = 1.0;
};

/// Compact metric graph with the edge-end indexing used throughout the library.
///
/// Edge ends are numbered 0..2E-1: index j < E is the initial point (x = 0) of
/// edge j, index j + E its terminal point (x = l_j). Edge end j also labels the
/// directed edge that leaves through it, so a walk is a sequence of edge-end
/// indices. Loops and multiple edges are allowed.
class MetricGraph {
 public:
  /// Validates and builds. Throws EmptyGraph, NonPositiveLength or
  /// DanglingVertexReference.
  static MetricGraph build(int vertex_count, std::vector<Edge> edges);

  int vertex_count() const { return vertex_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int end_count() const { return 2 * edge_count(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& degrees() const { return degrees_; }

  double total_length() const { return total_length_; }
  double min_length() const { return min_length_; }
  double max_length() const { return max_length_; }

  /// The opposite end of the same edge. Throws IndexOutOfRange.
  int omega(int j) const;
  /// Vertex at which edge end j sits.
  int end_vertex(int j) const;
  /// Length of the edge that carries end j.
  double end_length(int j) const;
  /// Edge ends incident to each vertex, ascending.
  const std::vector<std::vector<int>>& ends_at_vertex() const { return ends_at_vertex_; }
  /// Diagonal of D(l): edge lengths listed once per edge end.
  RVector duplicated_lengths() const;

  bool is_connected() const;

 private:
  MetricGraph() = default;

  int vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::vector<int>> ends_at_vertex_;
  double total_length_ = 0.0;
  double min_length_ = 0.0;
  double max_length_ = 0.0;
};

/// Allowed transitions between directed edges: allowed(j, j2) is true when a
/// walk may continue from directed edge j into directed edge j2.
class TransitionMask {
 public:
  TransitionMask() = default;
  explicit TransitionMask(int size, bool value = false)
      : size_(size), allowed_(static_cast<std::size_t>(size) * size, value ? 1 : 0) {}

  int size() const { return size_; }
  bool allowed(int from, int to) const { return allowed_[index(from, to)] != 0; }
  void set(int from, int to, bool value) { allowed_[index(from, to)] = value ? 1 : 0; }

  /// Number of closed walks of length n, i.e. tr(Adj^n).
  double closed_walk_count(int n) const;

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from) * size_ + to;
  }
  int size_ = 0;
  std::vector<std::uint8_t> allowed_;
};

/// Directed periodic orbit: a class of closed walks modulo cyclic rotation.
struct PeriodicOrbit {
  std::vector<int> rep;  // lexicographically least rotation
  double metric_length = 0.0;
  int repetition = 1;
  double primitive_length = 0.0;

  int topo_length() const { return static_cast<int>(rep.size()); }
  /// Number of distinct closed walks in the class.
  int walk_count() const { return topo_length() / repetition; }
};

/// Orbits grouped by topological length; by_length[n] holds P_n (index 0 unused).
struct OrbitCatalogue {
  int n_max = 0;
  std::vector<std::vector<PeriodicOrbit>> by_length;

  std::size_t total() const;
};

inline constexpr std::size_t kDefaultOrbitCap = 1'000'000;

/// Depth-first enumeration of all orbit classes of topological length 1..n_max.
/// Each class is emitted once, through its lexicographically least rotation.
/// Throws CutoffTooLarge when more than `cap` classes would be produced.
OrbitCatalogue enumerate_orbits(const MetricGraph& g, const TransitionMask& mask, int n_max,
                                std::size_t cap = kDefaultOrbitCap);

/// Lexicographically least cyclic rotation (brute force).
std::vector<int> canonical_rotation(const std::vector<int>& seq);

/// Length of the smallest period of a cyclic sequence.
int smallest_period(const std::vector<int>& seq);

}  // namespace qgraph
