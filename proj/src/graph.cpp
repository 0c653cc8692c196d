#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace qgraph {

MetricGraph MetricGraph::build(int vertex_count, std::vector<Edge> edges) {
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "graph needs at least one edge");
  if (vertex_count < 1) throw Error(ErrorCode::EmptyGraph, "graph needs at least one vertex");

  MetricGraph g;
  g.vertex_count_ = vertex_count;
  g.degrees_.assign(vertex_count, 0);
  g.min_length_ = std::numeric_limits<double>::infinity();
  g.max_length_ = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& ed = edges[e];
    if (!(ed.length > 0.0) || !std::isfinite(ed.length)) {
      throw Error(ErrorCode::NonPositiveLength,
                  "edge " + std::to_string(e) + " has length " + fmt17(ed.length));
    }
    for (int v : {ed.from, ed.to}) {
      if (v < 0 || v >= vertex_count) {
        throw Error(ErrorCode::DanglingVertexReference,
                    "edge " + std::to_string(e) + " references vertex " + std::to_string(v));
      }
    }
    g.degrees_[ed.from] += 1;
    g.degrees_[ed.to] += 1;
    g.total_length_ += ed.length;
    g.min_length_ = std::min(g.min_length_, ed.length);
    g.max_length_ = std::max(g.max_length_, ed.length);
  }
  g.edges_ = std::move(edges);

  g.ends_at_vertex_.assign(vertex_count, {});
  for (int j = 0; j < g.end_count(); ++j) g.ends_at_vertex_[g.end_vertex(j)].push_back(j);
  return g;
}

int MetricGraph::omega(int j) const {
  const int e = edge_count();
  if (j < 0 || j >= 2 * e) {
    throw Error(ErrorCode::IndexOutOfRange, "edge-end index " + std::to_string(j));
  }
  return j < e ? j + e : j - e;
}

int MetricGraph::end_vertex(int j) const {
  const int e = edge_count();
  if (j < 0 || j >= 2 * e) {
    throw Error(ErrorCode::IndexOutOfRange, "edge-end index " + std::to_string(j));
  }
  return j < e ? edges_[j].from : edges_[j - e].to;
}

double MetricGraph::end_length(int j) const { return edges_[j % edge_count()].length; }

RVector MetricGraph::duplicated_lengths() const {
  RVector d(end_count());
  for (int j = 0; j < end_count(); ++j) d(j) = end_length(j);
  return d;
}

bool MetricGraph::is_connected() const {
  std::vector<int> parent(vertex_count_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const Edge& e : edges_) parent[find(e.from)] = find(e.to);
  const int root = find(0);
  for (int v = 1; v < vertex_count_; ++v) {
    if (find(v) != root) return false;
  }
  return true;
}

double TransitionMask::closed_walk_count(int n) const {
  Eigen::MatrixXd adj(size_, size_);
  for (int a = 0; a < size_; ++a) {
    for (int b = 0; b < size_; ++b) adj(a, b) = allowed(a, b) ? 1.0 : 0.0;
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Identity(size_, size_);
  for (int i = 0; i < n; ++i) p = p * adj;
  return p.trace();
}

std::size_t OrbitCatalogue::total() const {
  std::size_t n = 0;
  for (const auto& group : by_length) n += group.size();
  return n;
}

namespace {

// Fredricksen-Kessler-Maiorana generation of necklaces restricted to closed walks.
class NecklaceWalker {
 public:
  NecklaceWalker(const MetricGraph& g, const TransitionMask& mask, int n, std::size_t cap,
                 std::size_t already, std::vector<PeriodicOrbit>& out)
      : g_(g), mask_(mask), n_(n), cap_(cap), already_(already), out_(out), a_(n) {}

  void run() {
    for (int s = 0; s < mask_.size(); ++s) {
      a_[0] = s;
      extend(1, 1);
    }
  }

 private:
  // a_[0..t-1] is a prenecklace with period p
  void extend(int t, int p) {
    if (t == n_) {
      if (n_ % p == 0 && mask_.allowed(a_[n_ - 1], a_[0])) emit(p);
      return;
    }
    const int floor_symbol = a_[t - p];
    for (int j = floor_symbol; j < mask_.size(); ++j) {
      if (!mask_.allowed(a_[t - 1], j)) continue;
      a_[t] = j;
      extend(t + 1, j == floor_symbol ? p : t + 1);
    }
  }

  void emit(int period) {
    if (already_ + out_.size() >= cap_) {
      throw Error(ErrorCode::CutoffTooLarge,
                  "more than " + std::to_string(cap_) + " periodic orbits up to length " +
                      std::to_string(n_));
    }
    PeriodicOrbit orbit;
    orbit.rep = a_;
    for (int j : a_) orbit.metric_length += g_.end_length(j);
    orbit.repetition = n_ / period;
    double primitive = 0.0;
    for (int m = 0; m < period; ++m) primitive += g_.end_length(a_[m]);
    orbit.primitive_length = primitive;
    out_.push_back(std::move(orbit));
  }

  const MetricGraph& g_;
  const TransitionMask& mask_;
  int n_;
  std::size_t cap_;
  std::size_t already_;
  std::vector<PeriodicOrbit>& out_;
  std::vector<int> a_;
};

}  // namespace

OrbitCatalogue enumerate_orbits(const MetricGraph& g, const TransitionMask& mask, int n_max,
                                std::size_t cap) {
  if (n_max < 1) throw Error(ErrorCode::IndexOutOfRange, "n_max must be at least 1");
  if (mask.size() != g.end_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "transition mask size does not match 2E");
  }
  OrbitCatalogue cat;
  cat.n_max = n_max;
  cat.by_length.resize(n_max + 1);
  std::size_t count = 0;
  for (int n = 1; n <= n_max; ++n) {
    NecklaceWalker(g, mask, n, cap, count, cat.by_length[n]).run();
    count += cat.by_length[n].size();
  }
  return cat;
}

std::vector<int> canonical_rotation(const std::vector<int>& seq) {
  std::vector<int> best = seq;
  std::vector<int> rot = seq;
  for (std::size_t s = 1; s < seq.size(); ++s) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

int smallest_period(const std::vector<int>& seq) {
  const int n = static_cast<int>(seq.size());
  for (int p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = p; i < n && periodic; ++i) periodic = seq[i] == seq[i - p];
    if (periodic) return p;
  }
  return n;
}

}  // namespace qgraph
