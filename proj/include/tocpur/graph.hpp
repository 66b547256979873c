#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tocpur/vertex_array.hpp"

namespace tocpur {

inline constexpr int kDepot = 1;
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

struct Edge {
  int from = 0;
  int to = 0;
  double length = 0.0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed graph over vertices 1..N. Edges keep their insertion order; the
// edge index is what the MIP builders key their variables on.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int num_vertices);

  /// Appends one directed edge. No checking; see validate().
  int add_edge(int from, int to, double length);
  /// Appends (a,b) and (b,a) with the same length.
  void add_symmetric_edge(int a, int b, double length);

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const int> out_edges(int vertex) const;
  std::span<const int> in_edges(int vertex) const;
  std::optional<int> find_edge(int from, int to) const;

  double min_edge_length() const;

  void set_positions(VertexArray<Point> positions) { positions_ = std::move(positions); }
  bool has_positions() const { return !positions_.empty(); }
  const VertexArray<Point>& positions() const { return positions_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.num_vertices_ == b.num_vertices_ && a.edges_ == b.edges_ && a.positions_ == b.positions_;
  }

 private:
  int num_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  VertexArray<Point> positions_;
};

/// Returns a description of the first violated structural invariant, or
/// nullopt when the graph is a valid symmetric directed graph.
std::optional<std::string> validate(const Graph& graph);

/// N x N shortest-path lengths with an explicit infinity for unreachable pairs.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * n, kUnreachable) {}

  int size() const { return n_; }
  double operator()(int from, int to) const { return d_[index(from, to)]; }
  double& at(int from, int to) { return d_[index(from, to)]; }

 private:
  std::size_t index(int from, int to) const {
    return static_cast<std::size_t>(from - 1) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(to - 1);
  }
  int n_ = 0;
  std::vector<double> d_;
};

/// Floyd-Warshall.
DistanceMatrix all_pairs_shortest(const Graph& graph);

/// Vertex sequence of a shortest path from `from` to `to` (both included).
/// Ties resolve to the lowest-index predecessor. Empty when unreachable.
std::vector<int> shortest_path(const Graph& graph, const DistanceMatrix& dist, int from, int to);

/// Vertices whose depot round trip fits in `l_max`, ascending. Always holds the depot.
std::vector<int> reachable_round_trip(const DistanceMatrix& dist, double l_max);

}  // namespace tocpur
