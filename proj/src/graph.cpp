#include "tocpur/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <set>
#include <stdexcept>
#include <utility>

namespace tocpur {

Graph::Graph(int num_vertices)
    : num_vertices_(num_vertices),
      out_(static_cast<std::size_t>(std::max(num_vertices, 0))),
      in_(static_cast<std::size_t>(std::max(num_vertices, 0))) {
  if (num_vertices < 1) throw std::invalid_argument("graph needs at least one vertex");
}

int Graph::add_edge(int from, int to, double length) {
  const int index = num_edges();
  edges_.push_back({from, to, length});
  if (from >= 1 && from <= num_vertices_) out_[static_cast<std::size_t>(from - 1)].push_back(index);
  if (to >= 1 && to <= num_vertices_) in_[static_cast<std::size_t>(to - 1)].push_back(index);
  return index;
}

void Graph::add_symmetric_edge(int a, int b, double length) {
  add_edge(a, b, length);
  add_edge(b, a, length);
}

std::span<const int> Graph::out_edges(int vertex) const {
  return out_[static_cast<std::size_t>(vertex - 1)];
}

std::span<const int> Graph::in_edges(int vertex) const {
  return in_[static_cast<std::size_t>(vertex - 1)];
}

std::optional<int> Graph::find_edge(int from, int to) const {
  if (from < 1 || from > num_vertices_) return std::nullopt;
  for (int e : out_edges(from)) {
    if (edges_[static_cast<std::size_t>(e)].to == to) return e;
  }
  return std::nullopt;
}

double Graph::min_edge_length() const {
  double best = kUnreachable;
  for (const Edge& e : edges_) best = std::min(best, e.length);
  return best;
}

std::optional<std::string> validate(const Graph& graph) {
  const int n = graph.num_vertices();
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : graph.edges()) {
    if (e.from < 1 || e.from > n || e.to < 1 || e.to > n) {
      return fmt::format("edge ({},{}) references a vertex outside 1..{}", e.from, e.to, n);
    }
    if (e.from == e.to) return fmt::format("self-loop at vertex {}", e.from);
    if (!(e.length > 0.0) || !std::isfinite(e.length)) {
      return fmt::format("nonpositive length on edge ({},{})", e.from, e.to);
    }
    if (!seen.emplace(e.from, e.to).second) {
      return fmt::format("duplicate edge ({},{})", e.from, e.to);
    }
  }
  for (const Edge& e : graph.edges()) {
    const auto reverse = graph.find_edge(e.to, e.from);
    if (!reverse) return fmt::format("missing reverse edge ({},{})", e.to, e.from);
    if (graph.edge(*reverse).length != e.length) {
      return fmt::format("asymmetric length on edge ({},{})", e.from, e.to);
    }
  }
  if (graph.has_positions() && graph.positions().size() != n) {
    return fmt::format("positions cover {} vertices, graph has {}", graph.positions().size(), n);
  }
  return std::nullopt;
}

DistanceMatrix all_pairs_shortest(const Graph& graph) {
  const int n = graph.num_vertices();
  DistanceMatrix d(n);
  for (int i = 1; i <= n; ++i) d.at(i, i) = 0.0;
  for (const Edge& e : graph.edges()) d.at(e.from, e.to) = std::min(d(e.from, e.to), e.length);
  for (int k = 1; k <= n; ++k) {
    for (int i = 1; i <= n; ++i) {
      const double dik = d(i, k);
      if (dik == kUnreachable) continue;
      for (int j = 1; j <= n; ++j) {
        const double via = dik + d(k, j);
        if (via < d(i, j)) d.at(i, j) = via;
      }
    }
  }
  return d;
}

std::vector<int> shortest_path(const Graph& graph, const DistanceMatrix& dist, int from, int to) {
  if (dist(from, to) == kUnreachable) return {};
  std::vector<int> reversed{to};
  int current = to;
  while (current != from) {
    const double target = dist(from, current);
    const double tol = 1e-9 * std::max(1.0, target);
    int pred = 0;
    for (int e : graph.in_edges(current)) {
      const Edge& edge = graph.edge(e);
      const double via = dist(from, edge.from);
      if (via == kUnreachable || via >= target) continue;
      if (std::abs(via + edge.length - target) <= tol && (pred == 0 || edge.from < pred)) {
        pred = edge.from;
      }
    }
    if (pred == 0) throw std::logic_error("distance matrix inconsistent with graph");
    reversed.push_back(pred);
    current = pred;
  }
  return {reversed.rbegin(), reversed.rend()};
}

std::vector<int> reachable_round_trip(const DistanceMatrix& dist, double l_max) {
  std::vector<int> out{kDepot};
  for (int v = 2; v <= dist.size(); ++v) {
    if (dist(kDepot, v) + dist(v, kDepot) <= l_max) out.push_back(v);
  }
  return out;
}

}  // namespace tocpur
