#include "tocpur/tocp.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <set>

namespace tocpur {
namespace {

using milp::Relation;
using milp::Term;

void check_input(const PlanningInput& in) {
  if (auto problem = validate(in.graph)) throw std::invalid_argument("invalid graph: " + *problem);
  if (in.num_agents < 1) throw std::invalid_argument("fleet needs at least one agent");
  if (in.c_hat.size() != in.graph.num_vertices()) throw std::invalid_argument("c_hat size mismatch");
  for (double c : in.c_hat) {
    if (!(c >= 0.0)) throw std::invalid_argument("predicted costs must be nonnegative");
  }
  if (in.graph.num_edges() == 0) throw std::invalid_argument("graph has no edges");
  const DistanceMatrix dist = all_pairs_shortest(in.graph);
  for (int v : in.must_visit) {
    if (v < 1 || v > in.graph.num_vertices()) throw std::invalid_argument("must-visit vertex out of range");
    if (dist(kDepot, v) == kUnreachable || dist(v, kDepot) == kUnreachable) {
      throw std::invalid_argument(fmt::format("must-visit vertex {} has no round trip from the depot", v));
    }
  }
}

}  // namespace

RoutingModel build_tocp(const PlanningInput& in, const TocpOptions& options) {
  check_input(in);
  const Graph& g = in.graph;
  const int n = g.num_vertices();
  const int agents = in.num_agents;
  const int edges = g.num_edges();

  RoutingModel out;
  milp::MilpModel& model = out.model;
  VariableHandles& h = out.handles;
  h.num_vertices = n;
  h.num_agents = agents;
  h.num_edges = edges;

  for (int e = 0; e < edges; ++e) {
    for (int m = 0; m < agents; ++m) {
      h.x_ids.push_back(model.add_binary(fmt::format("x_{}_{}_{}", g.edge(e).from, g.edge(e).to, m + 1)));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int m = 0; m < agents; ++m) h.y_ids.push_back(model.add_binary(fmt::format("y_{}_{}", i, m + 1)));
  }
  for (int i = 1; i <= n; ++i) h.z_ids.push_back(model.add_binary(fmt::format("z_{}", i)));
  for (int e = 0; e < edges; ++e) {
    for (int m = 0; m < agents; ++m) {
      h.u_ids.push_back(model.add_continuous(fmt::format("u_{}_{}_{}", g.edge(e).from, g.edge(e).to, m + 1), 0.0,
                                             static_cast<double>(n)));
    }
  }

  std::vector<Term> objective;
  for (int i = 2; i <= n; ++i) {
    if (in.c_hat[i] != 0.0) objective.push_back({h.z(i), in.c_hat[i]});
  }
  model.set_objective(std::move(objective), milp::Sense::kMaximize);

  const auto out_terms = [&](int i, int m, auto id_of) {
    std::vector<Term> t;
    for (int e : g.out_edges(i)) t.push_back({id_of(e, m), 1.0});
    return t;
  };
  const auto in_terms = [&](int i, int m, auto id_of) {
    std::vector<Term> t;
    for (int e : g.in_edges(i)) t.push_back({id_of(e, m), 1.0});
    return t;
  };
  const auto xid = [&](int e, int m) { return h.x(e, m); };
  const auto uid = [&](int e, int m) { return h.u(e, m); };

  const Relation depot_rel = options.allow_idle_agents ? Relation::kLessEqual : Relation::kEqual;
  const double big = in.l_max / g.min_edge_length();

  for (int m = 0; m < agents; ++m) {
    // Depot departure and return.
    model.add_constraint(fmt::format("depart_{}", m + 1), out_terms(kDepot, m, xid), depot_rel, 1.0);
    model.add_constraint(fmt::format("return_{}", m + 1), in_terms(kDepot, m, xid), depot_rel, 1.0);
  }
  for (int m = 0; m < agents; ++m) {
    for (int i = 1; i <= n; ++i) {
      // y_im <= sum_j x_ijm <= y_im * l_max / min l
      auto lo = out_terms(i, m, xid);
      lo.push_back({h.y(i, m), -1.0});
      model.add_constraint(fmt::format("visit_lo_{}_{}", i, m + 1), std::move(lo), Relation::kGreaterEqual, 0.0);
      auto hi = out_terms(i, m, xid);
      hi.push_back({h.y(i, m), -big});
      model.add_constraint(fmt::format("visit_hi_{}_{}", i, m + 1), std::move(hi), Relation::kLessEqual, 0.0);
    }
  }
  for (int i = 1; i <= n; ++i) {
    // z_i <= sum_m y_im <= M z_i
    std::vector<Term> lo, hi;
    for (int m = 0; m < agents; ++m) {
      lo.push_back({h.y(i, m), 1.0});
      hi.push_back({h.y(i, m), 1.0});
    }
    lo.push_back({h.z(i), -1.0});
    hi.push_back({h.z(i), -static_cast<double>(agents)});
    model.add_constraint(fmt::format("cover_lo_{}", i), std::move(lo), Relation::kGreaterEqual, 0.0);
    model.add_constraint(fmt::format("cover_hi_{}", i), std::move(hi), Relation::kLessEqual, 0.0);
  }
  for (int m = 0; m < agents; ++m) {
    for (int i = 1; i <= n; ++i) {
      auto t = out_terms(i, m, xid);
      for (int e : g.in_edges(i)) t.push_back({h.x(e, m), -1.0});
      model.add_constraint(fmt::format("balance_{}_{}", i, m + 1), std::move(t), Relation::kEqual, 0.0);
    }
  }
  for (int m = 0; m < agents; ++m) {
    std::vector<Term> t;
    for (int e = 0; e < edges; ++e) t.push_back({h.x(e, m), g.edge(e).length});
    model.add_constraint(fmt::format("budget_{}", m + 1), std::move(t), Relation::kLessEqual, in.l_max);
  }
  for (int m = 0; m < agents; ++m) {
    // Depot emits one unit of flow per vertex the agent visits...
    auto source = out_terms(kDepot, m, uid);
    for (int e : g.in_edges(kDepot)) source.push_back({h.u(e, m), -1.0});
    for (int j = 2; j <= n; ++j) source.push_back({h.y(j, m), -1.0});
    model.add_constraint(fmt::format("flow_source_{}", m + 1), std::move(source), Relation::kEqual, 0.0);
    // ...and every visited vertex absorbs one.
    for (int i = 2; i <= n; ++i) {
      auto sink = in_terms(i, m, uid);
      for (int e : g.out_edges(i)) sink.push_back({h.u(e, m), -1.0});
      sink.push_back({h.y(i, m), -1.0});
      model.add_constraint(fmt::format("flow_sink_{}_{}", i, m + 1), std::move(sink), Relation::kEqual, 0.0);
    }
  }
  for (int e = 0; e < edges; ++e) {
    for (int m = 0; m < agents; ++m) {
      const auto name = fmt::format("flow_cap_{}_{}_{}", g.edge(e).from, g.edge(e).to, m + 1);
      if (options.tight_flow_bound) {
        model.add_constraint(name, {{h.u(e, m), 1.0}, {h.x(e, m), -static_cast<double>(n - 1)}},
                             Relation::kLessEqual, 0.0);
        std::vector<Term> t{{h.u(e, m), 1.0}};
        for (int j = 2; j <= n; ++j) t.push_back({h.y(j, m), -1.0});
        model.add_constraint(name + "_count", std::move(t), Relation::kLessEqual, 0.0);
      } else {
        model.add_constraint(name, {{h.u(e, m), 1.0}, {h.x(e, m), -static_cast<double>(n)}}, Relation::kLessEqual,
                             0.0);
      }
    }
  }
  for (int v : in.must_visit) model.fix(h.z(v), 1.0);
  return out;
}

RoutingModel build_top(const PlanningInput& in, const TocpOptions& options) {
  RoutingModel out = build_tocp(in, options);
  const Graph& g = in.graph;
  for (int i = 2; i <= g.num_vertices(); ++i) {
    std::vector<Term> t;
    for (int m = 0; m < in.num_agents; ++m) {
      for (int e : g.in_edges(i)) t.push_back({out.handles.x(e, m), 1.0});
    }
    out.model.add_constraint(fmt::format("enter_once_{}", i), std::move(t), Relation::kLessEqual, 1.0);
  }
  return out;
}

FleetPlan extract_routes(const std::vector<double>& assignment, const VariableHandles& h, const Graph& graph) {
  if (static_cast<int>(assignment.size()) <= 0) throw IntegrityError("empty assignment");
  const auto on = [&](int id) { return assignment.at(static_cast<std::size_t>(id)) > 0.5; };
  std::vector<std::vector<int>> routes;
  for (int m = 0; m < h.num_agents; ++m) {
    // Remaining selected out-edges per vertex, consumed front to back.
    std::vector<std::vector<int>> pending(static_cast<std::size_t>(h.num_vertices + 1));
    int selected = 0;
    for (int e = 0; e < h.num_edges; ++e) {
      if (!on(h.x(e, m))) continue;
      pending[static_cast<std::size_t>(graph.edge(e).from)].push_back(e);
      ++selected;
    }
    for (auto& list : pending) std::reverse(list.begin(), list.end());
    if (selected == 0) {
      routes.push_back({kDepot});
      continue;
    }
    // Hierholzer: extend a trail until stuck, then back up and splice.
    std::vector<int> stack{kDepot};
    std::vector<int> circuit;
    while (!stack.empty()) {
      auto& out_list = pending[static_cast<std::size_t>(stack.back())];
      if (out_list.empty()) {
        circuit.push_back(stack.back());
        stack.pop_back();
      } else {
        const int e = out_list.back();
        out_list.pop_back();
        stack.push_back(graph.edge(e).to);
      }
    }
    std::reverse(circuit.begin(), circuit.end());
    if (static_cast<int>(circuit.size()) != selected + 1 || circuit.front() != kDepot || circuit.back() != kDepot) {
      throw IntegrityError(fmt::format("agent {}: selected edges do not form one closed walk", m + 1));
    }
    std::set<int> walk_vertices(circuit.begin(), circuit.end());
    for (int i = 2; i <= h.num_vertices; ++i) {
      if (on(h.y(i, m)) != walk_vertices.contains(i)) {
        throw IntegrityError(fmt::format("agent {}: visit flag of vertex {} disagrees with its walk", m + 1, i));
      }
    }
    routes.push_back(std::move(circuit));
  }
  return make_plan(graph, std::move(routes));
}

FleetPlan conform_plan(const Graph& graph, const FleetPlan& plan, const VertexArray<double>& c_hat, double l_max,
                       const std::vector<int>& must_visit) {
  // Detours between loops must not touch the depot again.
  Graph inner(graph.num_vertices());
  for (const Edge& e : graph.edges()) {
    if (e.from != kDepot && e.to != kDepot) inner.add_edge(e.from, e.to, e.length);
  }
  const DistanceMatrix inner_dist = all_pairs_shortest(inner);
  const std::set<int> required(must_visit.begin(), must_visit.end());
  const auto value_of = [&](const std::vector<int>& walk) {
    const std::set<int> distinct(walk.begin(), walk.end());
    double value = 0.0;
    for (int v : distinct) {
      if (v == kDepot) continue;
      value += c_hat[v];
      // Covering a required vertex outranks any reward.
      if (required.contains(v)) value += 1e9;
    }
    return value;
  };

  std::vector<std::vector<int>> routes;
  for (const auto& route : plan.routes) {
    std::vector<std::vector<int>> loops;
    for (std::size_t k = 0; k + 1 < route.size(); ++k) {
      if (route[k] == kDepot) loops.push_back({kDepot});
      loops.back().push_back(route[k + 1]);
    }
    std::erase_if(loops, [](const std::vector<int>& loop) { return loop.size() < 3; });

    // Splice consecutive loops together through the inner graph while the
    // result fits the budget; otherwise start a new chain.
    std::vector<int> best;
    double best_value = -1.0;
    std::vector<int> chain;
    const auto offer = [&](const std::vector<int>& walk) {
      const double value = value_of(walk);
      if (value > best_value) {
        best_value = value;
        best = walk;
      }
    };
    for (const auto& loop : loops) {
      const std::vector<int> alone = remove_repeated_edges(loop);
      if (chain.size() < 3) {
        chain = alone;
        offer(chain);
        continue;
      }
      const int from = chain[chain.size() - 2];
      const int to = loop[1];
      bool merged = false;
      if (inner_dist(from, to) != kUnreachable) {
        std::vector<int> joined(chain.begin(), chain.end() - 1);
        if (from != to) {
          const auto path = shortest_path(inner, inner_dist, from, to);
          joined.insert(joined.end(), path.begin() + 1, path.end());
        }
        joined.insert(joined.end(), loop.begin() + 2, loop.end());
        joined = remove_repeated_edges(joined);
        if (walk_length(graph, joined) <= l_max + 1e-9) {
          chain = std::move(joined);
          merged = true;
        }
      }
      if (!merged) chain = alone;
      offer(chain);
    }
    if (best.empty()) {
      double shortest = kUnreachable;
      int partner = 0;
      for (int e : graph.out_edges(kDepot)) {
        const Edge& edge = graph.edge(e);
        if (2.0 * edge.length > l_max) continue;
        if (edge.length < shortest || (edge.length == shortest && edge.to < partner)) {
          shortest = edge.length;
          partner = edge.to;
        }
      }
      best = partner == 0 ? std::vector<int>{kDepot} : std::vector<int>{kDepot, partner, kDepot};
    }
    routes.push_back(std::move(best));
  }
  return make_plan(graph, std::move(routes));
}

std::optional<std::vector<double>> plan_to_assignment(const FleetPlan& plan, const VariableHandles& h,
                                                      const Graph& graph) {
  if (plan.num_agents() != h.num_agents) return std::nullopt;
  // Size covers every variable id the handles reference.
  int max_id = -1;
  for (const auto* ids : {&h.x_ids, &h.u_ids, &h.y_ids, &h.z_ids}) {
    for (int id : *ids) max_id = std::max(max_id, id);
  }
  std::vector<double> a(static_cast<std::size_t>(max_id + 1), 0.0);
  for (int m = 0; m < h.num_agents; ++m) {
    const auto& route = plan.routes[static_cast<std::size_t>(m)];
    if (route.size() < 2) continue;
    if (!is_edge_simple(route)) return std::nullopt;
    if (std::count(route.begin(), route.end(), kDepot) != 2) return std::nullopt;

    // First-entry spanning tree of the walk; flow on a tree edge is the
    // number of non-depot vertices beneath it.
    std::vector<int> parent_edge(static_cast<std::size_t>(h.num_vertices + 1), -1);
    std::vector<int> order;
    std::vector<char> seen(static_cast<std::size_t>(h.num_vertices + 1), 0);
    seen[kDepot] = 1;
    for (std::size_t k = 1; k < route.size(); ++k) {
      const auto e = graph.find_edge(route[k - 1], route[k]);
      if (!e) return std::nullopt;
      a[static_cast<std::size_t>(h.x(*e, m))] = 1.0;
      const int v = route[k];
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        parent_edge[static_cast<std::size_t>(v)] = *e;
        order.push_back(v);
      }
    }
    std::vector<double> subtree(static_cast<std::size_t>(h.num_vertices + 1), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const int v = *it;
      subtree[static_cast<std::size_t>(v)] += 1.0;
      const Edge& pe = graph.edge(parent_edge[static_cast<std::size_t>(v)]);
      a[static_cast<std::size_t>(h.u(parent_edge[static_cast<std::size_t>(v)], m))] = subtree[static_cast<std::size_t>(v)];
      if (pe.from != kDepot) subtree[static_cast<std::size_t>(pe.from)] += subtree[static_cast<std::size_t>(v)];
    }
    for (int v : route) a[static_cast<std::size_t>(h.y(v, m))] = 1.0;
  }
  for (int i = 1; i <= h.num_vertices; ++i) {
    for (int m = 0; m < h.num_agents; ++m) {
      if (a[static_cast<std::size_t>(h.y(i, m))] > 0.5) a[static_cast<std::size_t>(h.z(i))] = 1.0;
    }
  }
  return a;
}

}  // namespace tocpur
