#include "tocpur/oracle.hpp"

#include <functional>
#include <map>
#include <stdexcept>

namespace tocpur::oracle {
namespace {

using Mask = unsigned;

Mask bit(int v) { return 1u << (v - 1); }

// Every achievable visited-vertex mask of one agent, with a witness walk.
// Walks are found in a fixed depth-first order, so witnesses are deterministic.
std::map<Mask, std::vector<int>> enumerate_walks(const Graph& g, double l_max, bool simple) {
  std::map<Mask, std::vector<int>> found;
  std::vector<char> used(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<int> path{kDepot};

  std::function<void(int, double, Mask)> dfs = [&](int at, double spent, Mask visited) {
    for (int e : g.out_edges(at)) {
      const Edge& edge = g.edge(e);
      if (used[static_cast<std::size_t>(e)] || spent + edge.length > l_max) continue;
      if (edge.to == kDepot) {
        path.push_back(kDepot);
        found.try_emplace(visited, path);
        path.pop_back();
        continue;
      }
      if (simple && (visited & bit(edge.to))) continue;
      used[static_cast<std::size_t>(e)] = 1;
      path.push_back(edge.to);
      dfs(edge.to, spent + edge.length, visited | bit(edge.to));
      path.pop_back();
      used[static_cast<std::size_t>(e)] = 0;
    }
  };
  dfs(kDepot, 0.0, bit(kDepot));
  return found;
}

double mask_value(Mask mask, const VertexArray<double>& c_hat) {
  double sum = 0.0;
  for (int v = 2; v <= c_hat.size(); ++v) {
    if (mask & bit(v)) sum += c_hat[v];
  }
  return sum;
}

void guard(int n, int agents) {
  if (n > kMaxVertices || agents > kMaxAgents || agents < 1) {
    throw std::invalid_argument("instance too large for exhaustive search");
  }
}

}  // namespace

std::optional<SingleIterationResult> brute_force_single_iteration(const PlanningInput& in,
                                                                  const OracleOptions& options) {
  const Graph& g = in.graph;
  guard(g.num_vertices(), in.num_agents);
  if (in.c_hat.size() != g.num_vertices()) throw std::invalid_argument("c_hat size mismatch");

  std::vector<std::pair<Mask, std::vector<int>>> choices;
  if (options.allow_idle_agents) choices.emplace_back(bit(kDepot), std::vector<int>{kDepot});
  for (auto& [mask, walk] : enumerate_walks(g, in.l_max, options.simple_cycles)) choices.emplace_back(mask, walk);

  Mask required = 0;
  for (int v : in.must_visit) required |= bit(v);

  std::optional<SingleIterationResult> best;
  const auto consider = [&](Mask covered, std::vector<std::vector<int>> routes) {
    if ((covered & required) != required) return;
    const double value = mask_value(covered, in.c_hat);
    if (!best || value > best->reward) best = SingleIterationResult{value, make_plan(g, std::move(routes))};
  };

  if (in.num_agents == 1) {
    for (const auto& [mask, walk] : choices) consider(mask, {walk});
  } else {
    for (std::size_t a = 0; a < choices.size(); ++a) {
      for (std::size_t b = a; b < choices.size(); ++b) {
        const Mask ma = choices[a].first;
        const Mask mb = choices[b].first;
        if (options.simple_cycles && (ma & mb) != bit(kDepot)) continue;
        consider(ma | mb, {choices[a].second, choices[b].second});
      }
    }
  }
  return best;
}

namespace {

struct HorizonSearch {
  const Instance& inst;
  std::vector<std::pair<Mask, std::vector<int>>> choices;
  Mask required = 0;
  std::optional<HorizonResult> best;
  std::vector<std::size_t> picks;
  std::vector<double> residuals;

  void run(int t, VertexArray<double> accrued, double so_far) {
    if (t > inst.horizon) {
      if (!best || so_far < best->total_cost) {
        HorizonResult r;
        r.total_cost = so_far;
        r.residual_by_iteration = residuals;
        for (std::size_t p : picks) r.plans.push_back(make_plan(inst.graph, {choices[p].second}));
        best = std::move(r);
      }
      return;
    }
    for (int v = 1; v <= accrued.size(); ++v) accrued[v] += inst.kappa_at(v, t);
    for (std::size_t p = 0; p < choices.size(); ++p) {
      const Mask mask = choices[p].first;
      if ((mask & required) != required) continue;
      VertexArray<double> next = accrued;
      double residual = 0.0;
      for (int v = 1; v <= next.size(); ++v) {
        if (v == kDepot || (mask & bit(v))) {
          next[v] = 0.0;
        } else {
          residual += next[v];
        }
      }
      picks.push_back(p);
      residuals.push_back(residual);
      run(t + 1, std::move(next), so_far + residual);
      residuals.pop_back();
      picks.pop_back();
    }
  }
};

void horizon_guard(const Instance& inst) {
  guard(inst.num_vertices(), inst.num_agents);
  if (inst.num_agents != 1) throw std::invalid_argument("horizon oracle plans a single agent");
  if (inst.horizon > 3) throw std::invalid_argument("horizon oracle is limited to H <= 3");
  if (inst.noise_stddev != 0.0) throw std::invalid_argument("horizon oracle needs a noise-free instance");
}

}  // namespace

std::optional<HorizonResult> brute_force_horizon(const Instance& inst) {
  horizon_guard(inst);
  HorizonSearch search{inst, {}, 0, std::nullopt, {}, {}};
  for (auto& [mask, walk] : enumerate_walks(inst.graph, inst.l_max, false)) search.choices.emplace_back(mask, walk);
  for (int v : inst.must_visit) search.required |= bit(v);
  search.run(1, VertexArray<double>(inst.num_vertices(), 0.0), 0.0);
  return search.best;
}

std::optional<HorizonResult> chain_per_iteration_optima(const Instance& inst) {
  horizon_guard(inst);
  HorizonResult out;
  VertexArray<double> accrued(inst.num_vertices(), 0.0);
  for (int t = 1; t <= inst.horizon; ++t) {
    for (int v = 1; v <= accrued.size(); ++v) accrued[v] += inst.kappa_at(v, t);
    const PlanningInput in{inst.graph, accrued, 1, inst.l_max, inst.must_visit};
    auto step = brute_force_single_iteration(in);
    if (!step) return std::nullopt;
    const VertexArray<bool> visited = step->plan.visited(inst.num_vertices());
    double residual = 0.0;
    for (int v = 1; v <= accrued.size(); ++v) {
      if (visited[v]) {
        accrued[v] = 0.0;
      } else {
        residual += accrued[v];
      }
    }
    out.total_cost += residual;
    out.residual_by_iteration.push_back(residual);
    out.plans.push_back(std::move(step->plan));
  }
  return out;
}

}  // namespace tocpur::oracle
