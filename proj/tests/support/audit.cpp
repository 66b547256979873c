#include "audit.hpp"

#include <cmath>
#include <fmt/format.h>

namespace tocpur::testing {

std::vector<std::string> audit_assignment(const PlanningInput& in, const VariableHandles& h,
                                          const std::vector<double>& a, bool allow_idle_agents, bool visit_once) {
  constexpr double tol = 1e-6;
  const Graph& g = in.graph;
  const int n = g.num_vertices();
  std::vector<std::string> issues;
  const auto val = [&](int id) { return a.at(static_cast<std::size_t>(id)); };
  const auto report = [&](std::string what) { issues.push_back(std::move(what)); };

  for (const auto* ids : {&h.x_ids, &h.y_ids, &h.z_ids}) {
    for (int id : *ids) {
      if (std::abs(val(id) - std::round(val(id))) > tol) report(fmt::format("variable {} is fractional", id));
    }
  }
  double min_len = kUnreachable;
  for (const Edge& e : g.edges()) min_len = std::min(min_len, e.length);

  for (int m = 0; m < h.num_agents; ++m) {
    double depart = 0.0, arrive = 0.0, length = 0.0, visits = 0.0;
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& edge = g.edge(e);
      const double x = val(h.x(e, m));
      const double u = val(h.u(e, m));
      if (edge.from == edge.to && x > tol) report(fmt::format("agent {} uses self-loop at {}", m, edge.from));
      if (edge.from == kDepot) depart += x;
      if (edge.to == kDepot) arrive += x;
      length += edge.length * x;
      if (u < -tol || u > n * x + tol) report(fmt::format("agent {} flow on ({},{}) outside [0, N x]", m, edge.from, edge.to));
    }
    const bool depot_ok = allow_idle_agents ? depart <= 1.0 + tol && arrive <= 1.0 + tol
                                            : std::abs(depart - 1.0) <= tol && std::abs(arrive - 1.0) <= tol;
    if (!depot_ok) report(fmt::format("agent {} depot degree {} out / {} in", m, depart, arrive));
    if (length > in.l_max + tol) report(fmt::format("agent {} length {} over budget {}", m, length, in.l_max));

    for (int i = 1; i <= n; ++i) {
      double out_x = 0.0, in_x = 0.0, out_u = 0.0, in_u = 0.0;
      for (int e : g.out_edges(i)) {
        out_x += val(h.x(e, m));
        out_u += val(h.u(e, m));
      }
      for (int e : g.in_edges(i)) {
        in_x += val(h.x(e, m));
        in_u += val(h.u(e, m));
      }
      const double y = val(h.y(i, m));
      if (std::abs(out_x - in_x) > tol) report(fmt::format("agent {} unbalanced at {}", m, i));
      if (out_x < y - tol) report(fmt::format("agent {} marks {} visited without leaving it", m, i));
      if (out_x > y * in.l_max / min_len + tol) report(fmt::format("agent {} leaves {} without marking it", m, i));
      if (i >= 2) {
        visits += y;
        if (std::abs(in_u - out_u - y) > tol) report(fmt::format("agent {} flow not absorbed at {}", m, i));
      }
    }
    double depot_out_u = 0.0, depot_in_u = 0.0;
    for (int e : g.out_edges(kDepot)) depot_out_u += val(h.u(e, m));
    for (int e : g.in_edges(kDepot)) depot_in_u += val(h.u(e, m));
    if (std::abs(depot_out_u - depot_in_u - visits) > tol) report(fmt::format("agent {} depot emits wrong flow", m));
  }

  for (int i = 1; i <= n; ++i) {
    double sum_y = 0.0;
    for (int m = 0; m < h.num_agents; ++m) sum_y += val(h.y(i, m));
    const double z = val(h.z(i));
    if (z > sum_y + tol || sum_y > h.num_agents * z + tol) report(fmt::format("cover flag of {} inconsistent", i));
    if (visit_once && i >= 2) {
      double entered = 0.0;
      for (int m = 0; m < h.num_agents; ++m) {
        for (int e : g.in_edges(i)) entered += val(h.x(e, m));
      }
      if (entered > 1.0 + tol) report(fmt::format("vertex {} entered {} times", i, entered));
    }
  }
  for (int v : in.must_visit) {
    if (val(h.z(v)) < 1.0 - tol) report(fmt::format("must-visit vertex {} skipped", v));
  }
  return issues;
}

}  // namespace tocpur::testing
