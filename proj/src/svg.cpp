#include "tocpur/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <numbers>
#include <set>

#include "tocpur/report.hpp"

namespace tocpur {
namespace {

constexpr std::array<const char*, 6> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string header(int width, int height) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      width, height);
}

VertexArray<Point> layout(const Graph& g) {
  if (g.has_positions()) return g.positions();
  const int n = g.num_vertices();
  VertexArray<Point> points(n, Point{});
  for (int v = 1; v <= n; ++v) {
    const double angle = 2.0 * std::numbers::pi * (v - 1) / n;
    points[v] = Point{std::cos(angle), std::sin(angle)};
  }
  return points;
}

}  // namespace

std::string render_instance_svg(const Instance& inst, const FleetPlan* plan) {
  constexpr int kSize = 640;
  constexpr double kMargin = 40.0;
  const Graph& g = inst.graph;
  const VertexArray<Point> pts = layout(g);

  double min_x = pts[1].x, max_x = pts[1].x, min_y = pts[1].y, max_y = pts[1].y;
  for (const Point& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1e-9});
  const double scale = (kSize - 2.0 * kMargin) / span;
  // SVG's y axis points down.
  const auto sx = [&](const Point& p) { return kMargin + (p.x - min_x) * scale; };
  const auto sy = [&](const Point& p) { return kSize - kMargin - (p.y - min_y) * scale; };

  std::string out = header(kSize, kSize);
  out += "<g stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  std::set<std::pair<int, int>> drawn;
  for (const Edge& e : g.edges()) {
    if (!drawn.emplace(std::min(e.from, e.to), std::max(e.from, e.to)).second) continue;
    out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\"/>\n", sx(pts[e.from]),
                       sy(pts[e.from]), sx(pts[e.to]), sy(pts[e.to]));
  }
  out += "</g>\n";

  if (plan != nullptr) {
    for (std::size_t m = 0; m < plan->routes.size(); ++m) {
      const auto& route = plan->routes[m];
      if (route.size() < 2) continue;
      std::string points;
      for (int v : route) points += fmt::format("{:.2f},{:.2f} ", sx(pts[v]), sy(pts[v]));
      points.pop_back();
      out += fmt::format(
          "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"3\" stroke-opacity=\"0.7\"/>\n",
          points, kPalette[m % kPalette.size()]);
    }
  }

  const std::set<int> must(inst.must_visit.begin(), inst.must_visit.end());
  for (int v = 1; v <= g.num_vertices(); ++v) {
    const double x = sx(pts[v]);
    const double y = sy(pts[v]);
    if (v == kDepot) {
      out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"14\" height=\"14\" fill=\"black\"/>\n", x - 7, y - 7);
    } else {
      const char* fill = must.contains(v) ? "#ffd700" : "white";
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"7\" fill=\"{}\" stroke=\"black\"/>\n", x, y, fill);
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n", x + 9, y - 9, v);
  }
  out += fmt::format("<text x=\"10\" y=\"20\">{} (N={}, M={}, l_max={:.2f})</text>\n", inst.id, g.num_vertices(),
                     inst.num_agents, inst.l_max);
  out += "</svg>\n";
  return out;
}

std::string render_cost_curves_svg(const std::vector<ResultRow>& rows) {
  constexpr int kWidth = 640;
  constexpr int kHeight = 420;
  constexpr double kLeft = 70.0, kRight = 150.0, kTop = 30.0, kBottom = 50.0;
  const auto means = mean_cost_by_horizon(all_solved_subset(rows));
  const auto names = planners_in(rows);

  std::string out = header(kWidth, kHeight);
  if (means.empty()) {
    out += "<text x=\"20\" y=\"40\">no instance was solved by every planner</text>\n</svg>\n";
    return out;
  }
  const int h_lo = means.begin()->first;
  const int h_hi = means.rbegin()->first;
  double y_hi = 0.0;
  for (const auto& [h, by_planner] : means) {
    for (const auto& [name, value] : by_planner) y_hi = std::max(y_hi, value);
  }
  if (y_hi <= 0.0) y_hi = 1.0;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](int h) { return kLeft + (h_hi == h_lo ? plot_w / 2 : plot_w * (h - h_lo) / (h_hi - h_lo)); };
  const auto py = [&](double v) { return kTop + plot_h * (1.0 - v / y_hi); };

  out += fmt::format("<g stroke=\"black\"><line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>"
                     "<line x1=\"{0}\" y1=\"{2}\" x2=\"{3}\" y2=\"{2}\"/></g>\n",
                     kLeft, kTop, kTop + plot_h, kLeft + plot_w);
  for (const auto& [h, unused] : means) {
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\">{}</text>\n", px(h),
                       kTop + plot_h + 18, h);
  }
  for (int k = 0; k <= 4; ++k) {
    const double v = y_hi * k / 4.0;
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\">{:.2f}</text>\n", kLeft - 6, py(v) + 4, v);
  }
  out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">horizon H</text>\n", kLeft + plot_w / 2,
                     kHeight - 10);
  out += fmt::format("<text x=\"16\" y=\"{:.2f}\" transform=\"rotate(-90 16 {:.2f})\" text-anchor=\"middle\">"
                     "mean cumulative cost</text>\n",
                     kTop + plot_h / 2, kTop + plot_h / 2);

  for (std::size_t k = 0; k < names.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    std::string points;
    for (const auto& [h, by_planner] : means) {
      const auto it = by_planner.find(names[k]);
      if (it == by_planner.end()) continue;
      points += fmt::format("{:.2f},{:.2f} ", px(h), py(it->second));
      out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(h), py(it->second), color);
    }
    if (!points.empty()) points.pop_back();
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", points, color);
    const double ly = kTop + 20.0 * static_cast<double>(k);
    out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" "
                       "stroke-width=\"2\"/><text x=\"{4:.2f}\" y=\"{5:.2f}\">{6}</text>\n",
                       kLeft + plot_w + 15, ly, kLeft + plot_w + 40, color, kLeft + plot_w + 46, ly + 4, names[k]);
  }
  out += "</svg>\n";
  return out;
}

}  // namespace tocpur
