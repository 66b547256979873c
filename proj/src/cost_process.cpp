#include "tocpur/cost_process.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "tocpur/graph.hpp"

namespace tocpur {

VertexArray<double> sample_growth(const GrowthParams& params, std::uint64_t stream, int t) {
  if (t < 1) throw std::invalid_argument("growth is sampled for iterations t >= 1");
  if (params.noise_scale < 0.0 || params.clip_lo > params.clip_hi) {
    throw std::invalid_argument("invalid growth parameters");
  }
  std::seed_seq seq{static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(t), 0x6b617070u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, 1.0);

  VertexArray<double> out(params.mu_star.size());
  for (int v = 1; v <= out.size(); ++v) {
    const double x = params.mu_star[v] + params.noise_scale * noise(rng);
    out[v] = std::clamp(x, params.clip_lo, params.clip_hi);
  }
  return out;
}

CostState::CostState(int num_vertices) : last_visit_(num_vertices, 0), accrued_(num_vertices, 0.0) {}

void CostState::begin_iteration(const VertexArray<double>& kappa) {
  if (kappa.size() != num_vertices()) throw std::invalid_argument("kappa size mismatch");
  ++t_;
  kappa_log_.push_back(kappa);
  for (int v = 1; v <= num_vertices(); ++v) accrued_[v] += kappa[v];
}

Collection CostState::apply_visits(const VertexArray<bool>& visited) {
  if (visited.size() != num_vertices()) throw std::invalid_argument("visit set size mismatch");
  if (!visited[kDepot]) throw std::invalid_argument("every visit set contains the depot");
  Collection out{0.0, VertexArray<double>(num_vertices(), 0.0)};
  for (int v = 1; v <= num_vertices(); ++v) {
    if (!visited[v]) continue;
    out.by_vertex[v] = accrued_[v];
    if (v != kDepot) out.total += accrued_[v];
    accrued_[v] = 0.0;
    last_visit_[v] = t_;
  }
  return out;
}

double CostState::residual_cost() const {
  double sum = 0.0;
  for (int v = 2; v <= num_vertices(); ++v) sum += accrued_[v];
  return sum;
}

double CostState::accrued_from_log(int vertex) const {
  double sum = 0.0;
  for (int k = last_visit_[vertex] + 1; k <= t_; ++k) sum += kappa(vertex, k);
  return sum;
}

}  // namespace tocpur
