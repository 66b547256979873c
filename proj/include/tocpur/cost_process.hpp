#pragma once

#include <cstdint>
#include <vector>

#include "tocpur/vertex_array.hpp"

namespace tocpur {

/// Per-vertex cost growth law: kappa = clip(N(mu_star, noise_scale^2), clip_lo, clip_hi).
struct GrowthParams {
  VertexArray<double> mu_star;
  double noise_scale = 0.1;  // standard deviation
  double clip_lo = 0.0;
  double clip_hi = 1.0;
};

/// Draws the growth realized right before iteration t (t >= 1). The draw is a
/// pure function of (params, stream, t).
VertexArray<double> sample_growth(const GrowthParams& params, std::uint64_t stream, int t);

struct Collection {
  double total = 0.0;
  VertexArray<double> by_vertex;  // zero for vertices not visited
};

// Ground-truth accumulated cost per vertex. Iteration t begins with
// begin_iteration(kappa_t); the fleet's visits are applied afterwards.
class CostState {
 public:
  explicit CostState(int num_vertices);

  int num_vertices() const { return accrued_.size(); }
  int iteration() const { return t_; }

  /// Advances to the next iteration and accrues `kappa` at every vertex.
  void begin_iteration(const VertexArray<double>& kappa);

  /// Collects and resets the cost at every visited vertex. `visited` is a
  /// membership flag per vertex and must include the depot.
  Collection apply_visits(const VertexArray<bool>& visited);

  /// Sum of accrued cost over non-depot vertices.
  double residual_cost() const;

  double accrued(int vertex) const { return accrued_[vertex]; }
  int last_visit(int vertex) const { return last_visit_[vertex]; }
  double kappa(int vertex, int t) const { return kappa_log_[static_cast<std::size_t>(t - 1)][vertex]; }

  /// sum_{k = T+1..t} kappa_k recomputed from the log.
  double accrued_from_log(int vertex) const;

 private:
  int t_ = 0;
  VertexArray<int> last_visit_;
  VertexArray<double> accrued_;
  std::vector<VertexArray<double>> kappa_log_;
};

}  // namespace tocpur
