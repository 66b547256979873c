#pragma once

#include "tocpur/vertex_array.hpp"

namespace tocpur {

// Maximum-likelihood growth-rate estimate per vertex from the lump sums
// collected at each visit: mu_hat = C / T, or mu_default before the first visit.
class Estimator {
 public:
  Estimator(int num_vertices, double mu_default);

  /// Records a collection made at iteration t. Throws unless t advances past
  /// the vertex's previous visit.
  void observe(int vertex, double collected, int t);

  double mu_hat(int vertex) const;
  int last_visit(int vertex) const { return last_visit_[vertex]; }
  double observed_total(int vertex) const { return observed_[vertex]; }
  double mu_default() const { return mu_default_; }
  int num_vertices() const { return last_visit_.size(); }

  /// c_hat_i = mu_hat_i * (t - T_i).
  VertexArray<double> predicted_cost(int t) const;

 private:
  double mu_default_;
  VertexArray<int> last_visit_;
  VertexArray<double> observed_;
};

}  // namespace tocpur
