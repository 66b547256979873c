#include "tocpur/estimator.hpp"

#include <algorithm>
#include <stdexcept>

namespace tocpur {

Estimator::Estimator(int num_vertices, double mu_default)
    : mu_default_(mu_default), last_visit_(num_vertices, 0), observed_(num_vertices, 0.0) {}

void Estimator::observe(int vertex, double collected, int t) {
  if (vertex < 1 || vertex > num_vertices()) throw std::out_of_range("vertex out of range");
  if (t <= last_visit_[vertex]) throw std::invalid_argument("visits must advance in time");
  if (collected < 0.0) throw std::invalid_argument("collected cost is nonnegative");
  observed_[vertex] += collected;
  last_visit_[vertex] = t;
}

double Estimator::mu_hat(int vertex) const {
  const int visits_until = last_visit_[vertex];
  return visits_until > 0 ? observed_[vertex] / visits_until : mu_default_;
}

VertexArray<double> Estimator::predicted_cost(int t) const {
  if (t < 1) throw std::invalid_argument("prediction is made for iterations t >= 1");
  VertexArray<double> out(num_vertices(), 0.0);
  for (int v = 1; v <= num_vertices(); ++v) {
    out[v] = std::max(0.0, mu_hat(v) * static_cast<double>(t - last_visit_[v]));
  }
  return out;
}

}  // namespace tocpur
