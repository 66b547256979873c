#include "tocpur/instance.hpp"

#include <cmath>
#include <fmt/format.h>

namespace tocpur {

std::optional<std::string> check_instance(const Instance& inst) {
  if (auto problem = validate(inst.graph)) return "graph: " + *problem;
  const int n = inst.num_vertices();
  if (inst.horizon < 1) return "horizon must be at least 1";
  if (inst.num_agents < 1) return "fleet needs at least one agent";
  if (!(inst.l_max >= 0.0) || !std::isfinite(inst.l_max)) return "l_max must be a finite nonnegative number";
  if (inst.mu_star.size() != n) return fmt::format("mu_star has {} entries, expected {}", inst.mu_star.size(), n);
  if (static_cast<int>(inst.kappa.size()) != inst.horizon) {
    return fmt::format("kappa covers {} iterations, horizon is {}", inst.kappa.size(), inst.horizon);
  }
  for (const auto& row : inst.kappa) {
    if (row.size() != n) return "kappa row size does not match vertex count";
    for (double k : row) {
      if (!std::isfinite(k) || k < 0.0) return "kappa entries must be finite and nonnegative";
    }
  }
  for (int v : inst.must_visit) {
    if (v < 1 || v > n) return fmt::format("must-visit vertex {} out of range", v);
  }
  if (inst.noise_stddev < 0.0) return "noise_stddev must be nonnegative";
  return std::nullopt;
}

}  // namespace tocpur
