#include "cgwave/compose.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "cgwave/errors.hpp"

namespace cgwave {

void require_bounded_away(std::span<const double> values, double floor, const std::string& what) {
  const int m = static_cast<int>(values.size());
  for (int j = 0; j < m; ++j) {
    if (!(std::abs(values[j]) >= floor)) {
      const double x = 2.0 * std::numbers::pi * j / m;
      throw SingularExpression(what + ": denominator " + std::to_string(values[j]) +
                                   " below floor at node " + std::to_string(j) +
                                   " (x = " + std::to_string(x) + ")",
                               j, x, values[j]);
    }
  }
}

PeriodicFunction pointwise_compose(std::span<const PeriodicFunction> inputs,
                                   const NodeExpr& expr, const ComposeOptions& options) {
  if (inputs.empty()) throw std::invalid_argument("pointwise_compose: no inputs");
  int grid = 0;
  int modes = 0;
  for (const auto& f : inputs) {
    grid = std::max(grid, f.grid_size());
    modes = std::max(modes, f.modes());
  }
  if (options.modes >= 0) modes = options.modes;

  std::vector<std::vector<double>> samples;
  samples.reserve(inputs.size());
  for (const auto& f : inputs) {
    if (f.grid_size() == grid) {
      samples.emplace_back(f.grid_samples().begin(), f.grid_samples().end());
    } else {
      samples.push_back(f.sample(grid));
    }
  }

  std::vector<double> node(inputs.size());
  std::vector<double> out(grid);
  std::vector<double> denom;
  if (options.denominator) denom.resize(grid);
  for (int j = 0; j < grid; ++j) {
    for (std::size_t i = 0; i < inputs.size(); ++i) node[i] = samples[i][j];
    if (options.denominator) denom[j] = options.denominator(node);
    out[j] = expr(node);
  }
  if (options.denominator) require_bounded_away(denom, options.floor, options.what);
  return analyze(out, modes, options.parity);
}

}  // namespace cgwave
