#pragma once

#include <functional>
#include <span>
#include <string>

#include "cgwave/periodic_function.hpp"

namespace cgwave {

/// Node-wise expression: receives the values of every input at one node.
using NodeExpr = std::function<double(std::span<const double>)>;

struct ComposeOptions {
  /// Truncation of the result; -1 keeps the largest input mode count.
  int modes = -1;
  /// Optional denominator guard: |denominator| < floor at any node throws
  /// SingularExpression carrying the node index and location.
  NodeExpr denominator;
  double floor = 0.0;
  std::string what = "pointwise_compose";
  ParityMode parity = ParityMode::detect;
};

/// Evaluates `expr` on the oversampled collocation grid shared by the inputs
/// (the largest input grid, 4N points by default), transforms back and
/// truncates. Nonlinearities such as (.)^{3/2} are aliased only through modes
/// beyond 2N.
PeriodicFunction pointwise_compose(std::span<const PeriodicFunction> inputs,
                                   const NodeExpr& expr, const ComposeOptions& options = {});

/// Throws SingularExpression if |values[j]| < floor for some node j of the
/// uniform grid with values.size() points.
void require_bounded_away(std::span<const double> values, double floor, const std::string& what);

}  // namespace cgwave
