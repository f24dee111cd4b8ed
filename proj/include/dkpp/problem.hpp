#pragma once

#include <vector>

#include "dkpp/grid.hpp"
#include "dkpp/kernel.hpp"
#include "dkpp/nonlinearity.hpp"

namespace dkpp {

/// Everything that defines one Cauchy problem
///   du/dt = -(-d^2/dx^2)^alpha u + b du/dx + a u + Int G(x-y) F(u(y,t), y) dy
/// on the periodic box.  The headline model has 0 < alpha < 1; alpha = 1 is
/// allowed only when classical_mode is set (used by the reference solutions,
/// where the propagator has classical heat closed forms).
struct ProblemSpec {
  double alpha = 0.5;
  double a = 0.0;  // 1/time
  double b = 0.0;  // length/time
  KernelSpec kernel;
  NonlinearitySpec nonlinearity;
  std::vector<double> initial_condition;  // u0(x_j), real with finite H^2 norm
  Grid grid;
  bool classical_mode = false;

  ProblemSpec(const Grid& g) : grid(g) {}

  void validate() const {
    if (classical_mode) {
      if (!(alpha > 0.0 && alpha <= 1.0))
        throw ParameterError("alpha must lie in (0, 1]");
    } else if (!(alpha > 0.0 && alpha < 1.0)) {
      throw ParameterError("alpha must lie in (0, 1); alpha = 1 needs classical_mode");
    }
    if (!(a >= 0.0)) throw ParameterError("coefficient a must be nonnegative");
    if (static_cast<int>(initial_condition.size()) != grid.n_points)
      throw DimensionError("initial condition length does not match grid");
    if (kernel.spectrum.size() != grid.n_points)
      throw DimensionError("kernel was built on a different grid");
    if (static_cast<int>(nonlinearity.baseline.size()) != grid.n_points)
      throw DimensionError("nonlinearity was built on a different grid");
    // u0 in H^2: on the grid this is finiteness of the norm (alpha = 1).
    (void)h2alpha_norm(initial_condition, grid, 1.0);
  }
};

}  // namespace dkpp
