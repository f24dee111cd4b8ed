#pragma once

#include <functional>

namespace dkpp {

/// Composite Simpson quadrature with dyadic refinement until the local
/// Richardson estimate meets rel_tol.  Handles integrands with isolated
/// kinks (|G|, |G''| at sign changes) by subdividing around them.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol);

}  // namespace dkpp
