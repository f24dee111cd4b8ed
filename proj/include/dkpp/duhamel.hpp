#pragma once

#include "dkpp/problem.hpp"
#include "dkpp/spacetime.hpp"

namespace dkpp {

/// The full linear symbol of the problem, -|p|^{2 alpha} + i b p + a.
Symbol problem_symbol(const ProblemSpec& problem);

/// Exact per-mode propagator e^{t m_k}; |factor| <= e^{t a}.  Rejects t < 0.
std::vector<std::complex<double>> semigroup_factor(const ProblemSpec& problem,
                                                   const Grid& grid, double t);

/// One application of the auxiliary block map u = t_{a,b} v:
///   u_hat(p, t) = e^{t m(p)} u0_hat(p)
///               + Int_0^t e^{(t-s) m(p)} sqrt(2 pi) G_hat(p) f_hat_v(p, s) ds
/// with the integral advanced level to level by the exponential-trapezoid
/// recurrence I_{m+1} = E I_m + dt/2 (E g_m + g_{m+1}), E = e^{dt m(p)}
/// (exact semigroup, second order in dt).  Level 0 is pinned to u0.
SpaceTimeField apply_map(const ProblemSpec& problem, const TimeWindow& window,
                         const SpaceTimeField& v);

/// Spectral time derivative of u = t_{a,b} v via the identity
///   d u_hat / dt = m(p) u_hat + sqrt(2 pi) G_hat f_hat_v
/// (no finite differencing in time).
SpaceTimeField time_derivative(const ProblemSpec& problem, const TimeWindow& window,
                               const SpaceTimeField& u, const SpaceTimeField& v);

/// L2(R x [0,T]) distance between u_hat and the map right side re-evaluated
/// with an independent composite-Simpson time quadrature; bounds the
/// discretization error of apply_map (O(dt^2) on smooth problems).
double duhamel_residual(const ProblemSpec& problem, const TimeWindow& window,
                        const SpaceTimeField& u, const SpaceTimeField& v);

/// (e^{2aT} - 1) / (2a), continued by its limit T at a = 0.
double exp_growth_integral(double a, double T);

}  // namespace dkpp
