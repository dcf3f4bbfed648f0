#pragma once

#include <functional>

#include "sqz/common.hpp"

namespace sqz {

/// Root of a scalar function along a ray. `f(0)` must be negative; the
/// bracket is grown geometrically from `t_init` until the sign flips, then
/// bisected. Returns the crossing parameter, or a negative value when no
/// sign change is found before `t_max`.
double ray_crossing(const std::function<double(double)>& f, double t_init, double t_max,
                    int bisect_iters = 120);

struct NelderMeadResult {
  RVec x;
  double fx = 0.0;
  int iters = 0;
  bool converged = false;
};

/// Derivative-free simplex minimization; deterministic for fixed inputs.
NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             double step, int max_iters, double ftol);

}  // namespace sqz
