#include "sqz/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sqz {

double ray_crossing(const std::function<double(double)>& f, double t_init, double t_max,
                    int bisect_iters) {
  double lo = 0.0;
  double hi = t_init;
  double fhi = f(hi);
  while (!(fhi >= 0.0) && hi < t_max) {
    lo = hi;
    hi *= 2.0;
    fhi = f(hi);
  }
  if (!(fhi >= 0.0)) return -1.0;
  for (int i = 0; i < bisect_iters && hi - lo > 1e-16 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) >= 0.0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

NelderMeadResult nelder_mead(const std::function<double(const RVec&)>& f, const RVec& x0,
                             double step, int max_iters, double ftol) {
  const int n = int(x0.size());
  std::vector<RVec> pts(n + 1, x0);
  std::vector<double> vals(n + 1);
  for (int i = 1; i <= n; ++i) pts[i][i - 1] += step;
  for (int i = 0; i <= n; ++i) vals[i] = f(pts[i]);

  std::vector<int> order(n + 1);
  NelderMeadResult res;
  for (res.iters = 0; res.iters < max_iters; ++res.iters) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    const int best = order[0], worst = order[n], second = order[n - 1];
    if (std::abs(vals[worst] - vals[best]) <= ftol * (std::abs(vals[best]) + ftol)) {
      res.converged = true;
      break;
    }
    RVec centroid = RVec::Zero(n);
    for (int i = 0; i <= n; ++i)
      if (i != worst) centroid += pts[i];
    centroid /= double(n);

    const RVec refl = centroid + (centroid - pts[worst]);
    const double frefl = f(refl);
    if (frefl < vals[best]) {
      const RVec expd = centroid + 2.0 * (centroid - pts[worst]);
      const double fexpd = f(expd);
      if (fexpd < frefl) {
        pts[worst] = expd;
        vals[worst] = fexpd;
      } else {
        pts[worst] = refl;
        vals[worst] = frefl;
      }
    } else if (frefl < vals[second]) {
      pts[worst] = refl;
      vals[worst] = frefl;
    } else {
      const RVec contr = centroid + 0.5 * (pts[worst] - centroid);
      const double fcontr = f(contr);
      if (fcontr < vals[worst]) {
        pts[worst] = contr;
        vals[worst] = fcontr;
      } else {
        for (int i = 0; i <= n; ++i) {
          if (i == best) continue;
          pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  int bi = 0;
  for (int i = 1; i <= n; ++i)
    if (vals[i] < vals[bi]) bi = i;
  res.x = pts[bi];
  res.fx = vals[bi];
  return res;
}

}  // namespace sqz
