#include "mse/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mse {

SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& start, double step, int max_iter, double ftol) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> pts(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += step;
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = fn(pts[i]);

  std::vector<std::size_t> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };

  SimplexResult res;
  int iter = 0;
  for (; iter < max_iter; ++iter) {
    sort_simplex();
    const std::size_t best = order[0], worst = order[n], second = order[n - 1];
    if (std::abs(fv[worst] - fv[best]) <=
        ftol * (std::abs(fv[best]) + std::abs(fv[worst]) + 1e-30)) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d] / double(n);
    }
    auto blend = [&](double coef) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) {
        p[d] = centroid[d] + coef * (pts[worst][d] - centroid[d]);
      }
      return p;
    };

    auto reflect = blend(-1.0);
    double fr = fn(reflect);
    if (fr < fv[best]) {
      auto expand = blend(-2.0);
      double fe = fn(expand);
      if (fe < fr) {
        pts[worst] = std::move(expand);
        fv[worst] = fe;
      } else {
        pts[worst] = std::move(reflect);
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      pts[worst] = std::move(reflect);
      fv[worst] = fr;
    } else {
      auto contract = blend(fr < fv[worst] ? -0.5 : 0.5);
      double fc = fn(contract);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = std::move(contract);
        fv[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t d = 0; d < n; ++d) {
            pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
          }
          fv[i] = fn(pts[i]);
        }
      }
    }
  }
  sort_simplex();
  res.x = pts[order[0]];
  res.fval = fv[order[0]];
  res.iterations = iter;
  return res;
}

}  // namespace mse
