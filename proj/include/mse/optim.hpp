#ifndef MSE_OPTIM_HPP
#define MSE_OPTIM_HPP

#include <functional>
#include <vector>

namespace mse {

struct SimplexResult {
  std::vector<double> x;
  double fval{};
  int iterations{};
  bool converged{};
};

/// Derivative-free Nelder-Mead minimization. The objective may return +inf
/// to reject a point.
SimplexResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& fn,
    const std::vector<double>& start, double step = 0.5, int max_iter = 2000,
    double ftol = 1e-10);

}  // namespace mse

#endif
