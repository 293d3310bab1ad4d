#ifndef MSE_LOGLINEAR_HPP
#define MSE_LOGLINEAR_HPP

#include <array>
#include <string>
#include <vector>

#include "mse/trs.hpp"

namespace mse {

enum class LoglinModel { IM, LLM, QSM, PQSM };

std::string to_string(LoglinModel model);
LoglinModel loglin_model_from_string(const std::string& name);

/// Design over the seven observed cells. The first column is always the
/// intercept, and every other column vanishes at (0,0,0), so exp(intercept)
/// extrapolates the unobserved cell mean.
struct DesignSpec {
  std::string name;
  std::vector<std::array<double, 7>> columns;  // column-major over the cells
};

DesignSpec build_design(LoglinModel model);

struct GlmFit {
  std::vector<double> coefficients;
  std::array<double, 7> fitted{};  // means, cell order as TrsTable
  double deviance{};
  bool converged{};
  int iterations{};
  bool boundary{};  // some coefficient diverged (zero-cell separation)
};

/// Poisson log-link MLE over the seven observed cells.
GlmFit irls_fit(const TrsTable& table, const DesignSpec& design,
                bool add_half = false);

EstimateResult estimate_loglinear(const TrsTable& table, LoglinModel model,
                                  bool add_half = false);

}  // namespace mse

#endif
