#ifndef MSE_SAMPLE_COVERAGE_HPP
#define MSE_SAMPLE_COVERAGE_HPP

#include "mse/trs.hpp"

namespace mse {

/// Chao-Tsay sample coverage estimator. Infeasible estimates (n_hat < x0)
/// are returned with feasible = false, never clamped.
EstimateResult estimate_sc(const TrsTable& table);

}  // namespace mse

#endif
