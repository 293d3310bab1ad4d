#ifndef MSE_ESTIMATORS_HPP
#define MSE_ESTIMATORS_HPP

#include <string>
#include <vector>

#include "mse/mtb.hpp"
#include "mse/thbm.hpp"
#include "mse/trs.hpp"

namespace mse {

enum class Method { THBM, IM, LLM, QSM, PQSM, SC, MTB };

std::string to_string(Method method);
Method method_from_string(const std::string& name);
std::vector<Method> all_methods();

struct MethodConfig {
  ThbmConfig thbm;
  MtbConfig mtb;
  bool add_half = false;  // continuity correction for the log-linear fits
};

/// Runs one estimator. `stream` offsets the RNG stream of stochastic
/// methods so bootstrap and benchmark replicates stay independent;
/// deterministic methods ignore it.
EstimateResult run_method(Method method, const TrsTable& table,
                          const MethodConfig& config = {},
                          std::uint64_t stream = 0);

}  // namespace mse

#endif
