#ifndef MSE_UNCERTAINTY_HPP
#define MSE_UNCERTAINTY_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mse/estimators.hpp"
#include "mse/simgen.hpp"
#include "mse/trs.hpp"

namespace mse {

struct ChaoCi {
  double lower{};
  double upper{};
  bool boundary{};  // n_hat <= x0, interval degenerate at x0
};

/// Log-transform confidence interval for the population size.
ChaoCi chao_ci(double n_hat, std::int64_t x0, double sigma_hat);

struct BootstrapConfig {
  int B = 1000;
  std::uint64_t seed = 0;
  bool parametric = false;
};

struct BootstrapReport {
  int B{};
  double sigma_hat{};
  ChaoCi ci;
  std::vector<double> replicate_estimates;
  int failures{};  // errored or infeasible replicates
};

/// Estimator hook: table plus an RNG stream offset for stochastic methods.
using EstimatorFn =
    std::function<EstimateResult(const TrsTable&, std::uint64_t stream)>;

BootstrapReport bootstrap(const TrsTable& table, const EstimatorFn& estimator,
                          const BootstrapConfig& config = {});

struct BenchmarkConfig {
  int replications = 100;
  int bootstrap_B = 200;
  std::uint64_t seed = 0;
  MethodConfig methods;       // point-estimate configuration
  MethodConfig bootstrap_methods;  // reduced configuration inside bootstrap
  ScenarioConfig scenario;

  BenchmarkConfig();
};

struct MethodBenchmark {
  std::string method;
  double rmae{};
  double cp{};
  double mean_lci{};       // mean CI length relative to true N
  int replicates{};        // successful estimates
  double infeasible_rate{};
  int failures{};
};

struct BenchmarkReport {
  std::vector<MethodBenchmark> rows;
  std::int64_t true_n{};
  int replications{};
};

BenchmarkReport benchmark(const PopulationSpec& spec,
                          const std::vector<Method>& methods,
                          const BenchmarkConfig& config = {});

std::string benchmark_to_csv(const BenchmarkReport& report);

/// Average annual cumulative incidence rate per 100,000 person-years.
double aacir(double cases, double years, double persons_at_risk);

}  // namespace mse

#endif
