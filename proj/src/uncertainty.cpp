#include "mse/uncertainty.hpp"

#include <cmath>
#include <sstream>

#include "mse/errors.hpp"
#include "mse/rng.hpp"

namespace mse {

ChaoCi chao_ci(double n_hat, std::int64_t x0, double sigma_hat) {
  if (sigma_hat < 0.0) throw DomainError("chao_ci: negative sigma");
  ChaoCi ci;
  if (!(n_hat > double(x0))) {
    ci.lower = ci.upper = double(x0);
    ci.boundary = true;
    return ci;
  }
  const double excess = n_hat - double(x0);
  const double c =
      std::exp(1.96 * std::sqrt(std::log(1.0 + sigma_hat * sigma_hat /
                                                   (excess * excess))));
  ci.lower = double(x0) + excess / c;
  ci.upper = double(x0) + excess * c;
  return ci;
}

namespace {

TrsTable resample_nonparametric(const TrsTable& t, RngStream& rng) {
  const auto cells = t.cells();
  const double x0 = double(t.x0());
  std::array<double, 7> probs{};
  for (int c = 0; c < 7; ++c) probs[std::size_t(c)] = double(cells[std::size_t(c)]) / x0;
  const auto draw = sample_multinomial(t.x0(), probs, rng);
  return validate_table({draw[0], draw[1], draw[2], draw[3], draw[4], draw[5],
                         draw[6]},
                        t.label);
}

TrsTable resample_parametric(const TrsTable& t, double n_hat, RngStream& rng) {
  const auto cells = t.cells();
  const std::int64_t trials = std::llround(std::max(n_hat, double(t.x0())));
  std::array<double, 8> probs{};
  for (int c = 0; c < 7; ++c) {
    probs[std::size_t(c)] = double(cells[std::size_t(c)]) / double(trials);
  }
  probs[7] = std::max(0.0, 1.0 - (double(t.x0()) / double(trials)));
  const auto draw = sample_multinomial(trials, probs, rng);
  return validate_table({draw[0], draw[1], draw[2], draw[3], draw[4], draw[5],
                         draw[6]},
                        t.label);  // 000 draw dropped
}

}  // namespace

BootstrapReport bootstrap(const TrsTable& table, const EstimatorFn& estimator,
                          const BootstrapConfig& config) {
  if (config.B < 1) throw DomainError("bootstrap: B must be >= 1");
  const EstimateResult point = estimator(table, 0);

  BootstrapReport report;
  report.B = config.B;
  report.replicate_estimates.reserve(std::size_t(config.B));
  for (int b = 1; b <= config.B; ++b) {
    RngStream rng(config.seed, std::uint64_t(b));
    try {
      const TrsTable sample =
          config.parametric ? resample_parametric(table, point.n_hat, rng)
                            : resample_nonparametric(table, rng);
      const EstimateResult est = estimator(sample, std::uint64_t(b));
      if (!est.feasible) {
        ++report.failures;
        continue;
      }
      report.replicate_estimates.push_back(est.n_hat);
    } catch (const Error&) {
      ++report.failures;
    }
  }
  if (report.failures * 2 > config.B) {
    throw TooManyFailures("bootstrap: " + std::to_string(report.failures) +
                          " of " + std::to_string(config.B) +
                          " replicates failed");
  }
  const auto& v = report.replicate_estimates;
  if (v.size() >= 2) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= double(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    report.sigma_hat = std::sqrt(ss / double(v.size() - 1));
  }
  report.ci = chao_ci(point.n_hat, table.x0(), report.sigma_hat);
  return report;
}

BenchmarkConfig::BenchmarkConfig() {
  // stochastic estimators run with trimmed budgets inside the bootstrap
  bootstrap_methods.thbm.K = 200;
  bootstrap_methods.thbm.max_iter = 100;
  bootstrap_methods.mtb.starts = 2;
  bootstrap_methods.mtb.max_iter = 1500;
}

BenchmarkReport benchmark(const PopulationSpec& spec,
                          const std::vector<Method>& methods,
                          const BenchmarkConfig& config) {
  if (config.replications < 1) throw DomainError("benchmark: R must be >= 1");
  BenchmarkReport report;
  report.true_n = spec.N;
  report.replications = config.replications;

  struct Tally {
    double abs_err_sum = 0.0;
    int successes = 0;
    int infeasible = 0;
    int failures = 0;
    int covered = 0;
    double lci_sum = 0.0;
    int ci_count = 0;
  };
  std::vector<Tally> tally(methods.size());

  for (int r = 0; r < config.replications; ++r) {
    RngStream gen_rng(config.seed, std::uint64_t(r));
    const SimResult sim = generate(spec, gen_rng, config.scenario);
    for (std::size_t m = 0; m < methods.size(); ++m) {
      const Method method = methods[m];
      Tally& t = tally[m];
      const std::uint64_t base_stream =
          (std::uint64_t(r) + 1) * 1000000ULL + std::uint64_t(m) * 10000ULL;
      try {
        const EstimateResult est =
            run_method(method, sim.table, config.methods, base_stream);
        ++t.successes;
        t.abs_err_sum += std::abs(est.n_hat - double(spec.N)) / double(spec.N);
        if (!est.feasible) {
          ++t.infeasible;
          continue;  // excluded from CP/LCI
        }
        BootstrapConfig bc;
        bc.B = config.bootstrap_B;
        bc.seed = config.seed + 7919ULL * (std::uint64_t(r) + 1) +
                  131ULL * std::uint64_t(m);
        const MethodConfig& boot_cfg = config.bootstrap_methods;
        const BootstrapReport boot = bootstrap(
            sim.table,
            [&method, &boot_cfg, base_stream](const TrsTable& tb,
                                              std::uint64_t stream) {
              return run_method(method, tb, boot_cfg, base_stream + stream);
            },
            bc);
        const ChaoCi& ci = boot.ci;
        if (ci.lower <= double(spec.N) && double(spec.N) <= ci.upper) {
          ++t.covered;
        }
        t.lci_sum += (ci.upper - ci.lower) / double(spec.N);
        ++t.ci_count;
      } catch (const Error&) {
        ++t.failures;
      }
    }
  }

  for (std::size_t m = 0; m < methods.size(); ++m) {
    const Tally& t = tally[m];
    MethodBenchmark row;
    row.method = to_string(methods[m]);
    row.replicates = t.successes;
    row.failures = t.failures;
    row.rmae = t.successes > 0 ? t.abs_err_sum / double(t.successes) : 0.0;
    row.cp = t.ci_count > 0 ? double(t.covered) / double(t.ci_count) : 0.0;
    row.mean_lci = t.ci_count > 0 ? t.lci_sum / double(t.ci_count) : 0.0;
    row.infeasible_rate =
        t.successes > 0 ? double(t.infeasible) / double(t.successes) : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

std::string benchmark_to_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "method,RMAE,CP,LCI,infeasible_rate\n";
  out.precision(6);
  for (const auto& row : report.rows) {
    out << row.method << "," << row.rmae << "," << row.cp << ","
        << row.mean_lci << "," << row.infeasible_rate << "\n";
  }
  return out.str();
}

double aacir(double cases, double years, double persons_at_risk) {
  if (!(years > 0.0) || !(persons_at_risk > 0.0)) {
    throw ZeroDenominator("aacir needs positive years and persons at risk");
  }
  return cases / (years * persons_at_risk) * 1e5;
}

}  // namespace mse
