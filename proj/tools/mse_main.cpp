#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mse/errors.hpp"
#include "mse/report.hpp"
#include "mse/simgen.hpp"

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out;
};

std::string iso_timestamp() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void write_manifest(const std::string& out_path, const std::string& command,
                    const nlohmann::json& config, std::uint64_t seed,
                    const std::vector<std::string>& inputs) {
  nlohmann::json m;
  m["command"] = command;
  m["config"] = config;
  m["seed"] = seed;
  m["version"] = kVersion;
  m["timestamp"] = iso_timestamp();
  m["input_digests"] = nlohmann::json::object();
  for (const auto& p : inputs) m["input_digests"][p] = mse::file_digest(p);
  std::ofstream f(out_path + ".manifest.json");
  f << m.dump(2) << "\n";
}

void write_or_print(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!f) throw mse::ParseError("cannot write " + out);
    f << text;
  }
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

mse::PopulationSpec resolve_population(const std::string& pop,
                                       std::int64_t n) {
  if (pop.size() > 5 && pop.substr(pop.size() - 5) == ".json") {
    mse::PopulationSpec spec = mse::load_population_spec(pop);
    if (n > 0) spec.N = n;
    return spec;
  }
  return mse::preset_population(pop, n);
}

int run_estimate(const std::string& input, const std::string& format,
                 const std::string& dataset, const std::string& methods_arg,
                 int bootstrap_b, bool parametric_boot, int K, int max_iter,
                 const std::string& pcond, bool add_half,
                 const CommonOpts& common) {
  mse::TrsTable table;
  std::vector<std::string> input_files;
  if (!dataset.empty()) {
    table = mse::builtin_dataset(dataset);
  } else if (!input.empty()) {
    table = mse::load_table(input, format == "csv" ? mse::TableFormat::csv
                                                   : mse::TableFormat::json);
    input_files.push_back(input);
  } else {
    std::cerr << "estimate: need --input or --dataset\n";
    return 1;
  }

  mse::MethodConfig cfg;
  cfg.thbm.K = K;
  cfg.thbm.max_iter = max_iter;
  cfg.thbm.seed = common.seed;
  cfg.thbm.pcond =
      pcond == "posterior" ? mse::PCond::posterior : mse::PCond::plugin;
  cfg.mtb = {};
  cfg.add_half = add_half;

  std::vector<mse::Method> methods;
  if (methods_arg == "all") {
    methods = mse::all_methods();
  } else {
    for (const auto& name : split_csv_list(methods_arg)) {
      methods.push_back(mse::method_from_string(name));
    }
  }

  nlohmann::json out;
  out["label"] = table.label;
  out["x0"] = table.x0();
  out["results"] = nlohmann::json::array();
  bool any_feasible = false;
  bool any_result = false;
  for (const auto method : methods) {
    nlohmann::json entry;
    try {
      mse::EstimateResult est = mse::run_method(method, table, cfg);
      if (bootstrap_b > 0) {
        mse::BootstrapConfig bc;
        bc.B = bootstrap_b;
        bc.seed = common.seed;
        bc.parametric = parametric_boot;
        mse::MethodConfig boot_cfg = cfg;
        boot_cfg.thbm.K = std::min(cfg.thbm.K, 200);
        boot_cfg.thbm.max_iter = std::min(cfg.thbm.max_iter, 100);
        const mse::BootstrapReport boot = mse::bootstrap(
            table,
            [method, &boot_cfg](const mse::TrsTable& t, std::uint64_t stream) {
              return mse::run_method(method, t, boot_cfg, stream);
            },
            bc);
        est.ci_lower = boot.ci.lower;
        est.ci_upper = boot.ci.upper;
        entry["bootstrap"] = mse::to_json(boot);
      }
      entry["estimate"] = mse::to_json(est);
      any_result = true;
      any_feasible = any_feasible || est.feasible;
    } catch (const mse::Error& e) {
      entry["error"] = e.what();
      entry["method"] = mse::to_string(method);
    }
    out["results"].push_back(entry);
  }

  write_or_print(common.out, out.dump(2) + "\n");
  if (!common.out.empty()) {
    nlohmann::json config = {{"input", input},         {"dataset", dataset},
                             {"methods", methods_arg}, {"bootstrap", bootstrap_b},
                             {"K", K},                 {"pcond", pcond},
                             {"add_half", add_half}};
    write_manifest(common.out, "estimate", config, common.seed, input_files);
  }
  if (!any_result) return 1;
  return any_feasible ? 0 : 2;
}

int run_simulate(const std::string& pop, std::int64_t n, int reps,
                 bool s_literal, const std::string& format,
                 const CommonOpts& common) {
  const mse::PopulationSpec spec = resolve_population(pop, n);
  mse::ScenarioConfig sc;
  sc.literal_additive = s_literal;
  const auto results = mse::generate_batch(spec, reps, common.seed, sc);

  fs::create_directories(common.out);
  nlohmann::json truth;
  truth["population"] = spec.name;
  truth["N"] = spec.N;
  truth["replications"] = reps;
  truth["tables"] = nlohmann::json::array();
  const mse::TableFormat fmt =
      format == "csv" ? mse::TableFormat::csv : mse::TableFormat::json;
  const std::string ext = format == "csv" ? ".csv" : ".json";
  for (std::size_t r = 0; r < results.size(); ++r) {
    std::ostringstream name;
    name << "table_" << std::setw(4) << std::setfill('0') << r << ext;
    const std::string path = (fs::path(common.out) / name.str()).string();
    mse::save_table(results[r].table, path, fmt);
    truth["tables"].push_back({{"file", name.str()},
                               {"x0", results[r].table.x0()},
                               {"x000", results[r].x000}});
  }
  const std::string truth_path =
      (fs::path(common.out) / "truth.json").string();
  std::ofstream tf(truth_path);
  tf << truth.dump(2) << "\n";

  nlohmann::json config = {{"pop", pop},
                           {"n", n},
                           {"reps", reps},
                           {"s_literal", s_literal},
                           {"format", format}};
  write_manifest((fs::path(common.out) / "run").string(), "simulate", config,
                 common.seed, {});
  return 0;
}

int run_benchmark(const std::string& pop, std::int64_t n, int reps,
                  const std::string& methods_arg, int bootstrap_b, int K,
                  bool s_literal, const CommonOpts& common) {
  const mse::PopulationSpec spec = resolve_population(pop, n);
  std::vector<mse::Method> methods;
  if (methods_arg == "all") {
    methods = mse::all_methods();
  } else {
    for (const auto& name : split_csv_list(methods_arg)) {
      methods.push_back(mse::method_from_string(name));
    }
  }
  mse::BenchmarkConfig cfg;
  cfg.replications = reps;
  cfg.bootstrap_B = bootstrap_b;
  cfg.seed = common.seed;
  cfg.methods.thbm.K = K;
  cfg.methods.thbm.seed = common.seed;
  cfg.bootstrap_methods.thbm.seed = common.seed;
  cfg.scenario.literal_additive = s_literal;

  const mse::BenchmarkReport report = mse::benchmark(spec, methods, cfg);
  const std::string csv = mse::benchmark_to_csv(report);
  write_or_print(common.out, csv);
  if (!common.out.empty()) {
    std::ofstream jf(common.out + ".json");
    jf << mse::to_json(report).dump(2) << "\n";
    nlohmann::json config = {{"pop", pop},       {"n", n},
                             {"reps", reps},     {"methods", methods_arg},
                             {"bootstrap", bootstrap_b}, {"K", K}};
    write_manifest(common.out, "benchmark", config, common.seed, {});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Population size estimation from triple record system data"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CommonOpts common;

  // estimate
  auto* est = app.add_subcommand("estimate", "Estimate population size");
  std::string input, format = "json", dataset, methods = "all", pcond = "plugin";
  int bootstrap_b = 0, K = 1000, max_iter = 500;
  bool parametric_boot = false, add_half = false;
  est->add_option("--input", input, "Table file (JSON or CSV)");
  est->add_option("--format", format, "Input format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  est->add_option("--dataset", dataset,
                  "Bundled dataset: als_all|als_deployed|als_nondeployed|wtc");
  est->add_option("--method", methods, "Comma list or 'all'");
  est->add_option("--bootstrap", bootstrap_b, "Bootstrap replicates (0 = none)");
  est->add_flag("--parametric", parametric_boot, "Parametric bootstrap");
  est->add_option("--K", K, "MCEM samples per E-step");
  est->add_option("--max-iter", max_iter, "MCEM iteration cap");
  est->add_option("--pcond", pcond, "Capture-probability conditional")
      ->check(CLI::IsMember({"plugin", "posterior"}));
  est->add_flag("--add-half", add_half, "Add 0.5 to every cell before log-linear fits");
  est->add_option("--seed", common.seed, "RNG seed")->envname("MSE_SEED");
  est->add_option("--out", common.out, "Output JSON path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate synthetic TRS tables");
  std::string pop;
  std::int64_t n = 0;
  int reps = 1;
  bool s_literal = false;
  std::string sim_format = "json";
  sim->add_option("--pop", pop, "Preset p1..p8|s1..s4 or spec JSON file")
      ->required();
  sim->add_option("--n", n, "True population size");
  sim->add_option("--reps", reps, "Replications");
  sim->add_flag("--s-literal", s_literal,
                "Literal additive recursion in scenarios S1/S2");
  sim->add_option("--format", sim_format, "Table format: json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sim->add_option("--seed", common.seed, "RNG seed")->envname("MSE_SEED");
  sim->add_option("--out", common.out, "Output directory")->required();

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Simulate and compare estimators");
  std::string bench_pop, bench_methods = "all";
  std::int64_t bench_n = 500;
  int bench_reps = 100, bench_b = 200, bench_k = 300;
  bool bench_literal = false;
  bench->add_option("--pop", bench_pop, "Preset or spec JSON file")->required();
  bench->add_option("--n", bench_n, "True population size");
  bench->add_option("--reps", bench_reps, "Replications");
  bench->add_option("--methods", bench_methods, "Comma list or 'all'");
  bench->add_option("--bootstrap", bench_b, "Bootstrap replicates per CI");
  bench->add_option("--K", bench_k, "MCEM samples for point estimates");
  bench->add_flag("--s-literal", bench_literal,
                  "Literal additive recursion in scenarios S1/S2");
  bench->add_option("--seed", common.seed, "RNG seed")->envname("MSE_SEED");
  bench->add_option("--out", common.out, "Output CSV path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (est->parsed()) {
      return run_estimate(input, format, dataset, methods, bootstrap_b,
                          parametric_boot, K, max_iter, pcond, add_half,
                          common);
    }
    if (sim->parsed()) {
      return run_simulate(pop, n, reps, s_literal, sim_format, common);
    }
    if (bench->parsed()) {
      return run_benchmark(bench_pop, bench_n, bench_reps, bench_methods,
                           bench_b, bench_k, bench_literal, common);
    }
  } catch (const mse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
