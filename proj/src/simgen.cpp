#include "mse/simgen.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mse/errors.hpp"

namespace mse {

namespace {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double draw_b(const HeterogeneitySpec& spec, RngStream& rng) {
  return std::visit(
      [&rng](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NormalB>) {
          return sample_normal(s.mu, s.sd, rng);
        } else if constexpr (std::is_same_v<T, Gl1B>) {
          return sample_gl1(s.eta, rng);
        } else {
          return s.value;
        }
      },
      spec);
}

// regime index: 0..3 the copy regimes, 4 independent
int draw_regime(const DependenceAlpha& a, RngStream& rng) {
  const double u = rng.uniform();
  double acc = a.a1;
  if (u < acc) return 0;
  acc += a.a2;
  if (u < acc) return 1;
  acc += a.a3;
  if (u < acc) return 2;
  acc += a.a4;
  if (u < acc) return 3;
  return 4;
}

std::array<int, 3> apply_regime(int regime, int x1, int x2, int x3) {
  switch (regime) {
    case 0: return {x1, x1, x3};
    case 1: return {x1, x2, x2};
    case 2: return {x1, x2, x1};
    case 3: return {x1, x1, x1};
    default: return {x1, x2, x3};
  }
}

struct CellTally {
  std::array<std::int64_t, 8> counts{};  // index 4*z1 + 2*z2 + z3

  void add(const std::array<int, 3>& z) {
    ++counts[std::size_t(4 * z[0] + 2 * z[1] + z[2])];
  }

  SimResult finish(const PopulationSpec& truth, const RegimeTally& regimes,
                   const std::string& label) const {
    SimResult r;
    r.table = validate_table({counts[7], counts[6], counts[5], counts[3],
                              counts[4], counts[2], counts[1]},
                             label);
    r.truth = truth;
    r.x000 = counts[0];
    r.regimes = regimes;
    return r;
  }
};

}  // namespace

SimResult generate_thbm(const PopulationSpec& spec, RngStream& rng) {
  if (spec.scenario) throw DomainError("spec is a scenario, not a THBM population");
  if (spec.N < 1) throw DomainError("population size must be >= 1");
  CellTally tally;
  RegimeTally regimes;
  for (std::int64_t h = 0; h < spec.N; ++h) {
    int x[3];
    for (int l = 0; l < 3; ++l) {
      const double p = logistic(draw_b(spec.b[std::size_t(l)], rng));
      x[l] = rng.uniform() < p ? 1 : 0;
    }
    const int r = draw_regime(spec.alpha, rng);
    ++regimes.counts[std::size_t(r)];
    tally.add(apply_regime(r, x[0], x[1], x[2]));
  }
  return tally.finish(spec, regimes, spec.name);
}

SimResult generate_scenario(Scenario tag, std::int64_t N, RngStream& rng,
                            const ScenarioConfig& config) {
  if (N < 1) throw DomainError("population size must be >= 1");
  PopulationSpec truth;
  truth.N = N;
  truth.scenario = tag;
  truth.name = scenario_name(tag);

  CellTally tally;
  RegimeTally regimes;

  if (tag == Scenario::S1 || tag == Scenario::S2) {
    const DependenceAlpha alpha{0.1, 0.1, 0.1, 0.1};
    truth.alpha = alpha;
    const double beta_b = tag == Scenario::S1 ? 2.0 : 4.0;
    for (std::int64_t h = 0; h < N; ++h) {
      const int r = draw_regime(alpha, rng);
      ++regimes.counts[std::size_t(r)];
      double p = sample_beta(2.0, beta_b, rng);
      // sequential: the capture realized so far drives the next probability
      int x[3] = {0, 0, 0};
      std::array<int, 3> z{};
      for (int l = 0; l < 3; ++l) {
        if (l > 0) {
          if (z[std::size_t(l - 1)] == 1) {
            p = config.literal_additive ? 0.99 : std::min(1.2 * p, 0.99);
          }
        }
        x[l] = rng.uniform() < p ? 1 : 0;
        const auto full = apply_regime(r, x[0], x[1], x[2]);
        z[std::size_t(l)] = full[std::size_t(l)];
      }
      tally.add(z);
    }
  } else {
    const std::array<double, 3> s = tag == Scenario::S3
                                        ? std::array<double, 3>{-1.0, 0.0, 1.0}
                                        : std::array<double, 3>{1.0, 0.5, 0.1};
    for (std::int64_t h = 0; h < N; ++h) {
      const double v = sample_normal(0.0, 1.0, rng);
      std::array<int, 3> z{};
      for (int l = 0; l < 3; ++l) {
        z[std::size_t(l)] =
            rng.uniform() < logistic(v + s[std::size_t(l)]) ? 1 : 0;
      }
      ++regimes.counts[4];
      tally.add(z);
    }
  }
  return tally.finish(truth, regimes, truth.name);
}

SimResult generate(const PopulationSpec& spec, RngStream& rng,
                   const ScenarioConfig& config) {
  if (spec.scenario) {
    return generate_scenario(*spec.scenario, spec.N, rng, config);
  }
  return generate_thbm(spec, rng);
}

std::vector<SimResult> generate_batch(const PopulationSpec& spec,
                                      int replications, std::uint64_t base_seed,
                                      const ScenarioConfig& config) {
  if (replications < 1) throw DomainError("replications must be >= 1");
  std::vector<SimResult> out;
  out.reserve(std::size_t(replications));
  for (int r = 0; r < replications; ++r) {
    RngStream rng(base_seed, std::uint64_t(r));
    out.push_back(generate(spec, rng, config));
    out.back().table.label += "_rep" + std::to_string(r);
  }
  return out;
}

std::string scenario_name(Scenario tag) {
  switch (tag) {
    case Scenario::S1: return "s1";
    case Scenario::S2: return "s2";
    case Scenario::S3: return "s3";
    case Scenario::S4: return "s4";
  }
  return "?";
}

PopulationSpec preset_population(const std::string& name, std::int64_t n) {
  PopulationSpec spec;
  spec.N = n;
  spec.name = name;
  const DependenceAlpha a_even{0.30, 0.30, 0.15, 0.10};
  const DependenceAlpha a_skew{0.25, 0.15, 0.35, 0.10};
  const std::array<HeterogeneitySpec, 3> norm_wide = {
      NormalB{1.0, 5.0}, NormalB{0.5, 5.0}, NormalB{0.0, 5.0}};
  const std::array<HeterogeneitySpec, 3> norm_tight = {
      NormalB{0.5, 1.0}, NormalB{0.4, 1.0}, NormalB{0.3, 1.0}};
  const std::array<HeterogeneitySpec, 3> gl_up = {Gl1B{1.0}, Gl1B{1.4},
                                                  Gl1B{1.8}};
  const std::array<HeterogeneitySpec, 3> gl_down = {Gl1B{1.6}, Gl1B{1.2},
                                                    Gl1B{0.8}};

  if (name == "p1") { spec.alpha = a_even; spec.b = norm_wide; return spec; }
  if (name == "p2") { spec.alpha = a_even; spec.b = norm_tight; return spec; }
  if (name == "p3") { spec.alpha = a_skew; spec.b = norm_wide; return spec; }
  if (name == "p4") { spec.alpha = a_skew; spec.b = norm_tight; return spec; }
  if (name == "p5") { spec.alpha = a_even; spec.b = gl_up; return spec; }
  if (name == "p6") { spec.alpha = a_even; spec.b = gl_down; return spec; }
  if (name == "p7") { spec.alpha = a_skew; spec.b = gl_up; return spec; }
  if (name == "p8") { spec.alpha = a_skew; spec.b = gl_down; return spec; }
  if (name == "s1") { spec.scenario = Scenario::S1; return spec; }
  if (name == "s2") { spec.scenario = Scenario::S2; return spec; }
  if (name == "s3") { spec.scenario = Scenario::S3; return spec; }
  if (name == "s4") { spec.scenario = Scenario::S4; return spec; }
  throw UnknownDataset("unknown population preset: " + name);
}

PopulationSpec parse_population_spec(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid population spec: ") + e.what());
  }
  PopulationSpec spec;
  if (!j.contains("N") || !j.at("N").is_number_integer()) {
    throw ParseError("population spec needs integer field N");
  }
  spec.N = j.at("N").get<std::int64_t>();
  if (j.contains("name")) spec.name = j.at("name").get<std::string>();

  if (j.contains("scenario")) {
    const std::string tag = j.at("scenario").get<std::string>();
    if (tag == "S1" || tag == "s1") spec.scenario = Scenario::S1;
    else if (tag == "S2" || tag == "s2") spec.scenario = Scenario::S2;
    else if (tag == "S3" || tag == "s3") spec.scenario = Scenario::S3;
    else if (tag == "S4" || tag == "s4") spec.scenario = Scenario::S4;
    else throw ParseError("unknown scenario tag: " + tag);
    if (spec.name.empty()) spec.name = scenario_name(*spec.scenario);
    return spec;
  }

  if (!j.contains("alpha") || !j.at("alpha").is_array() ||
      j.at("alpha").size() != 4) {
    throw ParseError("population spec needs alpha as a 4-element array");
  }
  spec.alpha = {j["alpha"][0].get<double>(), j["alpha"][1].get<double>(),
                j["alpha"][2].get<double>(), j["alpha"][3].get<double>()};
  if (spec.alpha.a1 < 0 || spec.alpha.a2 < 0 || spec.alpha.a3 < 0 ||
      spec.alpha.a4 < 0 || spec.alpha.a0() > 1.0 + 1e-12) {
    throw ParseError("alpha weights must be non-negative with sum <= 1");
  }
  if (!j.contains("b") || !j.at("b").is_array() || j.at("b").size() != 3) {
    throw ParseError("population spec needs b as a 3-element array");
  }
  for (int l = 0; l < 3; ++l) {
    const auto& e = j["b"][std::size_t(l)];
    const std::string dist = e.at("dist").get<std::string>();
    if (dist == "normal") {
      spec.b[std::size_t(l)] =
          NormalB{e.at("mu").get<double>(), e.at("sd").get<double>()};
    } else if (dist == "gl1") {
      spec.b[std::size_t(l)] = Gl1B{e.at("eta").get<double>()};
    } else if (dist == "fixed") {
      spec.b[std::size_t(l)] = FixedB{e.at("value").get<double>()};
    } else {
      throw ParseError("unknown heterogeneity dist: " + dist);
    }
  }
  return spec;
}

PopulationSpec load_population_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_population_spec(buf.str());
}

}  // namespace mse
