#include "mse/report.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mse/errors.hpp"

namespace mse {

nlohmann::json to_json(const EstimateResult& r) {
  nlohmann::json j;
  j["method"] = r.method;
  j["n_hat"] = r.n_hat;
  if (r.ci_lower && r.ci_upper) {
    j["ci"] = {*r.ci_lower, *r.ci_upper};
  }
  j["feasible"] = r.feasible;
  if (!r.label.empty()) j["label"] = r.label;
  j["diagnostics"] = nlohmann::json::object();
  for (const auto& [k, v] : r.diagnostics) j["diagnostics"][k] = v;
  return j;
}

nlohmann::json to_json(const BootstrapReport& b) {
  nlohmann::json j;
  j["B"] = b.B;
  j["sigma_hat"] = b.sigma_hat;
  j["ci"] = {b.ci.lower, b.ci.upper};
  j["ci_boundary"] = b.ci.boundary;
  j["failures"] = b.failures;
  return j;
}

nlohmann::json to_json(const BenchmarkReport& report) {
  nlohmann::json j;
  j["true_n"] = report.true_n;
  j["replications"] = report.replications;
  j["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r;
    r["method"] = row.method;
    r["RMAE"] = row.rmae;
    r["CP"] = row.cp;
    r["LCI"] = row.mean_lci;
    r["infeasible_rate"] = row.infeasible_rate;
    r["replicates"] = row.replicates;
    r["failures"] = row.failures;
    j["rows"].push_back(r);
  }
  return j;
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::uint64_t h = 1469598103934665603ULL;
  char c;
  while (in.get(c)) {
    h ^= std::uint8_t(c);
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

}  // namespace mse
