#ifndef MSE_REPORT_HPP
#define MSE_REPORT_HPP

#include <optional>
#include <string>

#include "json.hpp"
#include "mse/trs.hpp"
#include "mse/uncertainty.hpp"

namespace mse {

nlohmann::json to_json(const EstimateResult& result);
nlohmann::json to_json(const BootstrapReport& report);
nlohmann::json to_json(const BenchmarkReport& report);

/// FNV-1a digest of a file's bytes, hex encoded; used for run manifests.
std::string file_digest(const std::string& path);

}  // namespace mse

#endif
