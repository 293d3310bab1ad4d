#include "mse/estimators.hpp"

#include "mse/errors.hpp"
#include "mse/loglinear.hpp"
#include "mse/sample_coverage.hpp"

namespace mse {

std::string to_string(Method method) {
  switch (method) {
    case Method::THBM: return "THBM";
    case Method::IM: return "IM";
    case Method::LLM: return "LLM";
    case Method::QSM: return "QSM";
    case Method::PQSM: return "PQSM";
    case Method::SC: return "SC";
    case Method::MTB: return "Mtb";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "thbm" || name == "THBM") return Method::THBM;
  if (name == "im" || name == "IM") return Method::IM;
  if (name == "llm" || name == "LLM") return Method::LLM;
  if (name == "qsm" || name == "QSM") return Method::QSM;
  if (name == "pqsm" || name == "PQSM") return Method::PQSM;
  if (name == "sc" || name == "SC") return Method::SC;
  if (name == "mtb" || name == "Mtb" || name == "MTB") return Method::MTB;
  throw UnknownDataset("unknown method: " + name);
}

std::vector<Method> all_methods() {
  return {Method::THBM, Method::IM,  Method::LLM, Method::QSM,
          Method::PQSM, Method::SC,  Method::MTB};
}

EstimateResult run_method(Method method, const TrsTable& table,
                          const MethodConfig& config, std::uint64_t stream) {
  switch (method) {
    case Method::THBM: {
      ThbmConfig c = config.thbm;
      c.stream += stream;
      return estimate_thbm(table, c);
    }
    case Method::IM:
      return estimate_loglinear(table, LoglinModel::IM, config.add_half);
    case Method::LLM:
      return estimate_loglinear(table, LoglinModel::LLM, config.add_half);
    case Method::QSM:
      return estimate_loglinear(table, LoglinModel::QSM, config.add_half);
    case Method::PQSM:
      return estimate_loglinear(table, LoglinModel::PQSM, config.add_half);
    case Method::SC:
      return estimate_sc(table);
    case Method::MTB:
      return estimate_mtb(table, config.mtb);
  }
  throw Error("unreachable method");
}

}  // namespace mse
