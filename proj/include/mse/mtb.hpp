#ifndef MSE_MTB_HPP
#define MSE_MTB_HPP

#include <cstdint>

#include "mse/trs.hpp"

namespace mse {

/// Sufficient statistics of the time-behavioral-response model.
struct MtbStats {
  std::int64_t u1{}, u2{}, u3{};  // first captures per list
  std::int64_t m2{}, m3{};        // recaptures in lists 2 and 3
  std::int64_t M2{}, M3{}, M4{};  // distinct captures before each attempt
  std::int64_t x0{};
};

struct MtbParams {
  double N{};                  // >= x0
  double f1{}, f2{}, f3{};     // first-capture probabilities in (0,1)
  double phi{};                // recapture/first-capture ratio, phi*f_l < 1
};

struct MtbConfig {
  int starts = 5;
  int max_iter = 4000;
  double ftol = 1e-11;
};

MtbStats mtb_stats(const TrsTable& table);

double mtb_loglik(const MtbParams& params, const MtbStats& stats);

EstimateResult estimate_mtb(const TrsTable& table,
                            const MtbConfig& config = {});

}  // namespace mse

#endif
