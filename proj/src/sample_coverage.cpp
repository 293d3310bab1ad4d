#include "mse/sample_coverage.hpp"

#include <cmath>

#include "mse/errors.hpp"

namespace mse {

EstimateResult estimate_sc(const TrsTable& t) {
  const double n1 = double(t.n1());
  const double n2 = double(t.n2());
  const double n3 = double(t.n3());
  if (n1 <= 0.0 || n2 <= 0.0 || n3 <= 0.0) {
    throw ZeroMargin("sample coverage needs every list margin positive");
  }

  const double coverage =
      1.0 - (double(t.x100) / n1 + double(t.x010) / n2 + double(t.x001) / n3) /
                3.0;

  // pair margins, dot = summed index
  const double x1d0 = double(t.x110 + t.x100);
  const double xd10 = double(t.x110 + t.x010);
  const double x10d = double(t.x101 + t.x100);
  const double xd01 = double(t.x101 + t.x001);
  const double x0d1 = double(t.x011 + t.x001);
  const double x01d = double(t.x011 + t.x010);
  const double x11d = double(t.x111 + t.x110);
  const double x1d1 = double(t.x111 + t.x101);
  const double xd11 = double(t.x111 + t.x011);

  const double pair_sum = (x1d0 + xd10) * x11d / (n1 * n2) +
                          (x10d + xd01) * x1d1 / (n1 * n3) +
                          (x0d1 + x01d) * xd11 / (n2 * n3);
  const double remainder = pair_sum / (3.0 * coverage);

  EstimateResult r;
  r.method = "SC";
  r.label = t.label;
  r.diagnostics["coverage"] = coverage;
  r.diagnostics["remainder"] = remainder;
  if (coverage < 0.55) r.diagnostics["low_coverage_warning"] = 1.0;

  const double lead = (xd11 + x1d1 + x11d) / (3.0 * coverage);
  const double bracket = 1.0 - remainder;
  if (!(coverage > 0.0) || !(bracket > 0.0)) {
    // estimate undefined; surface the degeneracy instead of inventing a value
    r.n_hat = 0.0;
    r.feasible = false;
    r.diagnostics["degenerate"] = 1.0;
    return r;
  }
  r.n_hat = lead / bracket;
  r.feasible = r.n_hat >= double(t.x0());
  return r;
}

}  // namespace mse
