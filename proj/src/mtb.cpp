#include "mse/mtb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mse/errors.hpp"
#include "mse/optim.hpp"
#include "mse/rng.hpp"

namespace mse {

MtbStats mtb_stats(const TrsTable& t) {
  MtbStats s;
  s.u1 = t.n1();
  s.u2 = t.x011 + t.x010;
  s.u3 = t.x001;
  s.m2 = t.x111 + t.x110;
  s.m3 = t.x111 + t.x101 + t.x011;
  s.M2 = s.u1;
  s.M3 = s.u1 + s.u2;
  s.M4 = t.x0();
  s.x0 = t.x0();
  return s;
}

double mtb_loglik(const MtbParams& p, const MtbStats& s) {
  if (!(p.N >= double(s.x0))) throw DomainError("mtb: N below x0");
  for (double f : {p.f1, p.f2, p.f3}) {
    if (!(f > 0.0 && f < 1.0)) throw DomainError("mtb: f outside (0,1)");
  }
  if (!(p.phi > 0.0)) throw DomainError("mtb: phi must be positive");
  if (p.phi * p.f2 >= 1.0 || p.phi * p.f3 >= 1.0) {
    throw DomainError("mtb: phi*f must stay below 1");
  }

  double ll = log_gamma(p.N + 1.0) - log_gamma(p.N - double(s.x0) + 1.0);
  ll += double(s.u1) * std::log(p.f1) +
        (p.N - double(s.u1)) * std::log(1.0 - p.f1);
  ll += double(s.m2 + s.m3) * std::log(p.phi);

  const double fs[2] = {p.f2, p.f3};
  const std::int64_t us[2] = {s.u2, s.u3};
  const std::int64_t ms[2] = {s.m2, s.m3};
  const std::int64_t Ml[2] = {s.M2, s.M3};
  const std::int64_t Mnext[2] = {s.M3, s.M4};
  for (int l = 0; l < 2; ++l) {
    ll += double(us[l] + ms[l]) * std::log(fs[l]);
    ll += (p.N - double(Mnext[l])) * std::log(1.0 - fs[l]);
    ll += double(Ml[l] - ms[l]) * std::log(1.0 - p.phi * fs[l]);
  }
  return ll;
}

namespace {

MtbParams decode(const std::vector<double>& t, std::int64_t x0) {
  auto logistic = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
  MtbParams p;
  p.N = double(x0) + std::exp(t[0]) - 1.0;
  p.f1 = std::clamp(logistic(t[1]), 1e-12, 1.0 - 1e-12);
  p.f2 = std::clamp(logistic(t[2]), 1e-12, 1.0 - 1e-12);
  p.f3 = std::clamp(logistic(t[3]), 1e-12, 1.0 - 1e-12);
  p.phi = std::exp(t[4]);
  return p;
}

}  // namespace

EstimateResult estimate_mtb(const TrsTable& table, const MtbConfig& config) {
  const MtbStats s = mtb_stats(table);
  const std::int64_t x0 = s.x0;

  auto objective = [&s, x0](const std::vector<double>& t) {
    const MtbParams p = decode(t, x0);
    if (p.phi * p.f2 >= 1.0 - 1e-12 || p.phi * p.f3 >= 1.0 - 1e-12) {
      return std::numeric_limits<double>::infinity();
    }
    if (!std::isfinite(p.N) || p.N > 1e12 || p.N < double(x0)) {
      return std::numeric_limits<double>::infinity();
    }
    return -mtb_loglik(p, s);
  };

  auto logit = [](double v) {
    const double c = std::clamp(v, 1e-6, 1.0 - 1e-6);
    return std::log(c / (1.0 - c));
  };

  const double n_factors[] = {1.0 + 1e-6, 1.2, 1.5, 2.0, 4.0, 8.0};
  SimplexResult best;
  best.fval = std::numeric_limits<double>::infinity();
  int used = 0;
  for (int k = 0; k < config.starts && k < 6; ++k) {
    const double n0 = double(x0) * n_factors[k];
    std::vector<double> t0 = {
        std::log(n0 - double(x0) + 1.0), logit(double(s.u1) / n0),
        logit(double(s.u2 + s.m2) / n0), logit(double(s.u3 + s.m3) / n0),
        0.0};
    SimplexResult r =
        nelder_mead(objective, t0, 0.4, config.max_iter, config.ftol);
    // polish from the incumbent with a smaller simplex
    r = nelder_mead(objective, r.x, 0.02, config.max_iter, config.ftol);
    ++used;
    if (r.fval < best.fval) best = r;
  }
  if (!std::isfinite(best.fval)) {
    throw NonConvergence("mtb: all starts failed");
  }

  const MtbParams p = decode(best.x, x0);
  EstimateResult r;
  r.method = "Mtb";
  r.label = table.label;
  r.n_hat = std::max(double(x0), std::round(p.N));
  r.feasible = true;
  r.diagnostics["loglik"] = -best.fval;
  r.diagnostics["f1"] = p.f1;
  r.diagnostics["f2"] = p.f2;
  r.diagnostics["f3"] = p.f3;
  r.diagnostics["phi"] = p.phi;
  r.diagnostics["N_continuous"] = p.N;
  r.diagnostics["boundary"] = (r.n_hat <= double(x0) + 0.5) ? 1.0 : 0.0;
  r.diagnostics["starts"] = used;
  return r;
}

}  // namespace mse
