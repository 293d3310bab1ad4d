#include "mse/thbm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include <Eigen/Dense>

#include "mse/errors.hpp"

namespace mse {

LatentReal::LatentReal(const LatentCounts& c) {
  for (int u = 0; u < 5; ++u) {
    y111[u] = double(c.y111[u]);
    y000[u] = double(c.y000[u]);
  }
  y110_1 = double(c.y110_1);
  y011_1 = double(c.y011_1);
  y100_1 = double(c.y100_1);
  y101_1 = double(c.y101_1);
  y010_1 = double(c.y010_1);
  y001_1 = double(c.y001_1);
}

namespace {

constexpr double kProbClamp = 1e-12;

CaptureProbs clamp_probs(const CaptureProbs& p) {
  auto c = [](double v) {
    return std::clamp(v, kProbClamp, 1.0 - kProbClamp);
  };
  return {c(p.p1), c(p.p2), c(p.p3)};
}

// Mixture components of the 111 cell, one per regime.
std::array<double, 5> components_111(const DependenceAlpha& a,
                                     const CaptureProbs& p) {
  const double ind = 1.0 - a.a0();
  return {ind * p.p1 * p.p2 * p.p3, a.a1 * p.p1 * p.p3, a.a2 * p.p1 * p.p2,
          a.a3 * p.p1 * p.p2, a.a4 * p.p1};
}

std::array<double, 5> components_000(const DependenceAlpha& a,
                                     const CaptureProbs& p) {
  const double ind = 1.0 - a.a0();
  const double q1 = 1.0 - p.p1, q2 = 1.0 - p.p2, q3 = 1.0 - p.p3;
  return {ind * q1 * q2 * q3, a.a1 * q1 * q3, a.a2 * q1 * q2, a.a3 * q1 * q2,
          a.a4 * q1};
}

// (independent component, dependence component) per two-component cell, in
// the order 110, 011, 100, 101, 010, 001.
std::array<std::array<double, 2>, 6> components_pairs(const DependenceAlpha& a,
                                                      const CaptureProbs& p) {
  const double ind = 1.0 - a.a0();
  const double q1 = 1.0 - p.p1, q2 = 1.0 - p.p2, q3 = 1.0 - p.p3;
  return {{{ind * p.p1 * p.p2 * q3, a.a1 * p.p1 * q3},
           {ind * q1 * p.p2 * p.p3, a.a2 * q1 * p.p2},
           {ind * p.p1 * q2 * q3, a.a2 * p.p1 * q2},
           {ind * p.p1 * q2 * p.p3, a.a3 * p.p1 * q2},
           {ind * q1 * p.p2 * q3, a.a3 * q1 * p.p2},
           {ind * q1 * q2 * p.p3, a.a1 * q1 * p.p3}}};
}

std::array<double, 5> normalized(const std::array<double, 5>& c) {
  const double s = std::accumulate(c.begin(), c.end(), 0.0);
  std::array<double, 5> out{};
  if (s <= 0.0) {
    out[0] = 1.0;
    return out;
  }
  for (int u = 0; u < 5; ++u) out[u] = c[u] / s;
  return out;
}

double floor_shape(double v, bool& hit) {
  if (v < 0.5) {
    hit = true;
    return 0.5;
  }
  return v;
}

}  // namespace

CellProbabilities thbm_cell_probs(const DependenceAlpha& a,
                                  const CaptureProbs& probs) {
  const CaptureProbs p = clamp_probs(probs);
  const auto c111 = components_111(a, p);
  const auto c000 = components_000(a, p);
  const auto pairs = components_pairs(a, p);
  CellProbabilities out;
  out.p[0] = std::accumulate(c111.begin(), c111.end(), 0.0);
  out.p[1] = pairs[0][0] + pairs[0][1];  // 110
  out.p[2] = pairs[3][0] + pairs[3][1];  // 101
  out.p[3] = pairs[1][0] + pairs[1][1];  // 011
  out.p[4] = pairs[2][0] + pairs[2][1];  // 100
  out.p[5] = pairs[4][0] + pairs[4][1];  // 010
  out.p[6] = pairs[5][0] + pairs[5][1];  // 001
  out.p[7] = std::accumulate(c000.begin(), c000.end(), 0.0);
  return out;
}

std::array<double, 5> latent_probs_111(const DependenceAlpha& a,
                                       const CaptureProbs& p) {
  return normalized(components_111(a, clamp_probs(p)));
}

std::array<double, 5> latent_probs_000(const DependenceAlpha& a,
                                       const CaptureProbs& p) {
  return normalized(components_000(a, clamp_probs(p)));
}

std::array<double, 6> latent_probs_pairs(const DependenceAlpha& a,
                                         const CaptureProbs& p) {
  const auto pairs = components_pairs(a, clamp_probs(p));
  std::array<double, 6> q{};
  for (int c = 0; c < 6; ++c) {
    const double s = pairs[c][0] + pairs[c][1];
    q[c] = s > 0.0 ? pairs[c][0] / s : 0.0;
  }
  return q;
}

LatentCounts sample_latent(const TrsTable& t, std::int64_t N,
                           const DependenceAlpha& alpha, const CaptureProbs& p,
                           RngStream& rng) {
  if (N < t.x0()) throw DomainError("sample_latent: N below x0");
  LatentCounts y;
  const auto q111 = latent_probs_111(alpha, p);
  const auto q000 = latent_probs_000(alpha, p);
  const auto qpair = latent_probs_pairs(alpha, p);

  auto m111 = sample_multinomial(t.x111, q111, rng);
  auto m000 = sample_multinomial(N - t.x0(), q000, rng);
  for (int u = 0; u < 5; ++u) {
    y.y111[u] = m111[u];
    y.y000[u] = m000[u];
  }
  y.y110_1 = sample_binomial(t.x110, qpair[0], rng);
  y.y011_1 = sample_binomial(t.x011, qpair[1], rng);
  y.y100_1 = sample_binomial(t.x100, qpair[2], rng);
  y.y101_1 = sample_binomial(t.x101, qpair[3], rng);
  y.y010_1 = sample_binomial(t.x010, qpair[4], rng);
  y.y001_1 = sample_binomial(t.x001, qpair[5], rng);
  return y;
}

BetaShapes beta_shapes(const TrsTable& t, double N, const LatentReal& y) {
  BetaShapes s;
  bool hit = false;
  const double x1dd = double(t.n1());
  s.m1 = floor_shape(x1dd, hit);
  s.n1 = floor_shape(N - x1dd, hit);
  s.m2 = floor_shape(y.y111[0] + y.y111[2] + y.y111[3] + y.y110_1 +
                         double(t.x011 + t.x010),
                     hit);
  s.n2 = floor_shape(double(t.x100 + t.x101) + y.y001_1 + y.y000[0] +
                         y.y000[2] + y.y000[3],
                     hit);
  s.m3 = floor_shape(y.y111[0] + y.y111[1] + y.y011_1 + y.y101_1 +
                         double(t.x001),
                     hit);
  s.n3 = floor_shape(double(t.x110) + y.y100_1 + y.y010_1 + y.y000[0] +
                         y.y000[1],
                     hit);
  s.floored = hit;
  return s;
}

CaptureProbs sample_capture_probs(const TrsTable& t, double N,
                                  const LatentReal& latent, RngStream& rng,
                                  PCond pcond) {
  BetaShapes s = beta_shapes(t, N, latent);
  const double scale = pcond == PCond::posterior ? 2.0 : 1.0;
  CaptureProbs p;
  p.p1 = sample_beta(scale * s.m1, scale * s.n1, rng);
  p.p2 = sample_beta(scale * s.m2, scale * s.n2, rng);
  p.p3 = sample_beta(scale * s.m3, scale * s.n3, rng);
  return clamp_probs(p);
}

namespace {

// Per-sample aggregates the profiled M-step objective needs.
struct MStepAggregates {
  std::int64_t x0{};
  std::int64_t x1{};  // list-1 margin; its beta shape n1 = N - x1 varies in N
  double c0{}, c1{}, c2{}, c3{}, c4base{};  // mean regime totals (C4 w/o N part)
  double mean_s{};
  double mean_log1mp1{};
  double cross{};  // mean of S_i * log(1 - P1_i)
  std::int64_t max_s{};
  std::map<std::int64_t, double> s_weights;  // S value -> fraction of samples
};

MStepAggregates aggregate(const TrsTable& t,
                          const std::vector<MStepSample>& samples) {
  MStepAggregates a;
  a.x0 = t.x0();
  a.x1 = t.n1();
  const double K = double(samples.size());
  for (const auto& smp : samples) {
    const auto& y = smp.latent;
    const std::int64_t S =
        y.y000[0] + y.y000[1] + y.y000[2] + y.y000[3];
    a.max_s = std::max(a.max_s, S);
    a.s_weights[S] += 1.0 / K;
    a.mean_s += double(S) / K;
    const double l1mp1 = std::log(1.0 - std::min(smp.probs.p1, 1.0 - 1e-12));
    a.mean_log1mp1 += l1mp1 / K;
    a.cross += double(S) * l1mp1 / K;
    a.c0 += (double(y.y111[0]) + double(y.y110_1 + y.y011_1 + y.y100_1 +
                                        y.y101_1 + y.y010_1 + y.y001_1) +
             double(y.y000[0])) /
            K;
    a.c1 += (double(y.y111[1]) + double(t.x110 - y.y110_1) +
             double(t.x001 - y.y001_1) + double(y.y000[1])) /
            K;
    a.c2 += (double(y.y111[2]) + double(t.x011 - y.y011_1) +
             double(t.x100 - y.y100_1) + double(y.y000[2])) /
            K;
    a.c3 += (double(y.y111[3]) + double(t.x101 - y.y101_1) +
             double(t.x010 - y.y010_1) + double(y.y000[3])) /
            K;
    a.c4base += double(y.y111[4]) / K;
  }
  return a;
}

double objective_at(const MStepAggregates& a, std::int64_t N,
                    DependenceAlpha* alpha_out) {
  const double n = double(N);
  const double c4 = a.c4base + (n - double(a.x0) - a.mean_s);
  const double regime[5] = {a.c0, a.c1, a.c2, a.c3, c4};
  double q = std::lgamma(n + 1.0) - std::lgamma(n - double(a.x0) + 1.0);
  for (const auto& [s, w] : a.s_weights) {
    q -= w * std::lgamma(n - double(a.x0) - double(s) + 1.0);
  }
  q += (n - double(a.x0)) * a.mean_log1mp1 - a.cross;
  // plug-in beta density for the list-1 capture probability: its second
  // shape is N - x1 and therefore moves with N (floored like the shapes)
  const double nf = std::max(n - double(a.x1), 0.5);
  q += (nf - 1.0) * a.mean_log1mp1 -
       (std::lgamma(nf) - std::lgamma(double(a.x1) + nf));
  for (double m : regime) {
    if (m > 0.0) q += m * std::log(m / n);
  }
  if (alpha_out) {
    *alpha_out = {std::max(0.0, regime[1] / n), std::max(0.0, regime[2] / n),
                  std::max(0.0, regime[3] / n), std::max(0.0, regime[4] / n)};
  }
  return q;
}

}  // namespace

double mstep_objective(const TrsTable& table,
                       const std::vector<MStepSample>& samples, std::int64_t N,
                       DependenceAlpha* alpha_out) {
  const MStepAggregates a = aggregate(table, samples);
  if (N < a.x0 + a.max_s) throw DomainError("mstep_objective: N too small");
  return objective_at(a, N, alpha_out);
}

MStepResult mstep(const TrsTable& table,
                  const std::vector<MStepSample>& samples) {
  if (samples.empty()) throw DomainError("mstep needs at least one sample");
  const MStepAggregates a = aggregate(table, samples);
  const std::int64_t n_min = a.x0 + a.max_s;

  // expanding bracket: checkpoint grid with geometric stride
  std::vector<std::pair<std::int64_t, double>> cps;
  std::int64_t n = n_min;
  double stride = 1.0;
  double best_q = -std::numeric_limits<double>::infinity();
  while (true) {
    const double q = objective_at(a, n, nullptr);
    cps.emplace_back(n, q);
    best_q = std::max(best_q, q);
    const std::size_t sz = cps.size();
    const bool past_peak = sz >= 3 && cps[sz - 1].second < cps[sz - 2].second &&
                           cps[sz - 2].second < cps[sz - 3].second &&
                           q < best_q - 2.0;
    if (past_peak || n > n_min + (1LL << 40)) break;
    n += std::llround(stride);
    stride = std::max(stride + 1.0, stride * 1.25);
  }
  std::size_t best_idx = 0;
  for (std::size_t i = 1; i < cps.size(); ++i) {
    if (cps[i].second > cps[best_idx].second) best_idx = i;
  }
  const std::int64_t lo = cps[best_idx > 0 ? best_idx - 1 : 0].first;
  const std::int64_t hi =
      cps[std::min(best_idx + 1, cps.size() - 1)].first;

  // exhaustive scan inside the bracket; ties go to the smaller N
  std::int64_t n_star = lo;
  double q_star = objective_at(a, lo, nullptr);
  for (std::int64_t m = lo + 1; m <= hi; ++m) {
    const double q = objective_at(a, m, nullptr);
    if (q > q_star) {
      q_star = q;
      n_star = m;
    }
  }

  MStepResult res;
  res.n_star = double(n_star);
  res.objective = objective_at(a, n_star, &res.alpha_star);
  res.degenerate = n_star == n_min;
  return res;
}

namespace {

LatentReal expected_latent(const TrsTable& t, std::int64_t N,
                           const DependenceAlpha& alpha,
                           const CaptureProbs& p) {
  LatentReal y;
  const auto q111 = latent_probs_111(alpha, p);
  const auto q000 = latent_probs_000(alpha, p);
  const auto qpair = latent_probs_pairs(alpha, p);
  for (int u = 0; u < 5; ++u) {
    y.y111[u] = double(t.x111) * q111[u];
    y.y000[u] = double(N - t.x0()) * q000[u];
  }
  y.y110_1 = double(t.x110) * qpair[0];
  y.y011_1 = double(t.x011) * qpair[1];
  y.y100_1 = double(t.x100) * qpair[2];
  y.y101_1 = double(t.x101) * qpair[3];
  y.y010_1 = double(t.x010) * qpair[4];
  y.y001_1 = double(t.x001) * qpair[5];
  return y;
}

std::int64_t initial_population(const TrsTable& t) {
  const std::int64_t x0 = t.x0();
  std::int64_t n0 = 2 * x0;
  if (t.x101 > 0 && t.x011 > 0 && t.x110 > 0) {
    const double fill = double(t.x111) * double(t.x001) * double(t.x100) *
                        double(t.x010) /
                        (double(t.x101) * double(t.x011) * double(t.x110));
    n0 = x0 + std::llround(fill);
  }
  return std::max(n0, x0 + 1);
}

}  // namespace

ThbmFit fit_thbm(const TrsTable& table, const ThbmConfig& config) {
  if (config.K < 1) throw DomainError("fit_thbm: K must be >= 1");
  const std::int64_t x0 = table.x0();
  RngStream rng(config.seed, config.stream);

  std::int64_t N = initial_population(table);
  DependenceAlpha alpha{0.1, 0.1, 0.1, 0.1};
  const CaptureProbs p0{double(table.n1()) / double(N),
                        double(table.n2()) / double(N),
                        double(table.n3()) / double(N)};
  std::vector<LatentReal> states(std::size_t(config.K),
                                 expected_latent(table, N, alpha, p0));

  ThbmFit fit;
  fit.K = config.K;
  std::vector<MStepSample> samples(std::size_t(config.K));
  const int w = std::max(1, config.window);

  for (int t = 1; t <= config.max_iter; ++t) {
    for (int i = 0; i < config.K; ++i) {
      const CaptureProbs p = sample_capture_probs(table, double(N), states[i],
                                                  rng, config.pcond);
      const LatentCounts y = sample_latent(table, N, alpha, p, rng);
      states[i] = LatentReal(y);
      samples[std::size_t(i)] = {y, p};
    }
    const MStepResult step = mstep(table, samples);
    N = std::llround(step.n_star);
    alpha = step.alpha_star;
    fit.trace.push_back({t, double(N), alpha, step.objective});

    if (int(fit.trace.size()) >= w + 1) {
      const auto& tr = fit.trace;
      auto window_mean_n = [&tr, w](int end) {
        double s = 0.0;
        for (int j = end - w; j < end; ++j) s += tr[std::size_t(j)].N;
        return s / double(w);
      };
      const int end = int(tr.size());
      const double ma_now = window_mean_n(end);
      const double ma_prev = window_mean_n(end - 1);
      double max_da = 0.0;
      for (int j = end - w; j < end; ++j) {
        const auto& cur = tr[std::size_t(j)].alpha;
        const auto& prv = tr[std::size_t(j - 1)].alpha;
        max_da = std::max({max_da, std::abs(cur.a1 - prv.a1),
                           std::abs(cur.a2 - prv.a2),
                           std::abs(cur.a3 - prv.a3),
                           std::abs(cur.a4 - prv.a4)});
      }
      if (std::abs(ma_now - ma_prev) < config.tol * double(x0) &&
          max_da < config.tol) {
        fit.converged = true;
        break;
      }
    }
  }

  // report window averages; they smooth out the Monte-Carlo jitter
  const int end = int(fit.trace.size());
  const int win = std::min(w, end);
  double n_sum = 0.0;
  DependenceAlpha a_sum{};
  for (int j = end - win; j < end; ++j) {
    const auto& pt = fit.trace[std::size_t(j)];
    n_sum += pt.N;
    a_sum.a1 += pt.alpha.a1;
    a_sum.a2 += pt.alpha.a2;
    a_sum.a3 += pt.alpha.a3;
    a_sum.a4 += pt.alpha.a4;
  }
  fit.n_hat = std::round(n_sum / double(win));
  fit.alpha_hat = {a_sum.a1 / win, a_sum.a2 / win, a_sum.a3 / win,
                   a_sum.a4 / win};

  LatentReal mean_state;
  for (const auto& st : states) {
    for (int u = 0; u < 5; ++u) {
      mean_state.y111[u] += st.y111[u] / double(states.size());
      mean_state.y000[u] += st.y000[u] / double(states.size());
    }
    mean_state.y110_1 += st.y110_1 / double(states.size());
    mean_state.y011_1 += st.y011_1 / double(states.size());
    mean_state.y100_1 += st.y100_1 / double(states.size());
    mean_state.y101_1 += st.y101_1 / double(states.size());
    mean_state.y010_1 += st.y010_1 / double(states.size());
    mean_state.y001_1 += st.y001_1 / double(states.size());
  }
  fit.shapes = beta_shapes(table, fit.n_hat, mean_state);
  fit.shape_floor_hit = fit.shapes.floored;
  return fit;
}

EstimateResult estimate_thbm(const TrsTable& table, const ThbmConfig& config) {
  const ThbmFit fit = fit_thbm(table, config);
  EstimateResult r;
  r.method = "THBM";
  r.label = table.label;
  r.n_hat = fit.n_hat;
  r.feasible = r.n_hat >= double(table.x0());
  r.diagnostics["alpha1"] = fit.alpha_hat.a1;
  r.diagnostics["alpha2"] = fit.alpha_hat.a2;
  r.diagnostics["alpha3"] = fit.alpha_hat.a3;
  r.diagnostics["alpha4"] = fit.alpha_hat.a4;
  r.diagnostics["alpha0"] = fit.alpha_hat.a0();
  r.diagnostics["iterations"] = double(fit.trace.size());
  r.diagnostics["converged"] = fit.converged ? 1.0 : 0.0;
  r.diagnostics["K"] = double(fit.K);
  if (!fit.trace.empty()) {
    r.diagnostics["objective"] = fit.trace.back().objective;
  }
  return r;
}

double observed_loglik(const TrsTable& t, std::int64_t N,
                       const DependenceAlpha& alpha, const CaptureProbs& p) {
  if (N < t.x0()) throw DomainError("observed_loglik: N below x0");
  const CellProbabilities cp = thbm_cell_probs(alpha, p);
  const auto cells = t.cells();
  double ll = std::lgamma(double(N) + 1.0) -
              std::lgamma(double(N - t.x0()) + 1.0);
  for (int c = 0; c < 7; ++c) {
    ll -= std::lgamma(double(cells[std::size_t(c)]) + 1.0);
    if (cells[std::size_t(c)] > 0) {
      if (cp.p[std::size_t(c)] <= 0.0) {
        return -std::numeric_limits<double>::infinity();
      }
      ll += double(cells[std::size_t(c)]) * std::log(cp.p[std::size_t(c)]);
    }
  }
  if (N > t.x0()) {
    if (cp.p000() <= 0.0) return -std::numeric_limits<double>::infinity();
    ll += double(N - t.x0()) * std::log(cp.p000());
  }
  return ll;
}

namespace {

// Gauss-Jacobi rule weighted by the Beta(m, n) density on (0, 1): nodes and
// log-weights such that sum_i exp(lw_i) f(p_i) ~ E[f(P)], P ~ Beta(m, n).
// Built by Golub-Welsch from the Jacobi three-term recurrence, so sharply
// concentrated shapes are integrated exactly instead of being missed by a
// uniform grid.
void beta_quadrature(int n_pts, double m, double n, std::vector<double>& nodes,
                     std::vector<double>& log_weights) {
  // Jacobi weight (1-x)^a (1+x)^b on [-1, 1]; p = (1+x)/2 maps it onto the
  // Beta(m, n) kernel with a = n-1, b = m-1.
  const double a = n - 1.0, b = m - 1.0;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n_pts, n_pts);
  for (int k = 0; k < n_pts; ++k) {
    const double s = 2.0 * k + a + b;
    J(k, k) = k == 0 ? (b - a) / (a + b + 2.0)
                     : (b * b - a * a) / (s * (s + 2.0));
    if (k + 1 < n_pts) {
      double off;
      if (k == 0) {
        off = 4.0 * (1.0 + a) * (1.0 + b) /
              ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0));
      } else {
        const double kk = double(k + 1);
        const double t = 2.0 * kk + a + b;
        off = 4.0 * kk * (kk + a) * (kk + b) * (kk + a + b) /
              (t * t * (t + 1.0) * (t - 1.0));
      }
      J(k, k + 1) = J(k + 1, k) = std::sqrt(off);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  nodes.resize(std::size_t(n_pts));
  log_weights.resize(std::size_t(n_pts));
  // log of mu0 = integral of the Jacobi weight, then normalize by B(m, n)
  // and the [-1,1] -> (0,1) change of variables; together they reduce to
  // -log B(a+1, b+1) + log B-recurrences, kept explicit for clarity.
  const double log_mu0 = (a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) +
                         std::lgamma(b + 1.0) - std::lgamma(a + b + 2.0);
  const double log_beta_mn =
      std::lgamma(m) + std::lgamma(n) - std::lgamma(m + n);
  for (int i = 0; i < n_pts; ++i) {
    const double x = es.eigenvalues()(i);
    nodes[std::size_t(i)] =
        std::clamp(0.5 * (1.0 + x), kProbClamp, 1.0 - kProbClamp);
    const double v0 = es.eigenvectors()(0, i);
    log_weights[std::size_t(i)] = log_mu0 + 2.0 * std::log(std::abs(v0)) -
                                  (m + n - 1.0) * std::log(2.0) - log_beta_mn;
  }
}

}  // namespace

double marginal_loglik_oracle(const TrsTable& table, std::int64_t N,
                              const DependenceAlpha& alpha,
                              const BetaShapes& shapes, int grid_points) {
  if (grid_points < 2) throw DomainError("oracle grid too small");
  std::array<std::vector<double>, 3> nodes, lw;
  beta_quadrature(grid_points, shapes.m1, shapes.n1, nodes[0], lw[0]);
  beta_quadrature(grid_points, shapes.m2, shapes.n2, nodes[1], lw[1]);
  beta_quadrature(grid_points, shapes.m3, shapes.n3, nodes[2], lw[2]);

  double max_term = -std::numeric_limits<double>::infinity();
  std::vector<double> terms;
  terms.reserve(std::size_t(grid_points) * std::size_t(grid_points) *
                std::size_t(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    for (int j = 0; j < grid_points; ++j) {
      for (int k = 0; k < grid_points; ++k) {
        const CaptureProbs p{nodes[0][std::size_t(i)],
                             nodes[1][std::size_t(j)],
                             nodes[2][std::size_t(k)]};
        const double lt = lw[0][std::size_t(i)] + lw[1][std::size_t(j)] +
                          lw[2][std::size_t(k)] +
                          observed_loglik(table, N, alpha, p);
        terms.push_back(lt);
        max_term = std::max(max_term, lt);
      }
    }
  }
  double acc = 0.0;
  for (double lt : terms) acc += std::exp(lt - max_term);
  return max_term + std::log(acc);
}

}  // namespace mse
