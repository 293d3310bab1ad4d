#ifndef MSE_THBM_HPP
#define MSE_THBM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "mse/rng.hpp"
#include "mse/trs.hpp"

namespace mse {

/// Behavioral-dependence mixture weights over the copy regimes
/// (L2 copies L1, L3 copies L2, L3 copies L1, all three equal).
struct DependenceAlpha {
  double a1{}, a2{}, a3{}, a4{};
  double a0() const { return a1 + a2 + a3 + a4; }
};

struct CaptureProbs {
  double p1{}, p2{}, p3{};
};

/// Split of the observed cells into dependence-regime components. y111 and
/// y000 cover all five regimes; the six two-component cells carry only the
/// count attributed to the independent regime.
struct LatentCounts {
  std::array<std::int64_t, 5> y111{};
  std::array<std::int64_t, 5> y000{};
  std::int64_t y110_1{}, y011_1{}, y100_1{}, y101_1{}, y010_1{}, y001_1{};
};

/// Real-valued latent split, used for expected-value initialization.
struct LatentReal {
  std::array<double, 5> y111{};
  std::array<double, 5> y000{};
  double y110_1{}, y011_1{}, y100_1{}, y101_1{}, y010_1{}, y001_1{};

  LatentReal() = default;
  LatentReal(const LatentCounts& c);
};

struct BetaShapes {
  double m1{}, n1{}, m2{}, n2{}, m3{}, n3{};
  bool floored{};  // some shape was raised to the 0.5 floor
};

enum class PCond { plugin, posterior };

struct ThbmConfig {
  int K = 1000;
  int max_iter = 500;
  double tol = 1e-3;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  PCond pcond = PCond::plugin;
  int window = 5;
};

struct ThbmTracePoint {
  int iteration{};
  double N{};
  DependenceAlpha alpha;
  double objective{};
};

struct ThbmFit {
  double n_hat{};
  DependenceAlpha alpha_hat;
  BetaShapes shapes;
  std::vector<ThbmTracePoint> trace;
  bool converged{};
  int K{};
  bool shape_floor_hit{};
};

CellProbabilities thbm_cell_probs(const DependenceAlpha& alpha,
                                  const CaptureProbs& p);

/// Normalized component probabilities behind the latent samplers; exposed
/// so distributional tests can check the sampler against them.
std::array<double, 5> latent_probs_111(const DependenceAlpha& alpha,
                                       const CaptureProbs& p);
std::array<double, 5> latent_probs_000(const DependenceAlpha& alpha,
                                       const CaptureProbs& p);
std::array<double, 6> latent_probs_pairs(const DependenceAlpha& alpha,
                                         const CaptureProbs& p);

LatentCounts sample_latent(const TrsTable& table, std::int64_t N,
                           const DependenceAlpha& alpha, const CaptureProbs& p,
                           RngStream& rng);

BetaShapes beta_shapes(const TrsTable& table, double N,
                       const LatentReal& latent);

CaptureProbs sample_capture_probs(const TrsTable& table, double N,
                                  const LatentReal& latent, RngStream& rng,
                                  PCond pcond = PCond::plugin);

struct MStepSample {
  LatentCounts latent;
  CaptureProbs probs;
};

struct MStepResult {
  double n_star{};
  DependenceAlpha alpha_star;
  double objective{};
  bool degenerate{};  // maximizer sits at the smallest admissible N
};

MStepResult mstep(const TrsTable& table, const std::vector<MStepSample>& samples);

/// Profiled Monte-Carlo objective at integer N; the quantity mstep maximizes.
double mstep_objective(const TrsTable& table,
                       const std::vector<MStepSample>& samples, std::int64_t N,
                       DependenceAlpha* alpha_out = nullptr);

ThbmFit fit_thbm(const TrsTable& table, const ThbmConfig& config = {});

EstimateResult estimate_thbm(const TrsTable& table,
                             const ThbmConfig& config = {});

/// Small-scale numeric-integration check of the marginal log-likelihood:
/// tensor-product Gauss-Legendre quadrature of the fixed-P likelihood
/// against the three beta densities. Test utility for tiny tables.
double marginal_loglik_oracle(const TrsTable& table, std::int64_t N,
                              const DependenceAlpha& alpha,
                              const BetaShapes& shapes, int grid_points);

/// Fixed-P observed-data log-likelihood (multinomial over the eight cells).
double observed_loglik(const TrsTable& table, std::int64_t N,
                       const DependenceAlpha& alpha, const CaptureProbs& p);

}  // namespace mse

#endif
