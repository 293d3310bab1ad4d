#include "mse/rng.hpp"

#include <cmath>

#include "mse/errors.hpp"

namespace mse {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Probabilities within 1e-9 of [0, 1] are clamped; larger violations are
// caller errors.
double checked_probability(double p) {
  if (!(p >= -1e-9 && p <= 1.0 + 1e-9)) {
    throw InvalidProbability("probability out of range: " + std::to_string(p));
  }
  return std::min(1.0, std::max(0.0, p));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream) {
  std::seed_seq seq{splitmix64(seed), splitmix64(stream ^ 0xda3e39cb94b95bdbULL),
                    splitmix64(seed ^ stream)};
  gen_.seed(seq);
}

double RngStream::uniform() {
  // Strictly inside (0, 1) so inverse-CDF transforms stay finite.
  while (true) {
    const double u = std::uniform_real_distribution<double>(0.0, 1.0)(gen_);
    if (u > 0.0 && u < 1.0) return u;
  }
}

std::int64_t sample_binomial(std::int64_t n, double p, RngStream& rng) {
  if (n < 0) throw InvalidProbability("binomial n must be non-negative");
  const double pc = checked_probability(p);
  if (n == 0 || pc == 0.0) return 0;
  if (pc == 1.0) return n;
  return std::binomial_distribution<std::int64_t>(n, pc)(rng.engine());
}

std::vector<std::int64_t> sample_multinomial(std::int64_t n,
                                             std::span<const double> probs,
                                             RngStream& rng) {
  double total = 0.0;
  for (double p : probs) total += checked_probability(p);
  if (std::abs(total - 1.0) > 1e-9) {
    throw InvalidProbability("multinomial probabilities sum to " +
                             std::to_string(total));
  }
  std::vector<std::int64_t> out(probs.size(), 0);
  std::int64_t remaining = n;
  double mass = total;
  for (std::size_t i = 0; i + 1 < probs.size() && remaining > 0; ++i) {
    const double p = checked_probability(probs[i]);
    const double cond = mass > 0.0 ? std::min(1.0, p / mass) : 0.0;
    out[i] = sample_binomial(remaining, cond, rng);
    remaining -= out[i];
    mass -= p;
  }
  if (!out.empty()) out.back() += remaining;
  return out;
}

double sample_beta(double a, double b, RngStream& rng) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidShape("beta shapes must be positive");
  }
  const double x = std::gamma_distribution<double>(a, 1.0)(rng.engine());
  const double y = std::gamma_distribution<double>(b, 1.0)(rng.engine());
  double v = x / (x + y);
  if (!(v > 0.0)) v = 1e-300;
  if (!(v < 1.0)) v = 1.0 - 1e-16;
  return v;
}

double gl1_quantile(double eta, double u) {
  if (!(eta > 0.0)) throw InvalidShape("gl1 eta must be positive");
  if (!(u > 0.0 && u < 1.0)) {
    throw InvalidProbability("gl1 quantile needs u in (0,1)");
  }
  return -std::log(std::pow(u, -1.0 / eta) - 1.0);
}

double sample_gl1(double eta, RngStream& rng) {
  return gl1_quantile(eta, rng.uniform());
}

double sample_normal(double mu, double sigma, RngStream& rng) {
  if (!(sigma > 0.0)) throw InvalidShape("normal sigma must be positive");
  return std::normal_distribution<double>(mu, sigma)(rng.engine());
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw NonPositiveArgument("log_gamma needs x > 0, got " +
                              std::to_string(x));
  }
  return std::lgamma(x);
}

}  // namespace mse
