#ifndef MSE_RNG_HPP
#define MSE_RNG_HPP

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace mse {

/// Seedable random stream. The (seed, stream) pair fully determines the
/// variate sequence; distinct stream ids give independent streams, so each
/// replicate or bootstrap sample can own stream id = replicate index.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::mt19937_64& engine() { return gen_; }

  /// Uniform draw on the open interval (0, 1).
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 gen_;
};

std::int64_t sample_binomial(std::int64_t n, double p, RngStream& rng);

std::vector<std::int64_t> sample_multinomial(std::int64_t n,
                                             std::span<const double> probs,
                                             RngStream& rng);

double sample_beta(double a, double b, RngStream& rng);

/// Generalized logistic type-I draw, CDF F(x) = (1 + e^{-x})^{-eta}.
double sample_gl1(double eta, RngStream& rng);
double gl1_quantile(double eta, double u);

double sample_normal(double mu, double sigma, RngStream& rng);

double log_gamma(double x);

}  // namespace mse

#endif
