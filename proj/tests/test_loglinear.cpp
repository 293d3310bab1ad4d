#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "mse/errors.hpp"
#include "mse/loglinear.hpp"

using namespace mse;

namespace {

TrsTable random_positive_table(std::mt19937& gen) {
  std::uniform_int_distribution<std::int64_t> d(1, 400);
  return validate_table({d(gen), d(gen), d(gen), d(gen), d(gen), d(gen),
                         d(gen)});
}

// closed-form extrapolation of the all-interaction model
double llm_closed_form(const TrsTable& t) {
  return double(t.x0()) + double(t.x111) * double(t.x001) * double(t.x100) *
                              double(t.x010) /
                              (double(t.x101) * double(t.x011) *
                               double(t.x110));
}

}  // namespace

TEST_CASE("model names round-trip") {
  for (auto m : {LoglinModel::IM, LoglinModel::LLM, LoglinModel::QSM,
                 LoglinModel::PQSM}) {
    CHECK(loglin_model_from_string(to_string(m)) == m);
  }
  CHECK_THROWS_AS(loglin_model_from_string("nope"), Error);
}

TEST_CASE("constant table fits exactly") {
  const TrsTable t = validate_table({5, 5, 5, 5, 5, 5, 5});
  for (auto m : {LoglinModel::IM, LoglinModel::LLM, LoglinModel::QSM,
                 LoglinModel::PQSM}) {
    const GlmFit fit = irls_fit(t, build_design(m));
    CHECK(fit.converged);
    for (double f : fit.fitted) CHECK(f == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(fit.coefficients[0] == doctest::Approx(std::log(5.0)).epsilon(1e-8));
    for (std::size_t c = 1; c < fit.coefficients.size(); ++c) {
      CHECK(std::abs(fit.coefficients[c]) < 1e-6);
    }
    const EstimateResult est = estimate_loglinear(t, m);
    CHECK(est.n_hat == doctest::Approx(40.0).epsilon(1e-8));
  }
}

TEST_CASE("saturated model reproduces the observed cells") {
  const TrsTable t = builtin_dataset("als_deployed");
  const GlmFit fit = irls_fit(t, build_design(LoglinModel::LLM));
  CHECK(fit.converged);
  const auto cells = t.cells();
  for (int c = 0; c < 7; ++c) {
    CHECK(fit.fitted[std::size_t(c)] ==
          doctest::Approx(double(cells[std::size_t(c)])).epsilon(1e-6));
  }
  CHECK(fit.deviance == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("independence fit matches the list margins") {
  const TrsTable t = builtin_dataset("als_deployed");
  const GlmFit fit = irls_fit(t, build_design(LoglinModel::IM));
  CHECK(fit.converged);
  const auto& f = fit.fitted;
  // fitted margins over the observed cells must equal the observed margins
  CHECK(f[0] + f[1] + f[2] + f[4] == doctest::Approx(29.0).epsilon(1e-7));
  CHECK(f[0] + f[1] + f[3] + f[5] == doctest::Approx(18.0).epsilon(1e-7));
  CHECK(f[0] + f[2] + f[3] + f[6] == doctest::Approx(31.0).epsilon(1e-7));
  double total = 0.0;
  for (double v : f) total += v;
  CHECK(total == doctest::Approx(40.0).epsilon(1e-7));
}

TEST_CASE("all-interaction model agrees with its closed form") {
  std::mt19937 gen(11);
  for (int rep = 0; rep < 100; ++rep) {
    const TrsTable t = random_positive_table(gen);
    const EstimateResult est = estimate_loglinear(t, LoglinModel::LLM);
    const double oracle = llm_closed_form(t);
    CHECK(est.n_hat == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("symmetric-interaction constraints hold at the optimum") {
  std::mt19937 gen(13);
  for (int rep = 0; rep < 60; ++rep) {
    const TrsTable t = random_positive_table(gen);

    const GlmFit qsm = irls_fit(t, build_design(LoglinModel::QSM));
    REQUIRE(qsm.converged);
    const auto& q = qsm.fitted;
    const double a = q[3] * q[4];  // m011 * m100
    const double b = q[2] * q[5];  // m101 * m010
    const double c = q[1] * q[6];  // m110 * m001
    CHECK(a == doctest::Approx(b).epsilon(1e-6));
    CHECK(b == doctest::Approx(c).epsilon(1e-6));

    const GlmFit pqsm = irls_fit(t, build_design(LoglinModel::PQSM));
    REQUIRE(pqsm.converged);
    const auto& p = pqsm.fitted;
    CHECK(p[3] * p[4] == doctest::Approx(p[2] * p[5]).epsilon(1e-6));
  }
}

TEST_CASE("nested models order the deviances") {
  for (const char* name : {"als_all", "als_deployed", "als_nondeployed",
                           "wtc"}) {
    const TrsTable t = builtin_dataset(name);
    const double d_im = irls_fit(t, build_design(LoglinModel::IM)).deviance;
    const double d_qsm = irls_fit(t, build_design(LoglinModel::QSM)).deviance;
    const double d_pqsm = irls_fit(t, build_design(LoglinModel::PQSM)).deviance;
    const double d_llm = irls_fit(t, build_design(LoglinModel::LLM)).deviance;
    CHECK(d_im >= d_qsm - 1e-7);
    CHECK(d_qsm >= d_pqsm - 1e-7);
    CHECK(d_pqsm >= d_llm - 1e-7);
    CHECK(d_llm == doctest::Approx(0.0).epsilon(1e-5));
  }
}

TEST_CASE("case-study point estimates") {
  CHECK(std::round(estimate_loglinear(builtin_dataset("als_deployed"),
                                      LoglinModel::LLM)
                       .n_hat) == 45);
  CHECK(std::round(estimate_loglinear(builtin_dataset("als_deployed"),
                                      LoglinModel::QSM)
                       .n_hat) == 43);
  CHECK(std::round(estimate_loglinear(builtin_dataset("als_nondeployed"),
                                      LoglinModel::PQSM)
                       .n_hat) == 72);
}

TEST_CASE("duplicate design columns are rejected") {
  DesignSpec bad = build_design(LoglinModel::IM);
  bad.columns.push_back(bad.columns[1]);
  CHECK_THROWS_AS(irls_fit(builtin_dataset("als_all"), bad), SingularDesign);
}
