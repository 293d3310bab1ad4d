#include "mse/loglinear.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "mse/errors.hpp"

namespace mse {

std::string to_string(LoglinModel model) {
  switch (model) {
    case LoglinModel::IM: return "IM";
    case LoglinModel::LLM: return "LLM";
    case LoglinModel::QSM: return "QSM";
    case LoglinModel::PQSM: return "PQSM";
  }
  return "?";
}

LoglinModel loglin_model_from_string(const std::string& name) {
  if (name == "IM" || name == "im") return LoglinModel::IM;
  if (name == "LLM" || name == "llm") return LoglinModel::LLM;
  if (name == "QSM" || name == "qsm") return LoglinModel::QSM;
  if (name == "PQSM" || name == "pqsm") return LoglinModel::PQSM;
  throw UnknownDataset("unknown log-linear model: " + name);
}

namespace {

// Observed cells in table order, as (i, j, k) indicators.
constexpr std::array<std::array<int, 3>, 7> kCells = {{
    {1, 1, 1}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
}};

constexpr double kBoundaryCoef = 30.0;

double poisson_deviance(const Eigen::VectorXd& y, const Eigen::VectorXd& mu) {
  double dev = 0.0;
  for (int c = 0; c < y.size(); ++c) {
    if (y[c] > 0.0) dev += y[c] * std::log(y[c] / mu[c]);
    dev -= y[c] - mu[c];
  }
  return 2.0 * dev;
}

}  // namespace

DesignSpec build_design(LoglinModel model) {
  DesignSpec spec;
  spec.name = to_string(model);
  auto add = [&spec](auto fn) {
    std::array<double, 7> col{};
    for (std::size_t c = 0; c < kCells.size(); ++c) {
      col[c] = fn(kCells[c][0], kCells[c][1], kCells[c][2]);
    }
    spec.columns.push_back(col);
  };
  add([](int, int, int) { return 1.0; });
  add([](int i, int, int) { return double(i); });
  add([](int, int j, int) { return double(j); });
  add([](int, int, int k) { return double(k); });
  switch (model) {
    case LoglinModel::IM:
      break;
    case LoglinModel::LLM:
      add([](int i, int j, int) { return double(i * j); });
      add([](int i, int, int k) { return double(i * k); });
      add([](int, int j, int k) { return double(j * k); });
      break;
    case LoglinModel::QSM:
      // common pairwise interaction
      add([](int i, int j, int k) { return double(i * j + i * k + j * k); });
      break;
    case LoglinModel::PQSM:
      // u12 free, u13 = u23 shared
      add([](int i, int j, int) { return double(i * j); });
      add([](int i, int j, int k) { return double(i * k + j * k); });
      break;
  }
  return spec;
}

GlmFit irls_fit(const TrsTable& table, const DesignSpec& design,
                bool add_half) {
  const int m = static_cast<int>(design.columns.size());
  Eigen::MatrixXd X(7, m);
  for (int c = 0; c < 7; ++c) {
    for (int p = 0; p < m; ++p) X(c, p) = design.columns[p][c];
  }
  if (Eigen::FullPivLU<Eigen::MatrixXd>(X).rank() < m) {
    throw SingularDesign("design matrix " + design.name +
                         " is rank deficient");
  }

  Eigen::VectorXd y(7);
  const auto cells = table.cells();
  for (int c = 0; c < 7; ++c) y[c] = double(cells[c]) + (add_half ? 0.5 : 0.0);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(m);
  beta[0] = std::log(double(table.x0()) / 7.0 + (add_half ? 0.5 : 0.0));

  auto mean_of = [&X](const Eigen::VectorXd& b) {
    return (X * b).array().exp().matrix().eval();
  };

  GlmFit fit;
  Eigen::VectorXd mu = mean_of(beta);
  double dev = poisson_deviance(y, mu);
  bool converged = false;
  int iter = 0;
  for (; iter < 100; ++iter) {
    Eigen::MatrixXd xtwx = X.transpose() * mu.asDiagonal() * X;
    Eigen::VectorXd score = X.transpose() * (y - mu);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(xtwx);
    if (ldlt.info() != Eigen::Success) {
      throw SingularDesign("IRLS normal equations are singular for " +
                           design.name);
    }
    Eigen::VectorXd step = ldlt.solve(score);
    // step-halving keeps the deviance non-increasing on sparse tables
    double scale = 1.0;
    Eigen::VectorXd cand;
    double cand_dev = dev;
    for (int h = 0; h < 30; ++h) {
      cand = beta + scale * step;
      cand_dev = poisson_deviance(y, mean_of(cand));
      if (cand_dev <= dev + 1e-12) break;
      scale *= 0.5;
    }
    const double delta = (cand - beta).cwiseAbs().maxCoeff();
    beta = cand;
    mu = mean_of(beta);
    dev = cand_dev;
    if (delta < 1e-10) {
      converged = true;
      ++iter;
      break;
    }
  }

  fit.coefficients.assign(beta.data(), beta.data() + m);
  for (int c = 0; c < 7; ++c) fit.fitted[c] = mu[c];
  fit.deviance = dev;
  fit.converged = converged;
  fit.iterations = iter;
  fit.boundary = beta.cwiseAbs().maxCoeff() > kBoundaryCoef;
  return fit;
}

EstimateResult estimate_loglinear(const TrsTable& table, LoglinModel model,
                                  bool add_half) {
  const GlmFit fit = irls_fit(table, build_design(model), add_half);
  const double m000 = std::exp(fit.coefficients[0]);
  EstimateResult r;
  r.method = to_string(model);
  r.label = table.label;
  r.n_hat = double(table.x0()) + m000;
  r.feasible = r.n_hat >= double(table.x0());
  r.diagnostics["m000"] = m000;
  r.diagnostics["deviance"] = fit.deviance;
  r.diagnostics["iterations"] = fit.iterations;
  r.diagnostics["converged"] = fit.converged ? 1.0 : 0.0;
  r.diagnostics["boundary"] = fit.boundary ? 1.0 : 0.0;
  return r;
}

}  // namespace mse
