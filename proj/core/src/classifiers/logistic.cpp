#include <Eigen/Dense>
#include <cmath>

#include "cdprov/classifiers.hpp"

namespace cdprov::detail {
namespace {

constexpr double kGradientTolerance = 1e-8;
constexpr int kMaxStepHalvings = 40;

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double linear(std::span<const double> w, std::span<const double> x) {
  double z = w[0];
  for (std::size_t j = 0; j < x.size(); ++j) z += w[j + 1] * x[j];
  return z;
}

double target(Label l) { return l == Label::RECD ? 1.0 : 0.0; }

}  // namespace

LossAndGradient logistic_loss(std::span<const double> weights, const std::vector<std::vector<double>>& rows,
                              std::span<const Label> labels, double ridge) {
  LossAndGradient out;
  out.gradient.assign(weights.size(), 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double z = linear(weights, rows[i]);
    const double y = target(labels[i]);
    // -[y log p + (1 - y) log(1 - p)] = softplus(z) - y z
    out.loss += softplus(z) - y * z;
    const double r = sigmoid(z) - y;
    out.gradient[0] += r;
    for (std::size_t j = 0; j < rows[i].size(); ++j) out.gradient[j + 1] += r * rows[i][j];
  }
  for (std::size_t j = 1; j < weights.size(); ++j) {
    out.loss += ridge * weights[j] * weights[j];
    out.gradient[j] += 2.0 * ridge * weights[j];
  }
  return out;
}

LogisticModel train_logistic(const std::vector<std::vector<double>>& rows, std::span<const Label> labels,
                             double ridge, int maxIterations) {
  const std::size_t dim = rows.empty() ? 1 : rows.front().size() + 1;
  LogisticModel model;
  model.weights.assign(dim, 0.0);

  // Damped Newton iterations on the penalized log-loss.
  auto current = logistic_loss(model.weights, rows, labels, ridge);
  for (int it = 0; it < maxIterations; ++it) {
    const Eigen::Map<const Eigen::VectorXd> grad(current.gradient.data(), static_cast<Eigen::Index>(dim));
    model.gradientNorm = grad.norm();
    if (model.gradientNorm < kGradientTolerance) break;

    Eigen::MatrixXd hessian = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    Eigen::VectorXd x(static_cast<Eigen::Index>(dim));
    for (const auto& row : rows) {
      x(0) = 1.0;
      for (std::size_t j = 0; j < row.size(); ++j) x(static_cast<Eigen::Index>(j + 1)) = row[j];
      const double p = sigmoid(linear(model.weights, row));
      hessian.selfadjointView<Eigen::Lower>().rankUpdate(x, p * (1.0 - p));
    }
    hessian = hessian.selfadjointView<Eigen::Lower>();
    for (Eigen::Index j = 1; j < hessian.rows(); ++j) hessian(j, j) += 2.0 * ridge;
    // Keeps the system solvable when a column is constant and the intercept absorbs it.
    hessian.diagonal().array() += 1e-12;

    const Eigen::VectorXd step = hessian.ldlt().solve(grad);
    bool accepted = false;
    double scale = 1.0;
    for (int h = 0; h < kMaxStepHalvings; ++h, scale *= 0.5) {
      std::vector<double> trial(model.weights);
      for (std::size_t j = 0; j < dim; ++j) trial[j] -= scale * step(static_cast<Eigen::Index>(j));
      auto next = logistic_loss(trial, rows, labels, ridge);
      if (std::isfinite(next.loss) && next.loss <= current.loss) {
        model.weights = std::move(trial);
        current = std::move(next);
        accepted = true;
        break;
      }
    }
    model.iterations = it + 1;
    if (!accepted) break;
  }
  const Eigen::Map<const Eigen::VectorXd> grad(current.gradient.data(), static_cast<Eigen::Index>(dim));
  model.gradientNorm = grad.norm();
  return model;
}

double logistic_recd(const LogisticModel& m, std::span<const double> row) {
  return sigmoid(linear(m.weights, row));
}

}  // namespace cdprov::detail
