#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace procx {

/// Per-feature min-max scaling to [0, 1], fitted on training rows. Values
/// outside the fitted range are clipped; constant features map to 0.
struct MinMaxScaler {
  Eigen::VectorXd min;
  Eigen::VectorXd max;

  static MinMaxScaler fit(const Eigen::MatrixXd& rows);
  Eigen::Index dim() const noexcept { return min.size(); }
  Eigen::VectorXd transform(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::MatrixXd transform_rows(const Eigen::MatrixXd& rows) const;
};

struct TrainParams {
  int epochs = 200;
  double learning_rate = 0.01;
  double l2 = 1e-4;
  std::uint64_t seed = 0;
};

struct TrainReport {
  std::vector<double> epoch_loss;  // mean hinge loss seen during each epoch
  double train_accuracy = 0.0;
};

/// Linear max-margin classifier over scaled features. Ties (margin exactly 0)
/// are positive.
struct LinearModel {
  Eigen::VectorXd weights;
  double bias = 0.0;
  MinMaxScaler scaler;

  double margin(const Eigen::Ref<const Eigen::VectorXd>& raw) const;
  double margin_scaled(const Eigen::Ref<const Eigen::VectorXd>& scaled) const {
    return weights.dot(scaled) + bias;
  }
  bool predict(const Eigen::Ref<const Eigen::VectorXd>& raw) const { return margin(raw) >= 0.0; }
};

/// Hinge loss + L2 by stochastic subgradient descent. The step size follows
/// eta_t = lr / (1 + lr * l2 * t) over the global update count t. Sample order
/// is reshuffled each epoch from a 64-bit Mersenne Twister seeded with
/// `params.seed`; the shuffle is implemented here so results do not depend on
/// the standard library's distributions.
/// Throws DegenerateLabels when only one class is present and NonFinite when
/// the loss diverges.
LinearModel train_linear_svm(const Eigen::MatrixXd& rows, const std::vector<bool>& labels,
                             const TrainParams& params, TrainReport* report = nullptr);

}  // namespace procx
