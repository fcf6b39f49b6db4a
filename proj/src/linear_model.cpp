#include "procx/linear_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "procx/error.hpp"

namespace procx {

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& rows) {
  MinMaxScaler s;
  if (rows.rows() == 0) {
    s.min = Eigen::VectorXd::Zero(rows.cols());
    s.max = Eigen::VectorXd::Zero(rows.cols());
    return s;
  }
  s.min = rows.colwise().minCoeff().transpose();
  s.max = rows.colwise().maxCoeff().transpose();
  return s;
}

Eigen::VectorXd MinMaxScaler::transform(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double range = max[i] - min[i];
    out[i] = range > 0.0 ? std::clamp((x[i] - min[i]) / range, 0.0, 1.0) : 0.0;
  }
  return out;
}

Eigen::MatrixXd MinMaxScaler::transform_rows(const Eigen::MatrixXd& rows) const {
  Eigen::MatrixXd out(rows.rows(), rows.cols());
  for (Eigen::Index r = 0; r < rows.rows(); ++r) out.row(r) = transform(rows.row(r).transpose()).transpose();
  return out;
}

double LinearModel::margin(const Eigen::Ref<const Eigen::VectorXd>& raw) const {
  return margin_scaled(scaler.transform(raw));
}

LinearModel train_linear_svm(const Eigen::MatrixXd& rows, const std::vector<bool>& labels,
                             const TrainParams& params, TrainReport* report) {
  const auto n = static_cast<std::size_t>(rows.rows());
  if (labels.size() != n) throw Error("train: row/label count mismatch");
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  if (positives == 0 || positives == n) throw DegenerateLabels("training labels contain a single class");

  LinearModel model;
  model.scaler = MinMaxScaler::fit(rows);
  const Eigen::MatrixXd x = model.scaler.transform_rows(rows);
  model.weights = Eigen::VectorXd::Zero(rows.cols());
  model.bias = 0.0;

  std::mt19937_64 rng(params.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> epoch_loss;
  epoch_loss.reserve(static_cast<std::size_t>(std::max(params.epochs, 0)));
  double t = 0.0;

  for (int epoch = 0; epoch < params.epochs; ++epoch) {
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    double loss = 0.0;
    for (std::size_t idx : order) {
      const double y = labels[idx] ? 1.0 : -1.0;
      const double eta = params.learning_rate / (1.0 + params.learning_rate * params.l2 * t);
      const double m = y * (model.weights.dot(x.row(static_cast<Eigen::Index>(idx))) + model.bias);
      loss += std::max(0.0, 1.0 - m);
      model.weights *= 1.0 - eta * params.l2;
      if (m < 1.0) {
        model.weights += (eta * y) * x.row(static_cast<Eigen::Index>(idx)).transpose();
        model.bias += eta * y;
      }
      t += 1.0;
    }
    loss /= static_cast<double>(n);
    if (!std::isfinite(loss) || !model.weights.allFinite() || !std::isfinite(model.bias))
      throw NonFinite("training diverged at epoch " + std::to_string(epoch + 1) +
                      "; lower the learning rate");
    epoch_loss.push_back(loss);
  }

  if (report) {
    report->epoch_loss = std::move(epoch_loss);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < n; ++i)
      if ((model.margin_scaled(x.row(static_cast<Eigen::Index>(i)).transpose()) >= 0.0) == labels[i]) ++correct;
    report->train_accuracy = static_cast<double>(correct) / static_cast<double>(n);
  }
  return model;
}

}  // namespace procx
