#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "testlab/learn/regressor.hpp"

namespace testlab::learn {

enum class Activation { Logistic, Tanh, Relu };
std::string_view to_string(Activation a);
Activation parse_activation(std::string_view text);  // InvalidParams

struct MlpParams {
  std::vector<std::size_t> hidden{512, 256, 100};
  Activation activation = Activation::Tanh;
  /// Divide the step by 5 after two epochs without a 1e-4 loss improvement.
  bool adaptive = false;
  std::size_t epochs = 100;
  double learning_rate = 1e-3;
  std::size_t batch_size = 200;
  double alpha = 1e-4;  // L2 penalty
};

/// Fully connected regressor trained with Adam on
///   L = 1/(2m) sum (p - y)^2 + alpha/(2m) sum ||W||^2.
class Perceptron final : public Regressor {
 public:
  using Mat = Eigen::MatrixXd;
  using Vec = Eigen::VectorXd;

  Perceptron() = default;
  Perceptron(std::size_t dims, MlpParams params, std::vector<Mat> weights, std::vector<Vec> biases);

  /// Glorot-uniform hidden layers. With `zero_output` the output layer
  /// starts at zero weights and a bias of `output_bias`.
  static Perceptron initialise(std::size_t dims, const MlpParams& params, std::uint64_t seed,
                               bool zero_output, double output_bias = 0.0);
  static Perceptron fit(const Samples& s, const MlpParams& params, std::uint64_t seed);

  Family family() const override { return Family::MLPR; }
  std::size_t dims() const override { return dims_; }
  double predict(std::span<const double> x) const override;
  Json to_json() const override;
  static Perceptron from_json(const Json& j);

  double loss(const Samples& batch) const;
  /// Analytic gradient of `loss` in `parameters()` order.
  std::vector<double> gradient(const Samples& batch) const;
  /// Layer by layer: weights (row-major, inputs x outputs), then biases.
  std::vector<double> parameters() const;
  void set_parameters(std::span<const double> values);
  std::size_t parameter_count() const;

  const std::vector<double>& loss_curve() const { return loss_curve_; }
  const MlpParams& params() const { return params_; }

 private:
  struct Pass {
    std::vector<Mat> activations;  // input, then each layer output
  };
  Pass forward(const Mat& x) const;
  void backward(const Pass& pass, const Vec& y, std::vector<Mat>& dw, std::vector<Vec>& db) const;
  double batch_loss(const Pass& pass, const Vec& y) const;

  std::size_t dims_ = 0;
  MlpParams params_;
  std::vector<Mat> weights_;
  std::vector<Vec> biases_;
  std::vector<double> loss_curve_;
};

}  // namespace testlab::learn
