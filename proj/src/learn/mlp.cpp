#include "testlab/learn/mlp.hpp"

#include <cmath>
#include <numeric>
#include <random>

#include "testlab/common/error.hpp"

namespace testlab::learn {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Logistic: return "logistic";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
  }
  return "tanh";
}

Activation parse_activation(std::string_view text) {
  if (text == "logistic") return Activation::Logistic;
  if (text == "tanh") return Activation::Tanh;
  if (text == "relu") return Activation::Relu;
  throw InvalidParams("unknown activation '" + std::string(text) +
                      "' (expected logistic, tanh or relu)");
}

namespace {

using Mat = Perceptron::Mat;
using Vec = Perceptron::Vec;

void activate(Activation a, Mat& z) {
  switch (a) {
    case Activation::Logistic:
      z = (1.0 + (-z.array()).exp()).inverse().matrix();
      break;
    case Activation::Tanh:
      z = z.array().tanh().matrix();
      break;
    case Activation::Relu:
      z = z.array().max(0.0).matrix();
      break;
  }
}

// Derivative expressed through the activation output.
void multiply_derivative(Activation a, const Mat& out, Mat& delta) {
  switch (a) {
    case Activation::Logistic:
      delta.array() *= out.array() * (1.0 - out.array());
      break;
    case Activation::Tanh:
      delta.array() *= 1.0 - out.array().square();
      break;
    case Activation::Relu:
      delta.array() *= (out.array() > 0.0).cast<double>();
      break;
  }
}

Mat gather(const Samples& s, std::span<const std::size_t> rows, Vec* y) {
  Mat x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(s.d));
  if (y) y->resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < s.d; ++j) {
      x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s.at(rows[i], j);
    }
    if (y) (*y)(static_cast<Eigen::Index>(i)) = s.y[rows[i]];
  }
  return x;
}

std::vector<std::size_t> all_rows(std::size_t n) {
  std::vector<std::size_t> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

}  // namespace

Perceptron::Perceptron(std::size_t dims, MlpParams params, std::vector<Mat> weights,
                       std::vector<Vec> biases)
    : dims_(dims), params_(std::move(params)), weights_(std::move(weights)),
      biases_(std::move(biases)) {
  if (weights_.size() != params_.hidden.size() + 1 || biases_.size() != weights_.size()) {
    throw InvalidParams("perceptron layer count does not match its hidden sizes");
  }
  Eigen::Index in = static_cast<Eigen::Index>(dims_);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    const Eigen::Index out =
        l < params_.hidden.size() ? static_cast<Eigen::Index>(params_.hidden[l]) : 1;
    if (weights_[l].rows() != in || weights_[l].cols() != out || biases_[l].size() != out) {
      throw InvalidParams("perceptron layer " + std::to_string(l) + " has the wrong shape");
    }
    in = out;
  }
}

Perceptron Perceptron::initialise(std::size_t dims, const MlpParams& params, std::uint64_t seed,
                                  bool zero_output, double output_bias) {
  if (dims == 0) throw InvalidParams("perceptron needs at least one input");
  for (std::size_t h : params.hidden) {
    if (h == 0) throw InvalidParams("hidden layers must be non-empty");
  }
  std::mt19937_64 rng(seed);
  std::vector<Mat> w;
  std::vector<Vec> b;
  std::size_t in = dims;
  const double factor = params.activation == Activation::Logistic ? 2.0 : 6.0;
  for (std::size_t l = 0; l <= params.hidden.size(); ++l) {
    const bool last = l == params.hidden.size();
    const std::size_t out = last ? 1 : params.hidden[l];
    Mat wl(static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(out));
    Vec bl(static_cast<Eigen::Index>(out));
    if (last && zero_output) {
      wl.setZero();
      bl.setConstant(output_bias);
    } else {
      const double limit = std::sqrt(factor / static_cast<double>(in + out));
      std::uniform_real_distribution<double> u(-limit, limit);
      for (Eigen::Index r = 0; r < wl.rows(); ++r)
        for (Eigen::Index c = 0; c < wl.cols(); ++c) wl(r, c) = u(rng);
      for (Eigen::Index c = 0; c < bl.size(); ++c) bl(c) = u(rng);
    }
    w.push_back(std::move(wl));
    b.push_back(std::move(bl));
    in = out;
  }
  return Perceptron(dims, params, std::move(w), std::move(b));
}

Perceptron::Pass Perceptron::forward(const Mat& x) const {
  Pass p;
  p.activations.reserve(weights_.size() + 1);
  p.activations.push_back(x);
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Mat z = p.activations.back() * weights_[l];
    z.rowwise() += biases_[l].transpose();
    if (l + 1 < weights_.size()) activate(params_.activation, z);
    p.activations.push_back(std::move(z));
  }
  return p;
}

double Perceptron::batch_loss(const Pass& pass, const Vec& y) const {
  const auto m = static_cast<double>(y.size());
  const double err = (pass.activations.back().col(0) - y).squaredNorm();
  double reg = 0.0;
  for (const auto& w : weights_) reg += w.squaredNorm();
  return err / (2.0 * m) + params_.alpha * reg / (2.0 * m);
}

void Perceptron::backward(const Pass& pass, const Vec& y, std::vector<Mat>& dw,
                          std::vector<Vec>& db) const {
  const auto m = static_cast<double>(y.size());
  dw.resize(weights_.size());
  db.resize(weights_.size());
  Mat delta = (pass.activations.back().col(0) - y) / m;
  for (std::size_t l = weights_.size(); l-- > 0;) {
    dw[l].noalias() = pass.activations[l].transpose() * delta;
    dw[l] += (params_.alpha / m) * weights_[l];
    db[l] = delta.colwise().sum().transpose();
    if (l > 0) {
      Mat next = delta * weights_[l].transpose();
      multiply_derivative(params_.activation, pass.activations[l], next);
      delta = std::move(next);
    }
  }
}

Perceptron Perceptron::fit(const Samples& s, const MlpParams& params, std::uint64_t seed) {
  if (s.n == 0) throw InvalidArgument("cannot fit a perceptron on zero rows");
  if (params.batch_size == 0) throw InvalidParams("batch_size must be positive");
  double shift = 0.0;
  for (double y : s.y) shift += y - s.y.front();
  const double mean_y = s.y.front() + shift / static_cast<double>(s.n);
  Perceptron net = initialise(s.d, params, seed, true, mean_y);
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);

  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  std::vector<Mat> mw, vw;
  std::vector<Vec> mb, vb;
  for (std::size_t l = 0; l < net.weights_.size(); ++l) {
    mw.push_back(Mat::Zero(net.weights_[l].rows(), net.weights_[l].cols()));
    vw.push_back(mw.back());
    mb.push_back(Vec::Zero(net.biases_[l].size()));
    vb.push_back(mb.back());
  }
  double lr = params.learning_rate;
  double best_loss = std::numeric_limits<double>::infinity();
  int stale = 0;
  std::size_t step = 0;
  std::vector<std::size_t> order = all_rows(s.n);
  std::vector<Mat> dw;
  std::vector<Vec> db;
  const std::size_t batch = std::min(params.batch_size, s.n);
  for (std::size_t epoch = 0; epoch < params.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < s.n; start += batch) {
      const std::size_t len = std::min(batch, s.n - start);
      Vec y;
      const Mat x = gather(s, std::span(order).subspan(start, len), &y);
      const Pass pass = net.forward(x);
      epoch_loss += net.batch_loss(pass, y) * static_cast<double>(len);
      net.backward(pass, y, dw, db);
      ++step;
      const double t = static_cast<double>(step);
      const double lr_t = lr * std::sqrt(1.0 - std::pow(beta2, t)) / (1.0 - std::pow(beta1, t));
      for (std::size_t l = 0; l < net.weights_.size(); ++l) {
        mw[l] = beta1 * mw[l] + (1.0 - beta1) * dw[l];
        vw[l] = beta2 * vw[l] + (1.0 - beta2) * dw[l].cwiseProduct(dw[l]);
        net.weights_[l].array() -= lr_t * mw[l].array() / (vw[l].array().sqrt() + eps);
        mb[l] = beta1 * mb[l] + (1.0 - beta1) * db[l];
        vb[l] = beta2 * vb[l] + (1.0 - beta2) * db[l].cwiseProduct(db[l]);
        net.biases_[l].array() -= lr_t * mb[l].array() / (vb[l].array().sqrt() + eps);
      }
    }
    epoch_loss /= static_cast<double>(s.n);
    net.loss_curve_.push_back(epoch_loss);
    if (params.adaptive) {
      if (epoch_loss > best_loss - 1e-4) {
        if (++stale >= 2) {
          lr /= 5.0;
          stale = 0;
        }
      } else {
        stale = 0;
      }
      best_loss = std::min(best_loss, epoch_loss);
    }
  }
  return net;
}

double Perceptron::predict(std::span<const double> x) const {
  check_dims(x);
  Eigen::RowVectorXd a = Eigen::Map<const Eigen::RowVectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    Eigen::RowVectorXd z = a * weights_[l] + biases_[l].transpose();
    if (l + 1 < weights_.size()) {
      Mat zm = z;
      activate(params_.activation, zm);
      z = zm;
    }
    a = std::move(z);
  }
  return a(0);
}

double Perceptron::loss(const Samples& batch) const {
  Vec y;
  const Mat x = gather(batch, all_rows(batch.n), &y);
  return batch_loss(forward(x), y);
}

std::vector<double> Perceptron::gradient(const Samples& batch) const {
  Vec y;
  const Mat x = gather(batch, all_rows(batch.n), &y);
  std::vector<Mat> dw;
  std::vector<Vec> db;
  backward(forward(x), y, dw, db);
  std::vector<double> out;
  out.reserve(parameter_count());
  for (std::size_t l = 0; l < dw.size(); ++l) {
    for (Eigen::Index r = 0; r < dw[l].rows(); ++r)
      for (Eigen::Index c = 0; c < dw[l].cols(); ++c) out.push_back(dw[l](r, c));
    for (Eigen::Index c = 0; c < db[l].size(); ++c) out.push_back(db[l](c));
  }
  return out;
}

std::vector<double> Perceptron::parameters() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) out.push_back(weights_[l](r, c));
    for (Eigen::Index c = 0; c < biases_[l].size(); ++c) out.push_back(biases_[l](c));
  }
  return out;
}

void Perceptron::set_parameters(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw DimensionMismatch("expected " + std::to_string(parameter_count()) + " parameters");
  }
  std::size_t k = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) weights_[l](r, c) = values[k++];
    for (Eigen::Index c = 0; c < biases_[l].size(); ++c) biases_[l](c) = values[k++];
  }
}

std::size_t Perceptron::parameter_count() const {
  std::size_t n = 0;
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    n += static_cast<std::size_t>(weights_[l].size() + biases_[l].size());
  }
  return n;
}

Json Perceptron::to_json() const {
  Json j;
  j["family"] = "MLPR";
  j["dims"] = dims_;
  j["params"] = {{"hidden_layer_sizes", params_.hidden},
                 {"activation", to_string(params_.activation)},
                 {"learning_rate", params_.adaptive ? "adaptive" : "constant"},
                 {"epochs", params_.epochs},
                 {"learning_rate_init", params_.learning_rate},
                 {"batch_size", params_.batch_size},
                 {"alpha", params_.alpha}};
  Json layers = Json::array();
  for (std::size_t l = 0; l < weights_.size(); ++l) {
    std::vector<double> w;
    for (Eigen::Index r = 0; r < weights_[l].rows(); ++r)
      for (Eigen::Index c = 0; c < weights_[l].cols(); ++c) w.push_back(weights_[l](r, c));
    std::vector<double> b(biases_[l].data(), biases_[l].data() + biases_[l].size());
    layers.push_back({{"weights", w}, {"biases", b}});
  }
  j["layers"] = std::move(layers);
  return j;
}

Perceptron Perceptron::from_json(const Json& j) {
  MlpParams p;
  const auto& jp = j.at("params");
  p.hidden = jp.at("hidden_layer_sizes").get<std::vector<std::size_t>>();
  p.activation = parse_activation(jp.at("activation").get<std::string>());
  p.adaptive = jp.at("learning_rate").get<std::string>() == "adaptive";
  p.epochs = jp.at("epochs").get<std::size_t>();
  p.learning_rate = jp.at("learning_rate_init").get<double>();
  p.batch_size = jp.at("batch_size").get<std::size_t>();
  p.alpha = jp.at("alpha").get<double>();
  const auto dims = j.at("dims").get<std::size_t>();
  const auto& layers = j.at("layers");
  if (layers.size() != p.hidden.size() + 1) throw InvalidParams("perceptron layer count mismatch");
  std::vector<Mat> w;
  std::vector<Vec> b;
  std::size_t in = dims;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const std::size_t out = l < p.hidden.size() ? p.hidden[l] : 1;
    const auto wv = layers[l].at("weights").get<std::vector<double>>();
    const auto bv = layers[l].at("biases").get<std::vector<double>>();
    if (wv.size() != in * out || bv.size() != out) {
      throw InvalidParams("perceptron layer " + std::to_string(l) + " has the wrong size");
    }
    Mat wl(static_cast<Eigen::Index>(in), static_cast<Eigen::Index>(out));
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < wl.rows(); ++r)
      for (Eigen::Index c = 0; c < wl.cols(); ++c) wl(r, c) = wv[k++];
    w.push_back(std::move(wl));
    b.push_back(Eigen::Map<const Vec>(bv.data(), static_cast<Eigen::Index>(bv.size())));
    in = out;
  }
  return Perceptron(dims, p, std::move(w), std::move(b));
}

}  // namespace testlab::learn
