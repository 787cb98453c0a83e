// Copyright 2026 The Reupload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reupload/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace reupload {
namespace {

constexpr int kHistogramBins = 30;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, std::size_t i) {
  return splitmix64(splitmix64(seed ^ splitmix64(stream)) + i);
}

double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sample_loss(double f, double y, const TrainConfig& c) {
  if (c.loss == Loss::Mse) return (f - y) * (f - y);
  const double z = c.logistic_scale * (f - c.classification_threshold);
  return softplus(z) - y * z;
}

double sample_loss_derivative(double f, double y, const TrainConfig& c) {
  if (c.loss == Loss::Mse) return 2.0 * (f - y);
  const double z = c.logistic_scale * (f - c.classification_threshold);
  return c.logistic_scale * (1.0 / (1.0 + std::exp(-z)) - y);
}

int generator_size(const LayerSpec& l) {
  if (const auto* g = std::get_if<GeneralCoupling>(&l.coupling)) return static_cast<int>(g->generator.coeffs().size());
  return 0;
}

int layer_param_count(const LayerSpec& l) { return 3 + generator_size(l); }

void set_layer_parameters(LayerSpec& l, const Eigen::VectorXd& p, Eigen::Index at) {
  l.theta = p(at);
  l.phi = p(at + 1);
  l.beta = p(at + 2);
  if (auto* g = std::get_if<GeneralCoupling>(&l.coupling)) g->generator.coeffs() = p.segment(at + 3, g->generator.coeffs().size());
}

// Per-sample prefix states and suffix maps for one parameter setting. Changing a single
// layer then costs one transfer evaluation per sample.
class BatchCache {
 public:
  BatchCache(const ReuploadModel& model, const std::vector<Eigen::VectorXd>& inputs)
      : model_(model), inputs_(inputs) {
    const std::size_t L = model.layers.size();
    for (const auto& layer : model.layers) transfers_.emplace_back(layer_unitary(layer, model.n_qubits), model.n_qubits);
    const std::size_t n = inputs.size();
    prefix_.assign(n, std::vector<Eigen::Vector3d>(L + 1));
    suffix_.assign(n, std::vector<AffineBlochMap>(L + 1));
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<AffineBlochMap> maps(L);
      prefix_[i][0] = initial_bloch(model.initial_signal);
      for (std::size_t l = 0; l < L; ++l) {
        maps[l] = transfers_[l].at(inputs[i]);
        prefix_[i][l + 1] = maps[l](prefix_[i][l]);
      }
      // suffix_[i][l] maps the output of layer l (1-based) to the final Bloch vector.
      suffix_[i][L] = AffineBlochMap{};
      for (std::size_t l = L; l > 0; --l) suffix_[i][l - 1] = maps[l - 1].then(suffix_[i][l]);
    }
  }

  std::size_t size() const { return inputs_.size(); }
  const Eigen::Vector3d& r_final(std::size_t i) const { return prefix_[i].back(); }

  // Final Bloch vector with layer l (0-based) replaced by the given transfer.
  Eigen::Vector3d r_with_layer(std::size_t i, std::size_t l, const LayerTransfer& t) const {
    return suffix_[i][l + 1](t.at(inputs_[i])(prefix_[i][l]));
  }

 private:
  const ReuploadModel& model_;
  const std::vector<Eigen::VectorXd>& inputs_;
  std::vector<LayerTransfer> transfers_;
  std::vector<std::vector<Eigen::Vector3d>> prefix_;
  std::vector<std::vector<AffineBlochMap>> suffix_;
};

std::vector<Eigen::VectorXd> inputs_of(const Dataset& data) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(data.size());
  for (const auto& s : data) out.push_back(lambda_hat(s.state));
  return out;
}

class Objective {
 public:
  Objective(const TrainConfig& c, std::uint64_t stream) : c_(c), stream_(stream) {}

  double output(const Eigen::Vector3d& r, const Eigen::Vector3d& w, double b, std::size_t i) const {
    if (c_.shots == 0) return w.dot(r) + b;
    Rng rng(sample_seed(c_.seed, stream_, i));
    return readout(r, w, b, c_.shots, rng);
  }

 private:
  const TrainConfig& c_;
  std::uint64_t stream_;
};

struct Gradient {
  double loss = 0.0;
  Eigen::VectorXd grad;
};

// Mean loss and its gradient in the flat parameters. Rotation angles of controlled-Pauli
// layers use the two-term shift rule per sample when use_shift is set.
Gradient loss_gradient(const ReuploadModel& model, const Dataset& batch, const std::vector<Eigen::VectorXd>& inputs,
                       const TrainConfig& c, std::uint64_t stream, bool use_shift) {
  const BatchCache cache(model, inputs);
  const Objective obj(c, stream);
  const std::size_t n = batch.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  Eigen::VectorXd f0(static_cast<Eigen::Index>(n));
  Gradient out;
  for (std::size_t i = 0; i < n; ++i) {
    f0(static_cast<Eigen::Index>(i)) = obj.output(cache.r_final(i), model.w, model.b, i);
    out.loss += sample_loss(f0(static_cast<Eigen::Index>(i)), batch[i].label, c) * inv_n;
  }

  const Eigen::VectorXd params = model_parameters(model);
  out.grad = Eigen::VectorXd::Zero(params.size());
  const double h = c.fd_step;

  auto mean_loss_with_layer = [&](std::size_t l, const LayerSpec& spec) {
    const LayerTransfer t(layer_unitary(spec, model.n_qubits), model.n_qubits);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) total += sample_loss(obj.output(cache.r_with_layer(i, l, t), model.w, model.b, i), batch[i].label, c);
    return total * inv_n;
  };

  Eigen::Index at = 0;
  for (std::size_t l = 0; l < model.layers.size(); ++l) {
    const LayerSpec& base = model.layers[l];
    const int count = layer_param_count(base);
    const bool shift = use_shift && is_restricted(base.coupling);
    for (int k = 0; k < count; ++k) {
      const Eigen::Index p = at + k;
      if (k < 3 && !c.train_rotations) continue;
      if (k < 3 && shift) {
        Eigen::VectorXd shifted = params;
        LayerSpec plus = base, minus = base;
        shifted(p) = params(p) + std::numbers::pi / 2;
        set_layer_parameters(plus, shifted, at);
        shifted(p) = params(p) - std::numbers::pi / 2;
        set_layer_parameters(minus, shifted, at);
        const LayerTransfer tp(layer_unitary(plus, model.n_qubits), model.n_qubits);
        const LayerTransfer tm(layer_unitary(minus, model.n_qubits), model.n_qubits);
        double g = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double df = 0.5 * (obj.output(cache.r_with_layer(i, l, tp), model.w, model.b, i) -
                                   obj.output(cache.r_with_layer(i, l, tm), model.w, model.b, i));
          g += sample_loss_derivative(f0(static_cast<Eigen::Index>(i)), batch[i].label, c) * df;
        }
        out.grad(p) = g * inv_n;
        continue;
      }
      Eigen::VectorXd shifted = params;
      LayerSpec plus = base, minus = base;
      shifted(p) = params(p) + h;
      set_layer_parameters(plus, shifted, at);
      shifted(p) = params(p) - h;
      set_layer_parameters(minus, shifted, at);
      out.grad(p) = (mean_loss_with_layer(l, plus) - mean_loss_with_layer(l, minus)) / (2 * h);
    }
    at += count;
  }

  for (int k = 0; k < 4; ++k) {
    Eigen::Vector3d wp = model.w, wm = model.w;
    double bp = model.b, bm = model.b;
    if (k < 3) {
      wp(k) += h;
      wm(k) -= h;
    } else {
      bp += h;
      bm -= h;
    }
    double up = 0.0, down = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      up += sample_loss(obj.output(cache.r_final(i), wp, bp, i), batch[i].label, c);
      down += sample_loss(obj.output(cache.r_final(i), wm, bm, i), batch[i].label, c);
    }
    out.grad(at + k) = (up - down) * inv_n / (2 * h);
  }
  return out;
}

}  // namespace

void TrainConfig::validate() const {
  if (!(learning_rate > 0)) throw std::invalid_argument("train config: learning_rate must be positive");
  if (!(fd_step > 0) || fd_step > 1e-2) throw std::invalid_argument("train config: fd_step must lie in (0, 1e-2]");
  if (max_epochs < 1) throw std::invalid_argument("train config: max_epochs must be at least 1");
  if (batch_size < 0 || shots < 0) throw std::invalid_argument("train config: negative batch size or shots");
  if (shots > 0 && shots < 3) throw std::invalid_argument("train config: shots must be 0 or at least 3");
}

Eigen::VectorXd model_parameters(const ReuploadModel& model) {
  Eigen::Index size = 4;
  for (const auto& l : model.layers) size += layer_param_count(l);
  Eigen::VectorXd p(size);
  Eigen::Index at = 0;
  for (const auto& l : model.layers) {
    p(at) = l.theta;
    p(at + 1) = l.phi;
    p(at + 2) = l.beta;
    if (const auto* g = std::get_if<GeneralCoupling>(&l.coupling)) p.segment(at + 3, g->generator.coeffs().size()) = g->generator.coeffs();
    at += layer_param_count(l);
  }
  p.segment<3>(at) = model.w;
  p(at + 3) = model.b;
  return p;
}

void set_model_parameters(ReuploadModel& model, const Eigen::VectorXd& params) {
  Eigen::Index at = 0;
  for (auto& l : model.layers) {
    set_layer_parameters(l, params, at);
    at += layer_param_count(l);
  }
  if (params.size() != at + 4) throw std::invalid_argument("set_model_parameters: size mismatch");
  model.w = params.segment<3>(at);
  model.b = params(at + 3);
}

double gradient_param_shift(const ReuploadModel& model, const DensityMatrix& rho, int layer_index) {
  if (layer_index < 0 || layer_index >= model.depth()) throw std::out_of_range("gradient_param_shift: layer index");
  if (!is_restricted(model.layers[static_cast<std::size_t>(layer_index)].coupling))
    throw std::invalid_argument("gradient_param_shift: general layers have no two-term shift rule");
  ReuploadModel shifted = model;
  auto& theta = shifted.layers[static_cast<std::size_t>(layer_index)].theta;
  const double t0 = theta;
  theta = t0 + std::numbers::pi / 2;
  const double up = run_model(shifted, rho).f;
  theta = t0 - std::numbers::pi / 2;
  const double down = run_model(shifted, rho).f;
  return 0.5 * (up - down);
}

double dataset_loss(const ReuploadModel& model, const Dataset& data, const TrainConfig& config, std::uint64_t stream) {
  const TransferModel fast(model);
  const Objective obj(config, stream);
  double total = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    total += sample_loss(obj.output(fast.r_final(lambda_hat(data[i].state)), model.w, model.b, i), data[i].label, config);
  }
  return total / static_cast<double>(data.size());
}

Eigen::VectorXd gradient_fd(const ReuploadModel& model, const Dataset& batch, const TrainConfig& config, std::uint64_t stream) {
  config.validate();
  if (batch.empty()) throw std::invalid_argument("gradient_fd: empty batch");
  return loss_gradient(model, batch, inputs_of(batch), config, stream, false).grad;
}

Evaluation evaluate(const ReuploadModel& model, const Dataset& data, const TrainConfig& config) {
  Evaluation ev;
  if (data.empty()) return ev;
  const TransferModel fast(model);
  const Objective obj(config, 0x5eedULL);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& s : data) {
    if (s.meta) {
      lo = std::min(lo, s.meta->second);
      hi = std::max(hi, s.meta->second);
    }
  }
  const bool histogram = lo <= hi;
  if (histogram) {
    if (hi == lo) hi = lo + 1.0;
    const double width = (hi - lo) / kHistogramBins;
    for (int k = 0; k < kHistogramBins; ++k) ev.histogram.push_back({lo + k * width, lo + (k + 1) * width, 0, 0});
  }
  int correct = 0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double f = obj.output(fast.r_final(lambda_hat(data[i].state)), model.w, model.b, i);
    const int predicted = f >= config.classification_threshold ? 1 : 0;
    if (predicted == static_cast<int>(std::lround(data[i].label))) ++correct;
    const double err = f - data[i].label;
    ev.mse += err * err;
    ev.max_abs_error = std::max(ev.max_abs_error, std::abs(err));
    if (histogram && data[i].meta) {
      const double x = data[i].meta->second;
      int bin = static_cast<int>((x - lo) / (hi - lo) * kHistogramBins);
      bin = std::clamp(bin, 0, kHistogramBins - 1);
      (predicted ? ev.histogram[bin].count_class1 : ev.histogram[bin].count_class0)++;
    }
  }
  ev.accuracy = static_cast<double>(correct) / static_cast<double>(data.size());
  ev.mse /= static_cast<double>(data.size());
  return ev;
}

TrainReport train(ReuploadModel model, const Dataset& train_set, const Dataset& test_set, const TrainConfig& config) {
  config.validate();
  model.validate();
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  if (config.loss == Loss::Logistic) {
    for (const auto& s : train_set)
      if (s.label != 0.0 && s.label != 1.0) throw std::invalid_argument("train: logistic loss needs 0/1 labels");
  }

  const std::vector<Eigen::VectorXd> all_inputs = inputs_of(train_set);
  const std::size_t n = train_set.size();
  const std::size_t batch = config.batch_size <= 0 ? n : std::min<std::size_t>(n, static_cast<std::size_t>(config.batch_size));
  Rng shuffle_rng(splitmix64(config.seed));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  Eigen::VectorXd params = model_parameters(model);
  Eigen::VectorXd m = Eigen::VectorXd::Zero(params.size()), v = Eigen::VectorXd::Zero(params.size());
  const double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
  long step = 0;

  TrainReport report;
  report.loss_description = config.loss == Loss::Mse
                                ? "mean squared error"
                                : "logistic loss on sigma(" + std::to_string(config.logistic_scale) + " (f - threshold))";
  for (int epoch = 0; epoch < config.max_epochs; ++epoch) {
    if (batch < n) std::shuffle(order.begin(), order.end(), shuffle_rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < n; start += batch) {
      const std::size_t end = std::min(n, start + batch);
      Dataset b;
      std::vector<Eigen::VectorXd> inputs;
      if (batch == n) {
        b = train_set;
        inputs = all_inputs;
      } else {
        for (std::size_t k = start; k < end; ++k) {
          b.push_back(train_set[order[k]]);
          inputs.push_back(all_inputs[order[k]]);
        }
      }
      const std::uint64_t stream = static_cast<std::uint64_t>(epoch) * 1000003ULL + start;
      const Gradient g = loss_gradient(model, b, inputs, config, stream, true);
      if (!std::isfinite(g.loss) || !g.grad.allFinite()) throw std::runtime_error("train: loss became non-finite");
      epoch_loss += g.loss * static_cast<double>(end - start);
      ++step;
      m = beta1 * m + (1 - beta1) * g.grad;
      v = beta2 * v + (1 - beta2) * g.grad.cwiseAbs2();
      const double c1 = 1 - std::pow(beta1, static_cast<double>(step));
      const double c2 = 1 - std::pow(beta2, static_cast<double>(step));
      params -= config.learning_rate * ((m / c1).array() / ((v / c2).array().sqrt() + eps)).matrix();
      set_model_parameters(model, params);
    }
    report.loss_history.push_back(epoch_loss / static_cast<double>(n));
    if (!test_set.empty()) report.test_accuracy_history.push_back(evaluate(model, test_set, config).accuracy);
  }

  report.final_params = model;
  if (!test_set.empty()) {
    const Evaluation ev = evaluate(model, test_set, config);
    report.test_accuracy = ev.accuracy;
    report.test_mse = ev.mse;
    report.test_max_abs_error = ev.max_abs_error;
    report.histogram = ev.histogram;
  }
  return report;
}

ReuploadModel init_general_model(int n_qubits, int layers, Rng& rng) {
  std::normal_distribution<double> coeff(0.0, 0.1), readout_w(0.0, 0.5);
  ReuploadModel m;
  m.n_qubits = n_qubits;
  m.initial_signal = InitialSignal::Zero;
  const auto count = static_cast<Eigen::Index>(pauli_count(n_qubits + 1)) - 1;
  for (int l = 0; l < layers; ++l) {
    Eigen::VectorXd c(count);
    for (auto& x : c) x = coeff(rng);
    m.layers.push_back(LayerSpec{0.0, 0.0, 0.0, GeneralCoupling{HermitianGenerator(n_qubits + 1, c)}});
  }
  for (int k = 0; k < 3; ++k) m.w(k) = readout_w(rng);
  m.b = 0.0;
  return m;
}

ReuploadModel init_restricted_model(int layers, Rng& rng) {
  std::normal_distribution<double> angle(0.0, 0.1), readout_w(0.0, 0.5);
  ReuploadModel m;
  for (int l = 0; l < layers; ++l) m.layers.push_back(LayerSpec{angle(rng), 0.0, 0.0, Cnot{}});
  for (int k = 0; k < 3; ++k) m.w(k) = readout_w(rng);
  m.b = 0.0;
  m.initial_signal = InitialSignal::Plus;
  return m;
}

}  // namespace reupload
