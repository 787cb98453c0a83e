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

#include "reupload/presets.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "reupload/io.hpp"
#include "reupload/verifiers.hpp"

namespace reupload {
namespace {

PresetRow make_row(std::string quantity, std::string reference, double obtained, Bound bound, double limit) {
  const bool pass = bound == Bound::AtMost ? obtained <= limit : obtained >= limit;
  return {std::move(quantity), std::move(reference), obtained, bound, limit, pass};
}

double quartic(double x) { return 3 * (x + 0.8) * x * (x - 0.5) * (x - 0.5) + 0.3; }

void write_outputs(const PresetOptions& o, const std::string& stem, const TrainReport& r) {
  if (o.out_dir.empty()) return;
  save_text(o.out_dir + "/" + stem + "_report.json", report_to_json(r).dump(2) + "\n");
  std::ostringstream csv;
  write_histogram_csv(csv, r.histogram);
  save_text(o.out_dir + "/" + stem + "_histogram.csv", csv.str());
  std::ostringstream curve;
  curve << "epoch,train_loss,test_accuracy\n" << std::setprecision(17);
  for (std::size_t e = 0; e < r.loss_history.size(); ++e) {
    curve << e + 1 << ',' << r.loss_history[e] << ',';
    if (e < r.test_accuracy_history.size()) curve << r.test_accuracy_history[e];
    curve << '\n';
  }
  save_text(o.out_dir + "/" + stem + "_curve.csv", curve.str());
}

PresetResult run_classification_preset(const std::string& name, const ClassificationPreset& p, const PresetOptions& o) {
  PresetResult result{name, {}};
  for (std::size_t k = 0; k < p.layers.size(); ++k) {
    if (o.layers && *o.layers != p.layers[k]) continue;
    const TrainReport r = run_classification(p, p.layers[k], o);
    write_outputs(o, name + "_L" + std::to_string(p.layers[k]), r);
    result.rows.push_back(make_row("test accuracy L=" + std::to_string(p.layers[k]), p.reference[k], r.test_accuracy,
                                   p.bounds[k], p.limits[k]));
  }
  if (o.layers && result.rows.empty()) {
    // Depth outside the preset table: report the accuracy without a band.
    const TrainReport r = run_classification(p, *o.layers, o);
    write_outputs(o, name + "_L" + std::to_string(*o.layers), r);
    result.rows.push_back(make_row("test accuracy L=" + std::to_string(*o.layers), "", r.test_accuracy, Bound::AtLeast, 0.0));
  }
  return result;
}

PresetResult run_fit_preset(const std::string& name, int which, const PresetOptions& o) {
  const TrainReport r = run_polynomial_fit(which, o);
  if (!o.out_dir.empty()) {
    save_text(o.out_dir + "/" + name + "_report.json", report_to_json(r).dump(2) + "\n");
    std::ostringstream curve;
    curve << "lambda,target,fit\n" << std::setprecision(17);
    const TransferModel fast(r.final_params);
    for (const auto& s : psi_grid(101, which == 0 ? [](double x) { return x; } : quartic)) {
      const double f = r.final_params.w.dot(fast.r_final(lambda_hat(s.state))) + r.final_params.b;
      curve << s.meta->second << ',' << s.label << ',' << f << '\n';
    }
    save_text(o.out_dir + "/" + name + "_curve.csv", curve.str());
  }
  const double limit = which == 0 ? 0.02 : 0.05;
  return {name, {make_row("max abs error on 101-point grid", "", r.test_max_abs_error, Bound::AtMost, limit)}};
}

PresetResult run_hadamard_demo(const PresetOptions& o) {
  PresetResult result{"hadamard-demo", {}};
  Rng rng(o.seed);
  // Exact mode must agree to rounding; with shots the bound is five standard errors.
  const double limit = o.shots > 0 ? 5.0 / std::sqrt(static_cast<double>(o.shots)) : 1e-10;
  for (int k = 0; k < 5; ++k) {
    const int n = 1 + k % 3;
    const DensityMatrix rho = sample_mixed(n, rng);
    const ComplexMatrix u = sample_haar_unitary(rho.dim(), rng);
    const Complex exact = (rho.matrix() * u).trace();
    const double re = hadamard_test(rho, u, TracePart::Real, o.shots, o.seed + 2 * k);
    const double im = hadamard_test(rho, u, TracePart::Imag, o.shots, o.seed + 2 * k + 1);
    std::ostringstream ref;
    ref << std::setprecision(4) << exact.real() << (exact.imag() < 0 ? " - " : " + ") << std::abs(exact.imag()) << "i";
    result.rows.push_back(make_row("pair " + std::to_string(k + 1) + " (n=" + std::to_string(n) + ") |Re error|", ref.str(),
                                   std::abs(re - exact.real()), Bound::AtMost, limit));
    result.rows.push_back(make_row("pair " + std::to_string(k + 1) + " (n=" + std::to_string(n) + ") |Im error|", ref.str(),
                                   std::abs(im - exact.imag()), Bound::AtMost, limit));
  }
  return result;
}

PresetResult run_verify_all(const PresetOptions& o) {
  PresetResult result{"verify-all", {}};
  for (const auto& check : check_names()) {
    const VerificationReport r = run_check(check, default_trials(check), o.seed);
    if (!o.out_dir.empty()) save_text(o.out_dir + "/verify_" + check + ".json", verification_to_json(r).dump(2) + "\n");
    result.rows.push_back(make_row(check + " max violation", "", r.max_violation, Bound::AtMost, r.tolerance));
  }
  return result;
}

}  // namespace

bool PresetResult::pass() const {
  for (const auto& r : rows)
    if (!r.pass) return false;
  return true;
}

std::vector<std::string> preset_names() {
  return {"poly-linear", "poly-quartic", "purity", "entropy", "band", "double-band", "hadamard-demo", "verify-all"};
}

std::optional<ClassificationPreset> classification_preset(const std::string& name) {
  using B = Bound;
  if (name == "purity")
    return ClassificationPreset{Task::Purity, 1, 400, 0.02, {1, 2, 3, 4}, {"0.51", "0.61", "0.95", "0.98"},
                                {B::AtMost, B::AtMost, B::AtLeast, B::AtLeast}, {0.65, 0.75, 0.88, 0.93}};
  if (name == "entropy")
    return ClassificationPreset{Task::Entropy, 2, 400, 0.02, {1, 2, 3, 4}, {"0.49", "0.84", "0.92", "0.93"},
                                {B::AtMost, B::AtLeast, B::AtLeast, B::AtLeast}, {0.6, 0.78, 0.85, 0.87}};
  if (name == "band")
    return ClassificationPreset{Task::Band, 1, 400, 0.02, {1, 2}, {"0.47", "0.99"}, {B::AtMost, B::AtLeast}, {0.6, 0.95}};
  if (name == "double-band")
    return ClassificationPreset{Task::DoubleBand, 1, 600, 0.02, {2, 3}, {"0.53", "0.99"}, {B::AtMost, B::AtLeast}, {0.65, 0.95}};
  return std::nullopt;
}

TrainReport run_classification(const ClassificationPreset& p, int layers, const PresetOptions& o) {
  Rng data_rng(o.seed);
  const Dataset train_set = generate_dataset(p.task, o.train_size, data_rng);
  const Dataset test_set = generate_dataset(p.task, o.test_size, data_rng);
  Rng init_rng(o.seed + 100);
  const ReuploadModel model = init_general_model(p.n_qubits, layers, init_rng);
  TrainConfig c;
  c.learning_rate = o.learning_rate.value_or(p.learning_rate);
  c.max_epochs = o.epochs.value_or(p.epochs);
  c.seed = o.seed;
  c.shots = o.shots;
  // General layers carry their own single-qubit freedom in the generator.
  c.train_rotations = false;
  return train(model, train_set, test_set, c);
}

TrainReport run_polynomial_fit(int which, const PresetOptions& o) {
  const Dataset grid = which == 0 ? psi_grid(101, [](double x) { return x; }) : psi_grid(101, quartic);
  Rng init_rng(o.seed);
  const ReuploadModel model = init_restricted_model(o.layers.value_or(which == 0 ? 1 : 4), init_rng);
  TrainConfig c;
  c.loss = Loss::Mse;
  c.learning_rate = o.learning_rate.value_or(0.02);
  c.max_epochs = o.epochs.value_or(which == 0 ? 300 : 2000);
  c.seed = o.seed;
  c.shots = o.shots;
  return train(model, grid, grid, c);
}

PresetResult run_preset(const std::string& name, const PresetOptions& o) {
  if (name == "poly-linear") return run_fit_preset(name, 0, o);
  if (name == "poly-quartic") return run_fit_preset(name, 1, o);
  if (name == "hadamard-demo") return run_hadamard_demo(o);
  if (name == "verify-all") return run_verify_all(o);
  if (const auto p = classification_preset(name)) return run_classification_preset(name, *p, o);
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown preset '" + name + "'; valid presets: " + names);
}

}  // namespace reupload
