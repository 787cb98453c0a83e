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

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reupload/io.hpp"
#include "reupload/presets.hpp"

using namespace reupload;

namespace {

constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(4) << x;
  return s.str();
}

void ensure_dir(const std::string& dir) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

Task require_task(const std::string& name) {
  const auto t = parse_task(name);
  if (!t) throw std::invalid_argument("unknown task '" + name + "'; valid tasks: purity, entropy, band, double-band, psi-grid");
  return *t;
}

struct GenArgs {
  std::string task = "purity";
  int train_size = 1000;
  int test_size = 500;
  std::uint64_t seed = 1;
  int points = 101;
  std::string target = "linear";
  std::string out = ".";
};

int cmd_gen_dataset(const GenArgs& a) {
  const Task task = require_task(a.task);
  ensure_dir(a.out);
  if (task == Task::PsiGrid) {
    if (a.target != "linear" && a.target != "quartic") throw std::invalid_argument("--target must be linear or quartic");
    const auto f = a.target == "linear" ? [](double x) { return x; }
                                        : [](double x) { return 3 * (x + 0.8) * x * (x - 0.5) * (x - 0.5) + 0.3; };
    const std::string path = a.out + "/psi-grid_" + a.target + ".jsonl";
    save_dataset(path, psi_grid(a.points, f));
    std::cout << "wrote " << a.points << " grid states to " << path << "\n";
    return 0;
  }
  Rng rng(a.seed);
  const Dataset train_set = generate_dataset(task, a.train_size, rng);
  const Dataset test_set = generate_dataset(task, a.test_size, rng);
  const std::string stem = a.out + "/" + a.task;
  save_dataset(stem + "_train.jsonl", train_set);
  save_dataset(stem + "_test.jsonl", test_set);
  std::cout << "wrote " << stem << "_train.jsonl (" << train_set.size() << ") and " << stem << "_test.jsonl ("
            << test_set.size() << ")\n"
            << "class balance: train " << fmt(class_balance(train_set)) << ", test " << fmt(class_balance(test_set)) << "\n";
  return 0;
}

struct TrainArgs {
  std::string train_path;
  std::string test_path;
  std::string model_path;
  std::string config_path;
  std::string task;
  std::string loss;
  int layers = 2;
  std::optional<int> epochs;
  std::optional<double> lr;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots;
  std::string out = ".";
};

// Labels must be re-derivable from the stored meta scalar under the named task rule.
void check_labels(const Dataset& d, Task task, const std::string& path) {
  if (task == Task::PsiGrid) return;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (!d[k].meta) throw SchemaError(path + ": line " + std::to_string(k + 1) + ": missing meta scalar");
    if (d[k].label != label_from_meta(task, d[k].meta->second))
      throw SchemaError(path + ": line " + std::to_string(k + 1) + ": label disagrees with the " + task_name(task) + " rule");
  }
}

int cmd_train(const TrainArgs& a) {
  const Dataset train_set = load_dataset(a.train_path);
  const Dataset test_set = a.test_path.empty() ? Dataset{} : load_dataset(a.test_path);
  if (train_set.empty()) throw SchemaError(a.train_path + ": no records");
  if (!a.task.empty()) {
    const Task t = require_task(a.task);
    check_labels(train_set, t, a.train_path);
    check_labels(test_set, t, a.test_path);
  }
  TrainConfig c = a.config_path.empty() ? TrainConfig{} : train_config_from_json(load_json(a.config_path));
  if (a.epochs) c.max_epochs = *a.epochs;
  if (a.lr) c.learning_rate = *a.lr;
  if (a.seed) c.seed = *a.seed;
  if (a.shots) c.shots = *a.shots;
  if (!a.loss.empty()) c.loss = a.loss == "mse" ? Loss::Mse : Loss::Logistic;

  ReuploadModel model;
  if (!a.model_path.empty()) {
    model = model_from_json(load_json(a.model_path));
  } else {
    Rng init(c.seed + 100);
    model = init_general_model(train_set.front().state.n_qubits(), a.layers, init);
  }
  if (model.n_qubits != train_set.front().state.n_qubits()) throw SchemaError("model and dataset qubit counts differ");

  const TrainReport r = train(model, train_set, test_set, c);
  ensure_dir(a.out);
  Json report = report_to_json(r);
  report["config"] = train_config_to_json(c);
  save_text(a.out + "/report.json", report.dump(2) + "\n");
  save_text(a.out + "/model.json", model_to_json(r.final_params).dump(2) + "\n");
  std::ostringstream csv;
  write_histogram_csv(csv, r.histogram);
  save_text(a.out + "/histogram.csv", csv.str());
  std::cout << "final train loss " << fmt(r.loss_history.back());
  if (!test_set.empty()) std::cout << ", test accuracy " << fmt(r.test_accuracy) << ", test mse " << fmt(r.test_mse);
  std::cout << "\nwrote " << a.out << "/report.json, model.json, histogram.csv\n";
  return 0;
}

struct EvalArgs {
  std::string model_path;
  std::string data_path;
  double threshold = 0.0;
  int shots = 0;
  std::string out;
};

int cmd_evaluate(const EvalArgs& a) {
  const ReuploadModel model = model_from_json(load_json(a.model_path));
  const Dataset data = load_dataset(a.data_path);
  TrainConfig c;
  c.classification_threshold = a.threshold;
  c.shots = a.shots;
  c.validate();
  const Evaluation ev = evaluate(model, data, c);
  std::cout << "accuracy " << fmt(ev.accuracy) << ", mse " << fmt(ev.mse) << ", max abs error " << fmt(ev.max_abs_error) << "\n";
  if (!a.out.empty()) {
    ensure_dir(a.out);
    const Json j = {{"accuracy", ev.accuracy}, {"mse", ev.mse}, {"max_abs_error", ev.max_abs_error}};
    save_text(a.out + "/evaluation.json", j.dump(2) + "\n");
    std::ostringstream csv;
    write_histogram_csv(csv, ev.histogram);
    save_text(a.out + "/histogram.csv", csv.str());
  }
  return 0;
}

int cmd_reproduce(const std::string& name, PresetOptions o) {
  ensure_dir(o.out_dir);
  const PresetResult r = run_preset(name, o);
  std::cout << std::left << std::setw(44) << "quantity" << std::setw(20) << "reference" << std::setw(12) << "obtained"
            << std::setw(14) << "tolerance" << "status\n";
  for (const auto& row : r.rows) {
    std::cout << std::setw(44) << row.quantity << std::setw(20) << (row.reference.empty() ? "-" : row.reference)
              << std::setw(12) << fmt(row.obtained) << std::setw(14)
              << (std::string(row.bound == Bound::AtMost ? "<= " : ">= ") + fmt(row.limit))
              << (row.pass ? "pass" : "FAIL") << "\n";
  }
  if (!o.out_dir.empty()) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
      rows.push_back({{"quantity", row.quantity},
                      {"reference", row.reference},
                      {"obtained", row.obtained},
                      {"bound", row.bound == Bound::AtMost ? "at_most" : "at_least"},
                      {"limit", row.limit},
                      {"pass", row.pass}});
    save_text(o.out_dir + "/" + name + "_summary.json", Json{{"preset", name}, {"rows", rows}, {"pass", r.pass()}}.dump(2) + "\n");
  }
  return r.pass() ? 0 : kExitTolerance;
}

int cmd_verify(const std::string& check, std::optional<int> trials, std::uint64_t seed, const std::string& out) {
  const VerificationReport r = run_check(check, trials.value_or(default_trials(check)), seed);
  const Json j = verification_to_json(r);
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    save_text(out, j.dump(2) + "\n");
    std::cout << check << ": max violation " << fmt(r.max_violation) << " (tolerance " << fmt(r.tolerance) << ") "
              << (r.pass ? "pass" : "FAIL") << "\n";
  }
  return r.pass ? 0 : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Data re-uploading circuits: datasets, training, presets and verification checks"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-dataset", "Sample labeled train/test datasets as JSON Lines");
  gen_cmd->add_option("--task", gen.task, "purity, entropy, band, double-band or psi-grid")->capture_default_str();
  gen_cmd->add_option("--train-size", gen.train_size)->capture_default_str()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--test-size", gen.test_size)->capture_default_str()->check(CLI::NonNegativeNumber);
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--points", gen.points, "psi-grid size")->capture_default_str()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--target", gen.target, "psi-grid label: linear or quartic")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output directory")->capture_default_str();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "Train a model on a JSONL dataset");
  train_cmd->add_option("--train", tr.train_path, "training set")->required();
  train_cmd->add_option("--test", tr.test_path, "test set");
  train_cmd->add_option("--model", tr.model_path, "initial model JSON (default: random general layers)");
  train_cmd->add_option("--config", tr.config_path, "training config JSON");
  train_cmd->add_option("--task", tr.task, "check labels against this task's rule");
  train_cmd->add_option("--loss", tr.loss, "mse or logistic")->check(CLI::IsMember({"mse", "logistic"}));
  train_cmd->add_option("--layers", tr.layers)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--epochs", tr.epochs)->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tr.lr)->check(CLI::PositiveNumber);
  train_cmd->add_option("--seed", tr.seed);
  train_cmd->add_option("--shots", tr.shots)->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--out", tr.out, "output directory")->capture_default_str();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("evaluate", "Evaluate a saved model on a dataset");
  eval_cmd->add_option("--model", ev.model_path)->required();
  eval_cmd->add_option("--data", ev.data_path)->required();
  eval_cmd->add_option("--threshold", ev.threshold)->capture_default_str();
  eval_cmd->add_option("--shots", ev.shots)->capture_default_str()->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--out", ev.out, "output directory");

  std::string preset;
  PresetOptions po;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a preset pipeline and compare against its tolerance table");
  repro_cmd->add_option("preset", preset, join(preset_names()))->required()->check(CLI::IsMember(preset_names()));
  repro_cmd->add_option("--train-size", po.train_size)->capture_default_str()->check(CLI::PositiveNumber);
  repro_cmd->add_option("--test-size", po.test_size)->capture_default_str()->check(CLI::PositiveNumber);
  repro_cmd->add_option("--seed", po.seed)->capture_default_str();
  repro_cmd->add_option("--layers", po.layers)->check(CLI::PositiveNumber);
  repro_cmd->add_option("--epochs", po.epochs)->check(CLI::PositiveNumber);
  repro_cmd->add_option("--lr", po.learning_rate)->check(CLI::PositiveNumber);
  repro_cmd->add_option("--shots", po.shots)->capture_default_str()->check(CLI::NonNegativeNumber);
  repro_cmd->add_option("--out", po.out_dir, "directory for reports and CSV curves");

  std::string check;
  std::optional<int> trials;
  std::uint64_t verify_seed = 1;
  std::string verify_out;
  auto* verify_cmd = app.add_subcommand("verify", "Run one verification check");
  verify_cmd->add_option("check", check, join(check_names()))->required();
  verify_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", verify_seed)->capture_default_str();
  verify_cmd->add_option("--out", verify_out, "report JSON path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen_dataset(gen);
    if (*train_cmd) return cmd_train(tr);
    if (*eval_cmd) return cmd_evaluate(ev);
    if (*repro_cmd) return cmd_reproduce(preset, po);
    if (*verify_cmd) return cmd_verify(check, trials, verify_seed, verify_out);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
