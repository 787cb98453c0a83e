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

#include "reupload/io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

namespace reupload {
namespace {

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j, Eigen::Index dim) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim) throw SchemaError("matrix must have " + std::to_string(dim) + " rows");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) throw SchemaError("matrix rows must have " + std::to_string(dim) + " entries");
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw SchemaError("matrix entries must be [re, im] pairs");
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number()) throw SchemaError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

int integer(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_integer()) throw SchemaError(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

Json coupling_to_json(const CouplingSpec& c) {
  return std::visit(
      [](const auto& x) -> Json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Cnot>) {
          return {{"type", "cnot"}};
        } else if constexpr (std::is_same_v<T, ControlledPauliPair>) {
          return {{"type", "controlled_pauli_pair"}, {"i", x.i}, {"j", x.j}};
        } else if constexpr (std::is_same_v<T, ControlledWord>) {
          return {{"type", "controlled_word"}, {"word", x.word.to_string()}};
        } else {
          const auto& c = x.generator.coeffs();
          return {{"type", "general"}, {"coeffs", std::vector<double>(c.data(), c.data() + c.size())}};
        }
      },
      c);
}

CouplingSpec coupling_from_json(const Json& j, int n_qubits) {
  const Json& type = require(j, "type");
  if (!type.is_string()) throw SchemaError("coupling type must be a string");
  const std::string t = type.get<std::string>();
  if (t == "cnot") return Cnot{};
  if (t == "controlled_pauli_pair") return ControlledPauliPair{integer(j, "i"), integer(j, "j")};
  if (t == "controlled_word") {
    const Json& w = require(j, "word");
    if (!w.is_string()) throw SchemaError("coupling word must be a string such as \"XZ\"");
    try {
      return ControlledWord{PauliWord::parse(w.get<std::string>())};
    } catch (const std::invalid_argument& e) {
      throw SchemaError(e.what());
    }
  }
  if (t == "general") {
    const Json& c = require(j, "coeffs");
    if (!c.is_array()) throw SchemaError("general coupling coeffs must be an array");
    const auto expect = pauli_count(n_qubits + 1) - 1;
    if (c.size() != expect) throw SchemaError("general coupling needs " + std::to_string(expect) + " coefficients");
    Eigen::VectorXd v(static_cast<Eigen::Index>(expect));
    for (std::size_t k = 0; k < expect; ++k) {
      if (!c[k].is_number()) throw SchemaError("general coupling coeffs must be numbers");
      v(static_cast<Eigen::Index>(k)) = c[k].get<double>();
    }
    return GeneralCoupling{HermitianGenerator(n_qubits + 1, v)};
  }
  throw SchemaError("unknown coupling type '" + t + "'");
}

Json histogram_to_json(const std::vector<HistogramBin>& bins) {
  Json out = Json::array();
  for (const auto& b : bins)
    out.push_back({{"bin_low", b.low}, {"bin_high", b.high}, {"count_class0", b.count_class0}, {"count_class1", b.count_class1}});
  return out;
}

}  // namespace

SchemaError::SchemaError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

void write_dataset(std::ostream& out, const Dataset& data) {
  for (const auto& s : data) {
    Json j = {{"n", s.state.n_qubits()}, {"matrix", matrix_to_json(s.state.matrix())}, {"label", s.label}};
    j["meta"] = Json::object();
    if (s.meta) j["meta"][s.meta->first] = s.meta->second;
    out << j.dump() << '\n';
  }
}

Dataset read_dataset(std::istream& in) {
  Dataset out;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const Json j = Json::parse(text);
      const int n = integer(j, "n");
      if (n < 1 || n > 6) throw SchemaError("'n' must lie in 1..6");
      DensityMatrix rho;
      try {
        rho = DensityMatrix::from_matrix(matrix_from_json(require(j, "matrix"), Eigen::Index{1} << n));
      } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("invalid density matrix: ") + e.what());
      }
      LabeledState s{std::move(rho), number(j, "label"), std::nullopt};
      if (j.contains("meta")) {
        const Json& meta = j.at("meta");
        if (!meta.is_object() || meta.size() > 1) throw SchemaError("'meta' must be an object with at most one scalar");
        for (const auto& [key, value] : meta.items()) {
          if (!value.is_number()) throw SchemaError("meta value must be a number");
          s.meta = std::make_pair(key, value.get<double>());
        }
      }
      out.push_back(std::move(s));
    } catch (const SchemaError& e) {
      throw SchemaError(e.what(), line);
    } catch (const Json::exception& e) {
      throw SchemaError(e.what(), line);
    }
  }
  return out;
}

void save_dataset(const std::string& path, const Dataset& data) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  write_dataset(f, data);
  if (!f) throw IoError("write failed: " + path);
}

Dataset load_dataset(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  try {
    return read_dataset(f);
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what(), 0);
  }
}

Json model_to_json(const ReuploadModel& model) {
  Json layers = Json::array();
  for (const auto& l : model.layers)
    layers.push_back({{"theta", l.theta}, {"phi", l.phi}, {"beta", l.beta}, {"coupling", coupling_to_json(l.coupling)}});
  return {{"n", model.n_qubits},
          {"layers", layers},
          {"w", {model.w(0), model.w(1), model.w(2)}},
          {"b", model.b},
          {"initial_signal", model.initial_signal == InitialSignal::Plus ? "plus" : "zero"}};
}

ReuploadModel model_from_json(const Json& j) {
  try {
    ReuploadModel m;
    m.n_qubits = integer(j, "n");
    const Json& layers = require(j, "layers");
    if (!layers.is_array()) throw SchemaError("'layers' must be an array");
    for (const auto& l : layers) {
      LayerSpec spec;
      spec.theta = number(l, "theta");
      if (l.contains("phi")) spec.phi = number(l, "phi");
      if (l.contains("beta")) spec.beta = number(l, "beta");
      spec.coupling = coupling_from_json(require(l, "coupling"), m.n_qubits);
      m.layers.push_back(std::move(spec));
    }
    const Json& w = require(j, "w");
    if (!w.is_array() || w.size() != 3) throw SchemaError("'w' must hold three numbers");
    for (int k = 0; k < 3; ++k) m.w(k) = w[static_cast<std::size_t>(k)].get<double>();
    m.b = number(j, "b");
    if (j.contains("initial_signal")) {
      const std::string s = j.at("initial_signal").get<std::string>();
      if (s != "plus" && s != "zero") throw SchemaError("initial_signal must be \"plus\" or \"zero\"");
      m.initial_signal = s == "plus" ? InitialSignal::Plus : InitialSignal::Zero;
    } else if (!m.layers.empty()) {
      m.initial_signal = default_initial_signal(m.layers.front().coupling);
    }
    m.validate();
    return m;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  } catch (const Json::exception& e) {
    throw SchemaError(e.what());
  }
}

Json polynomial_to_json(const PolynomialSpec& p) {
  Json monomials = Json::array();
  for (const auto& m : p.monomials) {
    Json exps = Json::object();
    for (const auto& [alpha, e] : m.exps) exps[std::to_string(alpha)] = e;
    monomials.push_back({{"c", m.c}, {"exps", exps}});
  }
  return {{"n", p.n_qubits}, {"c0", p.c0}, {"monomials", monomials}};
}

PolynomialSpec polynomial_from_json(const Json& j) {
  try {
    PolynomialSpec p;
    p.n_qubits = integer(j, "n");
    p.c0 = number(j, "c0");
    for (const auto& m : require(j, "monomials")) {
      MonomialSpec mono;
      mono.c = number(m, "c");
      for (const auto& [key, value] : require(m, "exps").items()) {
        std::size_t used = 0;
        const unsigned long alpha = std::stoul(key, &used);
        if (used != key.size()) throw SchemaError("exponent keys must be Pauli indices");
        mono.exps[alpha] = value.get<int>();
      }
      p.monomials.push_back(std::move(mono));
    }
    p.validate();
    return p;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  } catch (const Json::exception& e) {
    throw SchemaError(e.what());
  }
}

Json train_config_to_json(const TrainConfig& c) {
  return {{"loss", c.loss == Loss::Mse ? "mse" : "logistic"},
          {"learning_rate", c.learning_rate},
          {"max_epochs", c.max_epochs},
          {"batch_size", c.batch_size},
          {"seed", c.seed},
          {"shots", c.shots},
          {"fd_step", c.fd_step},
          {"classification_threshold", c.classification_threshold},
          {"logistic_scale", c.logistic_scale},
          {"train_rotations", c.train_rotations}};
}

TrainConfig train_config_from_json(const Json& j) {
  try {
    TrainConfig c;
    if (!j.is_object()) throw SchemaError("train config must be an object");
    if (j.contains("loss")) {
      const std::string loss = j.at("loss").get<std::string>();
      if (loss != "mse" && loss != "logistic") throw SchemaError("loss must be \"mse\" or \"logistic\"");
      c.loss = loss == "mse" ? Loss::Mse : Loss::Logistic;
    }
    if (j.contains("learning_rate")) c.learning_rate = j.at("learning_rate").get<double>();
    if (j.contains("max_epochs")) c.max_epochs = j.at("max_epochs").get<int>();
    if (j.contains("batch_size")) c.batch_size = j.at("batch_size").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("shots")) c.shots = j.at("shots").get<int>();
    if (j.contains("fd_step")) c.fd_step = j.at("fd_step").get<double>();
    if (j.contains("classification_threshold")) c.classification_threshold = j.at("classification_threshold").get<double>();
    if (j.contains("logistic_scale")) c.logistic_scale = j.at("logistic_scale").get<double>();
    if (j.contains("train_rotations")) c.train_rotations = j.at("train_rotations").get<bool>();
    c.validate();
    return c;
  } catch (const std::invalid_argument& e) {
    throw SchemaError(e.what());
  } catch (const Json::exception& e) {
    throw SchemaError(e.what());
  }
}

Json report_to_json(const TrainReport& r) {
  return {{"loss", r.loss_description},
          {"loss_history", r.loss_history},
          {"test_accuracy_history", r.test_accuracy_history},
          {"test_accuracy", r.test_accuracy},
          {"test_mse", r.test_mse},
          {"test_max_abs_error", r.test_max_abs_error},
          {"histogram", histogram_to_json(r.histogram)},
          {"final_params", model_to_json(r.final_params)}};
}

Json verification_to_json(const VerificationReport& r) {
  return {{"check_name", r.check_name},
          {"trials", r.trials},
          {"max_violation", r.max_violation},
          {"tolerance", r.tolerance},
          {"pass", r.pass}};
}

void write_histogram_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_low,bin_high,count_class0,count_class1\n" << std::setprecision(17);
  for (const auto& b : bins) out << b.low << ',' << b.high << ',' << b.count_class0 << ',' << b.count_class1 << '\n';
}

Json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw IoError("cannot read " + path);
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

void save_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  f << text;
  if (!f) throw IoError("write failed: " + path);
}

}  // namespace reupload
