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

#include <sstream>

#include "doctest.h"
#include "reupload/io.hpp"
#include "reupload/tasks.hpp"

using namespace reupload;

TEST_CASE("datasets round trip through JSON Lines") {
  Rng rng(5);
  const Dataset d = generate_dataset(Task::Entropy, 20, rng);
  std::stringstream s;
  write_dataset(s, d);
  const Dataset back = read_dataset(s);
  REQUIRE(back.size() == d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    CHECK(back[k].state.matrix() == d[k].state.matrix());
    CHECK(back[k].label == d[k].label);
    CHECK(back[k].meta == d[k].meta);
  }
}

TEST_CASE("schema violations report the line") {
  Rng rng(1);
  std::stringstream s;
  write_dataset(s, generate_dataset(Task::Band, 2, rng));
  s << R"({"n": 1, "matrix": [[[2, 0], [0, 0]], [[0, 0], [0, 0]]], "label": 1, "meta": {}})" << '\n';
  try {
    read_dataset(s);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }

  std::stringstream missing(R"({"n": 1, "label": 0})");
  CHECK_THROWS_AS(read_dataset(missing), SchemaError);
  std::stringstream broken("{not json");
  CHECK_THROWS_AS(read_dataset(broken), SchemaError);
  std::stringstream shape(R"({"n": 2, "matrix": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]], "label": 0})");
  CHECK_THROWS_AS(read_dataset(shape), SchemaError);
}

TEST_CASE("models round trip bit-exactly") {
  Rng rng(9);
  ReuploadModel general = init_general_model(2, 3, rng);
  general.layers[1].theta = 0.1 + 0.2;
  general.layers[2].phi = -1.0 / 3.0;
  const ReuploadModel back = model_from_json(Json::parse(model_to_json(general).dump()));
  CHECK(model_parameters(back) == model_parameters(general));
  CHECK(back.initial_signal == general.initial_signal);

  ReuploadModel restricted;
  restricted.n_qubits = 2;
  restricted.layers = {LayerSpec{0.7, 0, 0, ControlledWord{PauliWord::parse("XZ")}},
                       LayerSpec{std::nextafter(1.0, 2.0), 0, 0, ControlledWord{PauliWord::parse("YI")}}};
  restricted.w = Eigen::Vector3d(0.1, 0.2, 0.3);
  restricted.b = 1e-300;
  const ReuploadModel rb = model_from_json(Json::parse(model_to_json(restricted).dump()));
  CHECK(model_parameters(rb) == model_parameters(restricted));
  CHECK(std::get<ControlledWord>(rb.layers[1].coupling).word == PauliWord::parse("YI"));

  ReuploadModel pair;
  pair.layers = {LayerSpec{0.2, 0, 0, ControlledPauliPair{2, 1}}};
  const ReuploadModel pb = model_from_json(model_to_json(pair));
  CHECK(std::get<ControlledPauliPair>(pb.layers[0].coupling) == ControlledPauliPair{2, 1});

  Json bad = model_to_json(general);
  bad["layers"][0]["coupling"]["coeffs"].erase(0);
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
  bad = model_to_json(restricted);
  bad["n"] = 3;
  CHECK_THROWS_AS(model_from_json(bad), SchemaError);
}

TEST_CASE("polynomials round trip") {
  PolynomialSpec p;
  p.n_qubits = 2;
  p.c0 = 0.5;
  p.monomials = {MonomialSpec{0.5, {{5, 2}}}, MonomialSpec{-0.25, {{1, 1}, {15, 1}}}};
  const Json j = polynomial_to_json(p);
  CHECK(j["monomials"][1]["exps"]["15"] == 1);
  const PolynomialSpec back = polynomial_from_json(j);
  CHECK(back.coefficients() == p.coefficients());
  CHECK(back.monomials[1].exps == p.monomials[1].exps);
  Json bad = j;
  bad["monomials"][0]["exps"] = {{"16", 1}};
  CHECK_THROWS_AS(polynomial_from_json(bad), SchemaError);
}

TEST_CASE("reports and configs") {
  TrainConfig c;
  c.loss = Loss::Mse;
  c.learning_rate = 0.0123;
  c.seed = 77;
  const TrainConfig back = train_config_from_json(train_config_to_json(c));
  CHECK(back.loss == Loss::Mse);
  CHECK(back.learning_rate == 0.0123);
  CHECK(back.seed == 77);
  CHECK_THROWS_AS(train_config_from_json({{"learning_rate", -1.0}}), SchemaError);

  std::stringstream csv;
  write_histogram_csv(csv, {{0.5, 0.75, 3, 4}});
  CHECK(csv.str() == "bin_low,bin_high,count_class0,count_class1\n0.5,0.75,3,4\n");

  const Json v = verification_to_json(run_check("swap-test", 5, 1));
  CHECK(v["check_name"] == "swap-test");
  CHECK(v["trials"] == 5);
  CHECK(v["pass"] == true);
}
