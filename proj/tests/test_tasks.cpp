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

#include <cmath>

#include "doctest.h"
#include "reupload/channel.hpp"
#include "reupload/tasks.hpp"

using namespace reupload;

TEST_CASE("task names round trip") {
  for (Task t : {Task::Purity, Task::Entropy, Task::Band, Task::DoubleBand, Task::PsiGrid})
    CHECK(parse_task(task_name(t)) == t);
  CHECK_FALSE(parse_task("xor").has_value());
}

TEST_CASE("purity threshold splits the Bloch ball in half") {
  CHECK(std::abs(purity_threshold() - 0.8149802624737183) < 1e-15);
  Rng rng(7);
  const Dataset train_set = generate_dataset(Task::Purity, 1000, rng);
  CHECK(std::abs(class_balance(train_set) - 0.5) <= 0.05);
}

TEST_CASE("labels follow from the stored meta scalar") {
  Rng rng(3);
  for (Task t : {Task::Purity, Task::Entropy, Task::Band, Task::DoubleBand}) {
    const Dataset d = generate_dataset(t, 300, rng);
    for (const auto& s : d) {
      REQUIRE(s.meta.has_value());
      CHECK(s.meta->first == meta_name(t));
      CHECK(s.label == label_from_meta(t, s.meta->second));
      double recomputed = 0.0;
      switch (t) {
        case Task::Purity: recomputed = purity(s.state); break;
        case Task::Entropy: recomputed = renyi2_entropy_reduced(s.state) / std::log(2.0); break;
        default: recomputed = bloch_vector(s.state)(2); break;
      }
      CHECK(std::abs(recomputed - s.meta->second) < 1e-12);
    }
  }
}

TEST_CASE("band rules") {
  CHECK(label_from_meta(Task::Band, 0.5) == 1);
  CHECK(label_from_meta(Task::Band, -0.5) == 1);
  CHECK(label_from_meta(Task::Band, 0.49) == 0);
  CHECK(label_from_meta(Task::DoubleBand, 0.7) == 1);
  CHECK(label_from_meta(Task::DoubleBand, 0.2) == 0);
  CHECK(label_from_meta(Task::DoubleBand, -0.5) == 1);
  CHECK(label_from_meta(Task::DoubleBand, -0.01) == 1);
  CHECK(label_from_meta(Task::DoubleBand, 0.0) == 0);
  CHECK(label_from_meta(Task::DoubleBand, -0.7) == 0);
  CHECK(label_from_meta(Task::Entropy, 0.3) == 1);
  CHECK_THROWS(label_from_meta(Task::PsiGrid, 0.0));
  Rng rng(1);
  CHECK(std::abs(class_balance(generate_dataset(Task::Band, 2000, rng)) - 0.5) < 0.05);
  CHECK(std::abs(class_balance(generate_dataset(Task::DoubleBand, 2000, rng)) - 0.5) < 0.05);
  CHECK(std::abs(class_balance(generate_dataset(Task::Entropy, 2000, rng)) - 0.5) < 0.05);
}

TEST_CASE("psi grid") {
  const Dataset d = psi_grid(101, [](double x) { return 2 * x; });
  REQUIRE(d.size() == 101);
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double lambda = d[k].meta->second;
    CHECK(lambda > -1.0);
    CHECK(lambda < 1.0);
    if (k > 0) CHECK(std::abs(lambda - d[k - 1].meta->second - 2.0 / 102) < 1e-14);
    CHECK(d[k].label == 2 * lambda);
    CHECK(std::abs(lambda_hat(d[k].state)(3) - lambda) < 1e-12);
  }
  CHECK(std::abs(d[50].meta->second) < 1e-15);
}
