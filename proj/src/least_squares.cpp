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

#include "least_squares.hpp"

#include <algorithm>
#include <cmath>

namespace reupload::detail {

Eigen::MatrixXd fd_jacobian(const ResidualFn& f, const Eigen::VectorXd& x, double h) {
  Eigen::VectorXd xp = x;
  Eigen::MatrixXd j;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double step = h * std::max(1.0, std::abs(x(k)));
    xp(k) = x(k) + step;
    const Eigen::VectorXd up = f(xp);
    xp(k) = x(k) - step;
    const Eigen::VectorXd down = f(xp);
    xp(k) = x(k);
    if (k == 0) j.resize(up.size(), x.size());
    j.col(k) = (up - down) / (2 * step);
  }
  return j;
}

LsResult gauss_newton(const ResidualFn& f, Eigen::VectorXd x, int max_iter, double tol, double mu) {
  LsResult out{x, f(x), 0};
  while (out.iterations < max_iter && out.r.lpNorm<Eigen::Infinity>() > tol) {
    const Eigen::MatrixXd j = fd_jacobian(f, out.x, 1e-7);
    Eigen::MatrixXd a = j.transpose() * j;
    a.diagonal().array() += mu;
    Eigen::VectorXd step = -a.ldlt().solve(j.transpose() * out.r);
    ++out.iterations;
    const double cost = out.r.squaredNorm();
    bool improved = false;
    for (int halving = 0; halving < 40; ++halving) {
      const Eigen::VectorXd xn = out.x + step;
      const Eigen::VectorXd rn = f(xn);
      if (rn.allFinite() && rn.squaredNorm() < cost) {
        out.x = xn;
        out.r = rn;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return out;
}

LsResult levenberg_marquardt(const ResidualFn& f, Eigen::VectorXd x, int max_iter, double tol) {
  LsResult out{x, f(x), 0};
  Eigen::MatrixXd j = fd_jacobian(f, out.x, 1e-7);
  Eigen::MatrixXd a = j.transpose() * j;
  Eigen::VectorXd g = j.transpose() * out.r;
  double mu = 1e-3;
  double nu = 2.0;
  while (out.iterations < max_iter && out.r.lpNorm<Eigen::Infinity>() > tol) {
    ++out.iterations;
    const Eigen::VectorXd scale = a.diagonal().cwiseMax(1e-12);
    Eigen::MatrixXd damped = a;
    damped.diagonal() += mu * scale;
    const Eigen::VectorXd step = -damped.ldlt().solve(g);
    if (!step.allFinite() || step.norm() <= 1e-15 * (out.x.norm() + 1e-15)) break;
    const Eigen::VectorXd xn = out.x + step;
    const Eigen::VectorXd rn = f(xn);
    const double predicted = 0.5 * step.dot(mu * scale.cwiseProduct(step) - g);
    const double actual = 0.5 * (out.r.squaredNorm() - rn.squaredNorm());
    const double rho = predicted > 0 ? actual / predicted : -1.0;
    if (rn.allFinite() && rho > 0) {
      out.x = xn;
      out.r = rn;
      j = fd_jacobian(f, out.x, 1e-7);
      a = j.transpose() * j;
      g = j.transpose() * out.r;
      mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
    } else {
      mu *= nu;
      nu *= 2.0;
      if (mu > 1e20) break;
    }
  }
  return out;
}

}  // namespace reupload::detail
