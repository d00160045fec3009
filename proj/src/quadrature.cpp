// Copyright 2026 The qmz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmz/quadrature.h"

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace qmz {

namespace {

constexpr double kRescale = 1e150;

struct Recurrence {
  double p_n;          // p_n(t), scaled
  double p_nm1;        // p_{n-1}(t), same scale
  double log_sum_sq;   // ln sum_{k<n} p_k(t)^2, unscaled
};

// Orthonormal Hermite recurrence for the normalized weight:
//   p_0 = 1, sqrt((k+1)/2) p_{k+1} = t p_k - sqrt(k/2) p_{k-1}.
Recurrence Evaluate(int n, double t) {
  double prev = 0.0;
  double cur = 1.0;
  double log_scale = 0.0;  // true p_k = cur * exp(log_scale)
  double sum = 0.0;        // sum of p_k^2 in units of exp(2 log_scale)
  for (int k = 0; k < n; ++k) {
    sum += cur * cur;
    const double next = (t * cur - std::sqrt(0.5 * k) * prev) / std::sqrt(0.5 * (k + 1));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescale) {
      cur /= kRescale;
      prev /= kRescale;
      sum /= kRescale * kRescale;
      log_scale += std::log(kRescale);
    }
  }
  return {cur, prev, std::log(sum) + 2.0 * log_scale};
}

GaussHermiteRule Build(int n) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(n > 1 ? n - 1 : 0);
  for (int k = 1; k < n; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_hermite: Jacobi eigenvalues did not converge");
  }

  GaussHermiteRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double t = solver.eigenvalues()(i);
    for (int it = 0; it < 3; ++it) {
      const Recurrence r = Evaluate(n, t);
      if (r.p_nm1 == 0.0) break;
      t -= r.p_n / (std::sqrt(2.0 * n) * r.p_nm1);
    }
    rule.nodes[i] = t;
  }
  // Enforce the exact symmetry of the rule.
  for (int i = 0; i < n / 2; ++i) {
    const double t = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -t;
    rule.nodes[n - 1 - i] = t;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  for (int i = 0; i < n; ++i) {
    rule.weights[i] = std::exp(-Evaluate(n, rule.nodes[i]).log_sum_sq);
  }
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be >= 1");
  static std::mutex mu;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, Build(n)).first;
  return it->second;
}

}  // namespace qmz
