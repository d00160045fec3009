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

#include "qmz/specfun.h"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "qmz/errors.h"

namespace qmz::specfun {

namespace {

double LambertInitialGuess(double z) {
  if (z < 2.718281828459045) return std::log1p(z);
  const double l1 = std::log(z);
  const double l2 = std::log(l1);
  return l1 - l2 + l2 / l1;
}

constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

double lambert_w0(double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw DomainError("lambert_w0: argument must be finite and >= 0, got " +
                      std::to_string(z));
  }
  if (z == 0.0) return 0.0;

  // Halley iteration on g(w) = w - z e^{-w}, which avoids forming e^w for
  // large arguments.
  double w = LambertInitialGuess(z);
  for (int iter = 0; iter < 64; ++iter) {
    const double ze = z * std::exp(-w);
    const double g = w - ze;
    const double g1 = 1.0 + ze;
    const double g2 = -ze;
    const double step = g / (g1 - 0.5 * g * g2 / g1);
    w -= step;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() *
                              std::max(1.0, std::abs(w))) {
      break;
    }
  }
  return w;
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be > 0");
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  }
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    a += kLanczos[i] / (x + static_cast<double>(i));
  }
  const double t = x + 7.5;
  return 0.91893853320467274178 + (x + 0.5) * std::log(t) - t + std::log(a);
}

double log_poisson_pmf(long j, double lambda) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw DomainError("poisson_pmf: rate must be finite and >= 0");
  }
  if (j < 0) return -std::numeric_limits<double>::infinity();
  if (lambda == 0.0) {
    return j == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  const double jd = static_cast<double>(j);
  return jd * std::log(lambda) - lambda - log_gamma(jd + 1.0);
}

double poisson_pmf(long j, double lambda) {
  return std::exp(log_poisson_pmf(j, lambda));
}

long poisson_tail_cutoff(double lambda) {
  if (!(lambda >= 0.0)) throw DomainError("poisson_tail_cutoff: rate < 0");
  return static_cast<long>(std::ceil(lambda + 12.0 * std::sqrt(lambda) + 20.0));
}

double gaussian_pdf_unit_halfwidth(double x, double mu) {
  const double d = x - mu;
  return kInvSqrtPi * std::exp(-d * d);
}

}  // namespace qmz::specfun
