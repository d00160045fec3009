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

#include "qmz/wigner.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qmz/errors.h"
#include "qmz/parallel.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

using Complex = std::complex<double>;

// <gamma|beta> exp(-2 (z - beta)(z* - gamma*)), both factors in one exponent.
Complex CoherentDyadTerm(Complex z, Complex beta, Complex gamma) {
  const Complex e = -0.5 * std::norm(beta) - 0.5 * std::norm(gamma) +
                    std::conj(gamma) * beta -
                    2.0 * (z - beta) * (std::conj(z) - std::conj(gamma));
  return std::exp(e);
}

struct ReducedEcs {
  Complex b1;
  Complex b2;
  Complex overlap;  // <alpha_{phi2}|alpha_{phi1}> in mode a-
  double norm_sq;

  explicit ReducedEcs(const InterferometerParams& params) {
    const double h = params.alpha / std::sqrt(2.0);
    const Complex a1 = std::polar(h, params.phi1);
    const Complex a2 = std::polar(h, params.phi2);
    b1 = a1;
    b2 = -a2;
    overlap = std::exp(-0.5 * std::norm(a1) - 0.5 * std::norm(a2) +
                       std::conj(a2) * a1);
    norm_sq = std::pow(ecs_normalization(params.alpha), 2);
  }

  double operator()(double x, double p) const {
    const Complex z(x / std::sqrt(2.0), p / std::sqrt(2.0));
    const Complex diag = CoherentDyadTerm(z, b1, b1) + CoherentDyadTerm(z, b2, b2);
    const Complex cross = overlap * CoherentDyadTerm(z, b1, b2);
    // The b2><b1 term is the complex conjugate of the b1><b2 term.
    return norm_sq * (diag.real() + 2.0 * cross.real()) / specfun::kPi;
  }
};

void RequireLossless(const InterferometerParams& params) {
  if (params.loss_p != 0.0) {
    throw UnsupportedError(
        "reduced Wigner distribution is only available for loss_p = 0");
  }
}

}  // namespace

double WignerGrid::cell_area() const {
  if (x_axis.size() < 2 || p_axis.size() < 2) return 0.0;
  const double dx = (x_axis.back() - x_axis.front()) / (x_axis.size() - 1);
  const double dp = (p_axis.back() - p_axis.front()) / (p_axis.size() - 1);
  return dx * dp;
}

double WignerGrid::riemann_sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * cell_area();
}

double reduced_wigner_ecs_at(const InterferometerParams& params, double x,
                             double p) {
  params.validate();
  RequireLossless(params);
  return ReducedEcs(params)(x, p);
}

WignerGrid reduced_wigner_ecs(const InterferometerParams& params,
                              AxisRange x_range, AxisRange p_range,
                              std::size_t resolution, unsigned threads) {
  params.validate();
  RequireLossless(params);
  if (resolution < 2) {
    throw std::invalid_argument("Wigner grid needs at least 2 points per axis");
  }
  if (!(x_range.hi > x_range.lo) || !(p_range.hi > p_range.lo)) {
    throw std::invalid_argument("Wigner grid ranges must have hi > lo");
  }

  WignerGrid grid;
  grid.x_axis.resize(resolution);
  grid.p_axis.resize(resolution);
  const double dx = (x_range.hi - x_range.lo) / (resolution - 1);
  const double dp = (p_range.hi - p_range.lo) / (resolution - 1);
  for (std::size_t i = 0; i < resolution; ++i) {
    grid.x_axis[i] = x_range.lo + i * dx;
    grid.p_axis[i] = p_range.lo + i * dp;
  }
  grid.values.assign(resolution * resolution, 0.0);

  const ReducedEcs w(params);
  parallel_for(resolution, threads, [&](std::size_t ix) {
    for (std::size_t ip = 0; ip < resolution; ++ip) {
      grid.values[ix * resolution + ip] = w(grid.x_axis[ix], grid.p_axis[ip]);
    }
  });
  return grid;
}

AxisRange default_wigner_range(double alpha) {
  return {-(alpha + 4.0), alpha + 4.0};
}

double wigner_quadrature_marginal(const InterferometerParams& params,
                                  double theta, double u) {
  params.validate();
  RequireLossless(params);
  const ReducedEcs w(params);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  // Trapezoid rule: the integrand is a sum of Gaussians of variance 1/2 times
  // bounded oscillations, for which the rule converges geometrically.
  const double half_width = params.alpha + 10.0;
  const double h = 0.02;
  const int n = static_cast<int>(std::ceil(2.0 * half_width / h));
  const double step = 2.0 * half_width / n;
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double v = -half_width + k * step;
    const double f = w(u * c - v * s, u * s + v * c);
    sum += (k == 0 || k == n) ? 0.5 * f : f;
  }
  return sum * step;
}

}  // namespace qmz
