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

#ifndef QMZ_WIGNER_H_
#define QMZ_WIGNER_H_

#include <cstddef>
#include <vector>

#include "qmz/states.h"

namespace qmz {

struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
};

// Real Wigner density sampled on a rectangular grid. values is row-major with
// the x index outermost: values[ix * p_axis.size() + ip].
struct WignerGrid {
  std::vector<double> x_axis;
  std::vector<double> p_axis;
  std::vector<double> values;

  double at(std::size_t ix, std::size_t ip) const {
    return values[ix * p_axis.size() + ip];
  }
  double cell_area() const;
  // sum(values) * cell_area; ~1 when the grid covers the distribution.
  double riemann_sum() const;
};

// Reduced Wigner function W(x+, p+) of output mode a+ for the lossless,
// post-beamsplitter ECS, with x = (a + a^dagger)/sqrt(2) and
// p = i(a^dagger - a)/sqrt(2), normalized to integrate to one over dx dp.
//
// The reduced state is N^2 (|b1><b1| + |b2><b2| + c |b1><b2| + c* |b2><b1|)
// with b1 = e^{i phi1} alpha/sqrt(2), b2 = -e^{i phi2} alpha/sqrt(2) and c the
// overlap <alpha_{phi2}|alpha_{phi1}> of the traced-out a- mode. Each
// |beta><gamma| contributes
//   W = (1/pi) <gamma|beta> exp(-2 (z - beta)(z* - gamma*)),  z = (x + i p)/sqrt(2).
double reduced_wigner_ecs_at(const InterferometerParams& params, double x,
                             double p);

// Grid version. Requires loss_p == 0 (UnsupportedError otherwise) and at
// least two points per axis.
WignerGrid reduced_wigner_ecs(const InterferometerParams& params,
                              AxisRange x_range, AxisRange p_range,
                              std::size_t resolution, unsigned threads = 1);

// [-(alpha + 4), alpha + 4], wide enough for both lobes and their fringes.
AxisRange default_wigner_range(double alpha);

// Distribution of the rotated quadrature x cos(theta) + p sin(theta), obtained
// by integrating the closed-form Wigner function along the conjugate
// direction with the trapezoid rule.
double wigner_quadrature_marginal(const InterferometerParams& params,
                                  double theta, double u);

}  // namespace qmz

#endif  // QMZ_WIGNER_H_
