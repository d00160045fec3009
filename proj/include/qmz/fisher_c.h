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

#ifndef QMZ_FISHER_C_H_
#define QMZ_FISHER_C_H_

#include <string>
#include <vector>

#include "qmz/measure.h"
#include "qmz/states.h"

namespace qmz {

// Node counts double from min_nodes to max_nodes per axis until successive
// estimates agree to rel_tol.
struct QuadratureOptions {
  int min_nodes = 64;
  int max_nodes = 1024;
  double rel_tol = 1e-8;
};

// Classical Fisher information of the homodyne scheme (plus X readout for
// QWP) with respect to phi at fixed phi_bar,
//   I_C = integral (d_phi ln p)^2 p dx.
// Evaluated in closed form: a Gaussian moment along the fringes plus a
// Fourier series across them. The joint quadrature density is a rotation of a
// fixed one by phi/2, so the result does not depend on phi.
double cfi_homodyne(const StateFamily& family, const InterferometerParams& params,
                    const DephasingParams& deph = {});

// The same integral by tensor Gauss-Hermite quadrature recentered at
// (mu+, mu-), doubling the node count from min_nodes until two successive
// values agree to rel_tol. Convergence is slow when the fringe visibility is
// close to (but below) one, because 1 + v cos(theta) then has complex zeros
// near the real axis; NumericalError reports the node:value trace.
double cfi_homodyne_quadrature(const StateFamily& family,
                               const InterferometerParams& params,
                               const DephasingParams& deph = {},
                               const QuadratureOptions& opts = {});

// Classical Fisher information of photon counting (plus X readout for QWP),
// summed over m, n <= poisson_tail_cutoff((1-p) alpha^2 / 2).
double cfi_counting(const StateFamily& family, const InterferometerParams& params,
                    const DephasingParams& deph = {});

double cfi(Scheme scheme, const StateFamily& family,
           const InterferometerParams& params, const DephasingParams& deph = {});

// 1/sqrt(M info), or +inf when info == 0.
double cramer_rao_bound(long M, double info);

// [(1 - p) M n_bar]^{-1/2}.
double standard_quantum_limit(long M, double loss_p, double n_bar);

enum class SweepScheme { kHomodyne, kCounting, kQuantum };
enum class SweepAxis { kPhi, kNBar };

std::string sweep_scheme_name(SweepScheme s);
SweepScheme parse_sweep_scheme(const std::string& name);
std::string sweep_axis_name(SweepAxis a);
SweepAxis parse_sweep_axis(const std::string& name);

// One sweep point. For the quantum scheme cfi is set to qfi, i.e. the
// information of an optimal measurement. delta_phi is +inf when cfi == 0.
struct FisherReport {
  SweepScheme scheme = SweepScheme::kQuantum;
  double x = 0.0;  // the swept coordinate (phi or n_bar)
  double phi = 0.0;
  double n_bar = 0.0;
  double cfi = 0.0;
  double qfi = 0.0;
  double delta_phi = 0.0;
  double delta_phi_min = 0.0;
  double delta_phi_sql = 0.0;
  long M = 1;

  bool delta_phi_infinite() const;
};

struct SweepSpec {
  SweepScheme scheme = SweepScheme::kHomodyne;
  StateFamily family = StateFamily::ecs();
  SweepAxis axis = SweepAxis::kPhi;
  std::vector<double> grid;
  double n_bar = 0.0;  // fixed when sweeping phi
  double phi = 0.0;    // fixed when sweeping n_bar
  double phi_bar = 0.0;
  double loss_p = 0.0;
  DephasingParams deph;
  long M = 1;
  unsigned threads = 1;
};

// Grid must be non-empty and strictly monotone. Points are evaluated in
// parallel; the output order follows the grid.
std::vector<FisherReport> precision_sweep(const SweepSpec& spec);

// n evenly spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace qmz

#endif  // QMZ_FISHER_C_H_
