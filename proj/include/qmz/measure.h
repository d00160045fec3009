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

#ifndef QMZ_MEASURE_H_
#define QMZ_MEASURE_H_

#include <optional>
#include <string>

#include "qmz/states.h"

namespace qmz {

enum class Scheme { kHomodyne, kCounting };

std::string scheme_name(Scheme scheme);
Scheme parse_scheme(const std::string& name);

// Outcome of homodyning modes a+ and a- with local-oscillator phases
// pi/2 + phi_bar and phi_bar. qubit_x is the Pauli-X readout (+1 / -1) and is
// present exactly for QWP probes.
struct HomodyneSample {
  double x_plus = 0.0;
  double x_minus = 0.0;
  std::optional<int> qubit_x;

  friend bool operator==(const HomodyneSample&, const HomodyneSample&) = default;
};

// Photon counts in modes a+ (m) and a- (n), plus the optional qubit readout.
struct CountSample {
  long m = 0;
  long n = 0;
  std::optional<int> qubit_x;

  friend bool operator==(const CountSample&, const CountSample&) = default;
};

// Argument and visibility of the interference factor 1 + v cos(theta).
struct PhaseInterferenceTerm {
  double theta = 0.0;
  double visibility = 0.0;
};

// e^{-p alpha^2}.
double ecs_visibility(const InterferometerParams& params);
// e^{-p alpha^2 - chi}.
double qwp_visibility(const InterferometerParams& params,
                      const DephasingParams& deph);

// theta = 2 x+ mu- - 2 x- mu+.
PhaseInterferenceTerm ecs_homodyne_interference(const HomodyneSample& s,
                                                const InterferometerParams& params);
// theta = (m + n) phi + m pi.
PhaseInterferenceTerm ecs_counting_interference(const CountSample& s,
                                                const InterferometerParams& params);

// ---- ECS, homodyne ------------------------------------------------------
//
// p(x|phi) = 2 N^2 [1 + e^{-p alpha^2} cos theta] g(x+, mu+) g(x-, mu-)
// with g the variance-1/2 Gaussian of specfun::gaussian_pdf_unit_halfwidth.

double ecs_homodyne_pdf(const HomodyneSample& s, const InterferometerParams& params);
double ecs_homodyne_log_pdf(const HomodyneSample& s,
                            const InterferometerParams& params);
// d/dphi ln p at fixed phi_bar. Throws NumericalError if p < 1e-300.
double ecs_homodyne_dlogpdf_dphi(const HomodyneSample& s,
                                 const InterferometerParams& params);

// ---- ECS, photon counting -----------------------------------------------
//
// p(m,n|phi) = 2 N^2 [1 + e^{-p alpha^2} cos theta] P(m; l) P(n; l),
// l = (1 - p) alpha^2 / 2.

double ecs_counting_pmf(const CountSample& s, const InterferometerParams& params);
double ecs_counting_log_pmf(const CountSample& s,
                            const InterferometerParams& params);
double ecs_counting_dlogpmf_dphi(const CountSample& s,
                                 const InterferometerParams& params);

// ---- QWP, homodyne + X readout -------------------------------------------
//
// p(x, X|phi) = g(x+, mu+) g(x-, mu-) * (1/2)[1 + X v cos(theta + vartheta)],
// v = e^{-p alpha^2 - chi}. The quadratures carry no fringes; the phase is
// kicked back onto the qubit.

double qwp_homodyne_joint(const HomodyneSample& s,
                          const InterferometerParams& params,
                          const DephasingParams& deph);
double qwp_homodyne_log_joint(const HomodyneSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph);
double qwp_homodyne_dlog_dphi(const HomodyneSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph);
// Qubit conditional p(X | x+, x-, phi).
double qwp_homodyne_qubit_conditional(const HomodyneSample& s,
                                      const InterferometerParams& params,
                                      const DephasingParams& deph);

// ---- QWP, photon counting + X readout -------------------------------------
//
// p(m, n, X|phi) = P(m; l) P(n; l) (1/2)[1 + X v cos((m+n) phi - vartheta - pi m)].

double qwp_counting_joint(const CountSample& s, const InterferometerParams& params,
                          const DephasingParams& deph);
double qwp_counting_log_joint(const CountSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph);
double qwp_counting_dlog_dphi(const CountSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph);
double qwp_counting_qubit_conditional(const CountSample& s,
                                      const InterferometerParams& params,
                                      const DephasingParams& deph);

// ---- Family dispatch -------------------------------------------------------
//
// log_probability returns -inf for outcomes that are impossible at this phase
// (possible only when the visibility is exactly one). score is the analytic
// d/dphi ln p without the underflow guard; it is finite wherever
// log_probability is.

double log_probability(const StateFamily& family, const HomodyneSample& s,
                       const InterferometerParams& params,
                       const DephasingParams& deph);
double log_probability(const StateFamily& family, const CountSample& s,
                       const InterferometerParams& params,
                       const DephasingParams& deph);
double score(const StateFamily& family, const HomodyneSample& s,
             const InterferometerParams& params, const DephasingParams& deph);
double score(const StateFamily& family, const CountSample& s,
             const InterferometerParams& params, const DephasingParams& deph);

// Densities below this are reported as an error by the *_dlog* functions.
inline constexpr double kDensityFloor = 1e-300;

}  // namespace qmz

#endif  // QMZ_MEASURE_H_
