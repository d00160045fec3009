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

#include "qmz/measure.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qmz/errors.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

constexpr double kLogPi = 1.14472988584940017414;

void RequireNoQubit(const std::optional<int>& q) {
  if (q.has_value()) {
    throw std::invalid_argument("ECS samples carry no qubit outcome");
  }
}

int RequireQubit(const std::optional<int>& q) {
  if (!q.has_value() || (*q != 1 && *q != -1)) {
    throw std::invalid_argument("QWP samples need a qubit outcome of +1 or -1");
  }
  return *q;
}

void RequireCounts(const CountSample& s) {
  if (s.m < 0 || s.n < 0) throw std::invalid_argument("photon counts must be >= 0");
}

double Parity(long m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// ln(1 + v cos t), -inf when the factor vanishes.
double LogFringe(double v, double c) { return std::log1p(v * c); }

// Pieces shared by the homodyne densities.
struct HomodyneGeometry {
  double mu_plus;
  double mu_minus;
  double dp;      // x+ - mu+
  double dm;      // x- - mu-
  double theta;   // 2 x+ mu- - 2 x- mu+
  double dtheta;  // d theta / d phi = -(x+ mu+ + x- mu-)
  // d/dphi of ln g+ + ln g-. With dmu+/dphi = mu-/2 and dmu-/dphi = -mu+/2
  // this collapses to theta/2.
  double gauss_score;

  HomodyneGeometry(const HomodyneSample& s, const InterferometerParams& params) {
    const DisplacementPair mu = displacement_pair(params);
    mu_plus = mu.mu_plus;
    mu_minus = mu.mu_minus;
    dp = s.x_plus - mu_plus;
    dm = s.x_minus - mu_minus;
    theta = 2.0 * s.x_plus * mu_minus - 2.0 * s.x_minus * mu_plus;
    dtheta = -(s.x_plus * mu_plus + s.x_minus * mu_minus);
    gauss_score = 0.5 * theta;
  }

  double log_gauss() const { return -dp * dp - dm * dm - kLogPi; }
};

double EcsLogPrefactor(double alpha) {
  return std::log(2.0) + 2.0 * std::log(ecs_normalization(alpha));
}

double CheckedScore(double log_density, double score_value) {
  if (!(log_density >= std::log(kDensityFloor))) {
    throw NumericalError(
        "density below 1e-300; the phase derivative of its log is undefined");
  }
  return score_value;
}

double LogLambda(double lambda, long m, long n) {
  return specfun::log_poisson_pmf(m, lambda) + specfun::log_poisson_pmf(n, lambda);
}

double CountingRate(const InterferometerParams& params) {
  return 0.5 * (1.0 - params.loss_p) * params.alpha * params.alpha;
}

}  // namespace

std::string scheme_name(Scheme scheme) {
  return scheme == Scheme::kHomodyne ? "homodyne" : "counting";
}

Scheme parse_scheme(const std::string& name) {
  if (name == "homodyne") return Scheme::kHomodyne;
  if (name == "counting") return Scheme::kCounting;
  throw std::invalid_argument("unknown measurement scheme '" + name +
                              "' (expected homodyne or counting)");
}

double ecs_visibility(const InterferometerParams& params) {
  return std::exp(-params.loss_p * params.alpha * params.alpha);
}

double qwp_visibility(const InterferometerParams& params,
                      const DephasingParams& deph) {
  return std::exp(-params.loss_p * params.alpha * params.alpha - deph.chi);
}

PhaseInterferenceTerm ecs_homodyne_interference(const HomodyneSample& s,
                                                const InterferometerParams& params) {
  return {HomodyneGeometry(s, params).theta, ecs_visibility(params)};
}

PhaseInterferenceTerm ecs_counting_interference(const CountSample& s,
                                                const InterferometerParams& params) {
  return {static_cast<double>(s.m + s.n) * params.phi() + s.m * specfun::kPi,
          ecs_visibility(params)};
}

// ---- ECS homodyne ----------------------------------------------------------

double ecs_homodyne_log_pdf(const HomodyneSample& s,
                            const InterferometerParams& params) {
  RequireNoQubit(s.qubit_x);
  const HomodyneGeometry g(s, params);
  const double v = ecs_visibility(params);
  return EcsLogPrefactor(params.alpha) + LogFringe(v, std::cos(g.theta)) +
         g.log_gauss();
}

double ecs_homodyne_pdf(const HomodyneSample& s, const InterferometerParams& params) {
  return std::exp(ecs_homodyne_log_pdf(s, params));
}

namespace {
double EcsHomodyneScore(const HomodyneSample& s, const InterferometerParams& params) {
  const HomodyneGeometry g(s, params);
  const double v = ecs_visibility(params);
  return g.gauss_score -
         v * std::sin(g.theta) * g.dtheta / (1.0 + v * std::cos(g.theta));
}
}  // namespace

double ecs_homodyne_dlogpdf_dphi(const HomodyneSample& s,
                                 const InterferometerParams& params) {
  return CheckedScore(ecs_homodyne_log_pdf(s, params), EcsHomodyneScore(s, params));
}

// ---- ECS counting ----------------------------------------------------------

double ecs_counting_log_pmf(const CountSample& s, const InterferometerParams& params) {
  RequireNoQubit(s.qubit_x);
  RequireCounts(s);
  const double v = ecs_visibility(params);
  // cos((m+n) phi + m pi) = (-1)^m cos((m+n) phi), exact in the parity.
  const double c = Parity(s.m) * std::cos(static_cast<double>(s.m + s.n) * params.phi());
  return EcsLogPrefactor(params.alpha) + LogFringe(v, c) +
         LogLambda(CountingRate(params), s.m, s.n);
}

double ecs_counting_pmf(const CountSample& s, const InterferometerParams& params) {
  return std::exp(ecs_counting_log_pmf(s, params));
}

namespace {
double EcsCountingScore(const CountSample& s, const InterferometerParams& params) {
  const double v = ecs_visibility(params);
  const double k = static_cast<double>(s.m + s.n);
  const double sgn = Parity(s.m);
  const double c = sgn * std::cos(k * params.phi());
  const double sn = sgn * std::sin(k * params.phi());
  return -v * sn * k / (1.0 + v * c);
}
}  // namespace

double ecs_counting_dlogpmf_dphi(const CountSample& s,
                                 const InterferometerParams& params) {
  return CheckedScore(ecs_counting_log_pmf(s, params), EcsCountingScore(s, params));
}

// ---- QWP homodyne ----------------------------------------------------------

double qwp_homodyne_qubit_conditional(const HomodyneSample& s,
                                      const InterferometerParams& params,
                                      const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  const HomodyneGeometry g(s, params);
  const double v = qwp_visibility(params, deph);
  return 0.5 * (1.0 + x * v * std::cos(g.theta + deph.vartheta));
}

double qwp_homodyne_log_joint(const HomodyneSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  const HomodyneGeometry g(s, params);
  const double v = qwp_visibility(params, deph);
  return g.log_gauss() - std::log(2.0) +
         LogFringe(x * v, std::cos(g.theta + deph.vartheta));
}

double qwp_homodyne_joint(const HomodyneSample& s,
                          const InterferometerParams& params,
                          const DephasingParams& deph) {
  return std::exp(qwp_homodyne_log_joint(s, params, deph));
}

namespace {
double QwpHomodyneScore(const HomodyneSample& s, const InterferometerParams& params,
                        const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  const HomodyneGeometry g(s, params);
  const double xv = x * qwp_visibility(params, deph);
  const double t = g.theta + deph.vartheta;
  return g.gauss_score - xv * std::sin(t) * g.dtheta / (1.0 + xv * std::cos(t));
}
}  // namespace

double qwp_homodyne_dlog_dphi(const HomodyneSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph) {
  return CheckedScore(qwp_homodyne_log_joint(s, params, deph),
                      QwpHomodyneScore(s, params, deph));
}

// ---- QWP counting ----------------------------------------------------------

namespace {
// cos and sin of (m+n) phi - vartheta - pi m.
std::pair<double, double> QwpCountingTrig(const CountSample& s,
                                          const InterferometerParams& params,
                                          const DephasingParams& deph) {
  const double t = static_cast<double>(s.m + s.n) * params.phi() - deph.vartheta;
  const double sgn = Parity(s.m);
  return {sgn * std::cos(t), sgn * std::sin(t)};
}
}  // namespace

double qwp_counting_qubit_conditional(const CountSample& s,
                                      const InterferometerParams& params,
                                      const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  RequireCounts(s);
  const double c = QwpCountingTrig(s, params, deph).first;
  return 0.5 * (1.0 + x * qwp_visibility(params, deph) * c);
}

double qwp_counting_log_joint(const CountSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  RequireCounts(s);
  const double c = QwpCountingTrig(s, params, deph).first;
  return LogLambda(CountingRate(params), s.m, s.n) - std::log(2.0) +
         LogFringe(x * qwp_visibility(params, deph), c);
}

double qwp_counting_joint(const CountSample& s, const InterferometerParams& params,
                          const DephasingParams& deph) {
  return std::exp(qwp_counting_log_joint(s, params, deph));
}

namespace {
double QwpCountingScore(const CountSample& s, const InterferometerParams& params,
                        const DephasingParams& deph) {
  const int x = RequireQubit(s.qubit_x);
  const auto [c, sn] = QwpCountingTrig(s, params, deph);
  const double xv = x * qwp_visibility(params, deph);
  const double k = static_cast<double>(s.m + s.n);
  return -xv * sn * k / (1.0 + xv * c);
}
}  // namespace

double qwp_counting_dlog_dphi(const CountSample& s,
                              const InterferometerParams& params,
                              const DephasingParams& deph) {
  return CheckedScore(qwp_counting_log_joint(s, params, deph),
                      QwpCountingScore(s, params, deph));
}

// ---- Dispatch --------------------------------------------------------------

namespace {
[[noreturn]] void NoMeasurementModel(const StateFamily& family) {
  throw UnsupportedError("no measurement model for '" + family.name() + "' probes");
}
}  // namespace

double log_probability(const StateFamily& family, const HomodyneSample& s,
                       const InterferometerParams& params,
                       const DephasingParams& deph) {
  if (family.is_ecs()) return ecs_homodyne_log_pdf(s, params);
  if (family.is_qwp()) return qwp_homodyne_log_joint(s, params, deph);
  NoMeasurementModel(family);
}

double log_probability(const StateFamily& family, const CountSample& s,
                       const InterferometerParams& params,
                       const DephasingParams& deph) {
  if (family.is_ecs()) return ecs_counting_log_pmf(s, params);
  if (family.is_qwp()) return qwp_counting_log_joint(s, params, deph);
  NoMeasurementModel(family);
}

double score(const StateFamily& family, const HomodyneSample& s,
             const InterferometerParams& params, const DephasingParams& deph) {
  if (family.is_ecs()) {
    RequireNoQubit(s.qubit_x);
    return EcsHomodyneScore(s, params);
  }
  if (family.is_qwp()) return QwpHomodyneScore(s, params, deph);
  NoMeasurementModel(family);
}

double score(const StateFamily& family, const CountSample& s,
             const InterferometerParams& params, const DephasingParams& deph) {
  if (family.is_ecs()) {
    RequireNoQubit(s.qubit_x);
    return EcsCountingScore(s, params);
  }
  if (family.is_qwp()) return QwpCountingScore(s, params, deph);
  NoMeasurementModel(family);
}

}  // namespace qmz
