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

#include "qmz/states.h"

#include <cmath>
#include <stdexcept>

#include "qmz/errors.h"
#include "qmz/specfun.h"

namespace qmz {

StateFamily StateFamily::noon(int n) {
  if (n < 1) throw std::invalid_argument("N00N photon number must be >= 1");
  return {StateKind::kNoon, n};
}

std::string StateFamily::name() const {
  switch (kind) {
    case StateKind::kEcs:
      return "ecs";
    case StateKind::kQwp:
      return "qwp";
    case StateKind::kNoon:
      return "noon";
  }
  return "unknown";
}

StateFamily StateFamily::parse(const std::string& name, int noon_n) {
  if (name == "ecs") return ecs();
  if (name == "qwp") return qwp();
  if (name == "noon") return noon(noon_n);
  throw std::invalid_argument("unknown state family '" + name +
                              "' (expected ecs, qwp or noon)");
}

InterferometerParams InterferometerParams::from_differential(double alpha,
                                                             double phi,
                                                             double phi_bar,
                                                             double loss_p) {
  InterferometerParams p;
  p.alpha = alpha;
  p.phi1 = phi_bar + 0.5 * phi;
  p.phi2 = phi_bar - 0.5 * phi;
  p.loss_p = loss_p;
  return p;
}

InterferometerParams InterferometerParams::with_phi(double phi) const {
  return from_differential(alpha, phi, phi_bar(), loss_p);
}

void InterferometerParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
  if (!(loss_p >= 0.0 && loss_p <= 1.0)) {
    throw std::invalid_argument("loss probability must lie in [0, 1]");
  }
  if (!std::isfinite(phi1) || !std::isfinite(phi2)) {
    throw std::invalid_argument("arm phases must be finite");
  }
}

void DephasingParams::validate() const {
  if (!(chi >= 0.0)) throw std::invalid_argument("chi must be >= 0");
  if (!std::isfinite(vartheta)) {
    throw std::invalid_argument("vartheta must be finite");
  }
}

double ecs_normalization(double alpha) {
  return 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-alpha * alpha)));
}

double mean_photons(const StateFamily& family, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  const double a2 = alpha * alpha;
  switch (family.kind) {
    case StateKind::kEcs:
      return a2 / (1.0 + std::exp(-a2));
    case StateKind::kQwp:
      return a2;
    case StateKind::kNoon:
      return family.noon_n;
  }
  return 0.0;
}

double alpha_sq_from_mean_photons(const StateFamily& family, double n_bar) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("n_bar must be >= 0");
  switch (family.kind) {
    case StateKind::kEcs:
      return n_bar + specfun::lambert_w0(n_bar * std::exp(-n_bar));
    case StateKind::kQwp:
      return n_bar;
    case StateKind::kNoon:
      break;
  }
  throw UnsupportedError(
      "N00N probes have no coherent amplitude; use the photon number N");
}

DisplacementPair displacement_pair(const InterferometerParams& params) {
  const double amp = std::sqrt(1.0 - params.loss_p) * params.alpha;
  const double half = 0.5 * params.phi();
  return {amp * std::sin(half), amp * std::cos(half)};
}

}  // namespace qmz
