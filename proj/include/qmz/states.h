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

#ifndef QMZ_STATES_H_
#define QMZ_STATES_H_

#include <string>

namespace qmz {

enum class StateKind { kEcs, kQwp, kNoon };

// Which probe enters the interferometer. `noon_n` is only meaningful for
// N00N probes.
struct StateFamily {
  StateKind kind = StateKind::kEcs;
  int noon_n = 0;

  static StateFamily ecs() { return {StateKind::kEcs, 0}; }
  static StateFamily qwp() { return {StateKind::kQwp, 0}; }
  static StateFamily noon(int n);

  bool is_ecs() const { return kind == StateKind::kEcs; }
  bool is_qwp() const { return kind == StateKind::kQwp; }
  bool is_noon() const { return kind == StateKind::kNoon; }

  std::string name() const;  // "ecs", "qwp" or "noon"
  static StateFamily parse(const std::string& name, int noon_n = 0);

  friend bool operator==(const StateFamily&, const StateFamily&) = default;
};

// Physical configuration of the lossy Mach-Zehnder interferometer. The
// coherent amplitude is real and non-negative.
struct InterferometerParams {
  double alpha = 0.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double loss_p = 0.0;

  // Builds arm phases from the differential phase and the mean phase:
  // phi1 = phi_bar + phi/2, phi2 = phi_bar - phi/2.
  static InterferometerParams from_differential(double alpha, double phi,
                                                double phi_bar = 0.0,
                                                double loss_p = 0.0);

  double phi() const { return phi1 - phi2; }
  double phi_bar() const { return 0.5 * (phi1 + phi2); }

  // Same mean phase, different differential phase.
  InterferometerParams with_phi(double phi) const;

  // Throws std::invalid_argument on alpha < 0, loss outside [0, 1] or
  // non-finite phases.
  void validate() const;
};

// Qubit decoherence at measurement time: coherence factor e^{-chi - i vartheta}.
struct DephasingParams {
  double chi = 0.0;
  double vartheta = 0.0;

  void validate() const;
};

// Means of the two homodyne quadratures measured on modes a+ and a-.
struct DisplacementPair {
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

// [2 (1 + e^{-alpha^2})]^{-1/2}.
double ecs_normalization(double alpha);

// Mean total photon number of the unphased probe.
double mean_photons(const StateFamily& family, double alpha);

// Inverse of mean_photons for ECS and QWP. For ECS this goes through the
// Lambert W function: alpha^2 = n + W(n e^{-n}).
double alpha_sq_from_mean_photons(const StateFamily& family, double n_bar);

// mu+ = sqrt(1-p) alpha sin(phi/2), mu- = sqrt(1-p) alpha cos(phi/2).
DisplacementPair displacement_pair(const InterferometerParams& params);

}  // namespace qmz

#endif  // QMZ_STATES_H_
