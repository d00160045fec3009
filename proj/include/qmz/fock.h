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

#ifndef QMZ_FOCK_H_
#define QMZ_FOCK_H_

#include <complex>
#include <vector>

#include "qmz/states.h"

namespace qmz {

using Complex = std::complex<double>;

enum class Qubit : int { kNone = -1, kUp = 0, kDown = 1 };

// One nonzero amplitude of a two-mode (optionally qubit-tagged) Fock state.
struct FockComponent {
  Qubit qubit = Qubit::kNone;
  int n1 = 0;
  int n2 = 0;
  Complex amplitude;
};

// Sparse state vector in the truncated basis |q>|n1, n2>, 0 <= n1, n2 <=
// cutoff. Only the arm-occupation sectors that the probes populate are
// stored, so memory is linear in the cutoff.
struct FockState {
  std::vector<FockComponent> components;
  int cutoff = 0;
  bool has_qubit = false;
  // Fock weight dropped by the truncation before renormalization.
  double truncation_weight = 0.0;

  double norm() const;
  double mean_total_photons() const;
  double mean_j3() const;     // J3 = (n1 - n2)/2
  double mean_j3_sq() const;
  double variance_j3() const { return mean_j3_sq() - mean_j3() * mean_j3(); }
};

// Truncation limit below which the oracles refuse to run.
inline constexpr double kMaxTruncationWeight = 1e-9;

// ceil(alpha^2 + 10 alpha + 10): keeps the dropped coherent-state weight well
// below 1e-12 for the amplitudes used here.
int default_fock_cutoff(double alpha);

// Amplitudes <n|beta> for n = 0..cutoff (not renormalized).
std::vector<Complex> coherent_amplitudes(Complex beta, int cutoff);

// Poisson weight of |beta> above the cutoff, 1 - sum_{n<=cutoff} P(n; |beta|^2).
double coherent_tail_weight(double mean, int cutoff);

// |ECS>, |QWP> or |N00N> after the arm phases, |alpha_j> -> |e^{i phi_j}
// alpha_j>, truncated and renormalized. Loss is not applied (the result is a
// pure state). Throws NumericalError when the truncation drops more than
// kMaxTruncationWeight.
FockState fock_truncated_state(const StateFamily& family,
                               const InterferometerParams& params, int cutoff);

}  // namespace qmz

#endif  // QMZ_FOCK_H_
