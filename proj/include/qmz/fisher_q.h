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

#ifndef QMZ_FISHER_Q_H_
#define QMZ_FISHER_Q_H_

#include "qmz/states.h"

namespace qmz {

// Quantum Fisher information of a probe with respect to the differential
// phase generator J3 = (n1 - n2)/2.
struct QfiResult {
  double value = 0.0;
  double n_bar = 0.0;
  StateFamily family;
};

// n^2 + [1 + W(n e^{-n})] n.
double qfi_ecs_lossless(double n_bar);

// n^2 + n.
double qfi_qwp_lossless(double n_bar);

// N^2.
double qfi_noon(int n);

// (1-p)^2 n^2 e^{-2p[n + W(n e^{-n})]} + (1-p) n [1 + (1-p) W(n e^{-n})].
double qfi_ecs_lossy(double n_bar, double p);

// e^{-2pn - 2chi} (1-p)^2 n^2 + (1-p) n. Independent of vartheta.
double qfi_qwp_lossy(double n_bar, double p, const DephasingParams& deph);

// Closed-form QFI for the configured probe; n_bar is the mean photon number
// of the probe before loss. N00N probes are only covered without loss.
QfiResult quantum_fisher(const StateFamily& family,
                         const InterferometerParams& params,
                         const DephasingParams& deph = {});

enum class OracleRoute {
  // Sum over the support eigenpairs, with the zero-eigenvalue sector folded
  // in through the completeness relation (needs only <k|J3^2|k>).
  kCompleteness,
  // Plain double sum over every eigenpair, dropping pairs whose eigenvalues
  // sum to less than 1e-14.
  kFullSum,
};

// Brute-force QFI: builds the lossy, dephased density matrix in a truncated
// Fock basis from its two-branch structure, diagonalizes it numerically and
// evaluates
//   I = 2 sum_{k,j} (l_k - l_j)^2 / (l_k + l_j) |<k|J3|j>|^2.
// Intended for alpha <= 4. Throws NumericalError when the cutoff drops more
// than 1e-9 of the coherent-state weight, UnsupportedError for lossy N00N.
double qfi_numeric_oracle(const StateFamily& family,
                          const InterferometerParams& params,
                          const DephasingParams& deph, int cutoff,
                          OracleRoute route = OracleRoute::kCompleteness);

}  // namespace qmz

#endif  // QMZ_FISHER_Q_H_
