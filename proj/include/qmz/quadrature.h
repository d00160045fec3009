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

#ifndef QMZ_QUADRATURE_H_
#define QMZ_QUADRATURE_H_

#include <vector>

namespace qmz {

// n-point Gauss-Hermite rule for the normalized weight pi^{-1/2} e^{-t^2}:
//   integral f(t) pi^{-1/2} e^{-t^2} dt  ~=  sum_i weights[i] f(nodes[i]).
// The weights sum to one. Nodes are ascending.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Cached per n; safe to call concurrently. Nodes come from the eigenvalues of
// the Jacobi matrix, polished by Newton steps on the orthonormal Hermite
// recurrence; weights from the Christoffel function with running rescaling so
// that n in the thousands neither overflows nor underflows prematurely.
const GaussHermiteRule& gauss_hermite(int n);

}  // namespace qmz

#endif  // QMZ_QUADRATURE_H_
