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

#include "qmz/fock.h"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

#include "qmz/errors.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

double J3(const FockComponent& c) { return 0.5 * (c.n1 - c.n2); }

void CheckTruncation(double weight, int cutoff) {
  if (weight > kMaxTruncationWeight) {
    throw NumericalError("Fock cutoff " + std::to_string(cutoff) +
                         " drops weight " + std::to_string(weight) +
                         " (limit 1e-9); increase the cutoff");
  }
}

}  // namespace

double FockState::norm() const {
  double s = 0.0;
  for (const auto& c : components) s += std::norm(c.amplitude);
  return std::sqrt(s);
}

double FockState::mean_total_photons() const {
  double s = 0.0;
  for (const auto& c : components) s += std::norm(c.amplitude) * (c.n1 + c.n2);
  return s;
}

double FockState::mean_j3() const {
  double s = 0.0;
  for (const auto& c : components) s += std::norm(c.amplitude) * J3(c);
  return s;
}

double FockState::mean_j3_sq() const {
  double s = 0.0;
  for (const auto& c : components) {
    const double j = J3(c);
    s += std::norm(c.amplitude) * j * j;
  }
  return s;
}

int default_fock_cutoff(double alpha) {
  return static_cast<int>(std::ceil(alpha * alpha + 10.0 * alpha + 10.0));
}

std::vector<Complex> coherent_amplitudes(Complex beta, int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be >= 0");
  std::vector<Complex> out(static_cast<std::size_t>(cutoff) + 1);
  const double r = std::abs(beta);
  const double theta = std::arg(beta);
  for (int n = 0; n <= cutoff; ++n) {
    // |<n|beta>| = sqrt(P(n; r^2)); the phase is e^{i n theta}.
    const double mag =
        r == 0.0 ? (n == 0 ? 1.0 : 0.0)
                 : std::exp(0.5 * specfun::log_poisson_pmf(n, r * r));
    out[static_cast<std::size_t>(n)] = std::polar(mag, n * theta);
  }
  return out;
}

double coherent_tail_weight(double mean, int cutoff) {
  // Summing the tail directly avoids the cancellation in 1 - (sum below).
  double tail = 0.0;
  const long upper = std::max<long>(cutoff + 1, specfun::poisson_tail_cutoff(mean)) + 64;
  for (long n = upper; n > cutoff; --n) tail += specfun::poisson_pmf(n, mean);
  return tail;
}

FockState fock_truncated_state(const StateFamily& family,
                               const InterferometerParams& params, int cutoff) {
  params.validate();
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");

  FockState state;
  state.cutoff = cutoff;
  state.has_qubit = family.is_qwp();

  // Keyed by (qubit, n1, n2) so coincident basis states of the two branches
  // (|0,0> for ECS) are summed.
  std::map<std::tuple<int, int, int>, Complex> amps;
  auto add = [&](Qubit q, int n1, int n2, Complex a) {
    amps[{static_cast<int>(q), n1, n2}] += a;
  };

  if (family.is_noon()) {
    const int n = family.noon_n;
    if (n > cutoff) throw NumericalError("N00N photon number exceeds cutoff");
    const double s = 1.0 / std::sqrt(2.0);
    add(Qubit::kNone, n, 0, std::polar(s, n * params.phi1));
    add(Qubit::kNone, 0, n, std::polar(s, n * params.phi2));
  } else {
    const double a = params.alpha;
    state.truncation_weight = coherent_tail_weight(a * a, cutoff);
    CheckTruncation(state.truncation_weight, cutoff);
    const auto arm1 = coherent_amplitudes(std::polar(a, params.phi1), cutoff);
    const auto arm2 = coherent_amplitudes(std::polar(a, params.phi2), cutoff);
    const bool qwp = family.is_qwp();
    const double pref = qwp ? 1.0 / std::sqrt(2.0) : ecs_normalization(a);
    for (int n = 0; n <= cutoff; ++n) {
      const auto k = static_cast<std::size_t>(n);
      add(qwp ? Qubit::kUp : Qubit::kNone, n, 0, pref * arm1[k]);
      add(qwp ? Qubit::kDown : Qubit::kNone, 0, n, pref * arm2[k]);
    }
  }

  for (const auto& [key, amp] : amps) {
    if (amp == Complex{}) continue;
    const auto& [q, n1, n2] = key;
    state.components.push_back({static_cast<Qubit>(q), n1, n2, amp});
  }
  const double nrm = state.norm();
  for (auto& c : state.components) c.amplitude /= nrm;
  return state;
}

}  // namespace qmz
