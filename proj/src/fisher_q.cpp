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

#include "qmz/fisher_q.h"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "qmz/errors.h"
#include "qmz/fock.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

constexpr double kEigenSumFloor = 1e-14;

double W(double n_bar) { return specfun::lambert_w0(n_bar * std::exp(-n_bar)); }

void RequireUnitInterval(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument("loss probability must lie in [0, 1]");
  }
}

void RequireNonNegative(double n_bar) {
  if (!(n_bar >= 0.0)) throw std::invalid_argument("n_bar must be >= 0");
}

// rho in the basis listed by `j3` (diagonal of J3), together with that diagonal.
struct DensityMatrix {
  Eigen::MatrixXcd rho;
  Eigen::VectorXd j3;
};

Eigen::VectorXcd Normalized(Eigen::VectorXcd v) { return v / v.norm(); }

// Arm-1 branch occupies basis slots [0, c]; the arm-2 branch occupies slot 0
// (shared vacuum) plus [c+1, 2c] when `shared_vacuum`, otherwise [c+1, 2c+1].
DensityMatrix BuildTwoBranch(const StateFamily& family,
                             const InterferometerParams& params,
                             const DephasingParams& deph, int cutoff) {
  const double a = params.alpha;
  const double amp = std::sqrt(1.0 - params.loss_p) * a;
  const double tail = coherent_tail_weight(amp * amp, cutoff);
  if (tail > kMaxTruncationWeight) {
    throw NumericalError("qfi oracle: Fock cutoff " + std::to_string(cutoff) +
                         " drops weight " + std::to_string(tail));
  }
  const auto arm1 = coherent_amplitudes(std::polar(amp, params.phi1), cutoff);
  const auto arm2 = coherent_amplitudes(std::polar(amp, params.phi2), cutoff);

  const bool shared_vacuum = family.is_ecs();
  const int c = cutoff;
  const int dim = shared_vacuum ? 2 * c + 1 : 2 * c + 2;
  Eigen::VectorXcd psi1 = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXcd psi2 = Eigen::VectorXcd::Zero(dim);
  Eigen::VectorXd j3(dim);
  for (int n = 0; n <= c; ++n) {
    psi1(n) = arm1[n];
    j3(n) = 0.5 * n;
  }
  for (int n = shared_vacuum ? 1 : 0; n <= c; ++n) {
    const int slot = shared_vacuum ? c + n : c + 1 + n;
    psi2(slot) = arm2[n];
    j3(slot) = -0.5 * n;
  }
  if (shared_vacuum) psi2(0) = arm2[0];
  psi1 = Normalized(psi1);
  psi2 = Normalized(psi2);

  DensityMatrix out;
  out.j3 = j3;
  if (family.is_ecs()) {
    // Tracing out the loss modes leaves <sqrt(p) alpha, 0|0, sqrt(p) alpha> =
    // e^{-p alpha^2} on the coherences.
    const double n2 = std::pow(ecs_normalization(a), 2);
    const double ov = std::exp(-params.loss_p * a * a);
    out.rho = n2 * (psi1 * psi1.adjoint() + psi2 * psi2.adjoint() +
                    ov * (psi1 * psi2.adjoint() + psi2 * psi1.adjoint()));
  } else {
    // Rank-2 spectral form. psi1 = |up>|.,0>, psi2 = |down>|0,.>; the
    // eigenvectors (psi2 +- e^{-i vartheta} psi1)/sqrt(2) reproduce the
    // coherence e^{-chi - i vartheta} |up><down| + h.c.
    const double vis = std::exp(-params.loss_p * a * a - deph.chi);
    const double lp = 0.5 * (1.0 + vis);
    const double lm = 0.5 * (1.0 - vis);
    const std::complex<double> ph = std::polar(1.0, -deph.vartheta);
    const Eigen::VectorXcd vp = (psi2 + ph * psi1) / std::sqrt(2.0);
    const Eigen::VectorXcd vm = (psi2 - ph * psi1) / std::sqrt(2.0);
    out.rho = lp * vp * vp.adjoint() + lm * vm * vm.adjoint();
  }
  out.rho /= out.rho.trace().real();
  return out;
}

DensityMatrix BuildNoon(const StateFamily& family,
                        const InterferometerParams& params) {
  if (params.loss_p != 0.0) {
    throw UnsupportedError("qfi oracle: lossy N00N states are not modeled");
  }
  const int n = family.noon_n;
  Eigen::VectorXcd psi(2);
  psi << std::polar(1.0 / std::sqrt(2.0), n * params.phi1),
      std::polar(1.0 / std::sqrt(2.0), n * params.phi2);
  DensityMatrix out;
  out.rho = psi * psi.adjoint();
  out.j3 = Eigen::VectorXd(2);
  out.j3 << 0.5 * n, -0.5 * n;
  return out;
}

}  // namespace

double qfi_ecs_lossless(double n_bar) {
  RequireNonNegative(n_bar);
  return n_bar * n_bar + (1.0 + W(n_bar)) * n_bar;
}

double qfi_qwp_lossless(double n_bar) {
  RequireNonNegative(n_bar);
  return n_bar * n_bar + n_bar;
}

double qfi_noon(int n) {
  if (n < 1) throw std::invalid_argument("N00N photon number must be >= 1");
  return static_cast<double>(n) * n;
}

double qfi_ecs_lossy(double n_bar, double p) {
  RequireNonNegative(n_bar);
  RequireUnitInterval(p);
  const double w = W(n_bar);
  const double q = 1.0 - p;
  return q * q * n_bar * n_bar * std::exp(-2.0 * p * (n_bar + w)) +
         q * n_bar * (1.0 + q * w);
}

double qfi_qwp_lossy(double n_bar, double p, const DephasingParams& deph) {
  RequireNonNegative(n_bar);
  RequireUnitInterval(p);
  deph.validate();
  const double q = 1.0 - p;
  return std::exp(-2.0 * p * n_bar - 2.0 * deph.chi) * q * q * n_bar * n_bar +
         q * n_bar;
}

QfiResult quantum_fisher(const StateFamily& family,
                         const InterferometerParams& params,
                         const DephasingParams& deph) {
  params.validate();
  QfiResult r;
  r.family = family;
  r.n_bar = mean_photons(family, params.alpha);
  switch (family.kind) {
    case StateKind::kEcs:
      r.value = qfi_ecs_lossy(r.n_bar, params.loss_p);
      break;
    case StateKind::kQwp:
      r.value = qfi_qwp_lossy(r.n_bar, params.loss_p, deph);
      break;
    case StateKind::kNoon:
      if (params.loss_p != 0.0) {
        throw UnsupportedError("lossy N00N QFI is not modeled");
      }
      r.value = qfi_noon(family.noon_n);
      break;
  }
  return r;
}

double qfi_numeric_oracle(const StateFamily& family,
                          const InterferometerParams& params,
                          const DephasingParams& deph, int cutoff,
                          OracleRoute route) {
  params.validate();
  deph.validate();
  if (cutoff < 1) throw std::invalid_argument("cutoff must be >= 1");

  const DensityMatrix dm = family.is_noon() ? BuildNoon(family, params)
                                            : BuildTwoBranch(family, params,
                                                             deph, cutoff);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dm.rho);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("qfi oracle: eigendecomposition failed");
  }
  const Eigen::VectorXd& lam = solver.eigenvalues();
  const Eigen::MatrixXcd& u = solver.eigenvectors();
  // J3 is diagonal in the Fock basis, so its matrix in the eigenbasis is
  // U^dagger diag(j3) U.
  const Eigen::MatrixXcd jm = u.adjoint() * dm.j3.asDiagonal() * u;
  const Eigen::Index dim = lam.size();

  double total = 0.0;
  if (route == OracleRoute::kFullSum) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double s = lam(k) + lam(j);
        if (s < kEigenSumFloor) continue;
        const double d = lam(k) - lam(j);
        total += 2.0 * d * d / s * std::norm(jm(k, j));
      }
    }
    return total;
  }

  std::vector<Eigen::Index> support;
  for (Eigen::Index k = 0; k < dim; ++k) {
    if (lam(k) > kEigenSumFloor) support.push_back(k);
  }
  const Eigen::VectorXd j3sq = dm.j3.cwiseAbs2();
  for (Eigen::Index k : support) {
    // Pairs inside the support.
    double inside = 0.0;
    for (Eigen::Index j : support) {
      const double d = lam(k) - lam(j);
      total += 2.0 * d * d / (lam(k) + lam(j)) * std::norm(jm(k, j));
      inside += std::norm(jm(j, k));
    }
    // Pairs (k, j) and (j, k) with l_j = 0 contribute 4 l_k |<j|J3|k>|^2;
    // summed over the kernel this is 4 l_k (<k|J3^2|k> - sum_support |.|^2).
    const double j3sq_k = u.col(k).cwiseAbs2().dot(j3sq);
    total += 4.0 * lam(k) * (j3sq_k - inside);
  }
  return total;
}

}  // namespace qmz
