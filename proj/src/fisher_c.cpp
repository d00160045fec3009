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

#include "qmz/fisher_c.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qmz/errors.h"
#include "qmz/fisher_q.h"
#include "qmz/parallel.h"
#include "qmz/quadrature.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

// v^2 sin^2 t / (1 + v cos t), continued to (1 - cos t) at v = 1.
double FringeTermEcs(double v, double s, double c) {
  if (v == 1.0) return 1.0 - c;
  return v * v * s * s / (1.0 + v * c);
}

// v^2 sin^2 t / (1 - v^2 cos^2 t), continued to 1 at v = 1.
double FringeTermQwp(double v, double s, double c) {
  if (v == 1.0) return 1.0;
  return v * v * s * s / (1.0 - v * v * c * c);
}

double HomodyneAtNodes(const StateFamily& family, const InterferometerParams& params,
                       const DephasingParams& deph, const GaussHermiteRule& rule) {
  const DisplacementPair mu = displacement_pair(params);
  const bool ecs = family.is_ecs();
  const double v = ecs ? ecs_visibility(params) : qwp_visibility(params, deph);
  const double offset = ecs ? 0.0 : deph.vartheta;
  const double pref = ecs ? 2.0 * std::pow(ecs_normalization(params.alpha), 2) : 1.0;
  const std::size_t n = rule.nodes.size();

  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xp = mu.mu_plus + rule.nodes[i];
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double xm = mu.mu_minus + rule.nodes[j];
      const double theta = 2.0 * xp * mu.mu_minus - 2.0 * xm * mu.mu_plus + offset;
      const double dtheta = -(xp * mu.mu_plus + xm * mu.mu_minus);
      const double gs = xp * mu.mu_minus - xm * mu.mu_plus;  // Gaussian score
      const double s = std::sin(theta);
      const double c = std::cos(theta);
      double f;
      if (ecs) {
        // (d_phi p)^2 / p over the Gaussian envelope, expanded so that the
        // 1/(1 + v cos) singularity at v = 1 cancels analytically.
        const double d = 1.0 + v * c;
        f = FringeTermEcs(v, s, c) * dtheta * dtheta - 2.0 * v * s * dtheta * gs +
            d * gs * gs;
      } else {
        // Summed over X = +-1; the cross term cancels.
        f = gs * gs + FringeTermQwp(v, s, c) * dtheta * dtheta;
      }
      row += rule.weights[j] * f;
    }
    total += rule.weights[i] * row;
  }
  return pref * total;
}

void RequireMeasurable(const StateFamily& family) {
  if (family.is_noon()) {
    throw UnsupportedError("no measurement model for N00N probes");
  }
}

}  // namespace

namespace {

// Fourier coefficients of the fringe factors are powers of
//   r = (1 - sqrt(1 - v^2)) / v,
// and harmonic k of theta = 2 a t1 averages to exp(-a^2 k^2) over the
// Gaussian envelope.
double RatioR(double v) {
  if (v <= 0.0) return 0.0;
  return v / (1.0 + std::sqrt((1.0 - v) * (1.0 + v)));
}

}  // namespace

// In the frame x = mu + t1 e1 + t2 e2 with e1 along grad(theta), the fringe
// phase is theta = 2 a t1, the phase derivative of theta is -a (a + t2) and the
// Gaussian score is a t1, where a = sqrt(1 - p) alpha. The t2 average is a
// polynomial moment, and the t1 average of every fringe term has a closed
// form, so the information is exact and independent of phi.
double cfi_homodyne(const StateFamily& family, const InterferometerParams& params,
                    const DephasingParams& deph) {
  RequireMeasurable(family);
  params.validate();
  deph.validate();
  const double a_sq = (1.0 - params.loss_p) * params.alpha * params.alpha;
  if (a_sq == 0.0) return 0.0;
  if (family.is_ecs()) {
    const double v = ecs_visibility(params);
    const double r = RatioR(v);
    const double root = std::sqrt((1.0 - v) * (1.0 + v));
    const double e = std::exp(-a_sq);
    // v^2 sin^2/(1 + v cos) = 1 - v cos - (1 - v^2)/(1 + v cos), and
    // (1 - v^2)/(1 + v cos) = sqrt(1 - v^2) [1 + 2 sum_k (-r)^k cos(k theta)].
    double alt = 0.0;
    double rk = 1.0;
    for (int k = 1; k < 4096; ++k) {
      rk *= -r;
      const double term = 2.0 * rk * std::exp(-a_sq * k * k);
      alt += term;
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(alt))) break;
    }
    const double fringe = 1.0 - v * e - root * (1.0 + alt);
    const double bracket = (a_sq + 0.5) * fringe + 0.5 + v * e * (a_sq + 0.5);
    return 2.0 * std::pow(ecs_normalization(params.alpha), 2) * a_sq * bracket;
  }
  const double v = qwp_visibility(params, deph);
  const double r = RatioR(v);
  const double root = std::sqrt((1.0 - v) * (1.0 + v));
  // Only even harmonics 2j survive in 1/(1 - v^2 cos^2), each carrying
  // cos(2 j vartheta) exp(-4 a^2 j^2).
  double even = 0.0;
  double r2j = 1.0;
  for (int j = 1; j < 4096; ++j) {
    r2j *= r * r;
    const double term = 2.0 * r2j * std::cos(2.0 * j * deph.vartheta) *
                        std::exp(-4.0 * a_sq * j * j);
    even += term;
    if (std::abs(term) < 1e-18 * (1.0 + std::abs(even))) break;
  }
  const double fringe = 1.0 - root * (1.0 + even);
  return 0.5 * a_sq + a_sq * (a_sq + 0.5) * fringe;
}

double cfi_homodyne_quadrature(const StateFamily& family,
                               const InterferometerParams& params,
                               const DephasingParams& deph,
                               const QuadratureOptions& opts) {
  RequireMeasurable(family);
  params.validate();
  deph.validate();
  if (opts.min_nodes < 2 || opts.max_nodes < opts.min_nodes) {
    throw std::invalid_argument("cfi_homodyne_quadrature: bad quadrature node limits");
  }

  std::ostringstream trace;
  int n = opts.min_nodes;
  double prev = HomodyneAtNodes(family, params, deph, gauss_hermite(n));
  trace << n << ":" << prev;
  while (2 * n <= opts.max_nodes) {
    n *= 2;
    const double cur = HomodyneAtNodes(family, params, deph, gauss_hermite(n));
    trace << " " << n << ":" << cur;
    if (std::abs(cur - prev) <= opts.rel_tol * std::abs(cur) ||
        std::abs(cur - prev) <= 1e-300) {
      return cur;
    }
    prev = cur;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "cfi_homodyne_quadrature did not converge to rel_tol " << opts.rel_tol << " (alpha "
      << params.alpha << ", phi " << params.phi() << ", loss " << params.loss_p
      << "); node:value trace " << trace.str();
  throw NumericalError(msg.str());
}

double cfi_counting(const StateFamily& family, const InterferometerParams& params,
                    const DephasingParams& deph) {
  RequireMeasurable(family);
  params.validate();
  deph.validate();
  const double rate = 0.5 * (1.0 - params.loss_p) * params.alpha * params.alpha;
  const long cutoff = specfun::poisson_tail_cutoff(rate);
  std::vector<double> pmf(static_cast<std::size_t>(cutoff) + 1);
  for (long j = 0; j <= cutoff; ++j) pmf[j] = specfun::poisson_pmf(j, rate);

  const bool ecs = family.is_ecs();
  const double v = ecs ? ecs_visibility(params) : qwp_visibility(params, deph);
  const double phi = params.phi();
  double total = 0.0;
  for (long m = 0; m <= cutoff; ++m) {
    const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
    for (long n = 0; n <= cutoff; ++n) {
      const double k = static_cast<double>(m + n);
      const double t = ecs ? k * phi : k * phi - deph.vartheta;
      const double s = sgn * std::sin(t);
      const double c = sgn * std::cos(t);
      const double f = ecs ? FringeTermEcs(v, s, c) : FringeTermQwp(v, s, c);
      total += pmf[m] * pmf[n] * k * k * f;
    }
  }
  if (ecs) total *= 2.0 * std::pow(ecs_normalization(params.alpha), 2);
  return total;
}

double cfi(Scheme scheme, const StateFamily& family,
           const InterferometerParams& params, const DephasingParams& deph) {
  return scheme == Scheme::kHomodyne ? cfi_homodyne(family, params, deph)
                                     : cfi_counting(family, params, deph);
}

double cramer_rao_bound(long M, double info) {
  if (M < 1) throw std::invalid_argument("measurement count M must be >= 1");
  if (!(info >= 0.0)) throw std::invalid_argument("Fisher information must be >= 0");
  if (info == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(static_cast<double>(M) * info);
}

double standard_quantum_limit(long M, double loss_p, double n_bar) {
  return cramer_rao_bound(M, (1.0 - loss_p) * n_bar);
}

bool FisherReport::delta_phi_infinite() const { return std::isinf(delta_phi); }

std::string sweep_scheme_name(SweepScheme s) {
  switch (s) {
    case SweepScheme::kHomodyne:
      return "homodyne";
    case SweepScheme::kCounting:
      return "counting";
    case SweepScheme::kQuantum:
      return "quantum";
  }
  return "unknown";
}

SweepScheme parse_sweep_scheme(const std::string& name) {
  if (name == "homodyne") return SweepScheme::kHomodyne;
  if (name == "counting") return SweepScheme::kCounting;
  if (name == "quantum") return SweepScheme::kQuantum;
  throw std::invalid_argument("unknown sweep scheme '" + name +
                              "' (expected homodyne, counting or quantum)");
}

std::string sweep_axis_name(SweepAxis a) {
  return a == SweepAxis::kPhi ? "phi" : "n_bar";
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "phi") return SweepAxis::kPhi;
  if (name == "n_bar" || name == "n-bar") return SweepAxis::kNBar;
  throw std::invalid_argument("unknown sweep axis '" + name + "' (expected phi or n_bar)");
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

std::vector<FisherReport> precision_sweep(const SweepSpec& spec) {
  if (spec.grid.empty()) throw std::invalid_argument("sweep grid is empty");
  if (spec.M < 1) throw std::invalid_argument("measurement count M must be >= 1");
  if (spec.grid.size() > 1) {
    const bool up = spec.grid[1] > spec.grid[0];
    for (std::size_t i = 1; i < spec.grid.size(); ++i) {
      if (up ? !(spec.grid[i] > spec.grid[i - 1]) : !(spec.grid[i] < spec.grid[i - 1])) {
        throw std::invalid_argument("sweep grid must be strictly monotone");
      }
    }
  }
  if (spec.family.is_noon()) {
    if (spec.scheme != SweepScheme::kQuantum || spec.axis != SweepAxis::kPhi) {
      throw UnsupportedError("N00N probes only support quantum sweeps over phi");
    }
  }

  std::vector<FisherReport> out(spec.grid.size());
  parallel_for(spec.grid.size(), spec.threads, [&](std::size_t i) {
    FisherReport r;
    r.scheme = spec.scheme;
    r.x = spec.grid[i];
    r.M = spec.M;
    r.phi = spec.axis == SweepAxis::kPhi ? r.x : spec.phi;
    r.n_bar = spec.family.is_noon() ? spec.family.noon_n
                                    : (spec.axis == SweepAxis::kNBar ? r.x : spec.n_bar);
    const double alpha =
        spec.family.is_noon() ? 0.0
                              : std::sqrt(alpha_sq_from_mean_photons(spec.family, r.n_bar));
    const auto params =
        InterferometerParams::from_differential(alpha, r.phi, spec.phi_bar, spec.loss_p);
    r.qfi = spec.family.is_noon() ? quantum_fisher(spec.family, params, spec.deph).value
            : spec.family.is_ecs() ? qfi_ecs_lossy(r.n_bar, spec.loss_p)
                                   : qfi_qwp_lossy(r.n_bar, spec.loss_p, spec.deph);
    switch (spec.scheme) {
      case SweepScheme::kHomodyne:
        r.cfi = cfi_homodyne(spec.family, params, spec.deph);
        break;
      case SweepScheme::kCounting:
        r.cfi = cfi_counting(spec.family, params, spec.deph);
        break;
      case SweepScheme::kQuantum:
        r.cfi = r.qfi;
        break;
    }
    r.delta_phi = cramer_rao_bound(spec.M, r.cfi);
    r.delta_phi_min = cramer_rao_bound(spec.M, r.qfi);
    r.delta_phi_sql = standard_quantum_limit(spec.M, spec.loss_p, r.n_bar);
    out[i] = r;
  });
  return out;
}

}  // namespace qmz
