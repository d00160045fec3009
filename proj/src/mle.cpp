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

#include "qmz/mle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "qmz/errors.h"
#include "qmz/fisher_c.h"
#include "qmz/parallel.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogPi = 1.14472988584940017414;
constexpr double kLog2 = 0.69314718055994530942;

void RequireModel(const StateFamily& family) {
  if (!family.is_ecs() && !family.is_qwp()) {
    throw UnsupportedError("no measurement model for '" + family.name() + "' probes");
  }
}

// Fringe contrast for one record: +v for ECS, x v for QWP.
double SignedVisibility(const StateFamily& family, const std::optional<int>& qubit,
                        const InterferometerParams& params,
                        const DephasingParams& deph) {
  if (family.is_ecs()) {
    if (qubit.has_value()) {
      throw std::invalid_argument("ECS samples carry no qubit outcome");
    }
    return ecs_visibility(params);
  }
  if (!qubit.has_value() || (*qubit != 1 && *qubit != -1)) {
    throw std::invalid_argument("QWP samples need a qubit outcome of +1 or -1");
  }
  return *qubit * qwp_visibility(params, deph);
}

// phi-independent log prefactor: ln(2 N^2) for ECS, ln(1/2) for QWP.
double LogPrefactor(const StateFamily& family, double alpha) {
  if (family.is_ecs()) return kLog2 + 2.0 * std::log(ecs_normalization(alpha));
  return -kLog2;
}

// Log likelihood of a fixed record set as a function of phi only, for the
// grid scan. Terms that do not depend on phi are summed once at construction.
// Unlike log_likelihood() it does not throw on vanishing densities: such a
// candidate scores -inf and simply loses.
class HomodyneKernel {
 public:
  HomodyneKernel(const StateFamily& family, std::span<const HomodyneSample> samples,
                 const InterferometerParams& nuisance, const DephasingParams& deph)
      : amp_(std::sqrt(1.0 - nuisance.loss_p) * nuisance.alpha),
        offset_(family.is_qwp() ? deph.vartheta : 0.0) {
    RequireModel(family);
    xp_.reserve(samples.size());
    xm_.reserve(samples.size());
    sv_.reserve(samples.size());
    for (const auto& s : samples) {
      xp_.push_back(s.x_plus);
      xm_.push_back(s.x_minus);
      sv_.push_back(SignedVisibility(family, s.qubit_x, nuisance, deph));
    }
    constant_ = static_cast<double>(samples.size()) *
                (LogPrefactor(family, nuisance.alpha) - kLogPi);
  }

  double operator()(double phi) const {
    const double mp = amp_ * std::sin(0.5 * phi);
    const double mm = amp_ * std::cos(0.5 * phi);
    double acc = 0.0;
    for (std::size_t i = 0; i < xp_.size(); ++i) {
      const double dp = xp_[i] - mp;
      const double dm = xm_[i] - mm;
      const double theta = 2.0 * (xp_[i] * mm - xm_[i] * mp) + offset_;
      acc += std::log1p(sv_[i] * std::cos(theta)) - dp * dp - dm * dm;
    }
    return constant_ + acc;
  }

 private:
  double amp_;
  double offset_;
  double constant_ = 0.0;
  std::vector<double> xp_, xm_, sv_;
};

// Counting records only enter through k = m + n and the signed contrast
// (-1)^m (x) v, so identical pairs are merged with a multiplicity.
class CountingKernel {
 public:
  CountingKernel(const StateFamily& family, std::span<const CountSample> samples,
                 const InterferometerParams& nuisance, const DephasingParams& deph)
      : offset_(family.is_qwp() ? deph.vartheta : 0.0) {
    RequireModel(family);
    const double lambda = 0.5 * (1.0 - nuisance.loss_p) * nuisance.alpha * nuisance.alpha;
    std::map<std::pair<long, double>, long> groups;
    double constant = 0.0;
    for (const auto& s : samples) {
      if (s.m < 0 || s.n < 0) throw std::invalid_argument("photon counts must be >= 0");
      const double parity = (s.m % 2 == 0) ? 1.0 : -1.0;
      ++groups[{s.m + s.n, parity * SignedVisibility(family, s.qubit_x, nuisance, deph)}];
      constant += specfun::log_poisson_pmf(s.m, lambda) +
                  specfun::log_poisson_pmf(s.n, lambda);
    }
    constant_ = constant + static_cast<double>(samples.size()) *
                               LogPrefactor(family, nuisance.alpha);
    for (const auto& [key, count] : groups) {
      k_.push_back(static_cast<double>(key.first));
      sv_.push_back(key.second);
      weight_.push_back(static_cast<double>(count));
    }
  }

  double operator()(double phi) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < k_.size(); ++i) {
      acc += weight_[i] * std::log1p(sv_[i] * std::cos(k_[i] * phi - offset_));
    }
    return constant_ + acc;
  }

 private:
  double offset_;
  double constant_ = 0.0;
  std::vector<double> k_, sv_, weight_;
};

template <typename Sample>
double SumSquaredScores(const StateFamily& family, std::span<const Sample> samples,
                        const InterferometerParams& params,
                        const DephasingParams& deph) {
  double acc = 0.0;
  for (const auto& s : samples) {
    const double u = score(family, s, params, deph);
    acc += u * u;
  }
  return acc;
}

template <typename F>
double GoldenSectionMax(const F& f, double a, double b, double tol, double* best) {
  const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  if (fc >= fd) {
    *best = fc;
    return c;
  }
  *best = fd;
  return d;
}

struct Peak {
  std::size_t index;
  double value;
};

// Local maxima of a sampled curve; a flat top counts once (at its left end).
std::vector<Peak> CoarsePeaks(const std::vector<double>& values) {
  std::vector<Peak> peaks;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) continue;
    const bool left_ok = (i == 0) || v > values[i - 1];
    std::size_t j = i;
    while (j + 1 < n && values[j + 1] == v) ++j;
    const bool right_ok = (j + 1 == n) || v > values[j + 1];
    if (left_ok && right_ok) peaks.push_back({i, v});
    i = j;
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return peaks;
}

constexpr int kRefinedPeaks = 3;
constexpr double kBracket = 1e-8;
constexpr double kMultimodalNats = 1.0;
constexpr double kInformationMismatch = 4.0;

template <typename Sample, typename Kernel>
MleResult RunMle(const StateFamily& family, std::span<const Sample> samples,
                 const Kernel& loglik, const InterferometerParams& nuisance,
                 const DephasingParams& deph, SearchWindow window, int coarse_points) {
  const double width = window.hi - window.lo;
  if (!(width > 0.0) || width > 2.0 * specfun::kPi + 1e-12) {
    throw DomainError("search window must satisfy 0 < width <= 2 pi");
  }
  if (coarse_points < 32) throw DomainError("coarse_points must be >= 32");
  if (samples.empty()) throw DomainError("mle needs at least one sample");

  const std::size_t n = static_cast<std::size_t>(coarse_points);
  const double h = width / static_cast<double>(n - 1);
  std::vector<double> grid(n), values(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = (i + 1 == n) ? window.hi : window.lo + h * static_cast<double>(i);
    values[i] = loglik(grid[i]);
  }
  const std::vector<Peak> peaks = CoarsePeaks(values);
  if (peaks.empty()) {
    throw NumericalError("likelihood vanishes at every candidate phase");
  }

  MleResult r;
  r.grid_resolution = h;
  r.multimodal =
      peaks.size() >= 2 && peaks[0].value - peaks[1].value < kMultimodalNats;

  r.phi_hat = grid[peaks[0].index];
  r.log_likelihood = peaks[0].value;
  const std::size_t refine = std::min<std::size_t>(peaks.size(), kRefinedPeaks);
  for (std::size_t k = 0; k < refine; ++k) {
    const double centre = grid[peaks[k].index];
    const double a = std::max(window.lo, centre - h);
    const double b = std::min(window.hi, centre + h);
    double value = kNegInf;
    const double x = GoldenSectionMax(loglik, a, b, kBracket, &value);
    if (value > r.log_likelihood) {
      r.log_likelihood = value;
      r.phi_hat = x;
    }
    r.refined = true;
  }
  r.phi_hat = std::clamp(r.phi_hat, window.lo, window.hi);

  // A coarse maximum on an end point means the likelihood still rises
  // towards the edge, even if the refinement settles on a nearby ripple.
  const double edge_tol = 10.0 * kBracket;
  r.at_boundary = peaks[0].index == 0 || peaks[0].index + 1 == n ||
                  r.phi_hat - window.lo < edge_tol || window.hi - r.phi_hat < edge_tol;

  // Observed information by a central second difference.
  const double step = std::min(1e-4, 0.25 * h);
  const double fp = loglik(r.phi_hat + step);
  const double fm = loglik(r.phi_hat - step);
  r.observed_information = -(fp - 2.0 * r.log_likelihood + fm) / (step * step);
  r.score_information = SumSquaredScores(family, samples, nuisance.with_phi(r.phi_hat), deph);
  const double j_hess = r.observed_information;
  const double j_opg = r.score_information;
  r.degenerate = !(j_hess > 0.0) || !std::isfinite(j_hess) ||
                 j_opg < j_hess / kInformationMismatch ||
                 j_opg > j_hess * kInformationMismatch;
  return r;
}

}  // namespace

namespace {

template <typename Sample>
double CheckedLogLikelihood(const StateFamily& family, std::span<const Sample> samples,
                            const InterferometerParams& params,
                            const DephasingParams& deph) {
  if (samples.empty()) throw DomainError("log_likelihood needs at least one sample");
  const double floor = std::log(kDensityFloor);
  double acc = 0.0;
  for (const auto& s : samples) {
    const double lp = log_probability(family, s, params, deph);
    if (!(lp >= floor)) {
      throw NumericalError("sample density below 1e-300 at phi = " +
                           std::to_string(params.phi()));
    }
    acc += lp;
  }
  return acc;
}

}  // namespace

double log_likelihood(const StateFamily& family, std::span<const HomodyneSample> samples,
                      const InterferometerParams& params, const DephasingParams& deph) {
  return CheckedLogLikelihood(family, samples, params, deph);
}

double log_likelihood(const StateFamily& family, std::span<const CountSample> samples,
                      const InterferometerParams& params, const DephasingParams& deph) {
  return CheckedLogLikelihood(family, samples, params, deph);
}

double log_likelihood(const StateFamily& family, const SampleSet& samples,
                      const InterferometerParams& params, const DephasingParams& deph) {
  return std::visit(
      [&](const auto& v) {
        return log_likelihood(family, std::span(v.data(), v.size()), params, deph);
      },
      samples);
}

MleResult mle(const StateFamily& family, const SampleSet& samples,
              const InterferometerParams& nuisance, const DephasingParams& deph,
              SearchWindow window, int coarse_points) {
  if (const auto* h = std::get_if<std::vector<HomodyneSample>>(&samples)) {
    const std::span<const HomodyneSample> s(h->data(), h->size());
    const HomodyneKernel kernel(family, s, nuisance, deph);
    return RunMle(family, s, kernel, nuisance, deph, window, coarse_points);
  }
  const auto& c = std::get<std::vector<CountSample>>(samples);
  const std::span<const CountSample> s(c.data(), c.size());
  const CountingKernel kernel(family, s, nuisance, deph);
  return RunMle(family, s, kernel, nuisance, deph, window, coarse_points);
}

namespace {

// Grid spacing of about two expected CRB widths: the log likelihood drops by
// at most half a nat between the peak and its nearest grid point, and the
// refinement bracket spans a full spacing on either side.
int AutoCoarsePoints(double width, long M, double info) {
  if (!(info > 0.0)) return 1024;
  const double per_width = std::sqrt(static_cast<double>(M) * info);
  const double n = std::ceil(0.5 * width * per_width) + 1.0;
  return static_cast<int>(std::clamp(n, 64.0, 65536.0));
}

}  // namespace

CampaignSummary mle_campaign(Scheme scheme, const StateFamily& family,
                             const InterferometerParams& truth,
                             const DephasingParams& deph, long M, long trials,
                             std::uint64_t seed, const CampaignOptions& opts) {
  if (trials < 100) throw DomainError("mle_campaign needs trials >= 100");
  if (M < 1) throw DomainError("mle_campaign needs M >= 1");
  truth.validate();
  deph.validate();

  CampaignSummary out;
  out.trials = trials;
  out.M = M;
  out.cfi = cfi(scheme, family, truth, deph);
  out.crb = cramer_rao_bound(M, out.cfi);
  out.coarse_points = opts.coarse_points > 0
                          ? opts.coarse_points
                          : AutoCoarsePoints(opts.window.hi - opts.window.lo, M, out.cfi);

  std::vector<MleResult> results(static_cast<std::size_t>(trials));
  parallel_for(results.size(), opts.threads, [&](std::size_t t) {
    const SampleSet data = sample(scheme, family, truth, deph, derive_seed(seed, t),
                                  static_cast<std::size_t>(M));
    results[t] = mle(family, data, truth, deph, opts.window, out.coarse_points);
  });

  const double phi = truth.phi();
  double sum = 0.0;
  for (const auto& r : results) {
    sum += r.phi_hat;
    if (r.flagged()) ++out.flagged;
  }
  const double mean = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (const auto& r : results) ss += (r.phi_hat - mean) * (r.phi_hat - mean);
  out.empirical_std = std::sqrt(ss / static_cast<double>(trials - 1));
  out.mean_bias = mean - phi;
  out.crb_ratio = std::isfinite(out.crb) ? out.empirical_std / out.crb
                                         : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace qmz
