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

#ifndef QMZ_MLE_H_
#define QMZ_MLE_H_

#include <cstdint>
#include <span>

#include "qmz/measure.h"
#include "qmz/sampling.h"
#include "qmz/states.h"

namespace qmz {

// Sum of ln p(x_i | phi) over i.i.d. records. The candidate phase is
// `params.phi()`; alpha, phi_bar and loss are taken as known. Throws
// NumericalError if any record has density below 1e-300 at this phase.
double log_likelihood(const StateFamily& family, std::span<const HomodyneSample> samples,
                      const InterferometerParams& params, const DephasingParams& deph);
double log_likelihood(const StateFamily& family, std::span<const CountSample> samples,
                      const InterferometerParams& params, const DephasingParams& deph);
double log_likelihood(const StateFamily& family, const SampleSet& samples,
                      const InterferometerParams& params, const DephasingParams& deph);

struct SearchWindow {
  double lo = -3.14159265358979323846;
  double hi = 3.14159265358979323846;
};

struct MleResult {
  double phi_hat = 0.0;
  double log_likelihood = 0.0;
  double grid_resolution = 0.0;  // coarse grid spacing
  bool refined = false;          // golden-section refinement ran
  // The two highest coarse-grid peaks are within 1 nat of each other.
  bool multimodal = false;
  // The per-sample information identity fails at phi_hat: the outer product
  // of scores and the observed curvature of the log likelihood disagree by
  // more than a factor of four (or the curvature is not positive). Typical
  // of phases where the Fisher information vanishes.
  bool degenerate = false;
  // phi_hat sits on an edge of the search window.
  bool at_boundary = false;
  double observed_information = 0.0;  // -d^2/dphi^2 of the log likelihood
  double score_information = 0.0;     // sum of squared per-sample scores

  bool flagged() const { return multimodal || degenerate || at_boundary; }
};

// Maximum-likelihood estimate of phi over `window`: scans `coarse_points`
// evenly spaced candidates (window width <= 2 pi, at least 32 points), then
// refines the best one by golden-section search inside its neighboring grid
// cells down to a 1e-8 rad bracket. `nuisance` supplies alpha, phi_bar and
// loss; its own phi is ignored.
MleResult mle(const StateFamily& family, const SampleSet& samples,
              const InterferometerParams& nuisance, const DephasingParams& deph,
              SearchWindow window, int coarse_points);

struct CampaignOptions {
  SearchWindow window;
  int coarse_points = 0;  // 0: chosen from the expected CRB
  unsigned threads = 1;
};

struct CampaignSummary {
  double empirical_std = 0.0;
  double mean_bias = 0.0;
  double crb = 0.0;        // 1/sqrt(M cfi)
  double crb_ratio = 0.0;  // empirical_std / crb
  double cfi = 0.0;
  long trials = 0;
  long M = 0;
  long flagged = 0;
  int coarse_points = 0;
};

// `trials` independent sample-then-estimate experiments with M records each.
// Trial t uses seed derive_seed(seed, t); results are reduced in trial order,
// so the summary does not depend on the number of threads.
CampaignSummary mle_campaign(Scheme scheme, const StateFamily& family,
                             const InterferometerParams& truth,
                             const DephasingParams& deph, long M, long trials,
                             std::uint64_t seed, const CampaignOptions& opts = {});

}  // namespace qmz

#endif  // QMZ_MLE_H_
