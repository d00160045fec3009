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

#include "qmz/sampling.h"

#include <cmath>
#include <stdexcept>

#include "qmz/errors.h"
#include "qmz/specfun.h"

namespace qmz {

namespace {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void RequireCount(std::size_t count) {
  if (count < 1) throw std::invalid_argument("sample count must be >= 1");
}

class Sampler {
 public:
  Sampler(const InterferometerParams& params, std::uint64_t seed)
      : engine_(seed),
        mu_(displacement_pair(params)),
        rate_(0.5 * (1.0 - params.loss_p) * params.alpha * params.alpha) {
    params.validate();
  }

  double uniform() { return unit_(engine_); }

  void quadratures(double& x_plus, double& x_minus) {
    x_plus = mu_.mu_plus + gauss_(engine_);
    x_minus = mu_.mu_minus + gauss_(engine_);
  }

  void counts(long& m, long& n) {
    if (rate_ == 0.0) {
      m = n = 0;
      return;
    }
    std::poisson_distribution<long> d(rate_);
    m = d(engine_);
    n = d(engine_);
  }

 private:
  std::mt19937_64 engine_;
  DisplacementPair mu_;
  double rate_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  // Vacuum quadrature noise: variance 1/2.
  std::normal_distribution<double> gauss_{0.0, 1.0 / std::sqrt(2.0)};
};

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return SplitMix64(SplitMix64(master) ^ SplitMix64(stream + 0x632be59bd9b4e019ULL));
}

std::size_t sample_count(const SampleSet& samples) {
  return std::visit([](const auto& v) { return v.size(); }, samples);
}

Scheme scheme_of(const SampleSet& samples) {
  return std::holds_alternative<std::vector<HomodyneSample>>(samples)
             ? Scheme::kHomodyne
             : Scheme::kCounting;
}

std::vector<HomodyneSample> sample_ecs_homodyne(const InterferometerParams& params,
                                                std::uint64_t seed,
                                                std::size_t count) {
  RequireCount(count);
  Sampler rng(params, seed);
  const double v = ecs_visibility(params);
  std::vector<HomodyneSample> out;
  out.reserve(count);
  while (out.size() < count) {
    HomodyneSample s;
    rng.quadratures(s.x_plus, s.x_minus);
    const double theta = ecs_homodyne_interference(s, params).theta;
    if (rng.uniform() * (1.0 + v) < 1.0 + v * std::cos(theta)) out.push_back(s);
  }
  return out;
}

std::vector<CountSample> sample_ecs_counting(const InterferometerParams& params,
                                             std::uint64_t seed, std::size_t count) {
  RequireCount(count);
  Sampler rng(params, seed);
  const double v = ecs_visibility(params);
  std::vector<CountSample> out;
  out.reserve(count);
  while (out.size() < count) {
    CountSample s;
    rng.counts(s.m, s.n);
    const double c = ((s.m % 2 == 0) ? 1.0 : -1.0) *
                     std::cos(static_cast<double>(s.m + s.n) * params.phi());
    if (rng.uniform() * (1.0 + v) < 1.0 + v * c) out.push_back(s);
  }
  return out;
}

SampleSet sample_qwp(Scheme scheme, const InterferometerParams& params,
                     const DephasingParams& deph, std::uint64_t seed,
                     std::size_t count) {
  RequireCount(count);
  deph.validate();
  Sampler rng(params, seed);
  if (scheme == Scheme::kHomodyne) {
    std::vector<HomodyneSample> out(count);
    for (auto& s : out) {
      rng.quadratures(s.x_plus, s.x_minus);
      s.qubit_x = 1;
      const double p_plus = qwp_homodyne_qubit_conditional(s, params, deph);
      s.qubit_x = rng.uniform() < p_plus ? 1 : -1;
    }
    return out;
  }
  std::vector<CountSample> out(count);
  for (auto& s : out) {
    rng.counts(s.m, s.n);
    s.qubit_x = 1;
    const double p_plus = qwp_counting_qubit_conditional(s, params, deph);
    s.qubit_x = rng.uniform() < p_plus ? 1 : -1;
  }
  return out;
}

SampleSet sample(Scheme scheme, const StateFamily& family,
                 const InterferometerParams& params, const DephasingParams& deph,
                 std::uint64_t seed, std::size_t count) {
  if (family.is_qwp()) return sample_qwp(scheme, params, deph, seed, count);
  if (family.is_ecs()) {
    if (scheme == Scheme::kHomodyne) return sample_ecs_homodyne(params, seed, count);
    return sample_ecs_counting(params, seed, count);
  }
  throw UnsupportedError("no sampler for '" + family.name() + "' probes");
}

}  // namespace qmz
