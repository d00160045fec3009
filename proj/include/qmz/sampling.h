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

#ifndef QMZ_SAMPLING_H_
#define QMZ_SAMPLING_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <variant>
#include <vector>

#include "qmz/measure.h"
#include "qmz/states.h"

namespace qmz {

// Stream semantics: a sampler call seeded with s draws every variate from one
// std::mt19937_64 engine seeded with s, in sample order. Independent streams
// (campaign trials, parallel workers) use derive_seed(master, index), so a
// result only depends on (master, index) and never on thread scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

using SampleSet = std::variant<std::vector<HomodyneSample>, std::vector<CountSample>>;

std::size_t sample_count(const SampleSet& samples);
Scheme scheme_of(const SampleSet& samples);

// Exact draws from the ECS homodyne density: propose (x+, x-) from the
// Gaussian product, accept with (1 + v cos theta) / (1 + v). Expected
// acceptance is 1/(1 + v) >= 1/2.
std::vector<HomodyneSample> sample_ecs_homodyne(const InterferometerParams& params,
                                                std::uint64_t seed,
                                                std::size_t count);

// Exact draws from the ECS counting law: propose (m, n) from the double
// Poisson, accept with (1 + v cos theta) / (1 + v).
std::vector<CountSample> sample_ecs_counting(const InterferometerParams& params,
                                             std::uint64_t seed, std::size_t count);

// QWP draws: photonic outcome from its phase-free marginal, then the qubit
// readout from its Bernoulli conditional.
SampleSet sample_qwp(Scheme scheme, const InterferometerParams& params,
                     const DephasingParams& deph, std::uint64_t seed,
                     std::size_t count);

// Dispatch over family and scheme.
SampleSet sample(Scheme scheme, const StateFamily& family,
                 const InterferometerParams& params, const DephasingParams& deph,
                 std::uint64_t seed, std::size_t count);

}  // namespace qmz

#endif  // QMZ_SAMPLING_H_
