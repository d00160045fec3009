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

#ifndef QMZ_SPECFUN_H_
#define QMZ_SPECFUN_H_

// Special functions used by the Fisher-information closed forms and by the
// outcome distributions. Everything here is pure and thread-safe.

namespace qmz::specfun {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInvSqrtPi = 0.56418958354775628695;

// Principal branch of the Lambert W function on z >= 0, i.e. the w >= 0 that
// solves w * exp(w) = z. Throws DomainError for negative or non-finite z.
double lambert_w0(double z);

// ln Gamma(x) for x > 0 (Lanczos, g = 7). Reentrant, unlike std::lgamma.
double log_gamma(double x);

// ln P(j; lambda) for the Poisson law. Returns -inf when the mass is exactly
// zero (lambda == 0, j > 0).
double log_poisson_pmf(long j, double lambda);

// e^{-lambda} lambda^j / j!, evaluated in log space so that j in the
// thousands does not overflow.
double poisson_pmf(long j, double lambda);

// Per-mode summation cutoff ceil(lambda + 12 sqrt(lambda) + 20). The Poisson
// mass above it is below 1e-12 for every rate used by the sweeps.
long poisson_tail_cutoff(double lambda);

// pi^{-1/2} exp(-(x - mu)^2).
//
// NOTE: this is a Gaussian with variance 1/2, not the standard normal. It is
// the vacuum quadrature distribution for x = (a + a^dagger)/sqrt(2), which is
// the convention used by every homodyne density in this library.
double gaussian_pdf_unit_halfwidth(double x, double mu);

}  // namespace qmz::specfun

#endif  // QMZ_SPECFUN_H_
