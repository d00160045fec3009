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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.h"
#include "qmz/errors.h"
#include "qmz/fisher_c.h"
#include "qmz/fisher_q.h"
#include "qmz/measure.h"
#include "qmz/specfun.h"

namespace qmz {
namespace {

using testing::kPi;

double Rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

InterferometerParams AtNBar(StateFamily fam, double n_bar, double phi, double p,
                            double phi_bar = 0.0) {
  return InterferometerParams::from_differential(
      std::sqrt(alpha_sq_from_mean_photons(fam, n_bar)), phi, phi_bar, p);
}

// (d_phi p)^2 / p by central differences of the library density, integrated
// with the trapezoid rule. Independent of the closed form and of the
// Gauss-Hermite route.
double HomodyneCfiOracle(StateFamily fam, const InterferometerParams& params,
                         const DephasingParams& deph) {
  const double h = 1e-5;
  const auto up = params.with_phi(params.phi() + h);
  const auto dn = params.with_phi(params.phi() - h);
  auto density = [&](const InterferometerParams& p, double a, double b, int x) {
    if (fam.is_ecs()) return ecs_homodyne_pdf({a, b, {}}, p);
    return qwp_homodyne_joint({a, b, x}, p, deph);
  };
  const DisplacementPair mu = displacement_pair(params);
  return testing::Trapezoid2D(
      [&](double a, double b) {
        double total = 0.0;
        for (int x : fam.is_ecs() ? std::vector<int>{0} : std::vector<int>{1, -1}) {
          const double p0 = density(params, a, b, x);
          if (p0 < 1e-300) continue;
          const double d = (density(up, a, b, x) - density(dn, a, b, x)) / (2 * h);
          total += d * d / p0;
        }
        return total;
      },
      mu.mu_plus - 9, mu.mu_plus + 9, mu.mu_minus - 9, mu.mu_minus + 9, 700);
}

double CountingCfiOracle(StateFamily fam, const InterferometerParams& params,
                         const DephasingParams& deph) {
  const double h = 1e-6;
  const auto up = params.with_phi(params.phi() + h);
  const auto dn = params.with_phi(params.phi() - h);
  auto mass = [&](const InterferometerParams& p, long m, long n, int x) {
    if (fam.is_ecs()) return ecs_counting_pmf({m, n, {}}, p);
    return qwp_counting_joint({m, n, x}, p, deph);
  };
  double total = 0.0;
  for (long m = 0; m < 60; ++m) {
    for (long n = 0; n < 60; ++n) {
      for (int x : fam.is_ecs() ? std::vector<int>{0} : std::vector<int>{1, -1}) {
        const double p0 = mass(params, m, n, x);
        if (p0 < 1e-300) continue;
        const double d = (mass(up, m, n, x) - mass(dn, m, n, x)) / (2 * h);
        total += d * d / p0;
      }
    }
  }
  return total;
}

TEST(CfiHomodyne, LosslessEcsIsOptimal) {
  const double w = specfun::lambert_w0(10.0 * std::exp(-10.0));
  for (double phi : {0.0, 0.7, 2.0}) {
    const double c = cfi_homodyne(StateFamily::ecs(), AtNBar(StateFamily::ecs(), 10, phi, 0));
    EXPECT_LT(Rel(c, 110.0 + 10.0 * w), 1e-12);
  }
  for (double n : {0.3, 1.0, 4.0, 25.0}) {
    EXPECT_LT(Rel(cfi_homodyne(StateFamily::ecs(), AtNBar(StateFamily::ecs(), n, 0.4, 0)),
                  qfi_ecs_lossless(n)),
              1e-12);
  }
}

TEST(CfiHomodyne, LosslessQwpIsOptimal) {
  for (double n : {1.0, 4.0, 10.0}) {
    EXPECT_LT(Rel(cfi_homodyne(StateFamily::qwp(), AtNBar(StateFamily::qwp(), n, 0.9, 0)),
                  n * n + n),
              1e-12);
  }
}

TEST(CfiHomodyne, IndependentOfPhiAndPhiBar) {
  for (auto fam : {StateFamily::ecs(), StateFamily::qwp()}) {
    const double ref = cfi_homodyne(fam, AtNBar(fam, 6, 0.1, 0.05), {0.1, 0.3});
    for (double phi : {0.5, 1.5, 3.0, -2.0}) {
      for (double phi_bar : {0.0, 1.3}) {
        EXPECT_DOUBLE_EQ(cfi_homodyne(fam, AtNBar(fam, 6, phi, 0.05, phi_bar), {0.1, 0.3}), ref);
      }
    }
  }
}

class CfiHomodyneOracle : public ::testing::TestWithParam<std::tuple<double, double>> {};

TEST_P(CfiHomodyneOracle, ClosedFormMatchesQuadratures) {
  const auto [alpha, p] = GetParam();
  const auto params = InterferometerParams::from_differential(alpha, 0.8, 0.2, p);
  const DephasingParams deph{0.2, 0.7};
  for (auto fam : {StateFamily::ecs(), StateFamily::qwp()}) {
    const double closed = cfi_homodyne(fam, params, deph);
    const double fd = HomodyneCfiOracle(fam, params, deph);
    EXPECT_LT(Rel(closed, fd), 1e-6) << fam.name();
    const double gh = cfi_homodyne_quadrature(fam, params, deph, {64, 4096, 1e-10});
    EXPECT_LT(Rel(closed, gh), 1e-8) << fam.name();
  }
}

INSTANTIATE_TEST_SUITE_P(Grid, CfiHomodyneOracle,
                         ::testing::Combine(::testing::Values(0.5, 1.5, 2.5),
                                            ::testing::Values(0.05, 0.3)));

TEST(CfiHomodyneQuadrature, ReportsNonConvergence) {
  // v = e^{-0.05} close to one and a fast fringe: the rule cannot resolve the
  // near-real singularity of 1/(1 + v cos theta) within 128 nodes.
  const auto params = InterferometerParams::from_differential(3.0, 0.2, 0.0, 0.05 / 9.0);
  try {
    cfi_homodyne_quadrature(StateFamily::ecs(), params, {}, {64, 128, 1e-12});
    FAIL() << "expected NumericalError";
  } catch (const NumericalError& e) {
    EXPECT_NE(std::string(e.what()).find("64:"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("128:"), std::string::npos);
  }
}

TEST(CfiHomodyne, LargeLossSaturation) {
  // Visibility e^{-p alpha^2} -> 0: I_C -> (1 - p) n / 2, so
  // delta_phi / delta_phi_sql -> sqrt 2.
  const double n = 200.0;
  const double c = cfi_homodyne(StateFamily::ecs(), AtNBar(StateFamily::ecs(), n, 0.3, 0.1));
  EXPECT_LT(Rel(c, 0.9 * n / 2.0), 1e-6);
  const double ratio = cramer_rao_bound(1, c) / standard_quantum_limit(1, 0.1, n);
  EXPECT_LT(std::abs(ratio - std::sqrt(2.0)) / std::sqrt(2.0), 1e-2);
}

TEST(CfiHomodyne, NeverExceedsQfi) {
  for (double n : {1.0, 5.0, 20.0}) {
    for (double p : {0.01, 0.05, 0.2, 0.5}) {
      const double c = cfi_homodyne(StateFamily::ecs(), AtNBar(StateFamily::ecs(), n, 0.3, p));
      EXPECT_LE(c, qfi_ecs_lossy(n, p) * (1 + 1e-12));
      const DephasingParams deph{0.2, 0.0};
      const double q = cfi_homodyne(StateFamily::qwp(), AtNBar(StateFamily::qwp(), n, 0.3, p), deph);
      EXPECT_LE(q, qfi_qwp_lossy(n, p, deph) * (1 + 1e-12));
    }
  }
}

TEST(CfiCounting, LosslessQwpIsOptimal) {
  for (double n : {1.0, 4.0, 10.0}) {
    for (double phi : {0.3, 1.2}) {
      EXPECT_NEAR(cfi_counting(StateFamily::qwp(), AtNBar(StateFamily::qwp(), n, phi, 0)),
                  n * n + n, 1e-8);
    }
  }
}

TEST(CfiCounting, LosslessEcsIsOptimal) {
  for (double n : {1.0, 4.0, 10.0}) {
    EXPECT_LT(Rel(cfi_counting(StateFamily::ecs(), AtNBar(StateFamily::ecs(), n, 0.7, 0)),
                  qfi_ecs_lossless(n)),
              1e-6);
  }
}

TEST(CfiCounting, VanishesAtZeroAndPiWithLoss) {
  for (double phi : {0.0, kPi}) {
    EXPECT_LT(cfi_counting(StateFamily::ecs(), AtNBar(StateFamily::ecs(), 10, phi, 0.05)), 1e-8 * 100);
    EXPECT_LT(cfi_counting(StateFamily::qwp(), AtNBar(StateFamily::qwp(), 10, phi, 0.05)), 1e-8 * 100);
  }
  EXPECT_EQ(cfi_counting(StateFamily::ecs(), AtNBar(StateFamily::ecs(), 10, 0.0, 0.05)), 0.0);
}

TEST(CfiCounting, MatchesFiniteDifferenceOracle) {
  for (auto fam : {StateFamily::ecs(), StateFamily::qwp()}) {
    for (double p : {0.0, 0.05, 0.3}) {
      const auto params = InterferometerParams::from_differential(2.0, 0.9, 0.0, p);
      const DephasingParams deph{0.1, 0.4};
      EXPECT_LT(Rel(cfi_counting(fam, params, deph), CountingCfiOracle(fam, params, deph)), 1e-6)
          << fam.name() << " p " << p;
    }
  }
}

TEST(Bounds, CramerRaoAndSql) {
  EXPECT_DOUBLE_EQ(cramer_rao_bound(4, 25.0), 0.1);
  EXPECT_TRUE(std::isinf(cramer_rao_bound(10, 0.0)));
  EXPECT_THROW(cramer_rao_bound(0, 1.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(standard_quantum_limit(100, 0.19, 10.0 / 0.81), 0.1 / std::sqrt(10.0));
}

SweepSpec Fig3Spec(SweepScheme scheme) {
  SweepSpec s;
  s.scheme = scheme;
  s.family = StateFamily::ecs();
  s.axis = SweepAxis::kPhi;
  s.grid = linspace(0.05, kPi - 0.05, 64);
  s.n_bar = 10;
  s.loss_p = 0.05;
  return s;
}

TEST(Sweep, Fig3Structure) {
  const auto hom = precision_sweep(Fig3Spec(SweepScheme::kHomodyne));
  const auto cnt = precision_sweep(Fig3Spec(SweepScheme::kCounting));
  const auto qua = precision_sweep(Fig3Spec(SweepScheme::kQuantum));
  ASSERT_EQ(hom.size(), 64u);
  const double ref = hom.front().delta_phi / hom.front().delta_phi_sql;
  for (std::size_t i = 0; i < hom.size(); ++i) {
    EXPECT_LT(Rel(hom[i].delta_phi / hom[i].delta_phi_sql, ref), 1e-4);
    EXPECT_LE(hom[i].delta_phi_min, hom[i].delta_phi);
    EXPECT_LE(cnt[i].delta_phi_min, cnt[i].delta_phi);
    EXPECT_EQ(qua[i].cfi, qua[i].qfi);
    EXPECT_EQ(qua[i].delta_phi, qua[i].delta_phi_min);
  }
}

TEST(Sweep, ZeroInformationIsInfinite) {
  auto spec = Fig3Spec(SweepScheme::kCounting);
  spec.grid = {0.0, 0.5};
  const auto rows = precision_sweep(spec);
  EXPECT_TRUE(rows[0].delta_phi_infinite());
  EXPECT_FALSE(rows[1].delta_phi_infinite());
}

TEST(Sweep, MScaling) {
  auto a = Fig3Spec(SweepScheme::kCounting);
  auto b = a;
  b.M = 2;
  const auto ra = precision_sweep(a);
  const auto rb = precision_sweep(b);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_NEAR(rb[i].delta_phi, ra[i].delta_phi / std::sqrt(2.0), 1e-14 * ra[i].delta_phi);
    EXPECT_NEAR(rb[i].delta_phi_sql, ra[i].delta_phi_sql / std::sqrt(2.0), 1e-15);
  }
}

TEST(Sweep, ThreadCountDoesNotMatter) {
  auto a = Fig3Spec(SweepScheme::kCounting);
  auto b = a;
  a.threads = 1;
  b.threads = 4;
  const auto ra = precision_sweep(a);
  const auto rb = precision_sweep(b);
  for (std::size_t i = 0; i < ra.size(); ++i) EXPECT_EQ(ra[i].cfi, rb[i].cfi);
}

TEST(Sweep, NBarAxisAndAsymptote) {
  SweepSpec s;
  s.scheme = SweepScheme::kHomodyne;
  s.axis = SweepAxis::kNBar;
  s.grid = {5.0, 50.0, 200.0};
  s.phi = 0.4;
  s.loss_p = 0.1;
  const auto rows = precision_sweep(s);
  EXPECT_EQ(rows[2].n_bar, 200.0);
  EXPECT_LT(std::abs(rows[2].delta_phi / rows[2].delta_phi_sql - std::sqrt(2.0)), 1.5e-2);
  s.loss_p = 0.01;
  const auto low = precision_sweep(s);
  EXPECT_LT(low[0].delta_phi / low[0].delta_phi_sql, rows[0].delta_phi / rows[0].delta_phi_sql);
}

TEST(Sweep, Preconditions) {
  auto s = Fig3Spec(SweepScheme::kHomodyne);
  s.grid = {};
  EXPECT_THROW(precision_sweep(s), std::invalid_argument);
  s.grid = {0.1, 0.3, 0.2};
  EXPECT_THROW(precision_sweep(s), std::invalid_argument);
  s.grid = {0.3, 0.2, 0.1};
  EXPECT_NO_THROW(precision_sweep(s));
  s.family = StateFamily::noon(4);
  s.loss_p = 0.0;
  EXPECT_THROW(precision_sweep(s), UnsupportedError);
  s.scheme = SweepScheme::kQuantum;
  const auto rows = precision_sweep(s);
  EXPECT_EQ(rows[0].qfi, 16.0);
  EXPECT_EQ(rows[0].n_bar, 4.0);
}

TEST(Sweep, Names) {
  EXPECT_EQ(parse_sweep_scheme("quantum"), SweepScheme::kQuantum);
  EXPECT_EQ(sweep_scheme_name(SweepScheme::kCounting), "counting");
  EXPECT_EQ(parse_sweep_axis("n-bar"), SweepAxis::kNBar);
  EXPECT_THROW(parse_sweep_axis("alpha"), std::invalid_argument);
  const auto g = linspace(0.0, 1.0, 5);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_DOUBLE_EQ(g[1], 0.25);
}

}  // namespace
}  // namespace qmz
