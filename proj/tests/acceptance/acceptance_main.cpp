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

// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances are fixed here and never loosened at run time.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "oracles.h"
#include "qmz/errors.h"
#include "qmz/fisher_c.h"
#include "qmz/fisher_q.h"
#include "qmz/fock.h"
#include "qmz/measure.h"
#include "qmz/mle.h"
#include "qmz/sampling.h"
#include "qmz/specfun.h"
#include "qmz/states.h"
#include "qmz/wigner.h"

namespace qmz {
namespace {

using testing::kPi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string Num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

double RelErr(double a, double b) { return std::abs(a - b) / std::abs(b); }

double AlphaFor(double n_bar) {
  return std::sqrt(alpha_sq_from_mean_photons(StateFamily::ecs(), n_bar));
}

Outcome LosslessHomodyneOptimality() {
  Outcome o;
  const double n = 10.0;
  const double w = specfun::lambert_w0(n * std::exp(-n));
  const auto ecs = InterferometerParams::from_differential(AlphaFor(n), 0.7);
  const double i_ecs = cfi_homodyne(StateFamily::ecs(), ecs);
  o.Check(RelErr(i_ecs, 110.0 + 10.0 * w) <= 1e-6, "ECS " + Num(i_ecs));
  const auto qwp = InterferometerParams::from_differential(std::sqrt(n), 0.7);
  const double i_qwp = cfi_homodyne(StateFamily::qwp(), qwp, {0.0, 0.0});
  o.Check(RelErr(i_qwp, 110.0) <= 1e-6, "QWP " + Num(i_qwp));
  o.detail = o.pass ? "ECS " + Num(i_ecs) + ", QWP " + Num(i_qwp) : o.detail;
  return o;
}

Outcome LosslessCountingOptimality() {
  Outcome o;
  double worst_qwp = 0.0, worst_ecs = 0.0;
  for (double n : {1.0, 4.0, 10.0}) {
    const auto qwp = InterferometerParams::from_differential(std::sqrt(n), 0.7);
    const double i = cfi_counting(StateFamily::qwp(), qwp, {});
    worst_qwp = std::max(worst_qwp, std::abs(i - (n * n + n)));
    o.Check(std::abs(i - (n * n + n)) <= 1e-8, "QWP n=" + Num(n) + " " + Num(i));
    const auto ecs = InterferometerParams::from_differential(AlphaFor(n), 0.7);
    const double ie = cfi_counting(StateFamily::ecs(), ecs);
    worst_ecs = std::max(worst_ecs, RelErr(ie, qfi_ecs_lossless(n)));
    o.Check(RelErr(ie, qfi_ecs_lossless(n)) <= 1e-6, "ECS n=" + Num(n) + " " + Num(ie));
  }
  if (o.pass) {
    o.detail = "QWP worst abs err " + Num(worst_qwp) + ", ECS worst rel err " + Num(worst_ecs);
  }
  return o;
}

Outcome ClosedFormVsOracle() {
  Outcome o;
  double worst = 0.0;
  for (double alpha : {0.5, 1.0, 2.0, 3.0}) {
    for (double p : {0.0, 0.05, 0.2}) {
      for (double chi : {0.0, 0.3}) {
        const auto params = InterferometerParams::from_differential(alpha, 0.4, 0.1, p);
        const DephasingParams deph{chi, 0.7};
        const int cutoff = default_fock_cutoff(alpha);
        for (const StateFamily& fam : {StateFamily::ecs(), StateFamily::qwp()}) {
          const double closed = quantum_fisher(fam, params, deph).value;
          const double oracle = qfi_numeric_oracle(fam, params, deph, cutoff);
          const double err = RelErr(closed, oracle);
          worst = std::max(worst, err);
          o.Check(err <= 1e-6, fam.name() + " a=" + Num(alpha) + " p=" + Num(p) +
                                   " chi=" + Num(chi) + " rel " + Num(err));
        }
      }
    }
  }
  if (o.pass) o.detail = "worst rel err " + Num(worst);
  return o;
}

Outcome Fig3Structure() {
  Outcome o;
  SweepSpec spec;
  spec.family = StateFamily::ecs();
  spec.axis = SweepAxis::kPhi;
  spec.n_bar = 10.0;
  spec.loss_p = 0.05;
  spec.grid = linspace(0.0, kPi, 129);
  spec.scheme = SweepScheme::kHomodyne;
  const auto hom = precision_sweep(spec);
  spec.scheme = SweepScheme::kCounting;
  const auto cnt = precision_sweep(spec);

  double lo = INFINITY, hi = -INFINITY;
  for (const auto& r : hom) {
    if (r.phi < 0.05 || r.phi > kPi - 0.05) continue;
    const double ratio = r.delta_phi / r.delta_phi_sql;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  o.Check((hi - lo) / lo <= 1e-4, "homodyne ratio spread " + Num((hi - lo) / lo));

  const double bound = 1e-8 * spec.n_bar * spec.n_bar;
  for (double phi : {0.0, kPi}) {
    const auto params =
        InterferometerParams::from_differential(AlphaFor(spec.n_bar), phi, 0.0, spec.loss_p);
    const double i = cfi_counting(StateFamily::ecs(), params);
    o.Check(i < bound, "counting cfi at phi=" + Num(phi) + " is " + Num(i));
  }

  int violations = 0;
  for (std::size_t k = 0; k < hom.size(); ++k) {
    if (!(hom[k].delta_phi_min <= hom[k].delta_phi)) ++violations;
    if (!(cnt[k].delta_phi_min <= cnt[k].delta_phi)) ++violations;
  }
  o.Check(violations == 0, Num(violations) + " ordering violations");
  if (o.pass) o.detail = "homodyne ratio " + Num(lo) + ", spread " + Num((hi - lo) / lo);
  return o;
}

double HomodyneSqlRatio(double n_bar, double p) {
  SweepSpec spec;
  spec.scheme = SweepScheme::kHomodyne;
  spec.family = StateFamily::ecs();
  spec.axis = SweepAxis::kNBar;
  spec.grid = {n_bar};
  spec.phi = 0.9;
  spec.loss_p = p;
  const FisherReport r = precision_sweep(spec).front();
  return r.delta_phi / r.delta_phi_sql;
}

Outcome Fig4Asymptote() {
  Outcome o;
  const double big = HomodyneSqlRatio(200.0, 0.1);
  o.Check(RelErr(big, std::sqrt(2.0)) <= 0.01, "n=200 p=0.1 ratio " + Num(big));
  const double low_loss = HomodyneSqlRatio(5.0, 0.01);
  const double high_loss = HomodyneSqlRatio(5.0, 0.1);
  o.Check(low_loss < high_loss, "n=5 ratios " + Num(low_loss) + " vs " + Num(high_loss));
  if (o.pass) {
    o.detail = "n=200 ratio " + Num(big) + "; n=5 p=0.01 " + Num(low_loss) + " < p=0.1 " +
               Num(high_loss);
  }
  return o;
}

double DensityTotal(const std::function<double(double, double)>& f,
                    const InterferometerParams& params) {
  const DisplacementPair mu = displacement_pair(params);
  return testing::Trapezoid2D(f, mu.mu_plus - 10, mu.mu_plus + 10, mu.mu_minus - 10,
                              mu.mu_minus + 10, 400);
}

double MassTotal(const std::function<double(long, long)>& f,
                 const InterferometerParams& params) {
  const double lambda = 0.5 * (1 - params.loss_p) * params.alpha * params.alpha;
  const long cutoff = specfun::poisson_tail_cutoff(lambda);
  double total = 0.0;
  for (long m = 0; m <= cutoff; ++m) {
    for (long n = 0; n <= cutoff; ++n) total += f(m, n);
  }
  return total;
}

Outcome NormalizationSuite() {
  Outcome o;
  double worst = 0.0;
  const DephasingParams deph{0.1, 0.4};
  auto record = [&](double total, const std::string& what) {
    worst = std::max(worst, std::abs(total - 1.0));
    o.Check(std::abs(total - 1.0) <= 1e-8, what + " " + Num(total));
  };
  for (double alpha : {0.5, 1.5, 3.0}) {
    for (double phi : {0.0, 0.7, 2.5}) {
      for (double p : {0.0, 0.05, 0.3}) {
        const auto params = InterferometerParams::from_differential(alpha, phi, 0.3, p);
        const std::string at = " a=" + Num(alpha) + " phi=" + Num(phi) + " p=" + Num(p);
        record(DensityTotal(
                   [&](double a, double b) { return ecs_homodyne_pdf({a, b, {}}, params); },
                   params),
               "ECS homodyne" + at);
        record(DensityTotal(
                   [&](double a, double b) {
                     return qwp_homodyne_joint({a, b, 1}, params, deph) +
                            qwp_homodyne_joint({a, b, -1}, params, deph);
                   },
                   params),
               "QWP homodyne" + at);
        record(MassTotal([&](long m, long n) { return ecs_counting_pmf({m, n, {}}, params); },
                         params),
               "ECS counting" + at);
        record(MassTotal(
                   [&](long m, long n) {
                     return qwp_counting_joint({m, n, 1}, params, deph) +
                            qwp_counting_joint({m, n, -1}, params, deph);
                   },
                   params),
               "QWP counting" + at);

        // Loss cancellation: the fringe term carries total mass e^{-alpha^2}
        // whatever p is, which keeps the loss-free normalization constant valid.
        const double v = ecs_visibility(params);
        const double lambda = 0.5 * (1 - p) * alpha * alpha;
        const double fringe = MassTotal(
            [&](long m, long n) {
              const auto t = ecs_counting_interference({m, n, {}}, params);
              return v * std::cos(t.theta) * specfun::poisson_pmf(m, lambda) *
                     specfun::poisson_pmf(n, lambda);
            },
            params);
        o.Check(std::abs(fringe - std::exp(-alpha * alpha)) <= 1e-10,
                "fringe mass" + at + " " + Num(fringe));
      }
    }
  }
  if (o.pass) o.detail = "108 totals, worst |total - 1| " + Num(worst);
  return o;
}

template <typename Sample, typename LogF, typename ScoreF>
void ScoreCheck(Outcome& o, const std::string& name, Scheme scheme, StateFamily family,
                LogF logf, ScoreF scoref, double& worst) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.2, 3.0), uphi(-3.0, 3.0), up(0.0, 0.3),
      uchi(0.0, 0.5);
  const double h = 1e-5;
  int checked = 0, failed = 0;
  while (checked < 1000) {
    const auto params =
        InterferometerParams::from_differential(ua(rng), uphi(rng), uphi(rng), up(rng));
    const DephasingParams deph{uchi(rng), uphi(rng)};
    const SampleSet set = sample(scheme, family, params, deph, rng(), 1);
    const Sample s = std::get<std::vector<Sample>>(set).front();
    const double phi = params.phi();
    double an = 0.0;
    try {
      an = scoref(s, params, deph);
    } catch (const NumericalError&) {
      continue;  // density underflow at this draw; no finite score to compare
    }
    const double fd = (logf(s, params.with_phi(phi + h), deph) -
                       logf(s, params.with_phi(phi - h), deph)) /
                      (2.0 * h);
    const double err = std::abs(an - fd) / std::max(1.0, std::abs(an));
    worst = std::max(worst, err);
    if (err > 1e-6) ++failed;
    ++checked;
  }
  o.Check(failed == 0, name + ": " + Num(failed) + " of 1000 off");
}

Outcome DerivativeSuite() {
  Outcome o;
  double worst = 0.0;
  ScoreCheck<HomodyneSample>(
      o, "ECS homodyne", Scheme::kHomodyne, StateFamily::ecs(),
      [](const HomodyneSample& s, const InterferometerParams& p, const DephasingParams&) {
        return ecs_homodyne_log_pdf(s, p);
      },
      [](const HomodyneSample& s, const InterferometerParams& p, const DephasingParams&) {
        return ecs_homodyne_dlogpdf_dphi(s, p);
      },
      worst);
  ScoreCheck<CountSample>(
      o, "ECS counting", Scheme::kCounting, StateFamily::ecs(),
      [](const CountSample& s, const InterferometerParams& p, const DephasingParams&) {
        return ecs_counting_log_pmf(s, p);
      },
      [](const CountSample& s, const InterferometerParams& p, const DephasingParams&) {
        return ecs_counting_dlogpmf_dphi(s, p);
      },
      worst);
  ScoreCheck<HomodyneSample>(o, "QWP homodyne", Scheme::kHomodyne, StateFamily::qwp(),
                             qwp_homodyne_log_joint, qwp_homodyne_dlog_dphi, worst);
  ScoreCheck<CountSample>(o, "QWP counting", Scheme::kCounting, StateFamily::qwp(),
                          qwp_counting_log_joint, qwp_counting_dlog_dphi, worst);
  if (o.pass) o.detail = "4 x 1000 inputs, worst scaled error " + Num(worst);
  return o;
}

Outcome MleEfficiency() {
  Outcome o;
  CampaignOptions opts;
  opts.threads = 1;
  const auto lossless = InterferometerParams::from_differential(3.0, 1.0, 0.0, 0.0);
  const auto a = mle_campaign(Scheme::kHomodyne, StateFamily::ecs(), lossless, {}, 1000, 500,
                              20261016, opts);
  const double iq = quantum_fisher(StateFamily::ecs(), lossless).value;
  const double r0 = a.empirical_std / (1.0 / std::sqrt(1000.0 * iq));
  o.Check(std::abs(r0 - 1.0) <= 0.10, "p=0 std/CRB_Q " + Num(r0));

  const auto lossy = InterferometerParams::from_differential(3.0, 1.0, 0.0, 0.05);
  const auto b = mle_campaign(Scheme::kHomodyne, StateFamily::ecs(), lossy, {}, 1000, 500,
                              20261016, opts);
  const double ic = cfi_homodyne(StateFamily::ecs(), lossy);
  const double r1 = b.empirical_std / (1.0 / std::sqrt(1000.0 * ic));
  o.Check(std::abs(r1 - 1.0) <= 0.15, "p=0.05 std/CRB_C " + Num(r1));
  o.detail = "p=0 ratio " + Num(r0) + " (flagged " + Num(a.flagged) + "), p=0.05 ratio " +
             Num(r1) + " (flagged " + Num(b.flagged) + ")" +
             (o.pass ? "" : "; " + o.detail);
  return o;
}

double XPlusMarginal(const InterferometerParams& params, double x) {
  const DisplacementPair mu = displacement_pair(params);
  return testing::Trapezoid1D(
      [&](double y) { return ecs_homodyne_pdf({x, y, {}}, params); }, mu.mu_minus - 10,
      mu.mu_minus + 10, 1000);
}

Outcome WignerCrossCheck() {
  Outcome o;
  std::mt19937_64 rng(414);
  std::uniform_real_distribution<double> ua(0.1, 2.0), uphi(-kPi, kPi), uu(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const InterferometerParams params{ua(rng), uphi(rng), uphi(rng), 0.0};
    const double theta = 0.5 * kPi + params.phi_bar();
    for (int j = 0; j < 9; ++j) {
      const double x = uu(rng);
      const double err =
          std::abs(wigner_quadrature_marginal(params, theta, x) - XPlusMarginal(params, x));
      worst = std::max(worst, err);
    }
  }
  o.Check(worst <= 1e-4, "marginal error " + Num(worst));
  double worst_norm = 0.0;
  for (double alpha : {0.5, 1.0, 2.0}) {
    const InterferometerParams params{alpha, 0.8, -0.3, 0.0};
    const AxisRange r = default_wigner_range(alpha);
    const double total = reduced_wigner_ecs(params, r, r, 201).riemann_sum();
    worst_norm = std::max(worst_norm, std::abs(total - 1.0));
  }
  o.Check(worst_norm <= 1e-6, "grid normalization error " + Num(worst_norm));
  if (o.pass) {
    o.detail = "20 configs, worst marginal error " + Num(worst) + ", worst |sum - 1| " +
               Num(worst_norm);
  }
  return o;
}

std::string RunCli(std::vector<std::string> args, const std::string& threads, int& code) {
  args.push_back("--threads");
  args.push_back(threads);
  std::ostringstream out, err;
  code = cli::run(args, out, err);
  return out.str();
}

Outcome Determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> runs = {
      {"sample", "--state", "ecs", "--scheme", "homodyne", "--alpha", "2.5", "--phi", "0.6",
       "--loss", "0.05", "--count", "2000", "--seed", "11"},
      {"sample", "--state", "ecs", "--scheme", "counting", "--alpha", "2.5", "--phi", "0.6",
       "--loss", "0.05", "--count", "2000", "--seed", "11"},
      {"sample", "--state", "qwp", "--scheme", "homodyne", "--n-bar", "4", "--phi", "0.6",
       "--chi", "0.2", "--count", "2000", "--seed", "12"},
      {"sample", "--state", "qwp", "--scheme", "counting", "--n-bar", "4", "--phi", "0.6",
       "--chi", "0.2", "--count", "2000", "--seed", "12", "--format", "json"},
      {"mle-campaign", "--state", "ecs", "--scheme", "homodyne", "--alpha", "2", "--phi", "0.8",
       "--loss", "0.05", "--M", "100", "--trials", "100", "--seed", "13"},
      {"mle-campaign", "--state", "qwp", "--scheme", "counting", "--n-bar", "3", "--phi", "0.8",
       "--M", "100", "--trials", "100", "--seed", "14", "--window-lo", "0", "--window-hi",
       "3.14159"},
      {"wigner", "--alpha", "2", "--phi1", "0.4", "--phi2", "-0.2", "--resolution", "101"},
  };
  for (const auto& args : runs) {
    int c1 = 0, c4 = 0, c1b = 0;
    const std::string one = RunCli(args, "1", c1);
    const std::string four = RunCli(args, "4", c4);
    const std::string again = RunCli(args, "1", c1b);
    const bool ok = c1 == 0 && c4 == 0 && c1b == 0 && !one.empty() && one == four &&
                    one == again;
    o.Check(ok, args[0] + " " + args[2] + " " + args[4] + " differs or failed");
  }
  if (o.pass) o.detail = Num(runs.size()) + " pipelines byte-identical for 1/4 threads and reruns";
  return o;
}

}  // namespace
}  // namespace qmz

int main() {
  using namespace qmz;
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"lossless homodyne optimality", LosslessHomodyneOptimality},
      {"lossless counting optimality", LosslessCountingOptimality},
      {"closed-form QFI vs Fock-space oracle", ClosedFormVsOracle},
      {"phase-sweep structure at n_bar=10, p=0.05", Fig3Structure},
      {"homodyne sqrt(2) asymptote and loss ordering", Fig4Asymptote},
      {"normalization suite", NormalizationSuite},
      {"derivative suite", DerivativeSuite},
      {"MLE efficiency", MleEfficiency},
      {"Wigner marginal cross-check", WignerCrossCheck},
      {"determinism", Determinism},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%s] (%.1fs)\n", out.pass ? "PASS" : "FAIL", index,
                c.name, out.detail.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
    ++index;
  }
  return failures == 0 ? 0 : 1;
}
