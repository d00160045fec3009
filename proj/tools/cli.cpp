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

#include "cli.h"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qmz/errors.h"
#include "qmz/fisher_c.h"
#include "qmz/fisher_q.h"
#include "qmz/io.h"
#include "qmz/measure.h"
#include "qmz/mle.h"
#include "qmz/sampling.h"
#include "qmz/specfun.h"
#include "qmz/states.h"
#include "qmz/wigner.h"

namespace qmz::cli {

namespace {

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string state = "ecs";
  std::optional<int> noon_n;
  std::optional<double> alpha, n_bar;
  std::optional<double> phi1, phi2, phi, phi_bar;
  double loss = 0.0;
  double chi = 0.0;
  double vartheta = 0.0;
  std::optional<std::string> scheme;
  long M = 1;
  std::optional<long> trials;
  std::optional<std::uint64_t> seed;
  std::string output = "-";
  std::string format = "csv";
  unsigned threads = 0;

  std::string axis = "phi";
  std::optional<double> from, to;
  int points = 128;

  std::optional<long> count;

  double window_lo = -specfun::kPi;
  double window_hi = specfun::kPi;
  int coarse_points = 0;

  std::optional<double> x_min, x_max, p_min, p_max;
  int resolution = 201;
};

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string FoldKey(std::string key) {
  for (char& c : key) {
    if (c == '-') c = '_';
  }
  return key;
}

std::string FlagFor(const std::string& key) {
  std::string flag = key;
  for (char& c : flag) {
    if (c == '_') c = '-';
  }
  return "--" + flag;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool FlagGiven(const std::vector<std::string>& args, const std::string& key) {
  for (const auto& a : args) {
    if (a.rfind("--", 0) != 0) continue;
    const std::string name = FoldKey(a.substr(2, a.find('=') == std::string::npos
                                                    ? std::string::npos
                                                    : a.find('=') - 2));
    if (name == key) return true;
  }
  return false;
}

// Pulls --config out of the argument list and appends its entries as flags
// that were not given explicitly.
std::vector<std::string> ApplyConfig(std::vector<std::string> args) {
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;

  const auto entries = parse_config(ReadFile(*path));
  std::string command;
  for (const auto& [k, v] : entries) {
    if (k == "command") command = v;
  }
  if (rest.empty() || rest.front().rfind("-", 0) == 0) {
    if (command.empty()) throw UsageError("no subcommand given and none in the config file");
    rest.insert(rest.begin(), command);
  }
  const std::vector<std::string> explicit_args = rest;
  for (const auto& [k, v] : entries) {
    if (k == "command" || FlagGiven(explicit_args, k)) continue;
    rest.push_back(FlagFor(k));
    rest.push_back(v);
  }
  return rest;
}

// ---- Resolution of the physical configuration ------------------------------

StateFamily ResolveFamily(const Options& o) {
  if (o.state == "noon") {
    if (!o.noon_n) throw UsageError("--state noon needs the photon number --N");
    if (o.alpha || o.n_bar) {
      throw UsageError("--state noon takes --N instead of --alpha/--n-bar");
    }
    return StateFamily::noon(*o.noon_n);
  }
  if (o.noon_n) throw UsageError("--N only applies to --state noon");
  return StateFamily::parse(o.state);
}

// alpha for ECS/QWP from exactly one of --alpha / --n-bar.
double ResolveAlpha(const StateFamily& family, const Options& o) {
  if (family.is_noon()) return 0.0;
  if (o.alpha && o.n_bar) throw UsageError("give exactly one of --alpha and --n-bar, not both");
  if (!o.alpha && !o.n_bar) throw UsageError("missing amplitude: give --alpha or --n-bar");
  if (o.alpha) {
    if (!(*o.alpha >= 0.0)) throw UsageError("--alpha must be >= 0");
    return *o.alpha;
  }
  if (!(*o.n_bar >= 0.0)) throw UsageError("--n-bar must be >= 0");
  return std::sqrt(alpha_sq_from_mean_photons(family, *o.n_bar));
}

void CheckPhaseSpec(const Options& o) {
  const bool arm = o.phi1 || o.phi2;
  const bool diff = o.phi || o.phi_bar;
  if (arm && diff) {
    throw UsageError("give the phase as --phi1/--phi2 or as --phi/--phi-bar, not a mix");
  }
  if (arm && !(o.phi1 && o.phi2)) throw UsageError("--phi1 and --phi2 must be given together");
}

InterferometerParams ResolveParams(double alpha, const Options& o) {
  CheckPhaseSpec(o);
  InterferometerParams p;
  if (o.phi1) {
    p = {alpha, *o.phi1, *o.phi2, o.loss};
  } else {
    p = InterferometerParams::from_differential(alpha, o.phi.value_or(0.0),
                                                o.phi_bar.value_or(0.0), o.loss);
  }
  p.validate();
  return p;
}

DephasingParams ResolveDephasing(const Options& o) {
  DephasingParams d{o.chi, o.vartheta};
  d.validate();
  return d;
}

std::uint64_t RequireSeed(const Options& o) {
  if (!o.seed) throw UsageError("this subcommand is stochastic and needs --seed");
  return *o.seed;
}

Scheme RequireScheme(const Options& o) {
  if (!o.scheme) throw UsageError("missing --scheme (homodyne or counting)");
  return parse_scheme(*o.scheme);
}

// ---- Config echo -----------------------------------------------------------

class Echo {
 public:
  void add(const std::string& k, const std::string& v) { meta_.emplace_back(k, v); }
  void num(const std::string& k, double v) { add(k, io::format_double(v)); }
  void integer(const std::string& k, long long v) { add(k, std::to_string(v)); }
  const io::Metadata& meta() const { return meta_; }

 private:
  io::Metadata meta_;
};

void EchoPhysics(Echo& e, const std::string& command, const Options& o,
                 bool amplitude, bool phase) {
  e.add("command", command);
  e.add("state", o.state);
  if (o.noon_n) e.integer("N", *o.noon_n);
  if (amplitude && o.alpha) e.num("alpha", *o.alpha);
  if (amplitude && o.n_bar) e.num("n_bar", *o.n_bar);
  if (phase) {
    if (o.phi1) {
      e.num("phi1", *o.phi1);
      e.num("phi2", *o.phi2);
    } else {
      e.num("phi", o.phi.value_or(0.0));
      e.num("phi_bar", o.phi_bar.value_or(0.0));
    }
  }
  e.num("loss", o.loss);
  e.num("chi", o.chi);
  e.num("vartheta", o.vartheta);
}

void Emit(const Options& o, const std::string& payload, std::ostream& out) {
  if (o.output == "-") {
    out << payload;
    return;
  }
  std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot open output file '" + o.output + "'");
  f << payload;
  f.flush();
  if (!f) throw IoFailure("failed writing '" + o.output + "'");
}

// ---- Subcommands -----------------------------------------------------------

std::string CmdQfi(const Options& o) {
  const StateFamily family = ResolveFamily(o);
  const InterferometerParams params = ResolveParams(ResolveAlpha(family, o), o);
  const DephasingParams deph = ResolveDephasing(o);
  if (o.M < 1) throw UsageError("--M must be >= 1");
  const QfiResult q = quantum_fisher(family, params, deph);

  Echo e;
  EchoPhysics(e, "qfi", o, true, true);
  e.integer("M", o.M);
  io::Table t{{"n_bar", "qfi", "delta_phi_min"},
              {{q.n_bar, q.value, cramer_rao_bound(o.M, q.value)}}};
  std::ostringstream ss;
  io::write_table(ss, io::parse_format(o.format), e.meta(), t);
  return ss.str();
}

std::vector<SweepScheme> ParseSchemeList(const std::string& list) {
  std::vector<SweepScheme> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = Trim(item);
    if (!item.empty()) out.push_back(parse_sweep_scheme(item));
  }
  if (out.empty()) throw UsageError("--scheme lists no schemes");
  return out;
}

std::string CmdSweep(const Options& o) {
  const StateFamily family = ResolveFamily(o);
  const SweepAxis axis = parse_sweep_axis(o.axis);
  if (!o.from || !o.to) throw UsageError("sweep needs --from and --to");
  if (o.points < 1) throw UsageError("--points must be >= 1");
  const std::string scheme_list = o.scheme.value_or("homodyne,counting,quantum");
  const auto schemes = ParseSchemeList(scheme_list);

  SweepSpec spec;
  spec.family = family;
  spec.axis = axis;
  spec.grid = linspace(*o.from, *o.to, static_cast<std::size_t>(o.points));
  spec.loss_p = o.loss;
  spec.deph = ResolveDephasing(o);
  spec.M = o.M;
  spec.threads = o.threads;
  CheckPhaseSpec(o);
  if (axis == SweepAxis::kPhi) {
    if (o.phi || o.phi1 || o.phi2) {
      throw UsageError("sweeping phi: drop --phi/--phi1/--phi2 (only --phi-bar applies)");
    }
    if (family.is_noon()) {
      spec.n_bar = *o.noon_n;
    } else {
      const double alpha = ResolveAlpha(family, o);
      spec.n_bar = o.n_bar ? *o.n_bar : mean_photons(family, alpha);
    }
    spec.phi_bar = o.phi_bar.value_or(0.0);
  } else {
    if (o.alpha || o.n_bar) throw UsageError("sweeping n_bar: drop --alpha/--n-bar");
    const InterferometerParams p = ResolveParams(0.0, o);
    spec.phi = p.phi();
    spec.phi_bar = p.phi_bar();
  }

  std::vector<FisherReport> rows;
  for (SweepScheme s : schemes) {
    spec.scheme = s;
    auto part = precision_sweep(spec);
    rows.insert(rows.end(), part.begin(), part.end());
  }

  Echo e;
  EchoPhysics(e, "sweep", o, axis == SweepAxis::kPhi, axis == SweepAxis::kNBar);
  if (axis == SweepAxis::kPhi && !o.phi1) e.num("phi_bar", spec.phi_bar);
  e.add("scheme", scheme_list);
  e.add("axis", sweep_axis_name(axis));
  e.num("from", *o.from);
  e.num("to", *o.to);
  e.integer("points", o.points);
  e.integer("M", o.M);
  std::ostringstream ss;
  io::write_reports(ss, io::parse_format(o.format), e.meta(), axis, rows);
  return ss.str();
}

std::string CmdSample(const Options& o) {
  const StateFamily family = ResolveFamily(o);
  const InterferometerParams params = ResolveParams(ResolveAlpha(family, o), o);
  const DephasingParams deph = ResolveDephasing(o);
  const Scheme scheme = RequireScheme(o);
  const std::uint64_t seed = RequireSeed(o);
  if (!o.count || *o.count < 1) throw UsageError("sample needs --count >= 1");

  const SampleSet data =
      sample(scheme, family, params, deph, seed, static_cast<std::size_t>(*o.count));

  Echo e;
  EchoPhysics(e, "sample", o, true, true);
  e.add("scheme", scheme_name(scheme));
  e.integer("count", *o.count);
  e.add("seed", std::to_string(seed));
  std::ostringstream ss;
  io::write_samples(ss, io::parse_format(o.format), e.meta(), data);
  return ss.str();
}

std::string CmdMle(const Options& o) {
  const StateFamily family = ResolveFamily(o);
  const InterferometerParams params = ResolveParams(ResolveAlpha(family, o), o);
  const DephasingParams deph = ResolveDephasing(o);
  const Scheme scheme = RequireScheme(o);
  const std::uint64_t seed = RequireSeed(o);
  if (!o.trials) throw UsageError("mle-campaign needs --trials (>= 100)");

  CampaignOptions copts;
  copts.window = {o.window_lo, o.window_hi};
  copts.coarse_points = o.coarse_points;
  copts.threads = o.threads;
  const CampaignSummary s =
      mle_campaign(scheme, family, params, deph, o.M, *o.trials, seed, copts);

  Echo e;
  EchoPhysics(e, "mle-campaign", o, true, true);
  e.add("scheme", scheme_name(scheme));
  e.integer("M", o.M);
  e.integer("trials", *o.trials);
  e.add("seed", std::to_string(seed));
  e.num("window_lo", o.window_lo);
  e.num("window_hi", o.window_hi);
  e.integer("coarse_points", o.coarse_points);
  io::Table t{{"empirical_std", "mean_bias", "crb", "crb_ratio", "cfi", "trials", "M",
               "flagged", "grid_points"},
              {{s.empirical_std, s.mean_bias, s.crb, s.crb_ratio, s.cfi,
                static_cast<double>(s.trials), static_cast<double>(s.M),
                static_cast<double>(s.flagged), static_cast<double>(s.coarse_points)}}};
  std::ostringstream ss;
  io::write_table(ss, io::parse_format(o.format), e.meta(), t);
  return ss.str();
}

std::string CmdWigner(const Options& o) {
  const StateFamily family = ResolveFamily(o);
  if (!family.is_ecs()) throw UnsupportedError("wigner grids are implemented for ECS probes only");
  const InterferometerParams params = ResolveParams(ResolveAlpha(family, o), o);
  if (o.resolution < 2) throw UsageError("--resolution must be >= 2");
  const AxisRange def = default_wigner_range(params.alpha);
  const AxisRange xr{o.x_min.value_or(def.lo), o.x_max.value_or(def.hi)};
  const AxisRange pr{o.p_min.value_or(def.lo), o.p_max.value_or(def.hi)};
  const WignerGrid grid = reduced_wigner_ecs(params, xr, pr,
                                             static_cast<std::size_t>(o.resolution),
                                             o.threads);

  Echo e;
  EchoPhysics(e, "wigner", o, true, true);
  e.num("x_min", xr.lo);
  e.num("x_max", xr.hi);
  e.num("p_min", pr.lo);
  e.num("p_max", pr.hi);
  e.integer("resolution", o.resolution);
  std::ostringstream ss;
  io::write_wigner(ss, io::parse_format(o.format), e.meta(), grid);
  return ss.str();
}

// ---- Flag registration -----------------------------------------------------

void AddPhysics(CLI::App* c, Options& o) {
  c->add_option("--state", o.state, "probe: ecs, qwp or noon")->capture_default_str();
  c->add_option("--N", o.noon_n, "photon number of a N00N probe");
  c->add_option("--alpha", o.alpha, "coherent amplitude");
  c->add_option("--n-bar", o.n_bar, "mean photon number (alternative to --alpha)");
  c->add_option("--phi1", o.phi1, "arm-1 phase");
  c->add_option("--phi2", o.phi2, "arm-2 phase");
  c->add_option("--phi", o.phi, "differential phase phi1 - phi2 (default 0)");
  c->add_option("--phi-bar", o.phi_bar, "mean phase (phi1 + phi2)/2 (default 0)");
  c->add_option("--loss", o.loss, "photon loss probability p")->capture_default_str();
  c->add_option("--chi", o.chi, "QWP qubit dephasing strength")->capture_default_str();
  c->add_option("--vartheta", o.vartheta, "QWP qubit phase offset")->capture_default_str();
}

void AddOutput(CLI::App* c, Options& o) {
  c->add_option("--output", o.output, "output file, '-' for stdout")->capture_default_str();
  c->add_option("--format", o.format, "csv or json")->capture_default_str();
  c->add_option("--threads", o.threads, "worker cap, 0 = all cores")->capture_default_str();
}

int RunParsed(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phase estimation with entangled coherent states in a lossy Mach-Zehnder "
               "interferometer",
               io::kToolName};
  app.set_version_flag("--version", std::string(io::kToolVersion));
  app.require_subcommand(1);
  app.footer("Any subcommand accepts --config FILE with 'key = value' lines; flags win.");
  Options o;

  CLI::App* qfi = app.add_subcommand("qfi", "quantum Fisher information and delta_phi_min");
  AddPhysics(qfi, o);
  qfi->add_option("--M", o.M, "number of measurements")->capture_default_str();
  AddOutput(qfi, o);

  CLI::App* sweep = app.add_subcommand("sweep", "CFI/QFI and precision over a phi or n_bar grid");
  AddPhysics(sweep, o);
  sweep->add_option("--scheme", o.scheme, "comma list of homodyne, counting, quantum");
  sweep->add_option("--axis", o.axis, "phi or n_bar")->capture_default_str();
  sweep->add_option("--from", o.from, "first grid value");
  sweep->add_option("--to", o.to, "last grid value");
  sweep->add_option("--points", o.points, "grid points")->capture_default_str();
  sweep->add_option("--M", o.M, "number of measurements")->capture_default_str();
  AddOutput(sweep, o);

  CLI::App* samp = app.add_subcommand("sample", "draw measurement records");
  AddPhysics(samp, o);
  samp->add_option("--scheme", o.scheme, "homodyne or counting");
  samp->add_option("--count", o.count, "number of records");
  samp->add_option("--seed", o.seed, "RNG seed");
  AddOutput(samp, o);

  CLI::App* mle = app.add_subcommand("mle-campaign", "repeated sample-then-MLE experiments");
  AddPhysics(mle, o);
  mle->add_option("--scheme", o.scheme, "homodyne or counting");
  mle->add_option("--M", o.M, "records per trial")->capture_default_str();
  mle->add_option("--trials", o.trials, "number of trials (>= 100)");
  mle->add_option("--seed", o.seed, "master RNG seed");
  mle->add_option("--window-lo", o.window_lo, "search window start")->capture_default_str();
  mle->add_option("--window-hi", o.window_hi, "search window end")->capture_default_str();
  mle->add_option("--coarse-points", o.coarse_points, "coarse grid size, 0 = auto")
      ->capture_default_str();
  AddOutput(mle, o);

  CLI::App* wig = app.add_subcommand("wigner", "reduced Wigner function grid of mode a+");
  AddPhysics(wig, o);
  wig->add_option("--x-min", o.x_min, "default -(alpha + 4)");
  wig->add_option("--x-max", o.x_max, "default alpha + 4");
  wig->add_option("--p-min", o.p_min, "default -(alpha + 4)");
  wig->add_option("--p-max", o.p_max, "default alpha + 4");
  wig->add_option("--resolution", o.resolution, "points per axis")->capture_default_str();
  AddOutput(wig, o);

  std::vector<std::string> argv_store{io::kToolName};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string payload;
  if (qfi->parsed()) payload = CmdQfi(o);
  else if (sweep->parsed()) payload = CmdSweep(o);
  else if (samp->parsed()) payload = CmdSample(o);
  else if (mle->parsed()) payload = CmdMle(o);
  else payload = CmdWigner(o);
  Emit(o, payload, out);
  return kExitOk;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream in(text);
  std::string line;
  bool echo = false;
  bool first = true;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = Trim(line);
    if (first && !s.empty()) {
      first = false;
      if (s.rfind(std::string("# ") + io::kToolName + " ", 0) == 0) {
        echo = true;
        continue;
      }
    }
    if (s.empty()) continue;
    if (s[0] == '#') {
      if (!echo) continue;
      s = Trim(s.substr(1));
    } else if (echo) {
      break;  // payload starts
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = FoldKey(Trim(s.substr(0, eq)));
    const std::string value = Trim(s.substr(eq + 1));
    if (key.empty()) {
      throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    }
    entries.emplace_back(key, value);
  }
  return entries;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    if (args.empty()) {
      err << "usage: qmz <qfi|sweep|sample|mle-campaign|wigner> [flags]  (--help for details)\n";
      return kExitUsage;
    }
    return RunParsed(ApplyConfig(args), out, err);
  } catch (const IoFailure& e) {
    err << "qmz: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::ios_base::failure& e) {
    err << "qmz: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::logic_error& e) {
    err << "qmz: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "qmz: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace qmz::cli
