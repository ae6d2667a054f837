#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "pdlab/density.hpp"
#include "pdlab/diffusion.hpp"
#include "pdlab/poly_parse.hpp"
#include "pdlab/powersum.hpp"
#include "pdlab/sampling.hpp"
#include "pdlab/verify.hpp"

namespace pdlab::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::optional<double> alpha, theta, p;
  std::optional<int> n, m;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::size_t> paths;
  std::optional<double> t_end, dt;
  std::optional<int> truncation;
  std::optional<int> record_every;
  std::string out;
  std::string format;
  int max_degree = 0;
  std::vector<std::string> polys;
  int grid = 99;
  std::vector<double> x;
  int n_max = 40;
  double x0 = 0.5;
  int k = 1;
  double delta = 0.01;
  int steps = 1000;
  std::string start = "atom";
  std::string suite;
  std::string kind = "pd";
};

struct UsageError : Error {
  using Error::Error;
  const char* kind() const noexcept override { return "usage"; }
};

PdParams params_of(const Options& o) {
  if (!o.alpha) throw UsageError("--alpha is required");
  if (o.m) {
    if (o.theta) throw UsageError("give --theta or --m, not both");
    if (!(*o.alpha < 0.0)) throw UsageError("--m selects the finite case and needs --alpha < 0");
    return PdParams::finite(-*o.alpha, *o.m);
  }
  if (!o.theta) throw UsageError("--theta is required");
  return PdParams::make(*o.alpha, *o.theta);
}

json params_json(const PdParams& p) { return json{{"alpha", p.alpha()}, {"theta", p.theta()}}; }

void add_params(CLI::App* s, Options& o) {
  s->add_option("--alpha", o.alpha, "discount parameter (negative: finite case, -kappa)");
  s->add_option("--theta", o.theta, "concentration parameter");
  s->add_option("--m", o.m, "finite case: number of atoms, theta = m * kappa");
}

void add_output(CLI::App* s, Options& o, const std::string& def) {
  o.format = def;
  s->add_option("--out", o.out, "write results to this file instead of stdout");
  s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

// Writes to --out when given, else to the supplied stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open --out file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

void announce_seed(std::ostream& err, std::uint64_t seed) { err << "seed=" << seed << '\n'; }

json check_json(const Check& c) {
  return json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"tol", c.tol}, {"pass", c.pass}};
}

json report_json(const Report& r) {
  json j{{"suite", r.suite}, {"checks", json::array()}, {"pass", r.pass()}};
  for (const auto& c : r.checks) j["checks"].push_back(check_json(c));
  if (!r.rows.empty()) {
    j["rows"] = json::array();
    for (const auto& row : r.rows)
      j["rows"].push_back(json{{"n", row.n}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"abs_err", row.abs_err}});
  }
  return j;
}

void write_csv_row(std::ostream& os, const std::vector<double>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '\n';
}

// ---------------------------------------------------------------------------
// commands

int cmd_moment(const Options& o, std::ostream& out) {
  if (o.polys.size() != 1) throw UsageError("moment takes exactly one --poly");
  const PdParams p = params_of(o);
  const PowerSumPoly u = parse_poly(o.polys[0]);
  json j{{"input", {{"alpha", p.alpha()}, {"theta", p.theta()}, {"poly", to_string(u)}}},
         {"value", pd_expectation(p, u)},
         {"method", "exact moments of ranked PD weights via the two-parameter correlation functions"}};
  Sink s(o.out, out);
  *s << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_form(const Options& o, std::ostream& out) {
  if (o.polys.size() != 2) throw UsageError("form takes --poly twice (u and v)");
  const PdParams p = params_of(o);
  const PowerSumPoly u = parse_poly(o.polys[0]);
  const PowerSumPoly v = parse_poly(o.polys[1]);
  json j{{"input", {{"alpha", p.alpha()}, {"theta", p.theta()}, {"u", to_string(u)}, {"v", to_string(v)}}},
         {"value", dirichlet_form(p, u, v)},
         {"value_gradient_form", dirichlet_form_carre_du_champ(p, u, v)},
         {"method", "-E[(A u) v], with (1/2) E[Gamma(u, v)] as the second route"}};
  Sink s(o.out, out);
  *s << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_spectrum(const Options& o, std::ostream& out) {
  const PdParams p = params_of(o);
  const int deg = o.max_degree > 0 ? o.max_degree : 8;
  const auto levels = spectrum(p, deg);
  Sink s(o.out, out);
  if (o.format == "csv") {
    *s << "degree,eigenvalue,multiplicity\n";
    for (const auto& lv : levels) *s << lv.degree << ',' << lv.eigenvalue << ',' << lv.multiplicity << '\n';
    return kExitOk;
  }
  json vals = json::array();
  for (const auto& lv : levels)
    vals.push_back(json{{"degree", lv.degree}, {"eigenvalue", lv.eigenvalue}, {"multiplicity", lv.multiplicity}});
  json j{{"input", {{"alpha", p.alpha()}, {"theta", p.theta()}, {"max_degree", deg}}},
         {"value", vals},
         {"method", "diagonal of the triangular generator matrix on power-sum monomials"}};
  *s << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  VerifyConfig c;
  c.alpha = o.alpha;
  c.theta = o.theta;
  c.p = o.p;
  c.n = o.n;
  c.n_max = o.n_max;
  c.max_degree = o.max_degree;
  c.paths = o.paths;
  c.truncation = o.truncation;
  c.dt = o.dt;
  c.seed = o.seed;
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), o.suite) != suite_names().end())
    names = {o.suite};
  else
    throw UsageError("unknown suite '" + o.suite + "'");
  announce_seed(err, o.seed);
  bool pass = true;
  json reports = json::array();
  for (const auto& name : names) {
    const Report r = verify_suite(name, c);
    pass = pass && r.pass();
    reports.push_back(report_json(r));
  }
  json j = names.size() == 1 ? reports[0] : json{{"suites", reports}, {"pass", pass}};
  j["seed"] = o.seed;
  Sink s(o.out, out);
  *s << j.dump(2) << '\n';
  return pass ? kExitOk : kExitFailed;
}

int cmd_sim_unlabeled(const Options& o, std::ostream& out, std::ostream& err) {
  const PdParams p = params_of(o);
  UnlabeledConfig cfg;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.dt) cfg.dt = *o.dt;
  if (o.record_every) cfg.record_every = *o.record_every;
  const UnlabeledSimulator sim(p, cfg);
  const std::size_t paths = o.paths.value_or(1);
  announce_seed(err, o.seed);
  std::vector<Trajectory<RankedWeights>> trajs;
  for (std::size_t i = 0; i < paths; ++i) {
    RngStream rng(o.seed, i);
    RankedWeights x0{{1.0}, 0.0};
    if (o.start == "pd") x0 = sample_pd_ranked(p, o.truncation.value_or(kDefaultTruncation), rng);
    trajs.push_back(sim.run(x0, rng));
  }
  Sink s(o.out, out);
  if (o.format == "json") {
    json j{{"input", params_json(p)}, {"seed", o.seed}, {"paths", json::array()}};
    for (const auto& tr : trajs) {
      json path{{"stream", tr.stream}, {"t", tr.times}, {"weights", json::array()}, {"residual", json::array()}};
      for (const auto& w : tr.states) {
        path["weights"].push_back(w.weights);
        path["residual"].push_back(w.residual);
      }
      j["paths"].push_back(path);
    }
    *s << j.dump() << '\n';
    return kExitOk;
  }
  std::size_t k = 0;
  for (const auto& tr : trajs)
    for (const auto& w : tr.states) k = std::max(k, w.weights.size());
  std::ostream& os = *s;
  os.precision(17);
  if (paths > 1) os << "path,";
  os << 't';
  for (std::size_t i = 1; i <= k; ++i) os << ",w" << i;
  os << ",residual\n";
  for (std::size_t pi = 0; pi < trajs.size(); ++pi)
    for (std::size_t r = 0; r < trajs[pi].times.size(); ++r) {
      if (paths > 1) os << pi << ',';
      os << trajs[pi].times[r];
      const auto& w = trajs[pi].states[r].weights;
      for (std::size_t i = 0; i < k; ++i) os << ',' << (i < w.size() ? w[i] : 0.0);
      os << ',' << trajs[pi].states[r].residual << '\n';
    }
  return kExitOk;
}

TwoTypeParams two_type_params(const Options& o) {
  if (!o.alpha || !o.theta) throw UsageError("--alpha and --theta are required");
  if (*o.theta < 0.0)
    throw UnsupportedRegime("two-type model: theta = " + std::to_string(*o.theta) +
                            " is unsupported; it needs theta >= 0");
  if (!o.p) throw UsageError("--p is required");
  return TwoTypeParams::make(PdParams::make(*o.alpha, *o.theta), *o.p);
}

int cmd_sim_two_type(const Options& o, std::ostream& out, std::ostream& err) {
  const TwoTypeParams tt = two_type_params(o);
  TwoTypeConfig cfg;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.dt) cfg.dt = *o.dt;
  if (o.record_every) cfg.record_every = *o.record_every;
  const TwoTypeSimulator sim(tt, cfg);
  const std::size_t paths = o.paths.value_or(1);
  announce_seed(err, o.seed);
  Sink s(o.out, out);
  std::ostream& os = *s;
  os.precision(17);
  json j{{"input", {{"alpha", tt.params.alpha()}, {"theta", tt.params.theta()}, {"p", tt.p}}},
         {"seed", o.seed},
         {"paths", json::array()}};
  if (o.format != "json") os << (paths > 1 ? "path,t,x\n" : "t,x\n");
  for (std::size_t i = 0; i < paths; ++i) {
    RngStream rng(o.seed, i);
    const auto tr = sim.run(o.x0, rng);
    if (o.format == "json") {
      j["paths"].push_back(json{{"stream", tr.stream}, {"t", tr.times}, {"x", tr.states}});
      continue;
    }
    for (std::size_t r = 0; r < tr.times.size(); ++r) {
      if (paths > 1) os << i << ',';
      os << tr.times[r] << ',' << tr.states[r] << '\n';
    }
  }
  if (o.format == "json") os << j.dump() << '\n';
  return kExitOk;
}

int cmd_sim_updown(const Options& o, std::ostream& out, std::ostream& err) {
  const PdParams p = params_of(o);
  const int n = o.n.value_or(5);
  if (n < 1) throw DomainError("--n must be positive");
  const int every = o.record_every.value_or(1);
  if (every < 1) throw DomainError("--record-every must be >= 1");
  announce_seed(err, o.seed);
  RngStream rng(o.seed, 0);
  IntegerPartition x(std::vector<int>{n});
  Sink s(o.out, out);
  std::ostream& os = *s;
  json j{{"input", params_json(p)}, {"seed", o.seed}, {"step", json::array()}, {"partition", json::array()}};
  if (o.format != "json") os << "step,partition\n";
  auto record = [&](int step) {
    if (o.format == "json") {
      j["step"].push_back(step);
      j["partition"].push_back(x.parts());
    } else {
      os << step << ",\"" << x.to_string() << "\"\n";
    }
  };
  record(0);
  for (int step = 1; step <= o.steps; ++step) {
    x = updown_step(p, x, rng);
    if (step % every == 0 || step == o.steps) record(step);
  }
  if (o.format == "json") os << j.dump() << '\n';
  return kExitOk;
}

int cmd_density_h(const Options& o, std::ostream& out) {
  const PdParams p = params_of(o);
  const int n = o.n.value_or(1);
  const MarginalDensity h(p, n);
  std::vector<std::vector<double>> pts;
  if (!o.x.empty()) {
    if (static_cast<int>(o.x.size()) != n) throw UsageError("--x needs exactly n coordinates");
    pts.push_back(o.x);
  } else {
    if (n != 1) throw UsageError("--grid applies to n = 1; give --x for n > 1");
    if (o.grid < 1) throw UsageError("--grid must be positive");
    for (int i = 1; i <= o.grid; ++i) pts.push_back({static_cast<double>(i) / (o.grid + 1)});
  }
  Sink s(o.out, out);
  std::ostream& os = *s;
  os.precision(17);
  if (o.format == "json") {
    json j{{"input", params_json(p)}, {"n", n}, {"x", json::array()}, {"h", json::array()}};
    for (const auto& x : pts) {
      j["x"].push_back(x);
      j["h"].push_back(h(x));
    }
    os << j.dump(2) << '\n';
    return kExitOk;
  }
  for (int i = 1; i <= n; ++i) os << (n == 1 ? "x" : "x" + std::to_string(i)) << ',';
  os << "h\n";
  for (const auto& x : pts) {
    auto row = x;
    row.push_back(h(x));
    write_csv_row(os, row);
  }
  return kExitOk;
}

int cmd_density_two_type(const Options& o, std::ostream& out) {
  const TwoTypeParams tt = two_type_params(o);
  if (o.grid < 1) throw UsageError("--grid must be positive");
  Sink s(o.out, out);
  std::ostream& os = *s;
  os.precision(17);
  std::vector<double> xs, qs;
  for (int i = 1; i <= o.grid; ++i) {
    xs.push_back(static_cast<double>(i) / (o.grid + 1));
    qs.push_back(two_type_density(tt, xs.back()));
  }
  if (o.format == "json") {
    os << json{{"input", {{"alpha", tt.params.alpha()}, {"theta", tt.params.theta()}, {"p", tt.p}}},
               {"x", xs},
               {"q", qs}}
              .dump(2)
       << '\n';
    return kExitOk;
  }
  os << "x,q\n";
  for (std::size_t i = 0; i < xs.size(); ++i) os << xs[i] << ',' << qs[i] << '\n';
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  const PdParams p = params_of(o);
  const std::size_t draws = o.paths.value_or(10);
  const int trunc = o.truncation.value_or(kDefaultTruncation);
  announce_seed(err, o.seed);
  RngStream rng(o.seed, 0);
  Sink s(o.out, out);
  std::ostream& os = *s;
  os.precision(17);
  if (o.kind == "crp") {
    const int n = o.n.value_or(10);
    json j{{"input", params_json(p)}, {"seed", o.seed}, {"n", n}, {"partitions", json::array()}};
    if (o.format != "json") os << "draw,partition\n";
    for (std::size_t d = 0; d < draws; ++d) {
      const auto lam = sample_crp_partition(p, n, rng);
      if (o.format == "json")
        j["partitions"].push_back(lam.parts());
      else
        os << d << ",\"" << lam.to_string() << "\"\n";
    }
    if (o.format == "json") os << j.dump() << '\n';
    return kExitOk;
  }
  std::vector<RankedWeights> rows;
  for (std::size_t d = 0; d < draws; ++d) {
    if (o.kind == "gem") {
      GemDraw g = sample_gem(p, trunc, rng);
      rows.push_back(RankedWeights{std::move(g.sticks), g.residual});
    } else {
      rows.push_back(sample_pd_ranked(p, trunc, rng));
    }
  }
  if (o.format == "json") {
    json j{{"input", params_json(p)}, {"seed", o.seed}, {"weights", json::array()}, {"residual", json::array()}};
    for (const auto& r : rows) {
      j["weights"].push_back(r.weights);
      j["residual"].push_back(r.residual);
    }
    os << j.dump() << '\n';
    return kExitOk;
  }
  write_weights_csv(os, rows);
  return kExitOk;
}

int cmd_hitting(const Options& o, std::ostream& out, std::ostream& err) {
  const PdParams p = params_of(o);
  UnlabeledConfig cfg;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.dt) cfg.dt = *o.dt;
  cfg.record_every = o.record_every.value_or(10);
  const UnlabeledSimulator sim(p, cfg);
  announce_seed(err, o.seed);
  const auto rep = explore_hitting(sim, RankedWeights{{1.0}, 0.0}, o.k, o.delta, o.paths.value_or(20), o.seed);
  json j{{"input", {{"alpha", p.alpha()}, {"theta", p.theta()}, {"k", rep.k}, {"delta", rep.delta}}},
         {"seed", o.seed},
         {"records", rep.records},
         {"near", rep.near},
         {"fraction_near", rep.records ? static_cast<double>(rep.near) / static_cast<double>(rep.records) : 0.0},
         {"min_gap", rep.min_gap},
         {"note", "exploratory: proximity of x_1 + ... + x_k to 1 along simulated paths"}};
  Sink s(o.out, out);
  *s << j.dump(2) << '\n';
  return kExitOk;
}

void report_error(std::ostream& err, const std::string& kind, const std::string& msg) {
  err << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"two-parameter Poisson-Dirichlet toolkit", "pdlab"};
  app.require_subcommand(1);
  std::function<int()> action;

  auto* moment = app.add_subcommand("moment", "E[u] under PD(alpha, theta) for a power-sum polynomial u");
  add_params(moment, o);
  moment->add_option("--poly", o.polys, "polynomial, e.g. \"3*phi2*phi3 - phi4 + 1\"")->required();
  add_output(moment, o, "json");
  moment->callback([&] { action = [&] { return cmd_moment(o, out); }; });

  auto* form = app.add_subcommand("form", "Dirichlet form E(u, v)");
  add_params(form, o);
  form->add_option("--poly", o.polys, "give twice: u then v")->required();
  add_output(form, o, "json");
  form->callback([&] { action = [&] { return cmd_form(o, out); }; });

  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of the generator on polynomials");
  add_params(spectrum_cmd, o);
  spectrum_cmd->add_option("--max-degree", o.max_degree, "highest degree (default 8)");
  add_output(spectrum_cmd, o, "json");
  spectrum_cmd->callback([&] { action = [&] { return cmd_spectrum(o, out); }; });

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", o.suite, "suite name or 'all'")->required();
  add_params(verify, o);
  verify->add_option("--p", o.p, "two-type mass of the marked label");
  verify->add_option("--n", o.n, "partition size");
  verify->add_option("--n-max", o.n_max, "largest n for aux-identity");
  verify->add_option("--max-degree", o.max_degree, "polynomial degree bound");
  verify->add_option("--paths", o.paths, "Monte Carlo draws, paths or step budget");
  verify->add_option("--truncation", o.truncation, "stick-breaking truncation");
  verify->add_option("--dt", o.dt, "time step");
  verify->add_option("--seed", o.seed, "random seed");
  add_output(verify, o, "json");
  verify->callback([&] { action = [&] { return cmd_verify(o, out, err); }; });

  auto* sim = app.add_subcommand("simulate", "simulate a diffusion or chain");
  sim->require_subcommand(1);
  auto common_sim = [&](CLI::App* s) {
    add_params(s, o);
    s->add_option("--t-end", o.t_end, "time horizon");
    s->add_option("--dt", o.dt, "time step");
    s->add_option("--paths", o.paths, "number of independent paths");
    s->add_option("--seed", o.seed, "random seed");
    s->add_option("--record-every", o.record_every, "record every k-th step");
    add_output(s, o, "csv");
  };
  auto* unl = sim->add_subcommand("unlabeled", "ranked-weight diffusion");
  common_sim(unl);
  unl->add_option("--start", o.start, "initial state: atom (a single unit atom) or pd (a PD draw)")
      ->check(CLI::IsMember({"atom", "pd"}));
  unl->add_option("--truncation", o.truncation, "truncation for --start pd");
  unl->callback([&] { action = [&] { return cmd_sim_unlabeled(o, out, err); }; });
  auto* two = sim->add_subcommand("two-type", "two-type labeled diffusion");
  common_sim(two);
  two->add_option("--p", o.p, "mass of the marked label");
  two->add_option("--x0", o.x0, "initial state in (0,1)");
  two->callback([&] { action = [&] { return cmd_sim_two_type(o, out, err); }; });
  auto* ud = sim->add_subcommand("updown", "up/down chain on partitions of n");
  add_params(ud, o);
  ud->add_option("--n", o.n, "partition size (default 5)");
  ud->add_option("--steps", o.steps, "number of moves");
  ud->add_option("--seed", o.seed, "random seed");
  ud->add_option("--record-every", o.record_every, "record every k-th move");
  add_output(ud, o, "csv");
  ud->callback([&] { action = [&] { return cmd_sim_updown(o, out, err); }; });

  auto* dens = app.add_subcommand("density", "closed-form densities");
  dens->require_subcommand(1);
  auto* dh = dens->add_subcommand("h", "density of the n largest atoms");
  add_params(dh, o);
  dh->add_option("--n", o.n, "number of ranked atoms (default 1)");
  dh->add_option("--x", o.x, "point x_1 >= ... >= x_n, comma separated")->delimiter(',');
  dh->add_option("--grid", o.grid, "n = 1: number of interior grid points");
  add_output(dh, o, "csv");
  dh->callback([&] { action = [&] { return cmd_density_h(o, out); }; });
  auto* dt = dens->add_subcommand("two-type", "stationary density of the marked mass");
  add_params(dt, o);
  dt->add_option("--p", o.p, "mass of the marked label");
  dt->add_option("--grid", o.grid, "number of interior grid points");
  add_output(dt, o, "csv");
  dt->callback([&] { action = [&] { return cmd_density_two_type(o, out); }; });

  auto* samp = app.add_subcommand("sample", "draw from PD, GEM or the Chinese restaurant process");
  samp->add_option("kind", o.kind, "pd (default), gem or crp")->check(CLI::IsMember({"pd", "gem", "crp"}));
  add_params(samp, o);
  samp->add_option("--paths", o.paths, "number of draws");
  samp->add_option("--truncation", o.truncation, "number of sticks");
  samp->add_option("--n", o.n, "crp: number of customers");
  samp->add_option("--seed", o.seed, "random seed");
  add_output(samp, o, "csv");
  samp->callback([&] { action = [&] { return cmd_sample(o, out, err); }; });

  auto* expl = app.add_subcommand("explore", "exploratory experiments (no pass/fail)");
  expl->require_subcommand(1);
  auto* hit = expl->add_subcommand("hitting", "how close paths come to x_1 + ... + x_k = 1");
  add_params(hit, o);
  hit->add_option("--k", o.k, "number of leading atoms");
  hit->add_option("--delta", o.delta, "proximity threshold");
  hit->add_option("--paths", o.paths, "number of paths");
  hit->add_option("--t-end", o.t_end, "time horizon");
  hit->add_option("--dt", o.dt, "time step");
  hit->add_option("--record-every", o.record_every, "record every k-th step");
  hit->add_option("--seed", o.seed, "random seed");
  hit->callback([&] { action = [&] { return cmd_hitting(o, out, err); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const DomainError& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const UnsupportedRegime& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const CapacityError& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const SupportError& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    report_error(err, e.kind(), e.what());
    return kExitUsage;
  } catch (const Error& e) {
    report_error(err, e.kind(), e.what());
    return kExitFailed;
  } catch (const std::exception& e) {
    report_error(err, "internal", e.what());
    return kExitFailed;
  }
}

}  // namespace pdlab::cli
