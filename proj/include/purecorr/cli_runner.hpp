#pragma once

// Command-line front end: ep, dc, audit, sweep and validate subcommands.
// run_cli() holds the whole program so it can be driven in-process.
//
// Exit codes: 0 success (inconclusive verdicts included, flagged in the
// output), 1 some audit verdict is "violated", 2 bad input or contract
// violation, 3 dimension cap exceeded.

#include <chrono>
#include <ctime>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "purecorr/io.hpp"

namespace purecorr::cli {

enum ExitCode : int { kOk = 0, kViolated = 1, kContract = 2, kDimensionCap = 3 };

struct RunOptions {
  std::string command;
  std::string claim;
  std::string family;
  std::vector<double> params;
  std::string dims;
  std::string cut;
  int n = 0;
  std::string grid;
  int restarts = 16;
  int max_iterations = 2000;
  std::uint64_t seed = 1;
  std::optional<double> tol;
  std::vector<std::string> tolerance_overrides;
  std::string ancilla = "rank";
  std::string gradient = "analytic";
  std::string measure = "mutual-info";
  int node = 0;
  std::string subset;
  std::string input;
  std::string out;
  std::string format = "json";
};

struct BuiltState {
  DensityMatrix rho;
  StateDescriptor desc;
};

inline const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "dc-monogamy",      "dc-superadditivity", "dc-vanishing",    "ep-subadditivity", "fig1-gap",
      "fig2-gap",         "ghz-mixture-exact",  "mi-monogamy-pure", "monogamy-score",  "prop3-polygamy",
      "prop4-polygamy",   "thm1-polygamy-pure", "w-closed-form",   "weak-monogamy"};
  return ids;
}

inline const std::vector<std::string>& family_names() {
  static const std::vector<std::string> names = {
      "bell",  "singlet", "werner",     "ghz",          "w",           "ghz-mixture", "ghz-sign-mixture",
      "fig1",  "fig2",    "product",    "mixed",        "random-pure", "random-mixed", "ssa-example"};
  return names;
}

namespace detail {

inline std::string join_names(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
  return s;
}

/// "A:BC" -> {{0},{1,2}}.
inline Partition parse_cut(const std::string& text, std::size_t n_parties) {
  std::vector<Group> groups(1);
  for (char ch : text) {
    if (ch == ':') {
      groups.emplace_back();
    } else if (ch >= 'A' && ch <= 'Z') {
      groups.back().push_back(ch - 'A');
    } else {
      throw ContractViolation("--cut: unexpected character '" + std::string(1, ch) + "' in '" + text + "'");
    }
  }
  Partition p(groups);
  try {
    p.validate(n_parties);
  } catch (const ContractViolation& e) {
    throw ContractViolation("--cut: " + std::string(e.what()));
  }
  return p;
}

inline Group parse_group(const std::string& text, const char* flag) {
  Group g;
  for (char ch : text) {
    if (ch < 'A' || ch > 'Z') throw ContractViolation(std::string(flag) + ": expected party letters, got '" + text + "'");
    g.push_back(ch - 'A');
  }
  return g;
}

inline std::vector<int> parse_int_list(const std::string& text, char sep, const char* flag) {
  std::vector<int> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(sep, pos);
    const auto item = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    try {
      std::size_t used = 0;
      const int x = std::stoi(item, &used);
      if (used != item.size() || x < 1) throw std::invalid_argument(item);
      v.push_back(x);
    } catch (const std::exception&) {
      throw ContractViolation(std::string(flag) + ": cannot parse '" + text + "'");
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return v;
}

inline AncillaMode parse_ancilla(const std::string& text) {
  if (text == "rank") return AncillaMode::rank_default();
  if (text == "terhal") return AncillaMode::terhal_full();
  const auto v = parse_int_list(text, ',', "--ancilla");
  if (v.size() != 2) throw ContractViolation("--ancilla: expected rank, terhal or a,b");
  return AncillaMode::split(v[0], v[1]);
}

inline double param(const RunOptions& o, std::size_t k, double fallback) {
  return k < o.params.size() ? o.params[k] : fallback;
}

inline void expect_params(const RunOptions& o, std::size_t max_count) {
  if (o.params.size() > max_count)
    throw ContractViolation("--params: family " + o.family + " takes at most " + std::to_string(max_count) +
                            " values");
}

inline int sign_param(const RunOptions& o, std::size_t k) {
  const double s = param(o, k, 1.0);
  if (s != 1.0 && s != -1.0) throw ContractViolation("--params: sign must be 1 or -1");
  return static_cast<int>(s);
}

inline Dims dims_or_qubits(const RunOptions& o, int default_n) {
  if (!o.dims.empty()) return Dims(parse_int_list(o.dims, ',', "--dims"));
  return Dims(std::vector<int>(static_cast<std::size_t>(o.n > 0 ? o.n : default_n), 2));
}

/// The two-block state with S(X|B) + S(X|C) = 0 on parties X, B, C.
inline DensityMatrix ssa_example_state() {
  const DensityMatrix bell = projector(bell_state());
  Matrix s1 = Matrix::Zero(2, 2);
  s1(0, 0) = 1.0;
  Matrix s2 = Matrix::Zero(2, 2);
  s2(0, 0) = 0.3;
  s2(1, 1) = 0.7;
  return ssa_equality_state({0.5, 0.5}, {bell, bell}, {DensityMatrix(s1, Dims{1, 2}), DensityMatrix(s2, Dims{1, 2})});
}

inline BuiltState build_family(const RunOptions& o, const std::string& fallback_family) {
  RunOptions opt = o;
  if (opt.family.empty()) opt.family = fallback_family;
  const std::string& f = opt.family;
  const int n = opt.n > 0 ? opt.n : 3;
  StateDescriptor d;
  d.family = f;
  d.params = opt.params;
  DensityMatrix rho;
  if (f == "bell") {
    expect_params(opt, 0);
    rho = projector(bell_state());
  } else if (f == "singlet") {
    expect_params(opt, 0);
    rho = projector(singlet_state());
  } else if (f == "werner") {
    expect_params(opt, 1);
    d.params = {param(opt, 0, 0.8)};
    rho = werner_2qubit(d.params[0]);
  } else if (f == "ghz") {
    expect_params(opt, 2);
    d.params = {param(opt, 0, 0.5), static_cast<double>(sign_param(opt, 1))};
    rho = projector(ghz_generalized(n, d.params[0], sign_param(opt, 1)));
  } else if (f == "w") {
    expect_params(opt, 0);
    rho = projector(w_state(n));
  } else if (f == "ghz-mixture") {
    expect_params(opt, 4);
    d.params = {param(opt, 0, 0.5), param(opt, 1, 0.5), param(opt, 2, 0.5), static_cast<double>(sign_param(opt, 3))};
    rho = ghz_mixture(d.params[0], d.params[1], d.params[2], sign_param(opt, 3), n);
  } else if (f == "ghz-sign-mixture") {
    expect_params(opt, 2);
    d.params = {param(opt, 0, 0.5), param(opt, 1, 0.5)};
    rho = ghz_sign_mixture(d.params[0], d.params[1], n);
  } else if (f == "fig1") {
    expect_params(opt, 2);
    d.params = {param(opt, 0, 0.5), param(opt, 1, 0.5)};
    rho = fig1_family(d.params[0], d.params[1]);
  } else if (f == "fig2") {
    expect_params(opt, 1);
    d.params = {param(opt, 0, 0.5)};
    rho = fig2_family(d.params[0]);
  } else if (f == "product") {
    expect_params(opt, 0);
    rho = projector(basis_state(dims_or_qubits(opt, 3), 0));
  } else if (f == "mixed") {
    expect_params(opt, 0);
    rho = DensityMatrix::maximally_mixed(dims_or_qubits(opt, 2));
  } else if (f == "random-pure") {
    expect_params(opt, 0);
    rho = projector(random_pure_state(dims_or_qubits(opt, 3), opt.seed));
  } else if (f == "random-mixed") {
    expect_params(opt, 1);
    const Dims dims = dims_or_qubits(opt, 2);
    const int rank = static_cast<int>(param(opt, 0, static_cast<double>(dims.total())));
    if (rank < 1) throw ContractViolation("--params: rank must be >= 1");
    d.params = {static_cast<double>(rank)};
    rho = random_density_matrix(dims, rank, opt.seed);
  } else if (f == "ssa-example") {
    expect_params(opt, 0);
    rho = ssa_example_state();
  } else {
    throw ContractViolation("--family: unknown family '" + f + "' (valid: " + join_names(family_names()) + ")");
  }
  d.n_parties = static_cast<int>(rho.dims().size());
  d.dims = rho.dims();
  return {std::move(rho), std::move(d)};
}

inline BuiltState build_state(const RunOptions& o, const std::string& fallback_family) {
  if (!o.input.empty()) {
    if (!o.family.empty()) throw ContractViolation("--input and --family are mutually exclusive");
    BuiltState s{load_density_matrix(o.input), {}};
    s.desc.family = "file";
    s.desc.n_parties = static_cast<int>(s.rho.dims().size());
    s.desc.dims = s.rho.dims();
    return s;
  }
  return build_family(o, fallback_family);
}

inline Partition cut_or_default(const RunOptions& o, const DensityMatrix& rho) {
  const std::size_t n = rho.dims().size();
  if (!o.cut.empty()) return parse_cut(o.cut, n);
  if (n < 2) throw ContractViolation("state has a single party; no cut exists");
  Group rest;
  for (std::size_t i = 1; i < n; ++i) rest.push_back(static_cast<int>(i));
  return Partition{{0}, rest};
}

inline Partition parts_or_default(const RunOptions& o, const DensityMatrix& rho, Partition fallback) {
  Partition p = o.cut.empty() ? std::move(fallback) : parse_cut(o.cut, rho.dims().size());
  if (p.size() != 3) throw ContractViolation("--cut: this claim needs three groups, e.g. A:B:C");
  p.validate(rho.dims().size());
  return p;
}

inline void require_bipartite(const Partition& p) {
  if (p.size() != 2) throw ContractViolation("--cut: expected two groups, e.g. A:BC");
}

inline EpConfig ep_config(const RunOptions& o) {
  EpConfig c;
  c.restarts = o.restarts;
  c.max_iterations = o.max_iterations;
  c.seed = o.seed;
  c.ancilla = parse_ancilla(o.ancilla);
  c.gradient = o.gradient == "analytic" ? GradientMode::analytic : GradientMode::central_difference;
  c.validate();
  return c;
}

inline SweepGrid parse_grid(const std::string& text, SweepFamily family) {
  if (text.empty()) return family == SweepFamily::fig1 ? SweepGrid::fig1() : SweepGrid::fig2();
  const auto v = parse_int_list(text, 'x', "--grid");
  if (family == SweepFamily::fig1) {
    if (v.size() != 2) throw ContractViolation("--grid: fig1 expects PxA, e.g. 51x51");
    return SweepGrid::fig1(v[0], v[1]);
  }
  if (v.size() != 1) throw ContractViolation("--grid: fig2 expects a single count, e.g. 101");
  return SweepGrid::fig2(v[0]);
}

inline void apply_tolerance_overrides(const RunOptions& o) {
  auto& t = tolerances();
  std::map<std::string, double*> fields = {
      {"hermiticity", &t.hermiticity}, {"psd", &t.psd},
      {"trace", &t.trace},             {"pure_norm", &t.pure_norm},
      {"eig_input", &t.eig_input},     {"eig_cutoff", &t.eig_cutoff},
      {"log_floor", &t.log_floor},     {"structure", &t.structure},
      {"bracket", &t.bracket},         {"analytic_audit", &t.analytic_audit},
      {"stacked_audit", &t.stacked_audit}};
  for (const auto& item : o.tolerance_overrides) {
    const auto eq = item.find('=');
    const auto key = item.substr(0, eq);
    auto it = fields.find(key);
    if (eq == std::string::npos || it == fields.end())
      throw ContractViolation("--tolerance: expected name=value with name one of hermiticity, psd, trace, "
                              "pure_norm, eig_input, eig_cutoff, log_floor, structure, bracket, analytic_audit, "
                              "stacked_audit; got '" + item + "'");
    try {
      *it->second = std::stod(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw ContractViolation("--tolerance: bad value in '" + item + "'");
    }
    if (!(*it->second > 0.0)) throw ContractViolation("--tolerance: " + key + " must be positive");
  }
  if (o.tol) {
    if (!(*o.tol > 0.0)) throw ContractViolation("--tol must be positive");
    t.analytic_audit = *o.tol;
    t.stacked_audit = *o.tol;
  }
}

inline json options_json(const RunOptions& o) {
  json j{{"command", o.command},   {"family", o.family},       {"params", o.params},
         {"dims", o.dims},         {"cut", o.cut},             {"n", o.n},
         {"grid", o.grid},         {"restarts", o.restarts},   {"max_iterations", o.max_iterations},
         {"seed", o.seed},         {"ancilla", o.ancilla},     {"gradient", o.gradient},
         {"measure", o.measure},   {"node", o.node},           {"subset", o.subset},
         {"input", o.input},       {"format", o.format},       {"tolerance_overrides", o.tolerance_overrides}};
  j["tol"] = o.tol ? json(*o.tol) : json(nullptr);
  if (!o.claim.empty()) j["claim"] = o.claim;
  return j;
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

inline json envelope(const RunOptions& o) {
  return json{{"tool", "purecorr"},
              {"version", kVersion},
              {"config", options_json(o)},
              {"seed", o.seed},
              {"tolerances", to_json(tolerances())},
              {"timestamp", utc_timestamp()}};
}

/// CSV provenance travels in leading '#' lines.
inline std::string csv_preamble(const json& env) {
  std::string s;
  for (const char* key : {"tool", "version", "seed", "timestamp", "config", "tolerances", "state"})
    if (env.contains(key)) s += std::string("# ") + key + ": " + env[key].dump() + "\n";
  return s;
}

struct Output {
  json document;
  std::string csv;  // filled only for csv-capable commands
  int exit_code = kOk;
};

inline int summarize(const std::vector<AuditRecord>& recs, json& summary) {
  int violated = 0, inconclusive = 0, holds = 0;
  for (const auto& r : recs) {
    if (r.verdict == Verdict::violated) ++violated;
    else if (r.verdict == Verdict::inconclusive) ++inconclusive;
    else ++holds;
  }
  summary = json{{"records", recs.size()},
                 {"holds", holds},
                 {"violated", violated},
                 {"inconclusive", inconclusive},
                 {"inconclusive_flag", inconclusive > 0}};
  return violated > 0 ? kViolated : kOk;
}

inline Output audit_output(const RunOptions& o, json env, const std::vector<AuditRecord>& recs,
                           const std::vector<std::string>& param_names = {}) {
  Output out;
  json summary;
  out.exit_code = summarize(recs, summary);
  json arr = json::array();
  for (const auto& r : recs) arr.push_back(to_json(r));
  env["records"] = std::move(arr);
  env["summary"] = std::move(summary);
  if (o.format == "csv") out.csv = csv_preamble(env) + records_csv(recs, param_names);
  out.document = std::move(env);
  return out;
}

inline Output cmd_ep(const RunOptions& o) {
  auto s = build_state(o, "bell");
  const Partition cut = cut_or_default(o, s.rho);
  require_bipartite(cut);
  const EpConfig cfg = ep_config(o);
  const auto res = ep_optimize(s.rho, cut, cfg);
  json env = envelope(o);
  env["state"] = to_json(s.desc);
  env["cut"] = cut.label();
  env["result"] = to_json(res);
  return {std::move(env), {}, kOk};
}

inline Output cmd_dc(const RunOptions& o) {
  auto s = build_state(o, "bell");
  const Partition cut = cut_or_default(o, s.rho);
  require_bipartite(cut);
  DcConfig cfg = DcConfig::from(ep_config(o));
  const auto res = dc_advantage(s.rho, cut, cfg);
  json env = envelope(o);
  env["state"] = to_json(s.desc);
  env["cut"] = cut.label();
  env["result"] = to_json(res);
  return {std::move(env), {}, kOk};
}

inline SweepResult run_sweep(const RunOptions& o, SweepFamily family) {
  return fig_sweep(family, parse_grid(o.grid, family));
}

inline Output cmd_sweep(const RunOptions& o) {
  if (o.family.empty()) throw ContractViolation("--family: sweep needs fig1 or fig2");
  const SweepFamily family = parse_sweep_family(o.family);
  const auto sweep = run_sweep(o, family);
  json env = envelope(o);
  env["result"] = to_json(sweep);
  Output out{std::move(env), {}, kOk};
  if (o.format == "csv") {
    std::vector<std::string> names;
    for (const auto& a : sweep.grid.axes) names.push_back(a.name);
    out.csv = csv_preamble(out.document) + records_csv(sweep_records(sweep), names);
  }
  return out;
}

inline Output cmd_validate(const RunOptions& o) {
  auto s = build_state(o, "");
  json env = envelope(o);
  env["state"] = to_json(s.desc);
  const auto es = hermitian_eigs(s.rho.matrix());
  env["result"] = json{{"valid", true},
                       {"trace", s.rho.matrix().trace().real()},
                       {"hermiticity_error", hermiticity_error(s.rho.matrix())},
                       {"min_eigenvalue", es.values.minCoeff()},
                       {"entropy", entropy(s.rho)},
                       {"purity", purity(s.rho)}};
  return {std::move(env), {}, kOk};
}

inline Output cmd_audit(const RunOptions& o) {
  const auto& ids = claim_ids();
  if (std::find(ids.begin(), ids.end(), o.claim) == ids.end())
    throw ContractViolation("unknown claim id '" + o.claim + "' (valid: " + join_names(ids) + ")");
  const EpConfig cfg = ep_config(o);
  const std::string& c = o.claim;
  json env = envelope(o);
  std::vector<AuditRecord> recs;
  std::vector<std::string> names;

  if (c == "fig1-gap" || c == "fig2-gap") {
    const SweepFamily family = c == "fig1-gap" ? SweepFamily::fig1 : SweepFamily::fig2;
    const auto sweep = run_sweep(o, family);
    for (const auto& a : sweep.grid.axes) names.push_back(a.name);
    recs = sweep_records(sweep);
    for (auto& r : recs) r.claim_id = c;
    env["sweep_min"] = sweep.min_value;
    env["sweep_argmin"] = sweep.argmin;
  } else if (c == "w-closed-form") {
    const int lo = o.n > 0 ? o.n : 3;
    const int hi = o.n > 0 ? o.n : 8;
    for (int k = lo; k <= hi; ++k) recs.push_back(w_closed_form_check(k));
  } else {
    std::string fallback = "ghz";
    if (c == "thm1-polygamy-pure" || c == "weak-monogamy") fallback = "w";
    if (c == "ep-subadditivity" || c == "dc-superadditivity") fallback = "werner";
    if (c == "ghz-mixture-exact") fallback = "ghz-mixture";
    if (c == "dc-vanishing") fallback = "ssa-example";
    if (c == "monogamy-score") fallback = "fig1";
    auto s = build_state(o, fallback);
    env["state"] = to_json(s.desc);
    const DensityMatrix& rho = s.rho;
    const StateDescriptor& d = s.desc;

    if (c == "thm1-polygamy-pure") {
      recs.push_back(thm1_polygamy_pure_audit(rho, cfg, d));
    } else if (c == "mi-monogamy-pure") {
      auto r = monogamy_score(MonogamyMeasure::mutual_info, rho,
                              parts_or_default(o, rho, Partition{{0}, {1}, {2}}), cfg, d);
      if (std::abs(purity(rho) - 1.0) > tolerances().structure)
        throw ContractViolation("mi-monogamy-pure requires a pure state");
      r.claim_id = c;
      r.verdict = std::abs(r.margin) < r.tolerance ? Verdict::holds_equality : Verdict::violated;
      recs.push_back(std::move(r));
    } else if (c == "monogamy-score") {
      recs.push_back(monogamy_score(parse_measure(o.measure), rho,
                                    parts_or_default(o, rho, Partition{{0}, {1}, {2}}), cfg, d));
    } else if (c == "prop3-polygamy") {
      recs.push_back(prop3_audit(rho, o.node, d));
    } else if (c == "prop4-polygamy") {
      Group subset;
      if (o.subset.empty()) {
        for (int i = 0; i < static_cast<int>(rho.dims().size()) - 1; ++i) subset.push_back(i);
        if (o.node == static_cast<int>(rho.dims().size()) - 1) subset.back() = o.node;
      } else {
        subset = parse_group(o.subset, "--subset");
      }
      recs.push_back(prop4_audit(rho, o.node, subset, d));
    } else if (c == "weak-monogamy") {
      recs.push_back(weak_monogamy_audit(rho, cfg, d));
    } else if (c == "dc-monogamy") {
      recs.push_back(dc_monogamy_audit(rho, parts_or_default(o, rho, Partition{{0}, {1}, {2}}), cfg, d));
    } else if (c == "dc-vanishing") {
      const Partition fallback_parts = o.family.empty() && o.input.empty() ? Partition{{1}, {0}, {2}}
                                                                           : Partition{{0}, {1}, {2}};
      recs.push_back(dc_vanishing_audit(rho, parts_or_default(o, rho, fallback_parts), DcConfig::from(cfg), d));
    } else if (c == "ghz-mixture-exact") {
      recs.push_back(ghz_mixture_exact_audit(rho, cfg, d));
    } else if (c == "ep-subadditivity" || c == "dc-superadditivity") {
      const Partition cut = cut_or_default(o, rho);
      require_bipartite(cut);
      if (c == "ep-subadditivity")
        recs.push_back(ep_subadditivity_certified(rho, cut, rho, cut, cfg, d));
      else
        recs.push_back(dc_superadditivity_audit(rho, cut, rho, cut, DcConfig::from(cfg), d));
    }
  }
  return audit_output(o, std::move(env), recs, names);
}

inline void add_common(CLI::App* sub, RunOptions& o, bool state_flags, bool optimizer_flags) {
  if (state_flags) {
    sub->add_option("--family", o.family, "state family: " + join_names(family_names()));
    sub->add_option("--params", o.params, "family parameters, comma separated")->delimiter(',');
    sub->add_option("--dims", o.dims, "local dimensions for product/mixed/random families, e.g. 2,4");
    sub->add_option("--n", o.n, "number of parties for n-party families")->check(CLI::Range(2, kMaxQubitParties));
    sub->add_option("--input", o.input, "density-matrix JSON file {dims, re, im}");
    sub->add_option("--cut", o.cut, "party groups by letter, e.g. A:BC or A:B:C");
  }
  if (optimizer_flags) {
    sub->add_option("--restarts", o.restarts, "random restarts")->check(CLI::PositiveNumber);
    sub->add_option("--max-iterations", o.max_iterations, "descent iterations per start")->check(CLI::PositiveNumber);
    sub->add_option("--ancilla", o.ancilla, "ancilla split: rank, terhal or a,b");
    sub->add_option("--gradient", o.gradient, "gradient mode")
        ->check(CLI::IsMember({"analytic", "central-difference"}));
  }
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--tol", o.tol, "verdict tolerance for audits");
  sub->add_option("--tolerance", o.tolerance_overrides, "override a named tolerance, name=value (repeatable)");
  sub->add_option("--out", o.out, "output file (written atomically); stdout if absent");
  sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
}

inline void emit(const RunOptions& o, const Output& out, std::ostream& stdout_stream) {
  std::string text;
  if (o.format == "csv") {
    if (out.csv.empty()) throw ContractViolation("--format csv is only available for audit and sweep");
    text = out.csv;
  } else {
    text = out.document.dump(2) + "\n";
  }
  if (o.out.empty()) stdout_stream << text;
  else write_atomic(o.out, text);
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
  RunOptions o;
  CLI::App app{"Entanglement of purification and dense-coding advantage toolkit", "purecorr"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* ep = app.add_subcommand("ep", "estimate E_p with a certified bracket");
  detail::add_common(ep, o, true, true);
  auto* dc = app.add_subcommand("dc", "estimate the dense-coding advantage (channel on the first group)");
  detail::add_common(dc, o, true, true);
  auto* audit = app.add_subcommand("audit", "audit a claim: " + detail::join_names(claim_ids()));
  audit->add_option("claim", o.claim, "claim id")->required();
  detail::add_common(audit, o, true, true);
  audit->add_option("--grid", o.grid, "grid for fig1-gap (PxA) or fig2-gap (P)");
  audit->add_option("--measure", o.measure, "measure for monogamy-score")
      ->check(CLI::IsMember({"mutual-info", "ep-estimate", "ep-lower", "dc"}));
  audit->add_option("--node", o.node, "node party index for prop3/prop4")->check(CLI::NonNegativeNumber);
  audit->add_option("--subset", o.subset, "reduced party set for prop4, by letter");
  auto* sweep = app.add_subcommand("sweep", "lower-bound gap sweep over fig1 or fig2");
  sweep->add_option("--family", o.family, "fig1 or fig2")->required();
  sweep->add_option("--grid", o.grid, "PxA for fig1, P for fig2");
  detail::add_common(sweep, o, false, false);
  auto* validate = app.add_subcommand("validate", "check a state against the density-matrix invariants");
  detail::add_common(validate, o, true, false);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  }

  const auto saved = tolerances();
  struct Restore {
    Tolerances t;
    ~Restore() { tolerances() = t; }
  } restore{saved};

  try {
    detail::apply_tolerance_overrides(o);
    detail::Output result;
    if (ep->parsed()) {
      o.command = "ep";
      result = detail::cmd_ep(o);
    } else if (dc->parsed()) {
      o.command = "dc";
      result = detail::cmd_dc(o);
    } else if (audit->parsed()) {
      o.command = "audit";
      result = detail::cmd_audit(o);
    } else if (sweep->parsed()) {
      o.command = "sweep";
      result = detail::cmd_sweep(o);
    } else {
      o.command = "validate";
      result = detail::cmd_validate(o);
    }
    if (o.format == "csv" && result.csv.empty())
      throw ContractViolation("--format csv is only available for audit and sweep");
    detail::emit(o, result, out);
    if (result.exit_code == kOk && result.document.contains("summary") &&
        result.document["summary"]["inconclusive_flag"].get<bool>())
      err << "note: some verdicts are inconclusive\n";
    return result.exit_code;
  } catch (const DimensionCapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kDimensionCap;
  } catch (const AncillaTooSmall& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  } catch (const ContractViolation& e) {
    err << "error: " << e.what() << "\n";
    return kContract;
  }
}

inline int run_cli(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, out, err);
}

}  // namespace purecorr::cli
