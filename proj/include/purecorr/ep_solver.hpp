#pragma once

// Entanglement of purification: certified bounds, exact-structure detection
// and a seeded multi-start upper estimate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "purecorr/audit.hpp"
#include "purecorr/purification.hpp"

namespace purecorr {

/// How large the purifying ancilla A' (x) B' is.
struct AncillaMode {
  enum class Kind { rank_default, terhal_full, explicit_split };
  Kind kind = Kind::rank_default;
  int d_aprime = 0;
  int d_bprime = 0;

  static AncillaMode rank_default() { return {}; }
  static AncillaMode terhal_full() { return {Kind::terhal_full, 0, 0}; }
  static AncillaMode split(int a, int b) { return {Kind::explicit_split, a, b}; }

  std::string label() const {
    switch (kind) {
      case Kind::rank_default: return "rank";
      case Kind::terhal_full: return "terhal";
      case Kind::explicit_split: return std::to_string(d_aprime) + "," + std::to_string(d_bprime);
    }
    return "rank";
  }
};

struct EpConfig {
  int restarts = 16;
  int max_iterations = 2000;
  double objective_tolerance = 1e-9;
  double gradient_step = 1e-5;  // central-difference step, GradientMode::central_difference only
  std::uint64_t seed = 1;
  AncillaMode ancilla;
  GradientMode gradient = GradientMode::analytic;

  void validate() const {
    if (restarts < 1) throw ContractViolation("restarts must be >= 1");
    if (max_iterations < 1) throw ContractViolation("max_iterations must be >= 1");
    if (!(objective_tolerance > 0.0) || !(gradient_step > 0.0))
      throw ContractViolation("tolerances must be positive");
  }

  DescentOptions descent() const {
    DescentOptions o;
    o.max_iterations = max_iterations;
    o.objective_tolerance = objective_tolerance;
    o.mode = gradient;
    o.fd_step = gradient_step;
    return o;
  }
};

/// Certified interval [lower, upper] for E_p with the origin of each bound.
struct Bracket {
  double lower = 0.0;
  std::string lower_source;
  double upper = 0.0;
  std::string upper_source;
  double gap = 0.0;
};

enum class CertificateKind {
  pure_state,
  bound_coincidence,
  araki_lieb,
  ssa_equality,
  symmetric_subspace,
  antisymmetric_subspace
};

inline std::string to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::pure_state: return "pure-state";
    case CertificateKind::bound_coincidence: return "bound-coincidence";
    case CertificateKind::araki_lieb: return "araki-lieb";
    case CertificateKind::ssa_equality: return "ssa-equality";
    case CertificateKind::symmetric_subspace: return "symmetric-subspace";
    case CertificateKind::antisymmetric_subspace: return "antisymmetric-subspace";
  }
  return "unknown";
}

/// An exact value of E_p fixed by the structure of the state.
struct Certificate {
  CertificateKind kind;
  double value;
};

struct EpResult {
  Bracket bracket;
  double estimate = 0.0;  // upper estimate: value attained by an explicit purification
  std::vector<double> per_restart_values;
  std::vector<std::string> start_labels;
  EpConfig config;
  std::optional<Certificate> certificate;
  bool converged = true;
  int d_aprime = 1;
  int d_bprime = 1;
  Matrix best_unitary;
};

/// Splits one group of a bipartite cut into two non-empty halves.
struct PartySplit {
  int side = 1;  // index of the cut group being split
  Group first;
  Group second;
};

struct LowerBound {
  double value = 0.0;
  std::string source;
};

namespace detail {

// Every split of a group into two non-empty parts, each unordered pair once.
inline std::vector<std::pair<Group, Group>> two_way_splits(const Group& g) {
  std::vector<std::pair<Group, Group>> out;
  const std::size_t n = g.size();
  if (n < 2 || n > 20) return out;
  const std::uint32_t full = (1u << n) - 1u;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    if (mask & 1u) continue;  // element 0 always in `second`: skips mirrored pairs
    Group a, b;
    for (std::size_t k = 0; k < n; ++k) ((mask >> k) & 1u ? a : b).push_back(g[k]);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

inline std::vector<PartySplit> candidate_splits(const Partition& cut, const std::optional<PartySplit>& given) {
  if (given) {
    const auto& g = cut[static_cast<std::size_t>(given->side)];
    const Group merged = join(given->first, given->second);
    Group sorted = g;
    std::sort(sorted.begin(), sorted.end());
    if (given->side < 0 || given->side > 1 || given->first.empty() || given->second.empty() || merged != sorted)
      throw ContractViolation("split does not partition the chosen cut group");
    return {*given};
  }
  std::vector<PartySplit> out;
  for (int side = 0; side < 2; ++side)
    for (auto& [a, b] : two_way_splits(cut[static_cast<std::size_t>(side)]))
      out.push_back(PartySplit{side, a, b});
  return out;
}

inline double pair_sum_bound(const DensityMatrix& rho, const Partition& cut, const PartySplit& s) {
  const Group& other = cut[static_cast<std::size_t>(1 - s.side)];
  return 0.5 * (mutual_information(rho, other, s.first) + mutual_information(rho, other, s.second));
}

}  // namespace detail

/// Best certified lower bound on E_p across `cut`: half the mutual
/// information, the pair-sum bound 1/2[I(A:B1)+I(A:B2)] over one split (every
/// split when none is given) and, for two qubits, E_f.
inline LowerBound ep_lower_bounds(const DensityMatrix& rho, const Partition& cut,
                                  const std::optional<PartySplit>& split = std::nullopt) {
  if (cut.size() != 2) throw ContractViolation("E_p needs a bipartite cut");
  cut.validate(rho.dims().size());
  LowerBound best{0.5 * mutual_information(rho, cut), "half-mutual-information"};
  for (const auto& s : detail::candidate_splits(cut, split)) {
    const double v = detail::pair_sum_bound(rho, cut, s);
    if (v > best.value) best = {v, "pair-sum"};
  }
  if (rho.dims().total_of(cut[0]) == 2 && rho.dims().total_of(cut[1]) == 2) {
    const double ef = eof_2qubit(bipartite_view(rho, cut));
    if (ef > best.value) best = {ef, "eof-concurrence"};
  }
  return best;
}

/// min(S(A), S(B)).
inline double ep_upper_bound_trivial(const DensityMatrix& rho, const Partition& cut) {
  if (cut.size() != 2) throw ContractViolation("E_p needs a bipartite cut");
  cut.validate(rho.dims().size());
  return std::min(entropy(rho, cut[0]), entropy(rho, cut[1]));
}

namespace detail {

inline double swap_projection_error(const DensityMatrix& bip, double sign) {
  const int d = bip.dims()[0];
  const int n = d * d;
  Matrix proj = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      proj(i * d + j, i * d + j) += 0.5;
      proj(j * d + i, i * d + j) += 0.5 * sign;
    }
  return max_abs(proj * bip.matrix() * proj - bip.matrix());
}

}  // namespace detail

/// Exact value of E_p from the structure of the state, if one applies:
/// global purity, the Araki-Lieb equality (either orientation),
/// S(A|B1)+S(A|B2) = 0 across a split of the other side, or support on the
/// (anti)symmetric subspace when both sides have the same dimension.
inline std::optional<Certificate> detect_exact_structure(const DensityMatrix& rho, const Partition& cut,
                                                         const std::optional<PartySplit>& split = std::nullopt) {
  if (cut.size() != 2) throw ContractViolation("E_p needs a bipartite cut");
  cut.validate(rho.dims().size());
  const double tol = tolerances().structure;
  const DensityMatrix bip = bipartite_view(rho, cut);
  const double s_a = entropy(bip, Group{0});
  const double s_b = entropy(bip, Group{1});
  const double s_ab = entropy(bip);

  if (std::abs(purity(bip) - 1.0) < tol) return Certificate{CertificateKind::pure_state, s_a};
  if (std::abs(s_b - s_a - s_ab) < tol) return Certificate{CertificateKind::araki_lieb, s_a};
  if (std::abs(s_a - s_b - s_ab) < tol) return Certificate{CertificateKind::araki_lieb, s_b};

  for (const auto& s : detail::candidate_splits(cut, split)) {
    // node = the unsplit side; E_p(node : rest) = S(node) when S(node|X1)+S(node|X2) = 0
    const Group& node = cut[static_cast<std::size_t>(1 - s.side)];
    const double sum = conditional_entropy(rho, node, s.first) + conditional_entropy(rho, node, s.second);
    if (std::abs(sum) < tol) return Certificate{CertificateKind::ssa_equality, entropy(rho, node)};
  }

  if (bip.dims()[0] == bip.dims()[1]) {
    if (detail::swap_projection_error(bip, 1.0) < tol) return Certificate{CertificateKind::symmetric_subspace, s_a};
    if (detail::swap_projection_error(bip, -1.0) < tol)
      return Certificate{CertificateKind::antisymmetric_subspace, s_a};
  }
  return std::nullopt;
}

namespace detail {

inline std::pair<int, int> ancilla_split(const AncillaMode& mode, const DensityMatrix& bip, int rank) {
  switch (mode.kind) {
    case AncillaMode::Kind::rank_default: return {rank, rank};
    case AncillaMode::Kind::terhal_full: {
      const auto d = static_cast<int>(bip.dim());
      return {d, d * d};
    }
    case AncillaMode::Kind::explicit_split: return {mode.d_aprime, mode.d_bprime};
  }
  return {rank, rank};
}

struct MultiStartOutcome {
  std::vector<double> values;
  std::vector<std::string> labels;
  double best = std::numeric_limits<double>::infinity();
  Matrix best_unitary;
  bool converged = true;
};

template <UnitaryObjective F>
void run_start(const F& f, Matrix start, std::string label, const DescentOptions& opt, MultiStartOutcome& out) {
  const auto r = descend(f, std::move(start), opt);
  out.values.push_back(r.value);
  out.labels.push_back(std::move(label));
  out.converged = out.converged && r.converged;
  if (r.value < out.best) {
    out.best = r.value;
    out.best_unitary = r.unitary;
  }
}

/// Fixed starts first, then `restarts` Haar-random unitaries seeded from (seed, index).
template <UnitaryObjective F>
MultiStartOutcome multi_start_minimize(const F& f, const std::vector<std::pair<std::string, Matrix>>& fixed,
                                       int restarts, std::uint64_t seed, const DescentOptions& opt) {
  MultiStartOutcome out;
  for (const auto& [label, u] : fixed) run_start(f, u, label, opt, out);
  const auto n = static_cast<int>(f.dimension());
  for (int i = 0; i < restarts; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    run_start(f, haar_unitary(n, rng), "haar-" + std::to_string(i), opt, out);
  }
  return out;
}

}  // namespace detail

/// Frame used by ep_optimize for `rho` across `cut` under `mode`.
inline PurificationFrame ep_frame(const DensityMatrix& rho, const Partition& cut, const AncillaMode& mode) {
  const DensityMatrix bip = bipartite_view(rho, cut);
  const int rank = numerical_rank(bip);
  const auto [dap, dbp] = detail::ancilla_split(mode, bip, rank);
  check_dimension_cap(bip.dims().total() * std::int64_t{dap} * dbp);
  return standard_purification(bip, dap, dbp);
}

/// Multi-start minimization over one frame. Default starts are the identity,
/// the ancilla swap (when d_A' >= rank) and cfg.restarts Haar-random
/// unitaries; warm starts run after the fixed ones.
inline detail::MultiStartOutcome ep_minimize_frame(const PurificationFrame& frame, const EpConfig& cfg,
                                                   const std::vector<std::pair<std::string, Matrix>>& warm = {},
                                                   bool default_starts = true) {
  const PurificationObjective obj(frame);
  const int n = frame.ancilla_dim();
  std::vector<std::pair<std::string, Matrix>> fixed;
  if (default_starts) {
    fixed.emplace_back("identity", Matrix::Identity(n, n));
    if (frame.d_aprime >= frame.rank && n > 1) fixed.emplace_back("ancilla-swap", ancilla_swap_unitary(frame));
  }
  for (const auto& w : warm) fixed.push_back(w);
  return detail::multi_start_minimize(obj, fixed, default_starts && n > 1 ? cfg.restarts : 0, cfg.seed,
                                      cfg.descent());
}

/// Seeded multi-start estimate of E_p(cut) with its certified bracket.
inline EpResult ep_optimize(const DensityMatrix& rho, const Partition& cut, const EpConfig& cfg = {}) {
  cfg.validate();
  if (cut.size() != 2) throw ContractViolation("E_p needs a bipartite cut");
  cut.validate(rho.dims().size());
  const auto frame = ep_frame(rho, cut, cfg.ancilla);
  const auto run = ep_minimize_frame(frame, cfg);

  EpResult res;
  res.config = cfg;
  res.per_restart_values = run.values;
  res.start_labels = run.labels;
  res.converged = run.converged;
  res.d_aprime = frame.d_aprime;
  res.d_bprime = frame.d_bprime;
  res.best_unitary = run.best_unitary;
  res.estimate = run.best;

  const auto lower = ep_lower_bounds(rho, cut);
  const double trivial = ep_upper_bound_trivial(rho, cut);
  res.bracket.lower = lower.value;
  res.bracket.lower_source = lower.source;
  if (res.estimate < trivial) {
    res.bracket.upper = res.estimate;
    res.bracket.upper_source = "optimizer";
  } else {
    res.bracket.upper = trivial;
    res.bracket.upper_source = "min-marginal-entropy";
  }
  res.bracket.gap = res.bracket.upper - res.bracket.lower;

  const double tol = tolerances().bracket;
  const auto structure = detect_exact_structure(rho, cut);
  if (structure && structure->kind == CertificateKind::pure_state)
    res.certificate = structure;
  else if (lower.value >= trivial - tol)
    res.certificate = Certificate{CertificateKind::bound_coincidence, trivial};
  else
    res.certificate = structure;
  return res;
}

/// Sub-additivity of E_p on rho (x) sigma: the joint estimate is warm-started
/// from the tensor product of the two separate optima, so it can only end
/// at or below the sum of the separate estimates.
inline AuditRecord ep_subadditivity_certified(const DensityMatrix& rho, const Partition& cut_rho,
                                              const DensityMatrix& sigma, const Partition& cut_sigma,
                                              const EpConfig& cfg = {}, StateDescriptor state = {},
                                              double tol = 1e-6) {
  const auto r1 = ep_optimize(rho, cut_rho, cfg);
  const auto r2 = ep_optimize(sigma, cut_sigma, cfg);
  const auto f1 = ep_frame(rho, cut_rho, cfg.ancilla);
  const auto f2 = ep_frame(sigma, cut_sigma, cfg.ancilla);
  check_dimension_cap(f1.total_dim() * f2.total_dim());
  const auto joint = tensor_frames(f1, f2);
  const Matrix warm = tensor_ancilla_unitaries(f1, f2, r1.best_unitary, r2.best_unitary);
  const double warm_value = PurificationObjective(joint).value(warm);
  const auto run = ep_minimize_frame(joint, cfg, {{"warm-start", warm}}, false);

  const double rhs = r1.estimate + r2.estimate;
  auto rec = make_record("ep-subadditivity", std::move(state), run.best, Relation::less_equal, rhs, tol,
                         Certification::optimizer_assisted, cfg.seed);
  rec.details["ep_first"] = r1.estimate;
  rec.details["ep_second"] = r2.estimate;
  rec.details["warm_start_value"] = warm_value;
  rec.details["warm_start_gap"] = rhs - warm_value;
  rec.details["joint_estimate"] = run.best;
  rec.details["joint_ancilla"] = {joint.d_aprime, joint.d_bprime};
  return rec;
}

}  // namespace purecorr
