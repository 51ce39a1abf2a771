#pragma once

// One checked inequality: both sides, the verdict and how it was certified.

#include <cmath>
#include <cstdint>
#include <string>

#include "json.hpp"
#include "purecorr/state_zoo.hpp"

namespace purecorr {

enum class Verdict { holds, holds_equality, violated, inconclusive };
enum class Certification { analytic, optimizer_assisted };
enum class Relation { less_equal, greater_equal };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::holds_equality: return "holds (equality)";
    case Verdict::violated: return "violated";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

inline std::string to_string(Certification c) {
  return c == Certification::analytic ? "analytic" : "optimizer-assisted";
}

inline std::string to_string(Relation r) { return r == Relation::less_equal ? "<=" : ">="; }

struct AuditRecord {
  std::string claim_id;
  StateDescriptor state;
  double lhs = 0.0;
  double rhs = 0.0;
  Relation relation = Relation::less_equal;
  double margin = 0.0;  // slack in the claimed direction; negative means violated
  Verdict verdict = Verdict::inconclusive;
  Certification certification = Certification::analytic;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return verdict == Verdict::holds || verdict == Verdict::holds_equality; }
};

/// Signed slack of `lhs relation rhs`.
inline double claim_margin(double lhs, Relation rel, double rhs) {
  return rel == Relation::less_equal ? rhs - lhs : lhs - rhs;
}

inline Verdict verdict_for(double margin, double tol) {
  if (!std::isfinite(margin)) return Verdict::inconclusive;
  if (margin > tol) return Verdict::holds;
  if (margin >= -tol) return Verdict::holds_equality;
  return Verdict::violated;
}

inline AuditRecord make_record(std::string claim_id, StateDescriptor state, double lhs, Relation rel,
                               double rhs, double tol, Certification cert, std::uint64_t seed = 0) {
  AuditRecord r;
  r.claim_id = std::move(claim_id);
  r.state = std::move(state);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = rel;
  r.margin = claim_margin(lhs, rel, rhs);
  r.tolerance = tol;
  r.verdict = verdict_for(r.margin, tol);
  r.certification = cert;
  r.seed = seed;
  return r;
}

}  // namespace purecorr
