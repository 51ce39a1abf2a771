#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace purecorr {

inline constexpr const char* kVersion = "0.1.0";

/// Numerical tolerances shared by every module.
///
/// A single process-wide instance is returned by tolerances(); the CLI
/// overrides fields once at start-up, before any computation runs.
struct Tolerances {
  double hermiticity = 1e-10;     // max |rho - rho^dagger| entry for a DensityMatrix
  double psd = 1e-10;             // smallest admissible eigenvalue is -psd
  double trace = 1e-10;           // |Tr rho - 1|
  double pure_norm = 1e-12;       // | <psi|psi> - 1 |
  double eig_input = 1e-8;        // Hermiticity demanded by hermitian_eigs
  double eig_cutoff = 1e-12;      // eigenvalues below this drop out of entropy sums
  double log_floor = 1e-13;       // eigenvalue floor when forming log(rho) for gradients
  double structure = 1e-9;        // exact-structure detection (Araki-Lieb, SSA, symmetry)
  double bracket = 1e-9;          // slack in bracket sandwich checks
  double analytic_audit = 1e-9;   // verdict tolerance of analytic audits
  double stacked_audit = 5e-3;    // verdict tolerance when two optimizer outputs combine
};

inline Tolerances& tolerances() {
  static Tolerances t;
  return t;
}

/// Largest admissible pure-state dimension d_A d_B d_A' d_B' (or the channel
/// dilation size). PURECORR_MAX_DIM overrides the default of 2^14.
inline std::int64_t max_dimension() {
  if (const char* env = std::getenv("PURECORR_MAX_DIM")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return std::int64_t{1} << 14;
}

/// A precondition of an operation was not met.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The requested computation exceeds the configured dimension cap.
class DimensionCapExceeded : public std::runtime_error {
 public:
  DimensionCapExceeded(std::int64_t requested, std::int64_t cap)
      : std::runtime_error("dimension " + std::to_string(requested) +
                           " exceeds cap " + std::to_string(cap) +
                           " (set PURECORR_MAX_DIM to raise it)"),
        requested_(requested),
        cap_(cap) {}
  std::int64_t requested() const { return requested_; }
  std::int64_t cap() const { return cap_; }

 private:
  std::int64_t requested_;
  std::int64_t cap_;
};

inline void check_dimension_cap(std::int64_t requested) {
  const auto cap = max_dimension();
  if (requested > cap) throw DimensionCapExceeded(requested, cap);
}

}  // namespace purecorr
