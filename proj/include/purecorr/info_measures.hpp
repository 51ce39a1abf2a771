#pragma once

// Entropic functionals. All entropies are in bits.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "purecorr/tensor_core.hpp"

namespace purecorr {

using Group = std::vector<int>;

/// Disjoint groups of subsystem indices, e.g. the cut A:BC is {{0},{1,2}}.
struct Partition {
  std::vector<Group> groups;

  Partition() = default;
  Partition(std::initializer_list<Group> g) : groups(g) {}
  explicit Partition(std::vector<Group> g) : groups(std::move(g)) {}

  std::size_t size() const { return groups.size(); }
  const Group& operator[](std::size_t i) const { return groups.at(i); }

  void validate(std::size_t n_subsystems) const {
    std::vector<int> seen;
    for (const auto& g : groups) {
      if (g.empty()) throw ContractViolation("partition group is empty");
      for (int i : g) {
        if (i < 0 || static_cast<std::size_t>(i) >= n_subsystems)
          throw ContractViolation("partition index " + std::to_string(i) + " out of range");
        if (std::find(seen.begin(), seen.end(), i) != seen.end())
          throw ContractViolation("partition groups are not disjoint");
        seen.push_back(i);
      }
    }
  }

  /// "A:BC" style label, party k printed as the k-th capital letter.
  std::string label() const {
    std::string s;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (g) s += ":";
      for (int i : groups[g]) s += static_cast<char>('A' + i);
    }
    return s;
  }
};

inline Group join(const Group& a, const Group& b) {
  Group g = a;
  g.insert(g.end(), b.begin(), b.end());
  std::sort(g.begin(), g.end());
  return g;
}

inline double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Shannon entropy of a spectrum; entries below the cutoff contribute nothing.
inline double spectrum_entropy(const RealVector& eigenvalues) {
  const double cut = tolerances().eig_cutoff;
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double l = eigenvalues(i);
    if (l > cut) s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

inline double entropy_of_matrix(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues());
}

inline double entropy(const DensityMatrix& rho) { return entropy_of_matrix(rho.matrix()); }

/// S of the reduced state on `group` (all subsystems when the group lists them all).
inline double entropy(const DensityMatrix& rho, const Group& group) {
  if (group.size() == rho.dims().size()) return entropy(rho);
  return entropy_of_matrix(partial_trace(rho.matrix(), rho.dims(), group));
}

inline double mutual_information(const DensityMatrix& rho, const Group& a, const Group& b) {
  return entropy(rho, a) + entropy(rho, b) - entropy(rho, join(a, b));
}

inline double mutual_information(const DensityMatrix& rho, const Partition& cut) {
  if (cut.size() != 2) throw ContractViolation("mutual_information needs exactly two groups");
  cut.validate(rho.dims().size());
  return mutual_information(rho, cut[0], cut[1]);
}

/// S(target | given) = S(target given) - S(given).
inline double conditional_entropy(const DensityMatrix& rho, const Group& target, const Group& given) {
  Partition({target, given}).validate(rho.dims().size());
  return entropy(rho, join(target, given)) - entropy(rho, given);
}

/// S(AB)+S(BC)+S(AC)-S(A)-S(B)-S(C)-S(ABC); negative values mean the
/// mutual information is polygamous on this state.
inline double interaction_information(const DensityMatrix& rho, const Partition& parts) {
  if (parts.size() != 3) throw ContractViolation("interaction_information needs three groups");
  parts.validate(rho.dims().size());
  const auto& a = parts[0];
  const auto& b = parts[1];
  const auto& c = parts[2];
  return entropy(rho, join(a, b)) + entropy(rho, join(b, c)) + entropy(rho, join(a, c)) -
         entropy(rho, a) - entropy(rho, b) - entropy(rho, c) - entropy(rho, join(join(a, b), c));
}

/// I'(A>B) = S(B) - S(AB) for the cut {A, B}.
inline double coherent_information(const DensityMatrix& rho, const Partition& cut) {
  if (cut.size() != 2) throw ContractViolation("coherent_information needs exactly two groups");
  cut.validate(rho.dims().size());
  return entropy(rho, cut[1]) - entropy(rho, join(cut[0], cut[1]));
}

/// Wootters concurrence of a two-qubit state.
inline double concurrence_2qubit(const DensityMatrix& rho) {
  if (rho.dim() != 4)
    throw ContractViolation("concurrence requires a 2x2 state");
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Matrix& r = rho.matrix();
  // the R eigenvalues are the singular values of sqrt(r) yy conj(sqrt(r));
  // taking them directly avoids square roots of near-zero eigenvalues
  const auto es = hermitian_eigs(r);
  RealVector sq = es.values.cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt_r = es.vectors * sq.cast<cplx>().asDiagonal() * es.vectors.adjoint();
  const Matrix m = sqrt_r * yy * sqrt_r.conjugate();
  Eigen::JacobiSVD<Matrix> svd(m);
  std::vector<double> lam(4);
  for (int i = 0; i < 4; ++i) lam[static_cast<std::size_t>(i)] = svd.singularValues()(i);
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

inline double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy((1.0 + std::sqrt(1.0 - c * c)) / 2.0);
}

/// Entanglement of formation of a two-qubit state (ebits).
inline double eof_2qubit(const DensityMatrix& rho) {
  if (rho.dims().size() != 2 || rho.dims()[0] != 2 || rho.dims()[1] != 2)
    throw ContractViolation("eof_2qubit requires dims 2x2");
  return eof_from_concurrence(concurrence_2qubit(rho));
}

/// E_cq = E_p - E_f.
inline double e_cq(double ep_value, double ef_value) {
  if (!std::isfinite(ep_value) || !std::isfinite(ef_value))
    throw ContractViolation("e_cq inputs must be finite");
  return ep_value - ef_value;
}

}  // namespace purecorr
