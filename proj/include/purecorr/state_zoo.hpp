#pragma once

// Named states and state families.

#include <cmath>
#include <string>
#include <vector>

#include "purecorr/tensor_core.hpp"

namespace purecorr {

/// Serializable identity of a constructed state.
struct StateDescriptor {
  std::string family = "custom";
  std::vector<double> params;
  int n_parties = 0;
  Dims dims;
};

inline constexpr int kMaxQubitParties = 10;

namespace detail {

inline void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ContractViolation(std::string(name) + " must lie in [0, 1]");
}

inline void check_sign(int sign) {
  if (sign != 1 && sign != -1) throw ContractViolation("sign must be +1 or -1");
}

inline void check_qubit_parties(int n, int min_n) {
  if (n < min_n || n > kMaxQubitParties)
    throw ContractViolation("number of qubits must be in [" + std::to_string(min_n) + ", " +
                            std::to_string(kMaxQubitParties) + "]");
}

inline Dims qubits(int n) { return Dims(std::vector<int>(static_cast<std::size_t>(n), 2)); }

inline Matrix basis_projector(std::int64_t dim, std::int64_t index) {
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1.0;
  return m;
}

}  // namespace detail

/// sqrt(a)|0...0> + sign sqrt(1-a)|1...1>.
inline PureState ghz_generalized(int n, double a, int sign = 1) {
  detail::check_qubit_parties(n, 2);
  detail::check_probability(a, "a");
  detail::check_sign(sign);
  const auto dims = detail::qubits(n);
  Vector v = Vector::Zero(dims.total());
  v(0) = std::sqrt(a);
  v(dims.total() - 1) = static_cast<double>(sign) * std::sqrt(1.0 - a);
  return PureState(v, dims);
}

/// Uniform superposition of the n weight-one basis states.
inline PureState w_state(int n) {
  detail::check_qubit_parties(n, 2);
  const auto dims = detail::qubits(n);
  Vector v = Vector::Zero(dims.total());
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k < n; ++k) v(std::int64_t{1} << k) = amp;
  return PureState(v, dims);
}

inline PureState bell_state() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(v, Dims{2, 2});
}

/// (|01> - |10>)/sqrt(2).
inline PureState singlet_state() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return PureState(v, Dims{2, 2});
}

inline PureState basis_state(const Dims& dims, std::int64_t index) {
  Vector v = Vector::Zero(dims.total());
  v(index) = 1.0;
  return PureState(v, dims);
}

/// p|W><W| + (1-p)[a|000><000| + (1-a)|111><111|].
inline DensityMatrix fig1_family(double p, double a) {
  detail::check_probability(p, "p");
  detail::check_probability(a, "a");
  const auto w = w_state(3).amplitudes();
  Matrix m = p * (w * w.adjoint()) +
             (1.0 - p) * (a * detail::basis_projector(8, 0) + (1.0 - a) * detail::basis_projector(8, 7));
  return DensityMatrix(std::move(m), detail::qubits(3));
}

/// p|W><W| + (1-p) I/8.
inline DensityMatrix fig2_family(double p) {
  detail::check_probability(p, "p");
  const auto w = w_state(3).amplitudes();
  Matrix m = p * (w * w.adjoint()) + (1.0 - p) / 8.0 * Matrix::Identity(8, 8);
  return DensityMatrix(std::move(m), detail::qubits(3));
}

/// p|GHZ_n^(+/-)><GHZ_n^(+/-)| + (1-p)[b|0..0><0..0| + (1-b)|1..1><1..1|],
/// with the generalized GHZ weight a.
inline DensityMatrix ghz_mixture(double p, double a, double b, int sign = 1, int n = 3) {
  detail::check_probability(p, "p");
  detail::check_probability(b, "b");
  const auto g = ghz_generalized(n, a, sign).amplitudes();
  const auto d = g.size();
  Matrix m = p * (g * g.adjoint()) +
             (1.0 - p) * (b * detail::basis_projector(d, 0) + (1.0 - b) * detail::basis_projector(d, d - 1));
  return DensityMatrix(std::move(m), detail::qubits(n));
}

/// p|GHZ^+><GHZ^+| + (1-p)|GHZ^-><GHZ^-|, both with weight a.
inline DensityMatrix ghz_sign_mixture(double p, double a, int n = 3) {
  detail::check_probability(p, "p");
  const auto plus = ghz_generalized(n, a, 1).amplitudes();
  const auto minus = ghz_generalized(n, a, -1).amplitudes();
  Matrix m = p * (plus * plus.adjoint()) + (1.0 - p) * (minus * minus.adjoint());
  return DensityMatrix(std::move(m), detail::qubits(n));
}

/// rho_L (x) |psi_RB><psi_RB| on dims [L, R, B]. With the cut {L,R}:{B} the
/// state meets the Araki-Lieb equality S(A) - S(B) = S(AB).
inline DensityMatrix araki_lieb_state(const DensityMatrix& rho_l, const PureState& psi_rb) {
  if (psi_rb.dims().size() != 2) throw ContractViolation("psi_RB must be bipartite");
  const Dims l{static_cast<int>(rho_l.dim())};
  const DensityMatrix left(rho_l.matrix(), l);
  return tensor(left, projector(psi_rb));
}

/// Direct sum  (+)_j q_j rho_{A b_j^L} (x) rho_{b_j^R C}, embedded block-diagonally
/// in a single B space of dimension sum_j dim(b_j^L) dim(b_j^R). Dims are [A, B, C].
inline DensityMatrix ssa_equality_state(const std::vector<double>& weights,
                                        const std::vector<DensityMatrix>& left_blocks,
                                        const std::vector<DensityMatrix>& right_blocks) {
  if (weights.empty() || weights.size() != left_blocks.size() || weights.size() != right_blocks.size())
    throw ContractViolation("ssa_equality_state: weights and block lists must have equal, nonzero length");
  double total = 0.0;
  for (double q : weights) {
    detail::check_probability(q, "weight");
    total += q;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ContractViolation("ssa_equality_state: weights must sum to 1");

  const int d_a = left_blocks.front().dims()[0];
  const int d_c = right_blocks.front().dims().factors().back();
  int d_b = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const auto& l = left_blocks[j].dims();
    const auto& r = right_blocks[j].dims();
    if (l.size() != 2 || r.size() != 2)
      throw ContractViolation("ssa_equality_state: blocks must be bipartite");
    if (l[0] != d_a || r[1] != d_c)
      throw ContractViolation("ssa_equality_state: block " + std::to_string(j) +
                              " disagrees with the A or C dimension");
    d_b += l[1] * r[0];
  }

  const Dims dims{d_a, d_b, d_c};
  const auto n = dims.total();
  Matrix m = Matrix::Zero(n, n);
  int offset = 0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    const int dl = left_blocks[j].dims()[1];
    const int dr = right_blocks[j].dims()[0];
    const Matrix& lm = left_blocks[j].matrix();
    const Matrix& rm = right_blocks[j].matrix();
    auto flat = [&](int a, int l, int r, int c) {
      const int b = offset + l * dr + r;
      return (static_cast<std::int64_t>(a) * d_b + b) * d_c + c;
    };
    for (int a = 0; a < d_a; ++a)
      for (int l = 0; l < dl; ++l)
        for (int r = 0; r < dr; ++r)
          for (int c = 0; c < d_c; ++c)
            for (int a2 = 0; a2 < d_a; ++a2)
              for (int l2 = 0; l2 < dl; ++l2)
                for (int r2 = 0; r2 < dr; ++r2)
                  for (int c2 = 0; c2 < d_c; ++c2)
                    m(flat(a, l, r, c), flat(a2, l2, r2, c2)) +=
                        weights[j] * lm(a * dl + l, a2 * dl + l2) * rm(r * d_c + c, r2 * d_c + c2);
    offset += dl * dr;
  }
  return DensityMatrix(std::move(m), dims);
}

/// p|Psi^-><Psi^-| + (1-p) I/4.
inline DensityMatrix werner_2qubit(double p) {
  detail::check_probability(p, "p");
  const auto s = singlet_state().amplitudes();
  Matrix m = p * (s * s.adjoint()) + (1.0 - p) / 4.0 * Matrix::Identity(4, 4);
  return DensityMatrix(std::move(m), Dims{2, 2});
}

/// Swaps two subsystems of a state.
inline DensityMatrix swap_parties(const DensityMatrix& rho, int i, int j) {
  std::vector<int> perm(rho.dims().size());
  for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
  std::swap(perm.at(static_cast<std::size_t>(i)), perm.at(static_cast<std::size_t>(j)));
  return permute(rho, perm);
}

}  // namespace purecorr
