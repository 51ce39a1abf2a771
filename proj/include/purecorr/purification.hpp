#pragma once

// Purifications of a bipartite state and the ancilla-unitary search space.

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "purecorr/info_measures.hpp"
#include "purecorr/unitary_descent.hpp"

namespace purecorr {

/// The ancilla cannot hold the purifying system.
class AncillaTooSmall : public ContractViolation {
 public:
  AncillaTooSmall(std::int64_t provided, std::int64_t required)
      : ContractViolation("ancilla dimension " + std::to_string(provided) +
                          " is too small; need d_A' * d_B' >= " + std::to_string(required)),
        required_(required) {}
  std::int64_t required() const { return required_; }

 private:
  std::int64_t required_;
};

/// Reduces `rho` to the two groups of `cut`, orders them first-group-first and
/// merges each group into a single factor: the result has dims [d_A, d_B].
inline DensityMatrix bipartite_view(const DensityMatrix& rho, const Partition& cut) {
  if (cut.size() != 2) throw ContractViolation("cut must have exactly two groups");
  cut.validate(rho.dims().size());
  const Group kept = join(cut[0], cut[1]);
  const DensityMatrix reduced =
      kept.size() == rho.dims().size() ? rho : partial_trace(rho, std::span<const int>(kept));
  // positions of the cut's parties inside the reduced state
  std::vector<int> perm;
  for (const auto& g : {cut[0], cut[1]})
    for (int party : g)
      perm.push_back(static_cast<int>(std::find(kept.begin(), kept.end(), party) - kept.begin()));
  const Matrix m = permute(reduced.matrix(), reduced.dims(), perm);
  const Dims dims{static_cast<int>(rho.dims().total_of(cut[0])),
                  static_cast<int>(rho.dims().total_of(cut[1]))};
  return DensityMatrix(m, dims);
}

/// Number of eigenvalues above the entropy cutoff.
inline int numerical_rank(const DensityMatrix& rho) {
  const auto es = hermitian_eigs(rho.matrix());
  int r = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > tolerances().eig_cutoff) ++r;
  return std::max(r, 1);
}

/// Pure state on A (x) B (x) A' (x) B' reducing to `base` on A (x) B.
struct PurificationFrame {
  DensityMatrix base;
  int rank = 0;
  int d_aprime = 1;
  int d_bprime = 1;
  PureState psi_s;

  int d_a() const { return base.dims()[0]; }
  int d_b() const { return base.dims()[1]; }
  int ancilla_dim() const { return d_aprime * d_bprime; }
  std::int64_t total_dim() const { return base.dims().total() * ancilla_dim(); }
};

/// sum_i sqrt(lambda_i) |Psi_i>_AB |i>_{A'B'}, the ancilla index i written
/// row-major over A' (x) B'. Eigenvalues below the cutoff are dropped.
inline PurificationFrame standard_purification(const DensityMatrix& rho, int d_aprime, int d_bprime) {
  if (rho.dims().size() != 2) throw ContractViolation("standard_purification expects a bipartite state");
  if (d_aprime < 1 || d_bprime < 1) throw ContractViolation("ancilla dimensions must be >= 1");
  const auto es = hermitian_eigs(rho.matrix());
  const double cut = tolerances().eig_cutoff;
  int rank = 0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    if (es.values(i) > cut) ++rank;
  rank = std::max(rank, 1);
  const std::int64_t anc = std::int64_t{d_aprime} * d_bprime;
  if (anc < rank) throw AncillaTooSmall(anc, rank);

  const auto d_ab = rho.dim();
  Vector psi = Vector::Zero(d_ab * anc);
  double norm2 = 0.0;
  for (int i = 0; i < rank; ++i) norm2 += std::max(es.values(i), 0.0);
  for (int i = 0; i < rank; ++i) {
    const double w = std::sqrt(std::max(es.values(i), 0.0) / norm2);
    for (Eigen::Index ab = 0; ab < d_ab; ++ab) psi(ab * anc + i) = w * es.vectors(ab, i);
  }
  const Dims dims{rho.dims()[0], rho.dims()[1], d_aprime, d_bprime};
  return PurificationFrame{rho, rank, d_aprime, d_bprime, PureState::normalized(psi, dims)};
}

/// Unitary on the ancilla space of a frame.
struct UnitaryParams {
  std::vector<double> theta;
};

/// exp(i H(theta)): theta holds the n diagonal entries of H, then for each
/// pair j < k the real and imaginary parts of H(j, k).
inline Operator params_to_unitary(const UnitaryParams& p, int dim) {
  if (dim < 1) throw ContractViolation("unitary dimension must be >= 1");
  if (p.theta.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
    throw ContractViolation("theta must have dim^2 entries");
  Matrix h = Matrix::Zero(dim, dim);
  std::size_t k = 0;
  for (int j = 0; j < dim; ++j) h(j, j) = p.theta[k++];
  for (int j = 0; j < dim; ++j)
    for (int l = j + 1; l < dim; ++l) {
      const cplx v(p.theta[k], p.theta[k + 1]);
      k += 2;
      h(j, l) = v;
      h(l, j) = std::conj(v);
    }
  for (double t : p.theta)
    if (!std::isfinite(t)) throw ContractViolation("theta entries must be finite");
  return Operator(exp_i_hermitian(h), Dims{dim});
}

/// S(AA') of (I (x) U)|Psi_s>, with its Riemannian gradient in U.
class PurificationObjective {
 public:
  explicit PurificationObjective(const PurificationFrame& frame) : frame_(frame) {
    const auto d_ab = frame.base.dim();
    const auto anc = frame.ancilla_dim();
    psi_ = Matrix(d_ab, anc);
    for (Eigen::Index ab = 0; ab < d_ab; ++ab)
      for (Eigen::Index j = 0; j < anc; ++j) psi_(ab, j) = frame.psi_s.amplitudes()(ab * anc + j);
  }

  Eigen::Index dimension() const { return frame_.ancilla_dim(); }

  /// Rotated purification as a (d_A d_B) x (d_A' d_B') matrix.
  Matrix rotate(const Matrix& u) const { return psi_ * u.transpose(); }

  double value(const Matrix& u) const { return entropy_of_matrix(reduced_aa(rotate(u))); }

  double value_and_gradient(const Matrix& u, Matrix& grad) const {
    const Matrix phi = rotate(u);
    const Matrix x = shuffle_to_aa(phi);
    const Matrix rho = x * x.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    const double floor = tolerances().log_floor;
    RealVector logs(es.eigenvalues().size());
    for (Eigen::Index i = 0; i < logs.size(); ++i) logs(i) = std::log(std::max(es.eigenvalues()(i), floor));
    const Matrix log_rho = es.eigenvectors() * logs.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
    const Matrix lphi = shuffle_from_aa(log_rho * x);
    // M = Tr_AB |phi><L phi| on A'B';  G = -(i/ln 2)(M - M^dagger)
    const Matrix m = phi.transpose() * lphi.conjugate();
    grad = cplx(0.0, -1.0 / std::numbers::ln2) * (m - m.adjoint());
    return spectrum_entropy(es.eigenvalues());
  }

  /// Reduced state on A (x) A' of a rotated purification.
  Matrix reduced_aa(const Matrix& phi) const {
    const Matrix x = shuffle_to_aa(phi);
    return x * x.adjoint();
  }

  const PurificationFrame& frame() const { return frame_; }

 private:
  // phi(a*dB + b, a'*dB' + b')  <->  x(a*dA' + a', b*dB' + b')
  Matrix shuffle_to_aa(const Matrix& phi) const {
    const int da = frame_.d_a(), db = frame_.d_b(), dap = frame_.d_aprime, dbp = frame_.d_bprime;
    Matrix x(da * dap, db * dbp);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        for (int ap = 0; ap < dap; ++ap)
          for (int bp = 0; bp < dbp; ++bp) x(a * dap + ap, b * dbp + bp) = phi(a * db + b, ap * dbp + bp);
    return x;
  }

  Matrix shuffle_from_aa(const Matrix& x) const {
    const int da = frame_.d_a(), db = frame_.d_b(), dap = frame_.d_aprime, dbp = frame_.d_bprime;
    Matrix phi(da * db, dap * dbp);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < db; ++b)
        for (int ap = 0; ap < dap; ++ap)
          for (int bp = 0; bp < dbp; ++bp) phi(a * db + b, ap * dbp + bp) = x(a * dap + ap, b * dbp + bp);
    return phi;
  }

  PurificationFrame frame_;
  Matrix psi_;
};

/// (I (x) U)|Psi_s> as a PureState on A (x) B (x) A' (x) B'.
inline PureState rotated_purification(const PurificationFrame& frame, const Matrix& u) {
  if (u.rows() != frame.ancilla_dim()) throw ContractViolation("unitary does not act on the ancilla");
  const PurificationObjective obj(frame);
  const Matrix phi = obj.rotate(u);
  Vector v(phi.size());
  for (Eigen::Index ab = 0; ab < phi.rows(); ++ab)
    for (Eigen::Index j = 0; j < phi.cols(); ++j) v(ab * phi.cols() + j) = phi(ab, j);
  return PureState::normalized(v, frame.psi_s.dims());
}

/// S(AA') of the purification rotated by the ancilla unitary; the quantity
/// whose minimum over unitaries is the entanglement of purification.
inline double objective_entropy(const PurificationFrame& frame, const Matrix& u) {
  if (u.rows() != frame.ancilla_dim()) throw ContractViolation("unitary does not act on the ancilla");
  return PurificationObjective(frame).value(u);
}

inline double objective_entropy(const PurificationFrame& frame, const UnitaryParams& p) {
  return objective_entropy(frame, params_to_unitary(p, frame.ancilla_dim()).matrix());
}

/// Unitary moving |0>_{A'}|i>_{B'} to |i>_{A'}|0>_{B'} (requires d_A' >= rank),
/// completed to a permutation of the ancilla basis.
inline Matrix ancilla_swap_unitary(const PurificationFrame& frame) {
  const int n = frame.ancilla_dim();
  std::vector<int> target(static_cast<std::size_t>(n), -1);
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  for (int i = 0; i < frame.rank; ++i) {
    const int to = i * frame.d_bprime;  // |i>_{A'} |0>_{B'}
    target[static_cast<std::size_t>(i)] = to;
    used[static_cast<std::size_t>(to)] = true;
  }
  int next = 0;
  for (int i = frame.rank; i < n; ++i) {
    while (used[static_cast<std::size_t>(next)]) ++next;
    target[static_cast<std::size_t>(i)] = next;
    used[static_cast<std::size_t>(next)] = true;
  }
  Matrix u = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) u(target[static_cast<std::size_t>(i)], i) = 1.0;
  return u;
}

/// Purification of rho (x) sigma assembled from the two frames, re-ordered to
/// (AC) (x) (BD) (x) (A'C') (x) (B'D').
inline PurificationFrame tensor_frames(const PurificationFrame& f1, const PurificationFrame& f2) {
  // f1: A B A' B' ; f2: C D C' D'  -> product order A B A' B' C D C' D'
  const PureState joint = tensor(f1.psi_s, f2.psi_s);
  const std::vector<int> perm{0, 4, 1, 5, 2, 6, 3, 7};
  const PureState ordered = permute(joint, perm);
  const Dims dims{f1.d_a() * f2.d_a(), f1.d_b() * f2.d_b(), f1.d_aprime * f2.d_aprime,
                  f1.d_bprime * f2.d_bprime};
  const DensityMatrix base_prod = tensor(f1.base, f2.base);  // A B C D
  const std::vector<int> base_perm{0, 2, 1, 3};
  const DensityMatrix base(permute(base_prod.matrix(), base_prod.dims(), base_perm), Dims{dims[0], dims[1]});
  return PurificationFrame{base, f1.rank * f2.rank, dims[2], dims[3], PureState(ordered.amplitudes(), dims)};
}

/// Ancilla unitary U1 (x) U2 of a tensor_frames product, expressed in the
/// joint ancilla ordering (A'C') (x) (B'D').
inline Matrix tensor_ancilla_unitaries(const PurificationFrame& f1, const PurificationFrame& f2,
                                       const Matrix& u1, const Matrix& u2) {
  const Dims dims{f1.d_aprime, f1.d_bprime, f2.d_aprime, f2.d_bprime};
  const std::vector<int> perm{0, 2, 1, 3};
  return permute(kron(u1, u2), dims, perm);
}

/// Pure state on the parties of `rho` plus one purifying party of dimension
/// rank(rho), appended last.
inline PureState purify(const DensityMatrix& rho) {
  const auto es = hermitian_eigs(rho.matrix());
  const int rank = numerical_rank(rho);
  Vector v = Vector::Zero(rho.dim() * rank);
  for (int i = 0; i < rank; ++i) {
    const double w = std::sqrt(std::max(es.values(i), 0.0));
    for (Eigen::Index k = 0; k < rho.dim(); ++k) v(k * rank + i) = w * es.vectors(k, i);
  }
  return PureState::normalized(v, rho.dims().concat(Dims{rank}));
}

}  // namespace purecorr
