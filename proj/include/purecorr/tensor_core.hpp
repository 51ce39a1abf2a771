#pragma once

// Dense complex linear algebra on multipartite Hilbert spaces.
//
// Subsystem ordering is row-major throughout: the leftmost factor of a Dims
// is the most significant digit of a flat basis index.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "purecorr/config.hpp"

namespace purecorr {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Ordered subsystem dimensions of a tensor-product space.
class Dims {
 public:
  Dims() = default;
  Dims(std::initializer_list<int> factors) : factors_(factors) { check(); }
  explicit Dims(std::vector<int> factors) : factors_(std::move(factors)) { check(); }

  std::size_t size() const { return factors_.size(); }
  int operator[](std::size_t i) const { return factors_.at(i); }
  const std::vector<int>& factors() const { return factors_; }

  std::int64_t total() const {
    std::int64_t t = 1;
    for (int f : factors_) t *= f;
    return t;
  }

  /// Product of the factors named by `indices`.
  std::int64_t total_of(std::span<const int> indices) const {
    std::int64_t t = 1;
    for (int i : indices) t *= factors_.at(static_cast<std::size_t>(i));
    return t;
  }

  Dims subset(std::span<const int> indices) const {
    std::vector<int> f;
    f.reserve(indices.size());
    for (int i : indices) f.push_back(factors_.at(static_cast<std::size_t>(i)));
    return Dims(std::move(f));
  }

  Dims concat(const Dims& other) const {
    std::vector<int> f = factors_;
    f.insert(f.end(), other.factors_.begin(), other.factors_.end());
    return Dims(std::move(f));
  }

  bool operator==(const Dims&) const = default;

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (i) s += "x";
      s += std::to_string(factors_[i]);
    }
    return s;
  }

 private:
  void check() const {
    for (int f : factors_)
      if (f < 1) throw ContractViolation("subsystem dimension must be >= 1");
  }
  std::vector<int> factors_;
};

/// Square complex matrix tagged with its tensor factorization.
class Operator {
 public:
  Operator() = default;
  Operator(Matrix m, Dims dims) : m_(std::move(m)), dims_(std::move(dims)) {
    if (m_.rows() != m_.cols())
      throw ContractViolation("operator must be square");
    if (m_.rows() != dims_.total())
      throw ContractViolation("operator shape " + std::to_string(m_.rows()) +
                              " does not match dims " + dims_.to_string());
  }

  const Matrix& matrix() const { return m_; }
  const Dims& dims() const { return dims_; }
  Eigen::Index dim() const { return m_.rows(); }

  static Operator identity(const Dims& dims) {
    return Operator(Matrix::Identity(dims.total(), dims.total()), dims);
  }

 private:
  Matrix m_;
  Dims dims_;
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_error(const Matrix& m) {
  return max_abs(m - m.adjoint());
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct EigenSystem {
  RealVector values;
  Matrix vectors;
};

inline EigenSystem hermitian_eigs(const Matrix& m) {
  if (m.rows() != m.cols()) throw ContractViolation("hermitian_eigs: matrix not square");
  if (hermiticity_error(m) > tolerances().eig_input)
    throw ContractViolation("hermitian_eigs: matrix is not Hermitian");
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::Index n = m.rows();
  EigenSystem out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

inline EigenSystem hermitian_eigs(const Operator& op) { return hermitian_eigs(op.matrix()); }

/// Hermitian, positive semidefinite, unit-trace operator.
class DensityMatrix {
 public:
  DensityMatrix() = default;

  /// Validates the invariants; throws ContractViolation naming the failed one.
  explicit DensityMatrix(Operator op) : op_(std::move(op)) { validate(op_.matrix()); }
  DensityMatrix(Matrix m, Dims dims) : DensityMatrix(Operator(std::move(m), std::move(dims))) {}

  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  const Dims& dims() const { return op_.dims(); }
  Eigen::Index dim() const { return op_.dim(); }

  static DensityMatrix maximally_mixed(const Dims& dims) {
    const auto d = dims.total();
    return DensityMatrix(Matrix::Identity(d, d) / static_cast<double>(d), dims);
  }

  /// Reason the matrix fails the invariants, or an empty string.
  static std::string invariant_failure(const Matrix& m) {
    const auto& tol = tolerances();
    if (m.rows() != m.cols()) return "square";
    if (hermiticity_error(m) > tol.hermiticity) return "Hermiticity";
    if (std::abs(m.trace() - cplx(1.0, 0.0)) > tol.trace) return "trace";
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (m.rows() > 0 && es.eigenvalues().minCoeff() < -tol.psd) return "positivity";
    return {};
  }

 private:
  static void validate(const Matrix& m) {
    const auto why = invariant_failure(m);
    if (!why.empty()) throw ContractViolation("density matrix violates " + why);
  }
  Operator op_;
};

/// Unit-norm state vector tagged with its tensor factorization.
class PureState {
 public:
  PureState() = default;
  PureState(Vector amps, Dims dims) : amps_(std::move(amps)), dims_(std::move(dims)) {
    if (amps_.size() != dims_.total())
      throw ContractViolation("amplitude count does not match dims " + dims_.to_string());
    if (std::abs(amps_.squaredNorm() - 1.0) > tolerances().pure_norm)
      throw ContractViolation("pure state is not normalized");
  }

  /// Normalizes `amps` before construction.
  static PureState normalized(Vector amps, Dims dims) {
    const double n = amps.norm();
    if (n == 0.0) throw ContractViolation("cannot normalize the zero vector");
    return PureState(amps / n, std::move(dims));
  }

  const Vector& amplitudes() const { return amps_; }
  const Dims& dims() const { return dims_; }

 private:
  Vector amps_;
  Dims dims_;
};

namespace detail {

inline std::vector<std::int64_t> strides(const Dims& dims) {
  std::vector<std::int64_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Flat offsets contributed by every multi-index over `indices`, enumerated in
// row-major order of the listed subsystems.
inline std::vector<std::int64_t> offsets(const Dims& dims, std::span<const int> indices) {
  const auto st = strides(dims);
  std::vector<std::int64_t> out{0};
  for (int idx : indices) {
    const auto k = static_cast<std::size_t>(idx);
    std::vector<std::int64_t> next;
    next.reserve(out.size() * static_cast<std::size_t>(dims[k]));
    for (auto base : out)
      for (int v = 0; v < dims[k]; ++v) next.push_back(base + v * st[k]);
    out = std::move(next);
  }
  return out;
}

inline std::vector<int> normalize_keep(std::span<const int> keep, std::size_t n) {
  std::vector<int> k(keep.begin(), keep.end());
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  for (int i : k)
    if (i < 0 || static_cast<std::size_t>(i) >= n)
      throw ContractViolation("subsystem index " + std::to_string(i) + " out of range");
  return k;
}

inline std::vector<int> complement(std::span<const int> keep, std::size_t n) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(n); ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) out.push_back(i);
  return out;
}

inline void check_permutation(std::span<const int> perm, std::size_t n) {
  if (perm.size() != n) throw ContractViolation("permutation has wrong length");
  std::vector<int> p(perm.begin(), perm.end());
  std::sort(p.begin(), p.end());
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] != static_cast<int>(i)) throw ContractViolation("not a permutation");
}

}  // namespace detail

/// Kronecker product; the factor lists concatenate.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

inline Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()), a.dims().concat(b.dims()));
}

inline DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(tensor(a.op(), b.op()));
}

inline PureState tensor(const PureState& a, const PureState& b) {
  return PureState::normalized(kron(a.amplitudes(), b.amplitudes()),
                               a.dims().concat(b.dims()));
}

/// Reorders subsystems: factor k of the result is factor perm[k] of the input.
inline std::vector<std::int64_t> permutation_map(const Dims& dims, std::span<const int> perm) {
  detail::check_permutation(perm, dims.size());
  return detail::offsets(dims, perm);
}

inline Matrix permute(const Matrix& m, const Dims& dims, std::span<const int> perm) {
  const auto map = permutation_map(dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  Matrix out(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) out(i, j) = m(map[i], map[j]);
  return out;
}

inline Operator permute(const Operator& op, std::span<const int> perm) {
  return Operator(permute(op.matrix(), op.dims(), perm), op.dims().subset(perm));
}

inline DensityMatrix permute(const DensityMatrix& rho, std::span<const int> perm) {
  return DensityMatrix(permute(rho.op(), perm));
}

inline PureState permute(const PureState& psi, std::span<const int> perm) {
  const auto map = permutation_map(psi.dims(), perm);
  Vector out(static_cast<Eigen::Index>(map.size()));
  for (std::size_t i = 0; i < map.size(); ++i)
    out(static_cast<Eigen::Index>(i)) = psi.amplitudes()(map[i]);
  return PureState(std::move(out), psi.dims().subset(perm));
}

/// Same matrix, coarser factorization: consecutive factors are merged into
/// groups of the given sizes (sizes count factors, not dimensions).
inline Dims merge_factors(const Dims& dims, std::span<const int> group_sizes) {
  std::vector<int> f;
  std::size_t pos = 0;
  for (int g : group_sizes) {
    int d = 1;
    for (int k = 0; k < g; ++k) d *= dims[pos++];
    f.push_back(d);
  }
  if (pos != dims.size()) throw ContractViolation("merge_factors: group sizes do not cover dims");
  return Dims(std::move(f));
}

inline Matrix partial_trace(const Matrix& m, const Dims& dims, std::span<const int> keep) {
  const auto k = detail::normalize_keep(keep, dims.size());
  const auto traced = detail::complement(k, dims.size());
  const auto ko = detail::offsets(dims, k);
  const auto to = detail::offsets(dims, traced);
  const auto n = static_cast<Eigen::Index>(ko.size());
  Matrix out = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      cplx s = 0.0;
      for (auto t : to) s += m(ko[i] + t, ko[j] + t);
      out(i, j) = s;
    }
  return out;
}

/// Reduced operator on the kept subsystems, in their original order.
inline Operator partial_trace(const Operator& op, std::span<const int> keep) {
  const auto k = detail::normalize_keep(keep, op.dims().size());
  return Operator(partial_trace(op.matrix(), op.dims(), k), op.dims().subset(k));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep) {
  return DensityMatrix(partial_trace(rho.op(), keep));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

/// Reduced density matrix of a pure state, computed as M M^dagger.
inline Matrix reduced_matrix(const Vector& amps, const Dims& dims, std::span<const int> keep) {
  const auto k = detail::normalize_keep(keep, dims.size());
  const auto traced = detail::complement(k, dims.size());
  const auto ko = detail::offsets(dims, k);
  const auto to = detail::offsets(dims, traced);
  Matrix m(static_cast<Eigen::Index>(ko.size()), static_cast<Eigen::Index>(to.size()));
  for (std::size_t i = 0; i < ko.size(); ++i)
    for (std::size_t t = 0; t < to.size(); ++t)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(t)) = amps(ko[i] + to[t]);
  return m * m.adjoint();
}

inline DensityMatrix reduced_state(const PureState& psi, std::span<const int> keep) {
  const auto k = detail::normalize_keep(keep, psi.dims().size());
  return DensityMatrix(reduced_matrix(psi.amplitudes(), psi.dims(), k), psi.dims().subset(k));
}

inline DensityMatrix projector(const PureState& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.dims());
}

inline double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

/// U rho U^dagger.
inline DensityMatrix conjugate(const DensityMatrix& rho, const Matrix& u) {
  Matrix m = u * rho.matrix() * u.adjoint();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(m), rho.dims());
}

// ---------------------------------------------------------------------------
// Seeded sampling

/// Stable 64-bit seed for stream `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer applied to a combined key
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + index + 0x632BE59BD9B4E019ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

inline Matrix ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = n(rng);
      const double im = n(rng);
      g(i, j) = cplx(re, im);
    }
  return g;
}

/// Haar-distributed unitary from a phase-corrected QR of a Ginibre matrix.
inline Matrix haar_unitary(int dim, Rng& rng) {
  if (dim < 1) throw ContractViolation("haar_random_unitary: dim must be >= 1");
  const Matrix g = ginibre(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dim; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0 ? d / a : cplx(1.0, 0.0));
  }
  return q;
}

inline Operator haar_random_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return Operator(haar_unitary(dim, rng), Dims{dim});
}

/// Induced-measure density matrix G G^dagger / Tr(G G^dagger), G of width `rank`.
inline DensityMatrix random_density_matrix(const Dims& dims, int rank, std::uint64_t seed) {
  const auto d = dims.total();
  if (rank < 1 || rank > d)
    throw ContractViolation("random_density_matrix: rank must be in [1, " + std::to_string(d) + "]");
  Rng rng(seed);
  const Matrix g = ginibre(d, rank, rng);
  Matrix m = g * g.adjoint();
  m /= m.trace().real();
  m = 0.5 * (m + m.adjoint());
  return DensityMatrix(std::move(m), dims);
}

inline PureState random_pure_state(const Dims& dims, std::uint64_t seed) {
  Rng rng(seed);
  return PureState::normalized(ginibre(dims.total(), 1, rng).col(0), dims);
}

}  // namespace purecorr
