#pragma once

// Steepest descent on the unitary group U(n).
//
// An objective maps a unitary U to a real value and supplies its Riemannian
// gradient: the Hermitian G with
//
//     d/de f(exp(i e H) U) |_{e=0} = Re Tr(H G)   for every Hermitian H.
//
// Steps move along the geodesic U(t) = exp(-i t G) U with Armijo backtracking,
// so accepted values never increase.

#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>
#include <vector>

#include "purecorr/tensor_core.hpp"

namespace purecorr {

template <class F>
concept UnitaryObjective = requires(const F& f, const Matrix& u, Matrix& g) {
  { f.value(u) } -> std::convertible_to<double>;
  { f.value_and_gradient(u, g) } -> std::convertible_to<double>;
  { f.dimension() } -> std::convertible_to<Eigen::Index>;
};

enum class GradientMode { analytic, central_difference };

struct DescentOptions {
  int max_iterations = 2000;
  double objective_tolerance = 1e-9;
  GradientMode mode = GradientMode::analytic;
  double fd_step = 1e-5;
  double initial_step = 0.5;
  double armijo = 1e-4;
  int max_backtracks = 60;
};

struct DescentResult {
  Matrix unitary;
  double start_value = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// exp(i H) for Hermitian H.
inline Matrix exp_i_hermitian(const Matrix& h, double scale = 1.0) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Eigen::Index n = h.rows();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::polar(1.0, scale * es.eigenvalues()(k));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

/// Frobenius-orthonormal basis of the Hermitian n x n matrices (n^2 elements).
inline std::vector<Matrix> hermitian_basis(Eigen::Index n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  const double r = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(n, n);
    e(j, j) = 1.0;
    basis.push_back(std::move(e));
  }
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = j + 1; k < n; ++k) {
      Matrix re = Matrix::Zero(n, n);
      re(j, k) = re(k, j) = r;
      basis.push_back(std::move(re));
      Matrix im = Matrix::Zero(n, n);
      im(j, k) = cplx(0.0, r);
      im(k, j) = cplx(0.0, -r);
      basis.push_back(std::move(im));
    }
  return basis;
}

/// Riemannian gradient from central differences along every basis direction.
template <UnitaryObjective F>
Matrix central_difference_gradient(const F& f, const Matrix& u, double step) {
  const Eigen::Index n = u.rows();
  Matrix g = Matrix::Zero(n, n);
  for (const auto& h : hermitian_basis(n)) {
    const double plus = f.value(exp_i_hermitian(h, step) * u);
    const double minus = f.value(exp_i_hermitian(h, -step) * u);
    g += ((plus - minus) / (2.0 * step)) * h;
  }
  return g;
}

template <UnitaryObjective F>
double evaluate_with_gradient(const F& f, const Matrix& u, Matrix& g, const DescentOptions& opt) {
  if (opt.mode == GradientMode::analytic) return f.value_and_gradient(u, g);
  g = central_difference_gradient(f, u, opt.fd_step);
  return f.value(u);
}

template <UnitaryObjective F>
DescentResult descend(const F& f, Matrix start, const DescentOptions& opt) {
  DescentResult out;
  out.unitary = std::move(start);
  Matrix g;
  double value = evaluate_with_gradient(f, out.unitary, g, opt);
  out.start_value = value;
  double step = opt.initial_step;

  for (out.iterations = 0; out.iterations < opt.max_iterations; ++out.iterations) {
    const double g2 = g.squaredNorm();
    if (!(g2 > 1e-24)) {
      out.converged = true;
      break;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (g + g.adjoint()));
    const Matrix& vecs = es.eigenvectors();
    const Matrix rotated = vecs.adjoint() * out.unitary;

    // keep every eigenphase of the step below pi/2 so the geodesic cannot wrap
    const double lam_max = es.eigenvalues().cwiseAbs().maxCoeff();
    double t = std::min(step, 0.5 * std::numbers::pi / lam_max);
    double trial_value = std::numeric_limits<double>::infinity();
    Matrix trial;
    bool accepted = false;
    for (int k = 0; k < opt.max_backtracks; ++k, t *= 0.5) {
      Vector phases(g.rows());
      for (Eigen::Index i = 0; i < g.rows(); ++i)
        phases(i) = std::polar(1.0, -t * es.eigenvalues()(i));
      trial = vecs * phases.asDiagonal() * rotated;
      trial_value = f.value(trial);
      if (trial_value <= value - opt.armijo * t * g2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      out.converged = true;
      break;
    }
    const double improvement = value - trial_value;
    out.unitary = std::move(trial);
    value = evaluate_with_gradient(f, out.unitary, g, opt);
    step = 2.0 * t;
    if (improvement < opt.objective_tolerance) {
      out.converged = true;
      ++out.iterations;
      break;
    }
  }
  out.value = value;
  return out;
}

}  // namespace purecorr
