#include <gtest/gtest.h>

#include "purecorr/dense_coding.hpp"

using namespace purecorr;

namespace {

// Squared distance to a fixed unitary, minimum 0 at the target.
struct Quadratic {
  Matrix target;
  double value(const Matrix& u) const { return (u - target).squaredNorm(); }
  double value_and_gradient(const Matrix& u, Matrix& g) const {
    g = central_difference_gradient(*this, u, 1e-6);
    return value(u);
  }
  Eigen::Index dimension() const { return target.rows(); }
};

}  // namespace

TEST(ExpIHermitian, MatchesUnitaryAndInverse) {
  const auto h = hermitian_basis(3)[4];
  const Matrix u = exp_i_hermitian(h, 0.7);
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(3, 3)), 1e-12);
  EXPECT_LT(max_abs(u * exp_i_hermitian(h, -0.7) - Matrix::Identity(3, 3)), 1e-12);
}

TEST(HermitianBasis, OrthonormalAndComplete) {
  const auto b = hermitian_basis(3);
  ASSERT_EQ(b.size(), 9u);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      EXPECT_NEAR((b[i].adjoint() * b[j]).trace().real(), i == j ? 1.0 : 0.0, 1e-14);
}

TEST(Descend, ReachesTargetUnitaryAndIsMonotone) {
  const Quadratic f{haar_random_unitary(3, 5).matrix()};
  DescentOptions opt;
  opt.objective_tolerance = 1e-14;
  const auto res = descend(f, Matrix::Identity(3, 3), opt);
  EXPECT_LE(res.value, res.start_value);
  EXPECT_LT(res.value, 1e-8);
  EXPECT_LT(max_abs(res.unitary.adjoint() * res.unitary - Matrix::Identity(3, 3)), 1e-10);
}

TEST(AnalyticGradient, PurificationMatchesCentralDifference) {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto rho = random_density_matrix(Dims{2, 2}, 3, 80 + s);
    const auto frame = standard_purification(rho, 2, 2);
    const PurificationObjective obj(frame);
    const Matrix u = haar_random_unitary(4, 90 + s).matrix();
    Matrix g;
    obj.value_and_gradient(u, g);
    const Matrix cd = central_difference_gradient(obj, u, 1e-5);
    EXPECT_LT(max_abs(g - cd), 1e-7) << "seed " << s;
  }
}

TEST(AnalyticGradient, ChannelMatchesCentralDifference) {
  const auto rho = random_density_matrix(Dims{2, 2}, 4, 33);
  const ChannelEntropyObjective obj(rho, 4);
  const Matrix u = haar_random_unitary(static_cast<int>(obj.dimension()), 34).matrix();
  Matrix g;
  obj.value_and_gradient(u, g);
  const Matrix cd = central_difference_gradient(obj, u, 1e-5);
  EXPECT_LT(max_abs(g - cd), 1e-7);
}

TEST(Descend, CentralDifferenceModeAgreesWithAnalytic) {
  const auto rho = random_density_matrix(Dims{2, 2}, 2, 55);
  const PurificationObjective obj(standard_purification(rho, 2, 2));
  DescentOptions a, c;
  a.max_iterations = c.max_iterations = 300;
  c.mode = GradientMode::central_difference;
  const Matrix start = haar_random_unitary(4, 56).matrix();
  const auto ra = descend(obj, start, a);
  const auto rc = descend(obj, start, c);
  EXPECT_NEAR(ra.value, rc.value, 1e-5);
}
