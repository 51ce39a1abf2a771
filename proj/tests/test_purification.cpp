#include <gtest/gtest.h>

#include "oracle.hpp"
#include "purecorr/purification.hpp"
#include "purecorr/state_zoo.hpp"

using namespace purecorr;

namespace {

Matrix reduce_to_ab(const PurificationFrame& f, const Matrix& u) {
  const auto psi = rotated_purification(f, u);
  return oracle::partial_trace(projector(psi).matrix(), psi.dims().factors(), {0, 1});
}

UnitaryParams random_params(int dim, std::uint64_t seed) {
  Rng rng(seed);
  std::normal_distribution<double> g;
  UnitaryParams p;
  for (int i = 0; i < dim * dim; ++i) p.theta.push_back(g(rng));
  return p;
}

}  // namespace

TEST(StandardPurification, PureInputLeavesAncillaInZero) {
  const auto psi = random_pure_state(Dims{2, 3}, 4);
  const auto f = standard_purification(projector(psi), 2, 2);
  EXPECT_EQ(f.rank, 1);
  const Vector expected = kron(psi.amplitudes(), Vector(Vector::Unit(4, 0)));
  // equal up to a global phase
  const cplx overlap = expected.dot(f.psi_s.amplitudes());
  EXPECT_NEAR(std::abs(overlap), 1.0, 1e-12);
}

TEST(StandardPurification, ReducesToInput) {
  const auto rho = random_density_matrix(Dims{2, 2}, 4, 6);
  const auto f = standard_purification(rho, 2, 2);
  EXPECT_LT(max_abs(reduce_to_ab(f, Matrix::Identity(4, 4)) - rho.matrix()), 1e-10);
  const auto one_sided = standard_purification(DensityMatrix::maximally_mixed(Dims{2, 2}), 1, 4);
  EXPECT_EQ(one_sided.rank, 4);
  EXPECT_LT(max_abs(reduce_to_ab(one_sided, Matrix::Identity(4, 4)) - Matrix::Identity(4, 4) / 4.0), 1e-10);
}

TEST(StandardPurification, AncillaTooSmallNamesMinimum) {
  const auto rho = random_density_matrix(Dims{2, 2}, 3, 1);
  try {
    standard_purification(rho, 1, 2);
    FAIL();
  } catch (const AncillaTooSmall& e) {
    EXPECT_EQ(e.required(), 3);
    EXPECT_NE(std::string(e.what()).find(">= 3"), std::string::npos);
  }
}

TEST(ParamsToUnitary, ZeroGivesIdentity) {
  const auto u = params_to_unitary(UnitaryParams{std::vector<double>(9, 0.0)}, 3).matrix();
  EXPECT_LT(max_abs(u - Matrix::Identity(3, 3)), 1e-15);
}

TEST(ParamsToUnitary, PauliXExponential) {
  // H = (pi/2) sigma_x -> exp(iH) = i sigma_x
  UnitaryParams p{{0.0, 0.0, M_PI / 2.0, 0.0}};
  const auto u = params_to_unitary(p, 2).matrix();
  EXPECT_NEAR(std::abs(u(0, 1)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(u(1, 0)), 1.0, 1e-10);
  EXPECT_NEAR(std::abs(u(0, 0)), 0.0, 1e-10);
  EXPECT_NEAR(u(0, 1).imag(), 1.0, 1e-10);
}

TEST(ParamsToUnitary, RandomIsUnitary) {
  const auto u = params_to_unitary(random_params(4, 3), 4).matrix();
  EXPECT_LT(max_abs(u.adjoint() * u - Matrix::Identity(4, 4)), 1e-10);
  EXPECT_NEAR(std::abs(u.determinant()), 1.0, 1e-10);
  EXPECT_THROW(params_to_unitary(UnitaryParams{{1.0, 2.0}}, 2), ContractViolation);
}

TEST(ObjectiveEntropy, PureBaseAndBell) {
  const auto psi = random_pure_state(Dims{2, 2}, 12);
  const auto f = standard_purification(projector(psi), 2, 2);
  EXPECT_NEAR(objective_entropy(f, Matrix::Identity(4, 4)), entropy(projector(psi), Group{0}), 1e-10);
  const auto bell = standard_purification(projector(bell_state()), 2, 2);
  EXPECT_NEAR(objective_entropy(bell, Matrix::Identity(4, 4)), 1.0, 1e-10);
  // a rotated ancilla can only add entropy on top of S(A) = 1
  for (std::uint64_t s = 0; s < 5; ++s)
    EXPECT_GE(objective_entropy(bell, params_to_unitary(random_params(4, s), 4).matrix()), 1.0 - 1e-10);
}

TEST(ObjectiveEntropy, ProductBaseReachesZero) {
  const auto ra = random_density_matrix(Dims{2}, 2, 1);
  const auto rb = random_density_matrix(Dims{2}, 2, 2);
  const auto f = standard_purification(tensor(ra, rb), 2, 2);
  // Each frame eigenvector is a product |a_i>|b_j> up to phase. Mapping
  // ancilla index k to |i>_{A'}|j>_{B'} with u(m, k) = <e_k|a_i b_j>
  // purifies each factor locally.
  const auto ea = hermitian_eigs(ra.matrix());
  const auto eb = hermitian_eigs(rb.matrix());
  const Vector& amps = f.psi_s.amplitudes();
  Matrix u(4, 4);
  for (int k = 0; k < 4; ++k) {
    Vector e(4);
    for (int ab = 0; ab < 4; ++ab) e(ab) = amps(ab * 4 + k);
    e.normalize();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) u(2 * i + j, k) = e.dot(kron(Vector(ea.vectors.col(i)), Vector(eb.vectors.col(j))));
  }
  EXPECT_LT(objective_entropy(f, u), 1e-9);
}

TEST(ObjectiveEntropy, InvariantsOverRandomUnitaries) {
  const auto rho = random_density_matrix(Dims{2, 2}, 3, 44);
  const auto f = standard_purification(rho, 2, 2);
  const double half_mi = 0.5 * mutual_information(rho, Group{0}, Group{1});
  for (std::uint64_t s = 0; s < 8; ++s) {
    const Matrix u = haar_random_unitary(4, 500 + s).matrix();
    const double v = objective_entropy(f, u);
    EXPECT_GE(v, half_mi - 1e-9);
    EXPECT_LE(v, std::log2(2.0 * 2.0) + 1e-9);
    const auto psi = projector(rotated_purification(f, u));
    EXPECT_NEAR(v, entropy(psi, Group{1, 3}), 1e-9);
    EXPECT_NEAR(v, 0.5 * mutual_information(psi, Group{0, 2}, Group{1, 3}), 1e-9);
    EXPECT_LT(max_abs(reduce_to_ab(f, u) - rho.matrix()), 1e-10);
  }
}

TEST(ObjectiveEntropy, ChartOverloadAgrees) {
  const auto rho = random_density_matrix(Dims{2, 2}, 2, 8);
  const auto f = standard_purification(rho, 2, 2);
  const auto p = random_params(4, 17);
  EXPECT_NEAR(objective_entropy(f, p), objective_entropy(f, params_to_unitary(p, 4).matrix()), 1e-14);
}

TEST(TensorFrames, WarmStartReproducesSum) {
  const auto r1 = random_density_matrix(Dims{2, 2}, 2, 61);
  const auto r2 = random_density_matrix(Dims{2, 2}, 3, 62);
  const auto f1 = standard_purification(r1, 2, 2);
  const auto f2 = standard_purification(r2, 2, 2);
  const Matrix u1 = haar_random_unitary(4, 63).matrix();
  const Matrix u2 = haar_random_unitary(4, 64).matrix();
  const auto joint = tensor_frames(f1, f2);
  const Matrix u = tensor_ancilla_unitaries(f1, f2, u1, u2);
  EXPECT_NEAR(objective_entropy(joint, u), objective_entropy(f1, u1) + objective_entropy(f2, u2), 1e-10);
  EXPECT_LT(max_abs(reduce_to_ab(joint, u) - joint.base.matrix()), 1e-10);
}

TEST(Purify, ExtendsWithRankSizedParty) {
  const auto rho = random_density_matrix(Dims{2, 2}, 3, 70);
  const auto psi = purify(rho);
  EXPECT_EQ(psi.dims(), (Dims{2, 2, 3}));
  EXPECT_LT(max_abs(reduced_state(psi, std::vector<int>{0, 1}).matrix() - rho.matrix()), 1e-12);
}

TEST(BipartiteView, OrdersAndMerges) {
  const auto rho = random_density_matrix(Dims{2, 3, 2}, 5, 71);
  const auto v = bipartite_view(rho, Partition{{2}, {0, 1}});
  EXPECT_EQ(v.dims(), (Dims{2, 6}));
  EXPECT_NEAR(entropy(v, Group{0}), entropy(rho, Group{2}), 1e-12);
  EXPECT_THROW(bipartite_view(rho, Partition{{0}, {1}, {2}}), ContractViolation);
}
