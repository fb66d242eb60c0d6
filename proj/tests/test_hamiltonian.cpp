#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "loopforge/errors.hpp"
#include "loopforge/hamiltonian.hpp"

using namespace loopforge;

namespace {

int dense_null_dim(const SparseOperator& h, double tol) {
  const Eigen::MatrixXd m(h.matrix);
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
  int k = 0;
  for (int i = 0; i < ev.size(); ++i) k += std::abs(ev[i]) < tol;
  return k;
}

}  // namespace

TEST(Basis, FullBasisSizes) {
  EXPECT_EQ(build_full_basis(LatticeGeom(1), 1).size(), 3);
  EXPECT_EQ(build_full_basis(LatticeGeom(1), 2).size(), 5);
  EXPECT_EQ(build_full_basis(LatticeGeom(2), 1).size(), 27);
}

TEST(Hamiltonian, SingleCellBlock) {
  const LatticeGeom g(1);
  const Basis b = build_full_basis(g, 1);
  const double t = 1.7;
  const SparseOperator h = build_hamiltonian({ModelKind::Colored, 1, 1, t, 1}, b);
  ASSERT_EQ(h.kinetic.size(), 1u);
  const Eigen::MatrixXd m(h.matrix);
  int vac = b.find(LoopConfig(g).hex()), ccw = -1, cw = -1;
  for (int i = 0; i < b.size(); ++i) {
    if (i == vac) continue;
    (extract_loops(b.configs[i])[0].signed_area > 0 ? ccw : cw) = i;
  }
  EXPECT_NEAR(m(vac, vac), t * t, 1e-15);
  EXPECT_NEAR(m(ccw, ccw), 1.0, 1e-15);
  EXPECT_NEAR(m(vac, ccw), -t, 1e-15);
  EXPECT_GE(m(cw, cw), 1.0);
  EXPECT_EQ(m(cw, vac), 0.0);
  EXPECT_EQ(m(cw, ccw), 0.0);
}

TEST(Hamiltonian, UniformStateAnnihilatedAtTOne) {
  const LatticeGeom g(2);
  const Basis b = build_full_basis(g, 1);
  const SparseOperator h = build_hamiltonian({ModelKind::Colored, 1, 1, 1.0, 1}, b);
  const ConfigSet set = reachable_set(g, 1);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(b.size());
  for (const auto& c : set.configs) psi[b.find(c.hex())] = 1;
  EXPECT_NEAR(psi.dot(h.matrix * psi), 0.0, 1e-13);
}

TEST(Frustration, GroundStatesAreAnnihilated) {
  const LatticeGeom g(2);
  const Basis b = build_full_basis(g, 2);
  const SparseOperator h = build_hamiltonian({ModelKind::Colored, 2, 1, 1.5, 1}, b);
  EXPECT_LE(verify_frustration_free(h, b, build_colored_gs(g, 2, 1.5)).residual, 1e-10);
  const Basis b1 = build_full_basis(g, 1);
  const SparseOperator hu = build_hamiltonian({ModelKind::Uncolored, 2, 1, 0.7, 1}, b1);
  EXPECT_LE(verify_frustration_free(hu, b1, build_uncolored_gs(g, 2, 0.7)).residual, 1e-10);
}

TEST(Frustration, VacuumAloneIsNotAnEigenstate) {
  const LatticeGeom g(2);
  const Basis b = build_full_basis(g, 2);
  const SparseOperator h = build_hamiltonian({ModelKind::Colored, 2, 1, 1.5, 1}, b);
  Eigen::VectorXd vac = Eigen::VectorXd::Zero(b.size());
  vac[b.find(LoopConfig(g).hex())] = 1;
  EXPECT_GT(verify_frustration_free(h, vac).residual, 0.1);
}

TEST(Frustration, DecoratedSingleCell) {
  const LatticeGeom g(1);
  const Basis b = build_decorated_basis(g, 1);
  const SparseOperator h = build_hamiltonian({ModelKind::Decorated, 1, 1, 1.2, 1.4}, b);
  EXPECT_LE(verify_frustration_free(h, b, build_decorated_gs(g, 1, 1.2, 1.4)).residual, 1e-10);
}

TEST(Frustration, WrongModelThrows) {
  const LatticeGeom g(1);
  const Basis b = build_full_basis(g, 1);
  EXPECT_THROW(build_hamiltonian({ModelKind::Colored, 2, 1, 1.0, 1}, b), ModelError);
  EXPECT_THROW(build_hamiltonian({ModelKind::Decorated, 1, 1, 1.0, 1}, b), ModelError);
}

TEST(GroundSpace, DenseExamples) {
  {
    const LatticeGeom g1(1);
    const Basis b = build_full_basis(g1, 2);
    const SparseOperator h = build_hamiltonian({ModelKind::Colored, 2, 1, 1.5, 1}, b);
    EXPECT_EQ(ground_space_dim(h), 1);
    EXPECT_EQ(dense_null_dim(h, 1e-8), 1);
  }
  const LatticeGeom g(2);
  const Basis b = build_full_basis(g, 1);
  for (double t : {0.5, 1.0, 2.0}) {
    const SparseOperator h = build_hamiltonian({ModelKind::Colored, 1, 1, t, 1}, b);
    EXPECT_EQ(ground_space_dim(h), 1);
    EXPECT_EQ(dense_null_dim(h, 1e-8), 1);
  }
}

TEST(GroundSpace, DecoratedBalancedSector) {
  const LatticeGeom g(1);
  const Basis b = build_decorated_basis(g, 1);
  const SparseOperator h = build_hamiltonian({ModelKind::Decorated, 1, 1, 1.0, 1.0}, b);
  EXPECT_EQ(ground_space_dim(h), 1);
  EXPECT_EQ(dense_null_dim(h, 1e-8), 1);
}

TEST(GroundSpace, IterativeAgreesWithDense) {
  const LatticeGeom g(3);
  const Basis b = build_full_basis(g, 1);
  const SparseOperator h = build_hamiltonian({ModelKind::Colored, 1, 1, 1.3, 1}, b);
  const GroundSpaceReport dense = ground_space(h, 1e-8, 100000);
  const GroundSpaceReport iter = ground_space(h, 1e-8, 10);
  EXPECT_EQ(dense.dim, 1);
  EXPECT_EQ(iter.dim, 1);
  EXPECT_GT(iter.iterative_components, 0);
  EXPECT_NEAR(iter.gap, dense.gap, 1e-7);
}

TEST(GroundSpace, EmbedRejectsForeignLabels) {
  const LatticeGeom g(2);
  const Basis b = build_full_basis(g, 1);
  EXPECT_THROW(embed(build_colored_gs(g, 2, 1.0), b), Error);
}
