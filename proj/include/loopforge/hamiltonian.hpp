#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "loopforge/ensemble.hpp"

namespace loopforge {

struct Basis {
  ModelKind kind = ModelKind::Colored;
  int colors = 1;
  int d = 1;
  bool imbalanced = false;
  const LatticeGeom* geom = nullptr;
  std::vector<LoopConfig> configs;
  std::vector<std::vector<Symbol>> decorations;  // empty unless decorated
  std::unordered_map<std::string, int> index;

  int size() const { return static_cast<int>(configs.size()); }
  std::string label(int i) const;
  int find(const std::string& label) const;
};

constexpr std::size_t kBasisCap = 3'000'000;

// Every plaquette-valid configuration, both framings, `c` colors.
Basis build_full_basis(const LatticeGeom& geom, int c, std::size_t cap = kBasisCap);
// Skeletons of both framings times per-loop decorations: cyclically balanced
// words by default, every word when `imbalanced` is set.
Basis build_decorated_basis(const LatticeGeom& geom, int d, bool imbalanced = false, std::size_t cap = kBasisCap);

struct HamiltonianModel {
  ModelKind kind = ModelKind::Colored;
  int c = 1;
  int d = 1;
  double t = 1;
  double u = 1;
};

// Term kinds: 1-3 skeleton rules, 4-6 Motzkin rules (corner-left, corner-right,
// straight); penalties: 7 wrong-framing unit loop, 8 parenthesis color mismatch.
struct RankOneTerm {
  int lower;
  int upper;
  double a;  // weight on the lower state
  double b;  // weight on the upper state
  std::uint8_t kind;
  std::uint8_t variant;
};

struct DiagonalTerm {
  int state;
  double weight;
  std::uint8_t kind;
};

struct SparseOperator {
  int dim = 0;
  std::vector<RankOneTerm> kinetic;
  std::vector<DiagonalTerm> penalties;
  std::vector<std::string> labels;
  Eigen::SparseMatrix<double> matrix;

  double diagonal(int i) const { return matrix.coeff(i, i); }
};

SparseOperator build_hamiltonian(const HamiltonianModel& model, const Basis& basis);

// Embeds an ensemble into the basis order; throws on labels missing from the basis.
Eigen::VectorXd embed(const WeightedEnsemble& e, const Basis& basis);

struct FrustrationReport {
  double residual = 0;           // |H psi| / |psi|
  double max_term_residual = 0;  // max over individual terms of |h_k psi| / |psi|
};

FrustrationReport verify_frustration_free(const SparseOperator& h, const Eigen::VectorXd& psi);
FrustrationReport verify_frustration_free(const SparseOperator& h, const Basis& basis, const WeightedEnsemble& e);

struct GroundSpaceReport {
  int dim = 0;
  int components = 0;
  int largest_component = 0;
  int iterative_components = 0;
  double min_eigenvalue = 0;
  double gap = 0;  // smallest eigenvalue above tol over all components
};

constexpr int kDenseCap = 4000;

GroundSpaceReport ground_space(const SparseOperator& h, double tol = 1e-8, int dense_cap = kDenseCap);
int ground_space_dim(const SparseOperator& h, double tol = 1e-8);

// Connected components of the off-diagonal coupling graph.
std::vector<int> coupling_components(const SparseOperator& h, int* count);

}  // namespace loopforge
