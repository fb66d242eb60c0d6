#include "loopforge/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "loopforge/errors.hpp"

namespace loopforge {

double log_sum_exp(const std::vector<double>& x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(x.begin(), x.end());
  double s = 0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

double entropy_of(const std::vector<double>& probs) {
  double s = 0;
  for (double p : probs) {
    if (p > 0) s -= p * std::log(p);
  }
  return s;
}

namespace {

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

constexpr std::size_t kDenseBlockCap = 6000;

}  // namespace

SchmidtSpectrum schmidt_spectrum(const std::vector<AmplitudeEntry>& entries, int rows, int cols) {
  SchmidtSpectrum out;
  double norm2 = 0;
  for (const auto& e : entries) norm2 += e.amp * e.amp;
  if (norm2 <= 0) throw NumericalError("zero amplitude matrix");

  DisjointSet ds(rows + cols);
  for (const auto& e : entries) ds.unite(e.row, rows + e.col);
  std::vector<int> block_of(rows + cols, -1);
  std::vector<std::vector<int>> block_rows, block_cols;
  std::vector<int> local(rows + cols, -1);
  auto block_id = [&](int node) {
    const int root = ds.find(node);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(block_rows.size());
      block_rows.emplace_back();
      block_cols.emplace_back();
    }
    return block_of[root];
  };
  for (const auto& e : entries) {
    const int b = block_id(e.row);
    if (local[e.row] < 0) {
      local[e.row] = static_cast<int>(block_rows[b].size());
      block_rows[b].push_back(e.row);
    }
    if (local[rows + e.col] < 0) {
      local[rows + e.col] = static_cast<int>(block_cols[b].size());
      block_cols[b].push_back(e.col);
    }
  }
  std::vector<std::vector<const AmplitudeEntry*>> block_entries(block_rows.size());
  for (const auto& e : entries) block_entries[block_of[ds.find(e.row)]].push_back(&e);

  out.blocks = block_rows.size();
  for (std::size_t b = 0; b < block_rows.size(); ++b) {
    const int r = static_cast<int>(block_rows[b].size());
    const int c = static_cast<int>(block_cols[b].size());
    out.largest_block = std::max(out.largest_block, static_cast<std::size_t>(std::min(r, c)));
    if (r == 1 || c == 1) {
      double w = 0;
      for (const auto* e : block_entries[b]) w += e->amp * e->amp;
      out.weights.push_back(w / norm2);
      continue;
    }
    if (static_cast<std::size_t>(std::min(r, c)) > kDenseBlockCap) {
      throw CapacityError("Schmidt block too large for dense diagonalization", kDenseBlockCap);
    }
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(r, c);
    for (const auto* e : block_entries[b]) m(local[e->row], local[rows + e->col]) += e->amp;
    m /= std::sqrt(norm2);
    Eigen::MatrixXd gram = r <= c ? Eigen::MatrixXd(m * m.transpose()) : Eigen::MatrixXd(m.transpose() * m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("Gram eigensolve failed");
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      const double w = es.eigenvalues()[i];
      if (w > 0) out.weights.push_back(w);
    }
  }
  std::sort(out.weights.begin(), out.weights.end(), std::greater<>());
  return out;
}

}  // namespace loopforge
