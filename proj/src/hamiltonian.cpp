#include "loopforge/hamiltonian.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <cstdio>
#include <cstdlib>

#include "loopforge/errors.hpp"

namespace loopforge {

std::string Basis::label(int i) const {
  return state_label(configs[i], decorations.empty() ? std::vector<Symbol>{} : decorations[i]);
}

int Basis::find(const std::string& label) const {
  auto it = index.find(label);
  return it == index.end() ? -1 : it->second;
}

namespace {

void index_basis(Basis& b) {
  b.index.reserve(b.configs.size());
  for (int i = 0; i < b.size(); ++i) b.index.emplace(b.label(i), i);
}

}  // namespace

Basis build_full_basis(const LatticeGeom& geom, int c, std::size_t cap) {
  Basis b;
  b.kind = ModelKind::Colored;
  b.colors = c;
  b.geom = &geom;
  b.configs = enumerate_loop_packings(geom, c, FramingMode::Both, cap);
  index_basis(b);
  return b;
}

Basis build_decorated_basis(const LatticeGeom& geom, int d, bool imbalanced, std::size_t cap) {
  if (d < 1 || d > 8) throw ModelError("d must be in [1, 8]");
  Basis b;
  b.kind = ModelKind::Decorated;
  b.colors = 1;
  b.d = d;
  b.imbalanced = imbalanced;
  b.geom = &geom;
  std::map<int, std::vector<MotzkinWord>> words_by_len;
  auto words_for = [&](int len) -> const std::vector<MotzkinWord>& {
    auto it = words_by_len.find(len);
    if (it != words_by_len.end()) return it->second;
    return words_by_len[len] = imbalanced ? enumerate_words(len, d, Sector::All, cap) : cyclic_words(len, d, cap);
  };
  for (const LoopConfig& sk : enumerate_loop_packings(geom, 1, FramingMode::Both, cap)) {
    const auto loops = extract_loops(sk);
    std::size_t total = 1;
    for (const Loop& loop : loops) total *= words_for(loop.length).size();
    if (b.configs.size() + total > cap) throw CapacityError("decorated basis exceeded capacity", cap);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      std::vector<Symbol> deco(geom.num_links(), 0);
      for (const Loop& loop : loops) {
        const auto& ws = words_for(loop.length);
        const MotzkinWord& w = ws[rest % ws.size()];
        rest /= ws.size();
        for (std::size_t i = 0; i < w.size(); ++i) deco[loop.links[i]] = w.symbols[i];
      }
      b.configs.push_back(sk);
      b.decorations.push_back(std::move(deco));
    }
  }
  index_basis(b);
  return b;
}

namespace {

bool is_cw_unit_loop(const LoopConfig& cfg, int f) {
  const auto& sides = cfg.geom().face_links(f);
  int color = -1;
  for (int s = 0; s < 4; ++s) {
    const LinkState st = cfg.state(sides[s]);
    if (!st.is_occupied() || st.direction() != -LatticeGeom::kRaiseSign[s]) return false;
    if (color >= 0 && st.color() != color) return false;
    color = st.color();
  }
  return true;
}

// Unit direction of a link along the traversal, x east and y north.
std::array<int, 2> step_vector(const LatticeGeom& g, int l, int dir) {
  if (g.link(l).orient == Orientation::Horizontal) return {dir, 0};
  return {0, dir};
}

struct TermBuilder {
  const Basis& basis;
  SparseOperator& op;

  int lookup(const LoopConfig& cfg, const std::vector<Symbol>& deco) const {
    const int j = basis.find(state_label(cfg, deco));
    if (j < 0) throw ModelError("basis is not closed under the rewrite rules");
    return j;
  }
};

void add_loop_terms(const HamiltonianModel& model, const Basis& basis, SparseOperator& op) {
  const LatticeGeom& g = *basis.geom;
  TermBuilder tb{basis, op};
  const double lc = std::sqrt(static_cast<double>(model.c));
  const int colors = basis.colors;
  for (int i = 0; i < basis.size(); ++i) {
    const LoopConfig& cfg = basis.configs[i];
    for (int f = 0; f < g.num_faces(); ++f) {
      if (is_cw_unit_loop(cfg, f)) op.penalties.push_back({i, 1.0, 7});
      for (int k = 0; k < colors; ++k) {
        auto rw = rewrite_face(cfg, f, true, k);
        if (!rw) break;
        const int j = tb.lookup(rw->result, {});
        double a = model.t;
        if (rw->kind == MoveKind::M1 && model.kind == ModelKind::Uncolored) a *= lc;
        op.kinetic.push_back({i, j, a, 1.0, static_cast<std::uint8_t>(rw->kind), static_cast<std::uint8_t>(rw->variant)});
        if (rw->kind != MoveKind::M1) break;
      }
    }
  }
}

void add_decorated_terms(const HamiltonianModel& model, const Basis& basis, SparseOperator& op) {
  const LatticeGeom& g = *basis.geom;
  TermBuilder tb{basis, op};
  for (int i = 0; i < basis.size(); ++i) {
    const LoopConfig& sk = basis.configs[i];
    const std::vector<Symbol>& deco = basis.decorations[i];
    const auto loops = extract_loops(sk);
    std::vector<int> loop_of(g.num_links(), -1), pos_of(g.num_links(), -1);
    std::vector<std::vector<int>> heights(loops.size());
    std::vector<bool> balanced(loops.size());
    for (std::size_t k = 0; k < loops.size(); ++k) {
      for (std::size_t p = 0; p < loops[k].links.size(); ++p) {
        loop_of[loops[k].links[p]] = static_cast<int>(k);
        pos_of[loops[k].links[p]] = static_cast<int>(p);
      }
      const MotzkinWord w = loop_word(loops[k], deco);
      balanced[k] = cyclic_balanced(w).balanced;
      heights[k] = cyclic_heights(w);
    }
    auto ground_zero = [&](int l) {
      const int k = loop_of[l];
      return deco[l] == 0 && balanced[k] && heights[k][pos_of[l]] == 0;
    };

    // Skeleton rules.
    for (int f = 0; f < g.num_faces(); ++f) {
      if (is_cw_unit_loop(sk, f)) op.penalties.push_back({i, 1.0, 7});
      auto rw = rewrite_face(sk, f, true, 0);
      if (!rw) continue;
      const auto& sides = g.face_links(f);
      std::vector<int> removed, added;
      for (int s = 0; s < 4; ++s) (sk.occupied(sides[s]) ? removed : added).push_back(sides[s]);
      std::vector<Symbol> nd = deco;
      if (rw->kind == MoveKind::M2) {
        int x = removed[0], y = removed[1];
        const Loop& loop = loops[loop_of[x]];
        if (loop.links[(pos_of[x] + 1) % loop.length] != y) std::swap(x, y);
        const int entry = loop.vertices[pos_of[x]];
        const auto& ev = g.link_vertices(added[0]);
        const int first = (ev[0] == entry || ev[1] == entry) ? added[0] : added[1];
        const int second = first == added[0] ? added[1] : added[0];
        nd[first] = deco[x];
        nd[second] = deco[y];
        nd[x] = nd[y] = 0;
      } else if (rw->kind == MoveKind::M3) {
        bool ok = true;
        for (int l : removed) ok = ok && ground_zero(l);
        if (!ok) continue;
        for (int l : removed) nd[l] = 0;
      }
      const int j = tb.lookup(rw->result, nd);
      op.kinetic.push_back({i, j, model.t, 1.0, static_cast<std::uint8_t>(rw->kind), static_cast<std::uint8_t>(rw->variant)});
    }

    // Motzkin rules on consecutive link pairs of each loop.
    for (const Loop& loop : loops) {
      for (int p = 0; p < loop.length; ++p) {
        const int x = loop.links[p], y = loop.links[(p + 1) % loop.length];
        const Symbol sx = deco[x], sy = deco[y];
        const auto vx = step_vector(g, x, sk.flow(x));
        const auto vy = step_vector(g, y, sk.flow(y));
        const int cross = vx[0] * vy[1] - vx[1] * vy[0];
        const std::uint8_t kind = cross > 0 ? 4 : (cross < 0 ? 5 : 6);
        auto emit = [&](Symbol nx, Symbol ny, std::uint8_t variant) {
          std::vector<Symbol> nd = deco;
          nd[x] = nx;
          nd[y] = ny;
          const int j = tb.lookup(sk, nd);
          op.kinetic.push_back({i, j, model.u, 1.0, kind, variant});
        };
        if (sx == 0 && sy == 0) {
          for (int k = 0; k < basis.d; ++k) emit(open_symbol(k), close_symbol(k), 1);
        } else if (is_close(sx) && sy == 0) {
          emit(0, sx, 2);
        } else if (sx == 0 && is_open(sy)) {
          emit(sy, 0, 3);
        } else if (is_open(sx) && is_close(sy) && symbol_color(sx) != symbol_color(sy)) {
          op.penalties.push_back({i, 1.0, 8});
        }
      }
    }
  }
}

}  // namespace

SparseOperator build_hamiltonian(const HamiltonianModel& model, const Basis& basis) {
  if (!(model.t > 0)) throw ModelError("t must be positive");
  const bool deco_model = model.kind == ModelKind::Decorated;
  if (deco_model != (basis.kind == ModelKind::Decorated)) throw ModelError("basis/model mismatch");
  if (model.kind == ModelKind::Uncolored && basis.colors != 1) {
    throw ModelError("uncolored model needs a single-color basis");
  }
  if (model.kind == ModelKind::Colored && basis.colors != model.c) throw ModelError("basis/model color mismatch");
  if (deco_model && (!(model.u > 0) || model.d != basis.d)) throw ModelError("decorated basis/model mismatch");

  SparseOperator op;
  op.dim = basis.size();
  op.labels.reserve(basis.size());
  for (int i = 0; i < basis.size(); ++i) op.labels.push_back(basis.label(i));
  if (deco_model) {
    add_decorated_terms(model, basis, op);
  } else {
    add_loop_terms(model, basis, op);
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(4 * op.kinetic.size() + op.penalties.size());
  for (const auto& k : op.kinetic) {
    trip.emplace_back(k.lower, k.lower, k.a * k.a);
    trip.emplace_back(k.upper, k.upper, k.b * k.b);
    trip.emplace_back(k.lower, k.upper, -k.a * k.b);
    trip.emplace_back(k.upper, k.lower, -k.a * k.b);
  }
  for (const auto& p : op.penalties) trip.emplace_back(p.state, p.state, p.weight);
  op.matrix.resize(op.dim, op.dim);
  op.matrix.setFromTriplets(trip.begin(), trip.end());
  op.matrix.makeCompressed();
  return op;
}

Eigen::VectorXd embed(const WeightedEnsemble& e, const Basis& basis) {
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(basis.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const int j = basis.find(e.label(i));
    if (j < 0) throw ModelError("ensemble label " + e.label(i) + " missing from basis");
    psi[j] = std::exp(e.members()[i].logamp - 0.5 * e.log_z());
  }
  return psi;
}

FrustrationReport verify_frustration_free(const SparseOperator& h, const Eigen::VectorXd& psi) {
  if (psi.size() != h.dim) throw ModelError("state dimension does not match the operator");
  FrustrationReport rep;
  const double norm = psi.norm();
  if (norm == 0) throw NumericalError("zero state");
  rep.residual = (h.matrix * psi).norm() / norm;
  for (const auto& k : h.kinetic) {
    const double r = std::abs(k.a * psi[k.lower] - k.b * psi[k.upper]) * std::sqrt(k.a * k.a + k.b * k.b);
    rep.max_term_residual = std::max(rep.max_term_residual, r / norm);
  }
  for (const auto& p : h.penalties) {
    rep.max_term_residual = std::max(rep.max_term_residual, p.weight * std::abs(psi[p.state]) / norm);
  }
  return rep;
}

FrustrationReport verify_frustration_free(const SparseOperator& h, const Basis& basis, const WeightedEnsemble& e) {
  return verify_frustration_free(h, embed(e, basis));
}

std::vector<int> coupling_components(const SparseOperator& h, int* count) {
  std::vector<int> parent(h.dim);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& k : h.kinetic) parent[find(k.lower)] = find(k.upper);
  std::vector<int> comp(h.dim, -1), id(h.dim, -1);
  int next = 0;
  for (int i = 0; i < h.dim; ++i) {
    const int r = find(i);
    if (id[r] < 0) id[r] = next++;
    comp[i] = id[r];
  }
  if (count) *count = next;
  return comp;
}

namespace {

struct BlockSpectrum {
  int zero = 0;
  double min_eig = 0;
  double gap = std::numeric_limits<double>::infinity();
};

BlockSpectrum dense_block(const Eigen::MatrixXd& m, double tol) {
  BlockSpectrum out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
  const auto& ev = es.eigenvalues();
  out.min_eig = ev[0];
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] < tol) {
      ++out.zero;
    } else {
      out.gap = std::min(out.gap, ev[i]);
    }
  }
  return out;
}

// Lanczos with full reorthogonalization. Converged Ritz vectors below tol are
// deflated by shifting them up by sigma (above the spectrum) until the lowest
// remaining Ritz value clears tol.
BlockSpectrum lanczos_block(const Eigen::SparseMatrix<double, Eigen::RowMajor>& a, double tol) {
  const int n = static_cast<int>(a.rows());
  BlockSpectrum out;
  double sigma = 0;
  for (int i = 0; i < n; ++i) {
    double row = 0;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(a, i); it; ++it) row += std::abs(it.value());
    sigma = std::max(sigma, row);
  }
  sigma = 2 * sigma + 1;
  std::vector<Eigen::VectorXd> locked;
  auto apply = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd y = a * x;
    for (const auto& q : locked) y += sigma * q.dot(x) * q;
    return y;
  };
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> gauss;
  const int max_steps = std::min(n, 300);
  const int max_restarts = 80;
  Eigen::VectorXd start(n);
  for (int i = 0; i < n; ++i) start[i] = gauss(rng);
  out.min_eig = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<Eigen::VectorXd> qs{start.normalized()};
    std::vector<double> alpha, beta;
    for (int j = 0; j < max_steps; ++j) {
      Eigen::VectorXd w = apply(qs[j]);
      alpha.push_back(qs[j].dot(w));
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& q : qs) w -= q.dot(w) * q;
      }
      const double b = w.norm();
      if (j + 1 == max_steps || b < 1e-12) break;
      beta.push_back(b);
      qs.push_back(w / b);
    }
    const int m = static_cast<int>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) x += es.eigenvectors()(i, 0) * qs[i];
    x.normalize();
    const Eigen::VectorXd ax = apply(x);
    const double rq = x.dot(ax);
    const double res = (ax - rq * x).norm();
    if (std::getenv("LF_DEBUG")) {
      std::fprintf(stderr, "lanczos n=%d m=%d rq=%.3e res=%.3e locked=%zu\n", n, m, rq, res, locked.size());
    }
    out.min_eig = std::min(out.min_eig, rq);
    const bool exhausted = m < max_steps;
    if (res < 1e-9 || exhausted || (rq >= tol && rq - res > tol)) {
      if (rq < tol) {
        locked.push_back(x);
        ++out.zero;
        for (int i = 0; i < n; ++i) start[i] = gauss(rng);
        continue;
      }
      out.gap = rq;
      return out;
    }
    start = x;
  }
  throw NumericalError("Lanczos did not converge after " + std::to_string(max_restarts) + " restarts (locked " +
                       std::to_string(locked.size()) + ")");
}

}  // namespace

GroundSpaceReport ground_space(const SparseOperator& h, double tol, int dense_cap) {
  GroundSpaceReport rep;
  const std::vector<int> comp = coupling_components(h, &rep.components);
  std::vector<std::vector<int>> members(rep.components);
  for (int i = 0; i < h.dim; ++i) members[comp[i]].push_back(i);
  std::vector<int> local(h.dim);
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  rep.gap = std::numeric_limits<double>::infinity();
  Eigen::SparseMatrix<double, Eigen::RowMajor> rows = h.matrix;
  for (const auto& mem : members) {
    const int m = static_cast<int>(mem.size());
    rep.largest_component = std::max(rep.largest_component, m);
    for (int k = 0; k < m; ++k) local[mem[k]] = k;
    BlockSpectrum bs;
    if (m <= dense_cap) {
      Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, m);
      for (int k = 0; k < m; ++k) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, mem[k]); it; ++it) {
          dense(k, local[it.col()]) = it.value();
        }
      }
      bs = dense_block(dense, tol);
    } else {
      ++rep.iterative_components;
      std::vector<Eigen::Triplet<double>> trip;
      for (int k = 0; k < m; ++k) {
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(rows, mem[k]); it; ++it) {
          trip.emplace_back(k, local[it.col()], it.value());
        }
      }
      Eigen::SparseMatrix<double, Eigen::RowMajor> sub(m, m);
      sub.setFromTriplets(trip.begin(), trip.end());
      bs = lanczos_block(sub, tol);
    }
    rep.dim += bs.zero;
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, bs.min_eig);
    rep.gap = std::min(rep.gap, bs.gap);
  }
  return rep;
}

int ground_space_dim(const SparseOperator& h, double tol) { return ground_space(h, tol).dim; }

}  // namespace loopforge
