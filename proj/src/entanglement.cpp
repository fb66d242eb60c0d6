#include "loopforge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "loopforge/errors.hpp"
#include "loopforge/linalg.hpp"

namespace loopforge {

namespace {

std::string restriction_key(const EnsembleMember& m, const Bipartition& bp, bool side) {
  std::string key;
  const auto& codes = m.config.codes();
  for (std::size_t l = 0; l < codes.size(); ++l) {
    if (bp.in_region[l] != side) continue;
    key += static_cast<char>(codes[l]);
    if (!m.decoration.empty()) key += static_cast<char>(m.decoration[l]);
  }
  return key;
}

double max_logamp(const WeightedEnsemble& e) {
  double m = -1e300;
  for (const auto& x : e.members()) m = std::max(m, x.logamp);
  return m;
}

}  // namespace

EntropyReport rdm_entropy_svd(const WeightedEnsemble& e, const Bipartition& bp) {
  EntropyReport r;
  r.method = "svd";
  r.boundary_links = bp.boundary_links;
  std::unordered_map<std::string, int> rows, cols;
  std::vector<AmplitudeEntry> entries;
  entries.reserve(e.size());
  const double shift = max_logamp(e);
  for (const auto& m : e.members()) {
    const int ri = rows.emplace(restriction_key(m, bp, true), static_cast<int>(rows.size())).first->second;
    const int ci = cols.emplace(restriction_key(m, bp, false), static_cast<int>(cols.size())).first->second;
    entries.push_back({ri, ci, std::exp(m.logamp - shift)});
  }
  const SchmidtSpectrum sp = schmidt_spectrum(entries, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  r.s_nats = entropy_of(sp.weights);
  r.rows = rows.size();
  r.cols = cols.size();
  r.blocks = sp.blocks;
  r.largest_block = sp.largest_block;
  return r;
}

EntropyReport rdm_entropy_svd(const WeightedEnsemble& e, const RegionMask& mask, TagSet region) {
  return rdm_entropy_svd(e, mask.bipartition(region));
}

EntropyReport schmidt_entropy(const WeightedEnsemble& e, const Bipartition& bp, bool with_oracle) {
  if (e.kind() != ModelKind::Colored) throw ModelError("schmidt_entropy needs a colored ensemble");
  const LatticeGeom& g = e.geom();
  EntropyReport r;
  r.method = "labels";
  r.boundary_links = bp.boundary_links;

  std::vector<int> boundary;
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool in = false, out = false;
    for (int l : g.vertex_links(v)) (bp.in_region[l] ? in : out) = true;
    if (in && out) boundary.push_back(v);
  }
  std::vector<int> region_faces;
  for (int f = 0; f < g.num_faces(); ++f) {
    if (!bp.face_in_region.empty() && bp.face_in_region[f]) region_faces.push_back(f);
  }

  std::map<std::string, double> colored;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& m = e.members()[i];
    const double p = e.probability(i);
    std::string key, ukey;
    for (int v : boundary) {
      int end = -1;
      int count = 0;
      for (int l : g.vertex_links(v)) {
        if (bp.in_region[l] && m.config.occupied(l)) {
          end = l;
          ++count;
        }
      }
      if (count != 1) continue;
      const LinkState s = m.config.state(end);
      const bool incoming = g.link_vertices(end)[s.direction() > 0 ? 1 : 0] == v;
      const std::string rec = std::to_string(v) + (incoming ? "i" : "o");
      ukey += rec + ' ';
      key += rec + std::to_string(s.color()) + ' ';
    }
    colored[key] += p;
    r.p[ukey] += p;

    int crossing = 0, enclosing = 0;
    for (const Loop& loop : extract_loops(m.config)) {
      bool in = false, out = false;
      for (int l : loop.links) (bp.in_region[l] ? in : out) = true;
      crossing += in && out;
      if (!in && !region_faces.empty() &&
          std::includes(loop.enclosed_faces.begin(), loop.enclosed_faces.end(), region_faces.begin(),
                        region_faces.end())) {
        ++enclosing;
      }
    }
    r.mean_crossing += p * crossing;
    r.mean_enclosing += p * enclosing;
  }
  std::vector<double> probs;
  for (const auto& [k, p] : r.p) probs.push_back(p);
  r.h_p = entropy_of(probs);
  probs.clear();
  for (const auto& [k, p] : colored) probs.push_back(p);
  r.label_entropy = entropy_of(probs);
  r.label_count = colored.size();
  r.s_nats = r.h_p + r.mean_crossing * std::log(static_cast<double>(e.params().c));
  if (with_oracle) {
    const EntropyReport o = rdm_entropy_svd(e, bp);
    r.has_oracle = true;
    r.oracle = o.s_nats;
    r.rows = o.rows;
    r.cols = o.cols;
    r.blocks = o.blocks;
    r.largest_block = o.largest_block;
  }
  return r;
}

EntropyReport schmidt_entropy(const WeightedEnsemble& e, const RegionMask& mask, TagSet region, bool with_oracle) {
  return schmidt_entropy(e, mask.bipartition(region), with_oracle);
}

double area_law_bound(const Bipartition& bp, int c) { return bp.boundary_links * std::log(1.0 + 2.0 * c); }

bool area_law_check(const EntropyReport& r, const Bipartition& bp, int c) {
  return r.s_nats <= area_law_bound(bp, c) && (!r.has_oracle || r.oracle <= area_law_bound(bp, c));
}

std::vector<TagSet> loop_tags(const LoopConfig& cfg, const RegionMask& mask) {
  std::vector<TagSet> out;
  const LatticeGeom& g = cfg.geom();
  for (const Loop& loop : extract_loops(cfg)) {
    TagSet s = 0;
    for (int l : loop.links) s |= mask.face_tag(g.owner_face(l));
    out.push_back(s);
  }
  return out;
}

namespace {

const TagSet kAggregates[] = {kTagA, kTagB, kTagC, kTagA | kTagB, kTagB | kTagC, kTagA | kTagC, kTagA | kTagB | kTagC};

}  // namespace

RegionStats loop_region_stats(const WeightedEnsemble& e, const RegionMask& mask) {
  RegionStats st;
  for (TagSet s = 1; s < 16; ++s) st.exact[s] = 0;
  for (TagSet r : kAggregates) st.crossing[r] = st.crossing_d[r] = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double p = e.probability(i);
    for (TagSet s : loop_tags(e.members()[i].config, mask)) {
      st.exact[s] += p;
      for (TagSet r : kAggregates) {
        if ((s & r) && (s & ~r & 15u)) {
          st.crossing[r] += p;
          if (s & kTagD) st.crossing_d[r] += p;
        }
      }
    }
  }
  for (TagSet r : kAggregates) {
    double sum = 0;
    for (TagSet x = 1; x < 8; ++x) {
      if (x & r) sum += st.exact[x | kTagD];
    }
    st.identity_residual = std::max(st.identity_residual, std::abs(sum - st.crossing_d[r]));
  }
  return st;
}

std::string to_string(Prescription p) { return p == Prescription::KP ? "kp" : "lw"; }

Prescription parse_prescription(const std::string& s) {
  if (s == "kp" || s == "KP") return Prescription::KP;
  if (s == "lw" || s == "LW") return Prescription::LW;
  throw ParseError("unknown prescription '" + s + "'");
}

std::vector<std::pair<TagSet, int>> tee_terms(Prescription p) {
  if (p == Prescription::KP) {
    return {{kTagA, +1}, {kTagB, +1}, {kTagC, +1}, {kTagA | kTagB, -1}, {kTagB | kTagC, -1},
            {kTagA | kTagC, -1}, {kTagA | kTagB | kTagC, +1}};
  }
  return {{kTagA | kTagB, +1}, {kTagB | kTagC, +1}, {kTagA | kTagB | kTagC, -1}, {kTagB, -1}};
}

namespace {

int components(const LatticeGeom& g, const std::vector<bool>& in) {
  const int n = g.size();
  std::vector<int> seen(g.num_faces(), 0);
  int count = 0;
  for (int f = 0; f < g.num_faces(); ++f) {
    if (!in[f] || seen[f]) continue;
    ++count;
    std::vector<int> stack{f};
    seen[f] = 1;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      const int r = g.face_row(x), c = g.face_col(x);
      const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= n || q[1] < 0 || q[1] >= n) continue;
        const int y = g.face(q[0], q[1]);
        if (in[y] && !seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
      }
    }
  }
  return count;
}

// Faces outside `in` that cannot reach the lattice exterior without crossing `in`.
int hole_faces(const LatticeGeom& g, const std::vector<bool>& in) {
  const int n = g.size();
  std::vector<int> seen(g.num_faces(), 0);
  std::vector<int> stack;
  for (int f = 0; f < g.num_faces(); ++f) {
    const int r = g.face_row(f), c = g.face_col(f);
    if (!in[f] && (r == 0 || c == 0 || r == n - 1 || c == n - 1)) {
      seen[f] = 1;
      stack.push_back(f);
    }
  }
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    const int r = g.face_row(x), c = g.face_col(x);
    const int nb[4][2] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (const auto& q : nb) {
      if (q[0] < 0 || q[0] >= n || q[1] < 0 || q[1] >= n) continue;
      const int y = g.face(q[0], q[1]);
      if (!in[y] && !seen[y]) {
        seen[y] = 1;
        stack.push_back(y);
      }
    }
  }
  int holes = 0;
  for (int f = 0; f < g.num_faces(); ++f) holes += (!in[f] && !seen[f]);
  return holes;
}

std::vector<bool> faces_of(const RegionMask& mask, TagSet s) {
  std::vector<bool> in(mask.geom().num_faces());
  for (int f = 0; f < mask.geom().num_faces(); ++f) in[f] = (mask.face_tag(f) & s) != 0;
  return in;
}

}  // namespace

void check_mask_topology(const RegionMask& mask, Prescription p) {
  const LatticeGeom& g = mask.geom();
  const auto a = faces_of(mask, kTagA), b = faces_of(mask, kTagB), c = faces_of(mask, kTagC);
  const auto abc = faces_of(mask, kTagA | kTagB | kTagC);
  const auto d = faces_of(mask, kTagD);
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw MaskError(to_string(p) + " mask: " + what);
  };
  need(components(g, a) == 1, "region A must be one connected piece");
  need(components(g, c) == 1, "region C must be one connected piece");
  need(components(g, abc) == 1, "ABC must be connected");
  need(components(g, d) >= 1, "D must be non-empty");
  if (p == Prescription::KP) {
    need(components(g, b) == 1, "region B must be one connected piece");
    need(hole_faces(g, abc) == 0, "ABC must be a disc (no holes)");
  } else {
    need(components(g, b) == 2, "region B must have exactly two components");
    need(hole_faces(g, abc) > 0, "ABC must be an annulus around part of D");
    for (int f = 0; f < g.num_faces(); ++f) {
      if (!a[f]) continue;
      const int r = g.face_row(f), col = g.face_col(f);
      const int nb[4][2] = {{r - 1, col}, {r + 1, col}, {r, col - 1}, {r, col + 1}};
      for (const auto& q : nb) {
        if (q[0] < 0 || q[0] >= g.size() || q[1] < 0 || q[1] >= g.size()) continue;
        need(!c[g.face(q[0], q[1])], "A and C must not touch");
      }
    }
  }
}

TEEReport tee(const WeightedEnsemble& e, const RegionMask& mask, Prescription p, EntropyMethod m) {
  check_mask_topology(mask, p);
  if (m == EntropyMethod::Labels && e.kind() != ModelKind::Colored) {
    throw ModelError("label entropies need a colored ensemble");
  }
  TEEReport rep;
  rep.prescription = p;
  rep.method = m == EntropyMethod::Labels ? "labels" : "svd";
  for (const auto& [region, sign] : tee_terms(p)) {
    const Bipartition bp = mask.bipartition(region);
    const double s = m == EntropyMethod::Labels ? schmidt_entropy(e, bp).s_nats : rdm_entropy_svd(e, bp).s_nats;
    rep.entropies.emplace_back(tag_set_name(region), s);
    rep.value += sign * s;
  }
  return rep;
}

TEEReport tee(const WeightedEnsemble& e, const RegionMask& mask, Prescription p) {
  return tee(e, mask, p, e.kind() == ModelKind::Colored ? EntropyMethod::Labels : EntropyMethod::Svd);
}

TheoremReport theorem_check(const LatticeGeom& geom, int c, double t, const RegionMask& mask, Prescription p,
                            bool with_svd) {
  check_mask_topology(mask, p);
  TheoremReport rep;
  rep.prescription = p;
  rep.c = c;
  rep.t = t;
  const ConfigSet colored_set = reachable_set(geom, c);
  const ConfigSet plain_set = c == 1 ? colored_set : reachable_set(geom, 1);
  const WeightedEnsemble col = build_colored_gs(geom, c, t, &colored_set);
  const WeightedEnsemble unc = build_uncolored_gs(geom, c, t, &plain_set);
  rep.colored = tee(col, mask, p, EntropyMethod::Labels);
  rep.uncolored = tee(unc, mask, p, EntropyMethod::Svd);
  rep.stats = loop_region_stats(unc, mask);
  const TagSet target = p == Prescription::KP ? (kTagA | kTagB | kTagC | kTagD) : (kTagA | kTagC | kTagD);
  rep.loop_stat = rep.stats.exact.at(target);
  const double lc = std::log(static_cast<double>(c));
  rep.delta_i = rep.colored.value - rep.uncolored.value;
  rep.residual = std::abs(rep.delta_i - rep.loop_stat * lc);
  double signed_sum = 0;
  for (const auto& [region, sign] : tee_terms(p)) signed_sum += sign * rep.stats.crossing.at(region);
  rep.per_loop_defect = signed_sum - rep.loop_stat;
  if (with_svd) {
    rep.colored_svd = tee(col, mask, p, EntropyMethod::Svd);
    rep.delta_i_svd = rep.colored_svd.value - rep.uncolored.value;
    rep.residual_svd = std::abs(rep.delta_i_svd - rep.loop_stat * lc);
  }
  return rep;
}

WeightedEnsemble mountain_state(const LatticeGeom& geom, int c) {
  const int n = geom.size();
  if (n % 2 != 0) throw ModelError("mountain state needs even n");
  const int rings = n / 2;
  std::vector<std::vector<int>> cycles;
  for (int k = 0; k < rings; ++k) {
    std::vector<int> cyc;
    const int lo = k, hi = n - k;
    for (int col = lo; col < hi; ++col) cyc.push_back(geom.vertex(lo, col));
    for (int row = lo; row < hi; ++row) cyc.push_back(geom.vertex(row, hi));
    for (int col = hi; col > lo; --col) cyc.push_back(geom.vertex(hi, col));
    for (int row = hi; row > lo; --row) cyc.push_back(geom.vertex(row, lo));
    cycles.push_back(std::move(cyc));
  }
  WeightedEnsemble e(geom, ModelKind::Colored, {n, c, 1, 1.0, 1.0});
  std::size_t total = 1;
  for (int k = 0; k < rings; ++k) total *= c;
  for (std::size_t idx = 0; idx < total; ++idx) {
    LoopConfig cfg(geom);
    std::size_t rest = idx;
    for (const auto& cyc : cycles) {
      draw_cycle(cfg, cyc, static_cast<int>(rest % c), true);
      rest /= c;
    }
    e.add({cfg, {}, 0.0, volume(cfg), rings});
  }
  e.finalize();
  return e;
}

MountainReport mountain_entropy(const LatticeGeom& geom, int c, const Bipartition& bp) {
  const WeightedEnsemble e = mountain_state(geom, c);
  MountainReport rep;
  rep.rings = geom.size() / 2;
  for (const Loop& loop : extract_loops(e.members()[0].config)) {
    bool in = false, out = false;
    for (int l : loop.links) (bp.in_region[l] ? in : out) = true;
    rep.crossed += in && out;
  }
  rep.expected = rep.crossed * std::log(static_cast<double>(c));
  rep.s_svd = rdm_entropy_svd(e, bp).s_nats;
  return rep;
}

}  // namespace loopforge
