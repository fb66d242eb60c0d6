#include "loopforge/moves.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

std::string to_string(const Move& m) {
  std::ostringstream os;
  os << 'M' << static_cast<int>(m.kind) << "(face=" << m.face << ",color=" << m.color
     << ",variant=" << m.variant << ',' << (m.direction == MoveDir::Forward ? "fwd" : "rev") << ')';
  return os.str();
}

std::optional<std::pair<MoveKind, int>> classify_lower_mask(unsigned mask) {
  const int bits = __builtin_popcount(mask);
  if (bits == 0) return std::make_pair(MoveKind::M1, 0);
  for (int s = 0; s < 4; ++s) {
    if (bits == 1 && mask == (1u << s)) return std::make_pair(MoveKind::M3, s);
    if (bits == 3 && mask == (15u & ~(1u << s))) return std::make_pair(MoveKind::M3, 4 + s);
    if (bits == 2 && mask == ((1u << s) | (1u << ((s + 1) % 4)))) return std::make_pair(MoveKind::M2, s);
  }
  return std::nullopt;
}

std::optional<FaceRewrite> rewrite_face(const LoopConfig& cfg, int f, bool raise, int nucleation_color) {
  const LatticeGeom& g = cfg.geom();
  const auto& sides = g.face_links(f);
  unsigned mask = 0;
  int color = -1;
  for (int s = 0; s < 4; ++s) {
    const LinkState st = cfg.state(sides[s]);
    if (!st.is_occupied()) continue;
    // Occupied sides are removed by the rewrite; their flow must cancel.
    const int want = raise ? -LatticeGeom::kRaiseSign[s] : LatticeGeom::kRaiseSign[s];
    if (st.direction() != want) return std::nullopt;
    if (color >= 0 && st.color() != color) return std::nullopt;
    color = st.color();
    mask |= 1u << s;
  }
  const unsigned lower_mask = raise ? mask : (15u & ~mask);
  const auto kind = classify_lower_mask(lower_mask);
  if (!kind) return std::nullopt;
  if (color < 0) color = nucleation_color;
  LoopConfig out = cfg;
  for (int s = 0; s < 4; ++s) {
    if (mask & (1u << s)) {
      out.set(sides[s], LinkState::vacant());
    } else {
      const int dir = raise ? LatticeGeom::kRaiseSign[s] : -LatticeGeom::kRaiseSign[s];
      out.set(sides[s], LinkState::occupied(color, dir));
    }
  }
  const auto corners = g.face_vertices(f);
  if (!vertices_ok(out, corners.data(), 4)) return std::nullopt;
  return FaceRewrite{kind->first, kind->second, color, std::move(out)};
}

std::vector<Move> applicable_moves(const LoopConfig& cfg, int colors) {
  const ValidityReport rep = validate(cfg);
  if (!rep.plaquette_ok || !rep.framing_ok) throw ConstraintError("applicable_moves on an invalid configuration");
  const LatticeGeom& g = cfg.geom();
  std::vector<Move> out;
  for (int f = 0; f < g.num_faces(); ++f) {
    for (int raise = 1; raise >= 0; --raise) {
      for (int k = 0; k < colors; ++k) {
        auto rw = rewrite_face(cfg, f, raise != 0, k);
        if (!rw) break;
        const bool nucleation = rw->kind == MoveKind::M1 && raise;
        if (!nucleation && k > 0) break;
        const ValidityReport r2 = validate(rw->result);
        if (r2.plaquette_ok && r2.framing_ok) {
          out.push_back({rw->kind, f, rw->color, rw->variant, raise ? MoveDir::Forward : MoveDir::Reverse});
        }
        if (!nucleation) break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

LoopConfig apply(const LoopConfig& cfg, const Move& m) {
  const bool raise = m.direction == MoveDir::Forward;
  if (m.face < 0 || m.face >= cfg.geom().num_faces()) throw MoveError("move face out of range: " + to_string(m));
  auto rw = rewrite_face(cfg, m.face, raise, m.color);
  if (!rw || rw->kind != m.kind || rw->variant != m.variant || rw->color != m.color) {
    throw MoveError("move not applicable: " + to_string(m));
  }
  const ValidityReport rep = validate(rw->result);
  if (!rep.plaquette_ok || !rep.framing_ok) throw MoveError("move result invalid: " + to_string(m));
  return std::move(rw->result);
}

std::optional<std::size_t> ConfigSet::find(const LoopConfig& c) const {
  auto it = index.find(c.hex());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ConfigSet make_config_set(std::vector<LoopConfig> configs, std::vector<int> layers) {
  ConfigSet set;
  set.configs = std::move(configs);
  set.layer = std::move(layers);
  set.index.reserve(set.configs.size());
  for (std::size_t i = 0; i < set.configs.size(); ++i) set.index.emplace(set.configs[i].hex(), i);
  return set;
}

ConfigSet reachable_set(const LatticeGeom& geom, int colors, std::size_t cap) {
  if (colors < 1 || colors > kMaxColors) throw ModelError("colors must be in [1, 16]");
  std::unordered_map<LoopConfig, int, LoopConfigHash> seen;
  std::vector<LoopConfig> order;
  std::vector<int> layers;
  std::vector<LoopConfig> frontier{LoopConfig(geom)};
  seen.emplace(frontier[0], 0);
  int depth = 0;
  while (!frontier.empty()) {
    std::sort(frontier.begin(), frontier.end());
    for (const LoopConfig& c : frontier) {
      order.push_back(c);
      layers.push_back(depth);
    }
    std::vector<LoopConfig> next;
    for (const LoopConfig& c : frontier) {
      for (const Move& m : applicable_moves(c, colors)) {
        LoopConfig d = apply(c, m);
        if (seen.count(d)) continue;
        if (seen.size() >= cap) throw CapacityError("reachable set exceeded capacity", cap);
        seen.emplace(d, depth + 1);
        next.push_back(std::move(d));
      }
    }
    frontier = std::move(next);
    ++depth;
  }
  return make_config_set(std::move(order), std::move(layers));
}

void save_config_set(const ConfigSet& set, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write config set to " + path);
  for (std::size_t i = 0; i < set.size(); ++i) out << set.layer[i] << ' ' << set.configs[i].hex() << '\n';
}

ConfigSet load_config_set(const LatticeGeom& geom, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read config set from " + path);
  std::vector<LoopConfig> configs;
  std::vector<int> layers;
  int layer;
  std::string hex;
  while (in >> layer >> hex) {
    configs.push_back(LoopConfig::from_hex(geom, hex));
    layers.push_back(layer);
  }
  return make_config_set(std::move(configs), std::move(layers));
}

}  // namespace loopforge
