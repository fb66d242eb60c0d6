#include "loopforge/loopconfig.hpp"

#include <algorithm>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

namespace {

int link_between(const LatticeGeom& g, int u, int v) {
  for (int l : g.vertex_links(u)) {
    const auto& e = g.link_vertices(l);
    if (e[0] == v || e[1] == v) return l;
  }
  return -1;
}

int head_vertex(const LatticeGeom& g, int l, int dir) { return g.link_vertices(l)[dir > 0 ? 1 : 0]; }
int tail_vertex(const LatticeGeom& g, int l, int dir) { return g.link_vertices(l)[dir > 0 ? 0 : 1]; }

// Twice the shoelace area with x = col, y = -row.
long twice_area(const LatticeGeom& g, const std::vector<int>& verts) {
  long a = 0;
  const std::size_t k = verts.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int u = verts[i], v = verts[(i + 1) % k];
    const long xu = g.vertex_col(u), yu = -g.vertex_row(u);
    const long xv = g.vertex_col(v), yv = -g.vertex_row(v);
    a += xu * yv - xv * yu;
  }
  return a;
}

const char* kHex = "0123456789abcdef";

}  // namespace

LoopConfig::LoopConfig(const LatticeGeom& geom) : geom_(&geom), codes_(geom.num_links(), 0) {}

std::string LoopConfig::hex() const {
  std::string out;
  out.reserve(2 * codes_.size());
  for (std::uint8_t c : codes_) {
    out += kHex[c >> 4];
    out += kHex[c & 15];
  }
  return out;
}

LoopConfig LoopConfig::from_hex(const LatticeGeom& geom, const std::string& hex) {
  LoopConfig cfg(geom);
  if (hex.size() != 2 * static_cast<std::size_t>(geom.num_links())) {
    throw ParseError("hex label has length " + std::to_string(hex.size()) + ", expected " +
                     std::to_string(2 * geom.num_links()));
  }
  auto nib = [](char ch) -> int {
    if (ch >= '0' && ch <= '9') return ch - '0';
    if (ch >= 'a' && ch <= 'f') return ch - 'a' + 10;
    if (ch >= 'A' && ch <= 'F') return ch - 'A' + 10;
    throw ParseError(std::string("bad hex digit '") + ch + "'");
  };
  for (int l = 0; l < geom.num_links(); ++l) {
    cfg.codes_[l] = static_cast<std::uint8_t>(nib(hex[2 * l]) * 16 + nib(hex[2 * l + 1]));
  }
  return cfg;
}

std::size_t hash_codes(const std::vector<std::uint8_t>& codes) {
  std::size_t h = 1469598103934665603ull;
  for (std::uint8_t c : codes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::size_t LoopConfigHash::operator()(const LoopConfig& c) const { return hash_codes(c.codes()); }

namespace {

// Returns 0 if the vertex is fine, else the violation kind + 1.
int check_vertex(const LoopConfig& cfg, int v) {
  const LatticeGeom& g = cfg.geom();
  int occ[4];
  int k = 0;
  for (int l : g.vertex_links(v)) {
    if (cfg.occupied(l)) {
      if (k == 2) return 1 + static_cast<int>(Violation::Kind::Degree);
      occ[k++] = l;
    }
  }
  if (k == 0) return 0;
  if (k != 2) return 1 + static_cast<int>(Violation::Kind::Degree);
  const LinkState a = cfg.state(occ[0]), b = cfg.state(occ[1]);
  if (a.color() != b.color()) return 1 + static_cast<int>(Violation::Kind::Color);
  const bool a_in = head_vertex(g, occ[0], a.direction()) == v;
  const bool b_in = head_vertex(g, occ[1], b.direction()) == v;
  if (a_in == b_in) return 1 + static_cast<int>(Violation::Kind::Flow);
  return 0;
}

}  // namespace

bool vertices_ok(const LoopConfig& cfg, const int* vertices, int count) {
  for (int i = 0; i < count; ++i) {
    if (check_vertex(cfg, vertices[i]) != 0) return false;
  }
  return true;
}

namespace {

std::vector<Loop> trace_loops(const LoopConfig& cfg) {
  const LatticeGeom& g = cfg.geom();
  const int n = g.size();
  std::vector<Loop> loops;
  std::vector<char> seen(g.num_links(), 0);
  for (int start = 0; start < g.num_links(); ++start) {
    if (!cfg.occupied(start) || seen[start]) continue;
    Loop loop;
    loop.color = cfg.state(start).color();
    int l = start;
    while (true) {
      seen[l] = 1;
      const int dir = cfg.flow(l);
      loop.links.push_back(l);
      loop.vertices.push_back(tail_vertex(g, l, dir));
      const int h = head_vertex(g, l, dir);
      int next = -1;
      for (int m : g.vertex_links(h)) {
        if (m != l && cfg.occupied(m)) next = m;
      }
      if (next < 0) throw ConstraintError("open loop at vertex " + std::to_string(h));
      if (next == start) break;
      if (seen[next]) throw ConstraintError("loop revisits link " + std::to_string(next));
      l = next;
    }
    loop.length = static_cast<int>(loop.links.size());
    loop.signed_area = static_cast<int>(twice_area(g, loop.vertices) / 2);
    // Ray cast to the east through the loop's vertical links.
    std::vector<char> vert(g.num_links(), 0);
    for (int m : loop.links) {
      if (g.link(m).orient == Orientation::Vertical) vert[m] = 1;
    }
    for (int r = 0; r < n; ++r) {
      int parity = 0;
      for (int c = n - 1; c >= 0; --c) {
        parity ^= vert[g.vlink(r, c + 1)];
        if (parity) loop.enclosed_faces.push_back(g.face(r, c));
      }
    }
    std::sort(loop.enclosed_faces.begin(), loop.enclosed_faces.end());
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace

ValidityReport validate(const LoopConfig& cfg) {
  ValidityReport rep;
  const LatticeGeom& g = cfg.geom();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const int bad = check_vertex(cfg, v);
    if (bad) {
      rep.plaquette_ok = false;
      rep.violations.push_back({static_cast<Violation::Kind>(bad - 1), v});
    }
  }
  if (!rep.plaquette_ok) {
    rep.framing_ok = false;
    return rep;
  }
  const auto loops = trace_loops(cfg);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    if (loops[i].signed_area <= 0) {
      rep.framing_ok = false;
      rep.violations.push_back({Violation::Kind::Framing, static_cast<int>(i)});
    }
  }
  return rep;
}

std::vector<Loop> extract_loops(const LoopConfig& cfg) {
  const LatticeGeom& g = cfg.geom();
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (check_vertex(cfg, v)) throw ConstraintError("invalid configuration at vertex " + std::to_string(v));
  }
  return trace_loops(cfg);
}

int count_loops(const LoopConfig& cfg) {
  return static_cast<int>(extract_loops(cfg).size());
}

int crossing_delta(const LoopConfig& cfg, int l, int from) {
  const auto& f = cfg.geom().link_faces(l);
  const int flow = cfg.flow(l);
  if (from == f[0]) return -flow;
  if (from == f[1]) return flow;
  throw ConstraintError("face " + std::to_string(from) + " is not adjacent to link " + std::to_string(l));
}

HeightField signed_heights(const LoopConfig& cfg) {
  const LatticeGeom& g = cfg.geom();
  const int n = g.size();
  HeightField phi(g.num_faces(), 0);
  for (int c = 0; c < n; ++c) {
    int h = 0, from = -1;
    for (int r = 0; r < n; ++r) {
      h += crossing_delta(cfg, g.hlink(r, c), from);
      from = g.face(r, c);
      phi[from] = h;
    }
  }
  return phi;
}

HeightField height_field(const LoopConfig& cfg) {
  const ValidityReport rep = validate(cfg);
  if (!rep.plaquette_ok) throw ConstraintError("height field of an invalid configuration");
  if (!rep.framing_ok) throw FramingError("configuration contains a clockwise loop");
  return signed_heights(cfg);
}

HeightField height_by_enclosure(const LoopConfig& cfg) {
  HeightField phi(cfg.geom().num_faces(), 0);
  for (const Loop& loop : extract_loops(cfg)) {
    const int s = loop.signed_area > 0 ? 1 : -1;
    for (int f : loop.enclosed_faces) phi[f] += s;
  }
  return phi;
}

long volume(const LoopConfig& cfg) {
  long v = 0;
  for (int h : height_field(cfg)) v += h;
  return v;
}

Uncolored uncolor(const LoopConfig& cfg) {
  const int loops = static_cast<int>(extract_loops(cfg).size());
  LoopConfig out(cfg.geom());
  for (int l = 0; l < cfg.num_links(); ++l) {
    if (cfg.occupied(l)) out.set(l, LinkState::occupied(0, cfg.flow(l)));
  }
  return {out, loops};
}

LoopConfig rasterize(const LatticeGeom& geom, const std::vector<Loop>& loops) {
  LoopConfig cfg(geom);
  for (const Loop& loop : loops) {
    for (std::size_t i = 0; i < loop.links.size(); ++i) {
      const int l = loop.links[i];
      const int dir = geom.link_vertices(l)[0] == loop.vertices[i] ? +1 : -1;
      cfg.set(l, LinkState::occupied(loop.color, dir));
    }
  }
  return cfg;
}

void draw_cycle(LoopConfig& cfg, const std::vector<int>& cycle, int color, bool ccw) {
  const LatticeGeom& g = cfg.geom();
  std::vector<int> verts = cycle;
  if ((twice_area(g, verts) > 0) != ccw) std::reverse(verts.begin(), verts.end());
  const std::size_t k = verts.size();
  for (std::size_t i = 0; i < k; ++i) {
    const int u = verts[i], v = verts[(i + 1) % k];
    const int l = link_between(g, u, v);
    if (l < 0) throw ConstraintError("cycle vertices are not adjacent");
    cfg.set(l, LinkState::occupied(color, g.link_vertices(l)[0] == u ? +1 : -1));
  }
}

std::vector<std::vector<std::vector<int>>> enumerate_cycle_sets(const LatticeGeom& geom,
                                                               std::size_t cap) {
  const int nl = geom.num_links();
  std::vector<int> order(nl);
  for (int l = 0; l < nl; ++l) order[l] = l;
  auto key = [&](int l) {
    const auto& e = geom.link_vertices(l);
    return std::max(e[0], e[1]);
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return key(a) < key(b); });
  // Vertices whose last incident link is decided at each position.
  std::vector<std::vector<int>> closes(nl);
  {
    std::vector<int> last(geom.num_vertices(), -1);
    for (int p = 0; p < nl; ++p) {
      for (int v : geom.link_vertices(order[p])) last[v] = p;
    }
    for (int v = 0; v < geom.num_vertices(); ++v) closes[last[v]].push_back(v);
  }

  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> deg(geom.num_vertices(), 0);
  std::vector<char> occ(nl, 0);

  auto emit = [&]() {
    if (out.size() >= cap) throw CapacityError("cycle-set enumeration exceeded capacity", cap);
    std::vector<std::vector<int>> cycles;
    std::vector<char> seen(nl, 0);
    for (int s = 0; s < nl; ++s) {
      if (!occ[s] || seen[s]) continue;
      std::vector<int> cyc;
      int l = s;
      int v = geom.link_vertices(s)[0];
      while (true) {
        seen[l] = 1;
        cyc.push_back(v);
        const auto& e = geom.link_vertices(l);
        const int w = e[0] == v ? e[1] : e[0];
        int next = -1;
        for (int m : geom.vertex_links(w)) {
          if (m != l && occ[m]) next = m;
        }
        v = w;
        if (next == s) break;
        l = next;
      }
      cycles.push_back(std::move(cyc));
    }
    out.push_back(std::move(cycles));
  };

  std::function<void(int)> rec = [&](int p) {
    if (p == nl) {
      emit();
      return;
    }
    const int l = order[p];
    const auto& e = geom.link_vertices(l);
    auto closed_ok = [&]() {
      for (int v : closes[p]) {
        if (deg[v] != 0 && deg[v] != 2) return false;
      }
      return true;
    };
    if (closed_ok()) rec(p + 1);
    if (deg[e[0]] < 2 && deg[e[1]] < 2) {
      ++deg[e[0]];
      ++deg[e[1]];
      occ[l] = 1;
      if (closed_ok()) rec(p + 1);
      occ[l] = 0;
      --deg[e[0]];
      --deg[e[1]];
    }
  };
  rec(0);
  return out;
}

std::vector<LoopConfig> enumerate_loop_packings(const LatticeGeom& geom, int colors,
                                                FramingMode mode, std::size_t cap) {
  if (colors < 1 || colors > kMaxColors) throw ModelError("colors must be in [1, 16]");
  std::vector<LoopConfig> out;
  for (const auto& cycles : enumerate_cycle_sets(geom, cap)) {
    const std::size_t k = cycles.size();
    const int per = (mode == FramingMode::Both ? 2 : 1) * colors;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < k; ++i) combos *= per;
    if (out.size() + combos > cap) throw CapacityError("loop packing enumeration exceeded capacity", cap);
    for (std::size_t idx = 0; idx < combos; ++idx) {
      LoopConfig cfg(geom);
      std::size_t rest = idx;
      for (std::size_t i = 0; i < k; ++i) {
        const int choice = static_cast<int>(rest % per);
        rest /= per;
        draw_cycle(cfg, cycles[i], choice % colors, choice / colors == 0);
      }
      out.push_back(std::move(cfg));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string render_ascii(const LoopConfig& cfg) {
  const LatticeGeom& g = cfg.geom();
  const int n = g.size();
  std::ostringstream os;
  auto digit = [](int c) { return static_cast<char>(c < 10 ? '0' + c : 'a' + c - 10); };
  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c <= n; ++c) {
      os << '+';
      if (c == n) break;
      const LinkState s = cfg.state(g.hlink(r, c));
      if (!s.is_occupied()) {
        os << "   ";
      } else if (s.direction() > 0) {
        os << '-' << digit(s.color()) << '>';
      } else {
        os << '<' << digit(s.color()) << '-';
      }
    }
    os << '\n';
    if (r == n) break;
    for (int c = 0; c <= n; ++c) {
      const LinkState s = cfg.state(g.vlink(r, c));
      if (!s.is_occupied()) {
        os << "  ";
      } else {
        os << (s.direction() > 0 ? '^' : 'v') << digit(s.color());
      }
      if (c < n) os << "  ";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace loopforge
