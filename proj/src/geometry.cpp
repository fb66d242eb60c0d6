#include "loopforge/geometry.hpp"

#include <fstream>
#include <sstream>

#include "loopforge/errors.hpp"

namespace loopforge {

LatticeGeom::LatticeGeom(int n) : n_(n) {
  if (n < 1 || n > kMaxSize) {
    throw SizeError("lattice size " + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxSize) + "]");
  }
  const int nl = num_links();
  links_.resize(nl);
  link_faces_.resize(nl);
  link_vertices_.resize(nl);
  owner_.resize(nl);
  vertex_links_.resize(num_vertices());
  face_links_.resize(num_faces());

  for (int r = 0; r <= n; ++r) {
    for (int c = 0; c < n; ++c) {
      const int l = hlink(r, c);
      links_[l] = {Orientation::Horizontal, r, c};
      link_faces_[l] = {r > 0 ? face(r - 1, c) : -1, r < n ? face(r, c) : -1};
      link_vertices_[l] = {vertex(r, c), vertex(r, c + 1)};
      owner_[l] = r < n ? face(r, c) : face(r - 1, c);
    }
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c <= n; ++c) {
      const int l = vlink(r, c);
      links_[l] = {Orientation::Vertical, r, c};
      link_faces_[l] = {c > 0 ? face(r, c - 1) : -1, c < n ? face(r, c) : -1};
      link_vertices_[l] = {vertex(r + 1, c), vertex(r, c)};
      owner_[l] = c > 0 ? face(r, c - 1) : face(r, c);
    }
  }
  for (int l = 0; l < nl; ++l) {
    for (int v : link_vertices_[l]) vertex_links_[v].push_back(l);
    if (is_border(l)) border_links_.push_back(l);
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      face_links_[face(r, c)] = {hlink(r, c), vlink(r, c + 1), hlink(r + 1, c), vlink(r, c)};
    }
  }
}

std::array<int, 4> LatticeGeom::face_vertices(int f) const {
  const int r = face_row(f), c = face_col(f);
  return {vertex(r, c), vertex(r, c + 1), vertex(r + 1, c + 1), vertex(r + 1, c)};
}

std::array<int, 2> LatticeGeom::link_midpoint2(int l) const {
  const LinkId& id = links_[l];
  if (id.orient == Orientation::Horizontal) return {2 * id.col + 1, 2 * id.row};
  return {2 * id.col, 2 * id.row + 1};
}

std::string LatticeGeom::describe_link(int l) const {
  const LinkId& id = links_[l];
  std::ostringstream os;
  os << (id.orient == Orientation::Horizontal ? 'h' : 'v') << '(' << id.row << ',' << id.col << ')';
  return os.str();
}

LatticeGeom build_lattice(int n) { return LatticeGeom(n); }

TagSet tag_bit(RegionTag t) {
  switch (t) {
    case RegionTag::A: return kTagA;
    case RegionTag::B: return kTagB;
    case RegionTag::C: return kTagC;
    default: return kTagD;
  }
}

TagSet parse_tag_set(const std::string& s) {
  TagSet out = 0;
  for (char ch : s) {
    switch (ch) {
      case 'A': out |= kTagA; break;
      case 'B': out |= kTagB; break;
      case 'C': out |= kTagC; break;
      case 'D': out |= kTagD; break;
      default: throw ParseError(std::string("bad region tag '") + ch + "'");
    }
  }
  return out;
}

std::string tag_set_name(TagSet s) {
  std::string out;
  if (s & kTagA) out += 'A';
  if (s & kTagB) out += 'B';
  if (s & kTagC) out += 'C';
  if (s & kTagD) out += 'D';
  return out;
}

RegionMask::RegionMask(const LatticeGeom& geom, std::vector<RegionTag> labels)
    : geom_(&geom), labels_(std::move(labels)) {
  if (static_cast<int>(labels_.size()) != geom.num_faces()) {
    throw ParseError("mask has " + std::to_string(labels_.size()) + " faces, lattice has " +
                     std::to_string(geom.num_faces()));
  }
}

TagSet RegionMask::face_tag(int f) const { return tag_bit(labels_[f]); }

int RegionMask::count(RegionTag t) const {
  int k = 0;
  for (RegionTag x : labels_) k += (x == t);
  return k;
}

Bipartition face_bipartition(const LatticeGeom& geom, const std::vector<bool>& faces) {
  Bipartition b;
  b.face_in_region = faces;
  b.in_region.resize(geom.num_links());
  for (int l = 0; l < geom.num_links(); ++l) {
    b.in_region[l] = faces[geom.owner_face(l)];
    const auto& lf = geom.link_faces(l);
    if (lf[0] >= 0 && lf[1] >= 0 && faces[lf[0]] != faces[lf[1]]) ++b.boundary_links;
  }
  return b;
}

Bipartition link_bipartition(const LatticeGeom& geom, const std::vector<int>& region_links) {
  Bipartition b;
  b.in_region.assign(geom.num_links(), false);
  b.face_in_region.assign(geom.num_faces(), false);
  for (int l : region_links) {
    if (l < 0 || l >= geom.num_links()) throw ParseError("link id " + std::to_string(l) + " out of range");
    b.in_region[l] = true;
  }
  // Region links that share a vertex with a complement link.
  for (int l = 0; l < geom.num_links(); ++l) {
    if (!b.in_region[l]) continue;
    bool touches = false;
    for (int v : geom.link_vertices(l)) {
      for (int m : geom.vertex_links(v)) touches |= !b.in_region[m];
    }
    b.boundary_links += touches;
  }
  return b;
}

Bipartition RegionMask::bipartition(TagSet region) const {
  std::vector<bool> faces(labels_.size());
  for (std::size_t f = 0; f < labels_.size(); ++f) faces[f] = (face_tag(static_cast<int>(f)) & region) != 0;
  return face_bipartition(*geom_, faces);
}

std::string RegionMask::to_text() const {
  const int n = geom_->size();
  std::string out;
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) out += static_cast<char>(labels_[geom_->face(r, c)]);
    out += '\n';
  }
  return out;
}

RegionMask parse_region_mask(const std::string& text, const LatticeGeom& geom) {
  const int n = geom.size();
  std::vector<std::string> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    rows.push_back(line);
  }
  while (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (static_cast<int>(rows.size()) != n) {
    throw ParseError("mask has " + std::to_string(rows.size()) + " rows, expected " + std::to_string(n));
  }
  std::vector<RegionTag> labels(geom.num_faces());
  for (int r = 0; r < n; ++r) {
    if (static_cast<int>(rows[r].size()) != n) {
      throw ParseError("mask row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                       " columns, expected " + std::to_string(n));
    }
    for (int c = 0; c < n; ++c) {
      const char ch = rows[r][c];
      if (ch != 'A' && ch != 'B' && ch != 'C' && ch != 'D' && ch != '.') {
        throw ParseError("illegal mask character '" + std::string(1, ch) + "' at row " +
                         std::to_string(r) + ", col " + std::to_string(c));
      }
      labels[geom.face(r, c)] = static_cast<RegionTag>(ch);
    }
  }
  return RegionMask(geom, std::move(labels));
}

RegionMask load_region_mask(const std::string& path, const LatticeGeom& geom) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mask file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_region_mask(ss.str(), geom);
}

RegionMask vertical_cut_mask(const LatticeGeom& geom, int k) {
  const int n = geom.size();
  if (k < 0 || k > n) throw ParseError("vertical cut " + std::to_string(k) + " outside [0, n]");
  std::vector<RegionTag> labels(geom.num_faces());
  for (int f = 0; f < geom.num_faces(); ++f) labels[f] = geom.face_col(f) < k ? RegionTag::A : RegionTag::D;
  return RegionMask(geom, std::move(labels));
}

}  // namespace loopforge
