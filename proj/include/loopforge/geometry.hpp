#pragma once

#include <array>
#include <string>
#include <vector>

namespace loopforge {

enum class Orientation : unsigned char { Horizontal, Vertical };

// Horizontal link (line r in 0..n, col c in 0..n-1); vertical link (row r in
// 0..n-1, line c in 0..n). Row 0 is the top of the lattice.
struct LinkId {
  Orientation orient;
  int row;
  int col;
};

// Slots of a face boundary, in this order everywhere.
enum FaceSide : int { kTop = 0, kRight = 1, kBottom = 2, kLeft = 3 };

class LatticeGeom {
 public:
  static constexpr int kMaxSize = 64;

  explicit LatticeGeom(int n);

  int size() const { return n_; }
  int num_links() const { return 2 * n_ * (n_ + 1); }
  int num_faces() const { return n_ * n_; }
  int num_vertices() const { return (n_ + 1) * (n_ + 1); }

  int hlink(int line, int col) const { return line * n_ + col; }
  int vlink(int row, int line) const { return n_ * (n_ + 1) + row * (n_ + 1) + line; }
  int face(int row, int col) const { return row * n_ + col; }
  int vertex(int row, int col) const { return row * (n_ + 1) + col; }
  int face_row(int f) const { return f / n_; }
  int face_col(int f) const { return f % n_; }
  int vertex_row(int v) const { return v / (n_ + 1); }
  int vertex_col(int v) const { return v % (n_ + 1); }

  const LinkId& link(int l) const { return links_[l]; }

  // Incident links of a vertex (2, 3 or 4 entries).
  const std::vector<int>& vertex_links(int v) const { return vertex_links_[v]; }
  // Boundary links of a face indexed by FaceSide.
  const std::array<int, 4>& face_links(int f) const { return face_links_[f]; }
  // Corner vertices of a face: top-left, top-right, bottom-right, bottom-left.
  std::array<int, 4> face_vertices(int f) const;
  // Horizontal: {above, below}; vertical: {left, right}. -1 outside the lattice.
  const std::array<int, 2>& link_faces(int l) const { return link_faces_[l]; }
  // Endpoints ordered along the positive direction (east / north): {tail, head}.
  const std::array<int, 2>& link_vertices(int l) const { return link_vertices_[l]; }
  // Sign of the flow change on each face side when the face is raised by one.
  static constexpr std::array<int, 4> kRaiseSign{-1, +1, +1, -1};

  bool is_border(int l) const { return link_faces_[l][0] < 0 || link_faces_[l][1] < 0; }
  const std::vector<int>& border_links() const { return border_links_; }

  // Face that owns a link for region bipartitions: the face left of a vertical
  // link / below a horizontal link, else the unique adjacent face.
  int owner_face(int l) const { return owner_[l]; }

  // Doubled midpoint coordinates (x to the east, y to the south).
  std::array<int, 2> link_midpoint2(int l) const;

  std::string describe_link(int l) const;

 private:
  int n_;
  std::vector<LinkId> links_;
  std::vector<std::vector<int>> vertex_links_;
  std::vector<std::array<int, 4>> face_links_;
  std::vector<std::array<int, 2>> link_faces_;
  std::vector<std::array<int, 2>> link_vertices_;
  std::vector<int> border_links_;
  std::vector<int> owner_;
};

LatticeGeom build_lattice(int n);

enum class RegionTag : char { A = 'A', B = 'B', C = 'C', D = 'D', Unassigned = '.' };

// Bitmask over region tags: A=1, B=2, C=4, D=8.
using TagSet = unsigned;
constexpr TagSet kTagA = 1, kTagB = 2, kTagC = 4, kTagD = 8;
TagSet tag_bit(RegionTag t);
TagSet parse_tag_set(const std::string& s);
std::string tag_set_name(TagSet s);

// Link-level bipartition. `faces` lists the region faces (may be empty for
// link-only cuts).
struct Bipartition {
  std::vector<bool> in_region;
  std::vector<bool> face_in_region;
  int boundary_links = 0;  // links separating a region face from a non-region face
};

class RegionMask {
 public:
  RegionMask(const LatticeGeom& geom, std::vector<RegionTag> labels);

  const LatticeGeom& geom() const { return *geom_; }
  RegionTag label(int f) const { return labels_[f]; }
  const std::vector<RegionTag>& labels() const { return labels_; }
  // Tag with unassigned faces folded into D.
  TagSet face_tag(int f) const;
  int count(RegionTag t) const;

  Bipartition bipartition(TagSet region) const;
  std::string to_text() const;

 private:
  const LatticeGeom* geom_;
  std::vector<RegionTag> labels_;
};

RegionMask parse_region_mask(const std::string& text, const LatticeGeom& geom);
RegionMask load_region_mask(const std::string& path, const LatticeGeom& geom);
// Faces with col < k tagged A, the rest D.
RegionMask vertical_cut_mask(const LatticeGeom& geom, int k);
Bipartition face_bipartition(const LatticeGeom& geom, const std::vector<bool>& faces);
Bipartition link_bipartition(const LatticeGeom& geom, const std::vector<int>& region_links);

}  // namespace loopforge
