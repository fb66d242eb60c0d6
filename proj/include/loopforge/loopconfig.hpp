#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loopforge/geometry.hpp"

namespace loopforge {

// Packed per-link state: 0 vacant, otherwise 1 + 2*color + (direction < 0).
// Direction +1 points east (horizontal) or north (vertical).
class LinkState {
 public:
  LinkState() = default;
  static LinkState vacant() { return LinkState(0); }
  static LinkState occupied(int color, int direction) {
    return LinkState(static_cast<std::uint8_t>(1 + 2 * color + (direction < 0 ? 1 : 0)));
  }
  static LinkState from_code(std::uint8_t code) { return LinkState(code); }

  bool is_occupied() const { return code_ != 0; }
  int color() const { return (code_ - 1) / 2; }
  int direction() const { return code_ == 0 ? 0 : (((code_ - 1) & 1) ? -1 : +1); }
  std::uint8_t code() const { return code_; }
  bool operator==(const LinkState&) const = default;

 private:
  explicit LinkState(std::uint8_t c) : code_(c) {}
  std::uint8_t code_ = 0;
};

// Maximum number of colors representable in the packed encoding.
constexpr int kMaxColors = 16;

// Classical basis label. Holds a non-owning pointer to its geometry.
class LoopConfig {
 public:
  explicit LoopConfig(const LatticeGeom& geom);

  const LatticeGeom& geom() const { return *geom_; }
  int num_links() const { return static_cast<int>(codes_.size()); }
  LinkState state(int l) const { return LinkState::from_code(codes_[l]); }
  void set(int l, LinkState s) { codes_[l] = s.code(); }
  int flow(int l) const { return state(l).direction(); }
  bool occupied(int l) const { return codes_[l] != 0; }
  const std::vector<std::uint8_t>& codes() const { return codes_; }

  std::string hex() const;
  static LoopConfig from_hex(const LatticeGeom& geom, const std::string& hex);

  bool operator==(const LoopConfig& o) const { return codes_ == o.codes_; }
  bool operator<(const LoopConfig& o) const { return codes_ < o.codes_; }

 private:
  const LatticeGeom* geom_;
  std::vector<std::uint8_t> codes_;
};

struct LoopConfigHash {
  std::size_t operator()(const LoopConfig& c) const;
};

std::size_t hash_codes(const std::vector<std::uint8_t>& codes);

struct Violation {
  enum class Kind { Degree, Color, Flow, Framing } kind;
  int id;  // vertex id, or loop index for framing
};

struct ValidityReport {
  bool plaquette_ok = true;
  bool framing_ok = true;
  std::vector<Violation> violations;
};

ValidityReport validate(const LoopConfig& cfg);
// Vertex rules only, restricted to the given vertices.
bool vertices_ok(const LoopConfig& cfg, const int* vertices, int count);

struct Loop {
  std::vector<int> links;     // traversal order, starting at the smallest link id
  std::vector<int> vertices;  // tail vertex of each link in traversal order
  int color = 0;
  int length = 0;
  int signed_area = 0;        // CCW positive
  std::vector<int> enclosed_faces;
};

std::vector<Loop> extract_loops(const LoopConfig& cfg);
int count_loops(const LoopConfig& cfg);

// Per-face heights; non-negative for framed configurations.
using HeightField = std::vector<int>;

HeightField height_field(const LoopConfig& cfg);
// Path sum without the framing requirement (heights may be negative).
HeightField signed_heights(const LoopConfig& cfg);
// Number of loops enclosing each face, with CW loops counted -1.
HeightField height_by_enclosure(const LoopConfig& cfg);
// Height change when crossing link l starting from face `from` (-1 = exterior).
int crossing_delta(const LoopConfig& cfg, int l, int from);
long volume(const LoopConfig& cfg);

struct Uncolored {
  LoopConfig config;
  int loop_count;
};
Uncolored uncolor(const LoopConfig& cfg);

// Rewrites occupied links of each loop from its ordered link list.
LoopConfig rasterize(const LatticeGeom& geom, const std::vector<Loop>& loops);

// Undirected vertex-disjoint cycle sets (every vertex of degree 0 or 2).
// Each entry is the list of cycles, each a closed vertex sequence.
std::vector<std::vector<std::vector<int>>> enumerate_cycle_sets(const LatticeGeom& geom,
                                                               std::size_t cap);

enum class FramingMode { CcwOnly, Both };
// All configurations built from cycle sets times orientations times colors.
std::vector<LoopConfig> enumerate_loop_packings(const LatticeGeom& geom, int colors,
                                                FramingMode mode, std::size_t cap);

// Directed occupied links of a closed vertex cycle, traversed CCW or CW.
void draw_cycle(LoopConfig& cfg, const std::vector<int>& cycle, int color, bool ccw);

std::string render_ascii(const LoopConfig& cfg);

}  // namespace loopforge
