#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loopforge/loopconfig.hpp"

namespace loopforge {

enum class MoveKind : std::uint8_t { M1 = 1, M2 = 2, M3 = 3 };
enum class MoveDir : std::uint8_t { Forward = 0, Reverse = 1 };

// Every rule is "raise face `face` by one" (forward) or its inverse. The
// variant is read from the occupied sides of the lower configuration:
//   M1: no sides occupied (variant 0)
//   M2: sides {v, v+1 mod 4} occupied (variant v)
//   M3: one side v occupied (bump, variant v) or all but side v (fill, 4+v)
struct Move {
  MoveKind kind;
  int face;
  int color;
  int variant;
  MoveDir direction;
  auto operator<=>(const Move&) const = default;
};

std::string to_string(const Move& m);

// Classifies the occupied-side mask of a lower configuration.
std::optional<std::pair<MoveKind, int>> classify_lower_mask(unsigned mask);

struct FaceRewrite {
  MoveKind kind;
  int variant;
  int color;
  LoopConfig result;
};

// Raise (or lower) face f, gated on the local pattern and on the vertex rules
// at the four corners; framing is not checked. `nucleation_color` is used when
// a raise creates a unit loop from empty sides.
std::optional<FaceRewrite> rewrite_face(const LoopConfig& cfg, int f, bool raise, int nucleation_color);

std::vector<Move> applicable_moves(const LoopConfig& cfg, int colors);
LoopConfig apply(const LoopConfig& cfg, const Move& m);

struct ConfigSet {
  std::vector<LoopConfig> configs;  // ordered by BFS layer, then by label
  std::vector<int> layer;           // BFS depth of each config
  std::unordered_map<std::string, std::size_t> index;  // hex label -> position

  std::size_t size() const { return configs.size(); }
  std::optional<std::size_t> find(const LoopConfig& c) const;
};

constexpr std::size_t kDefaultConfigCap = 4'000'000;

ConfigSet reachable_set(const LatticeGeom& geom, int colors, std::size_t cap = kDefaultConfigCap);
ConfigSet make_config_set(std::vector<LoopConfig> configs, std::vector<int> layers);

void save_config_set(const ConfigSet& set, const std::string& path);
ConfigSet load_config_set(const LatticeGeom& geom, const std::string& path);

}  // namespace loopforge
