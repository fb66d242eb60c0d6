#include <gtest/gtest.h>

#include <cstdio>
#include <set>

#include "loopforge/errors.hpp"
#include "loopforge/moves.hpp"

using namespace loopforge;

namespace {

LoopConfig unit_loop(const LatticeGeom& g, int r, int c, int color) {
  LoopConfig cfg(g);
  draw_cycle(cfg, {g.vertex(r, c), g.vertex(r, c + 1), g.vertex(r + 1, c + 1), g.vertex(r + 1, c)}, color, true);
  return cfg;
}

}  // namespace

TEST(Moves, VacuumOffersOneNucleationPerFacePerColor) {
  const LatticeGeom g(2);
  const auto moves = applicable_moves(LoopConfig(g), 2);
  EXPECT_EQ(moves.size(), 8u);
  for (const Move& m : moves) {
    EXPECT_EQ(m.kind, MoveKind::M1);
    EXPECT_EQ(m.direction, MoveDir::Forward);
  }
}

TEST(Moves, NucleationMakesUnitLoop) {
  const LatticeGeom g(2);
  const LoopConfig out = apply(LoopConfig(g), {MoveKind::M1, g.face(1, 0), 1, 0, MoveDir::Forward});
  EXPECT_EQ(out, unit_loop(g, 1, 0, 1));
  EXPECT_EQ(volume(out), 1);
}

TEST(Moves, UnitLoopCanBeRemoved) {
  const LatticeGeom g(2);
  const LoopConfig cfg = unit_loop(g, 0, 0, 0);
  const auto moves = applicable_moves(cfg, 1);
  const Move rev{MoveKind::M1, g.face(0, 0), 0, 0, MoveDir::Reverse};
  EXPECT_NE(std::find(moves.begin(), moves.end(), rev), moves.end());
  EXPECT_EQ(apply(cfg, rev), LoopConfig(g));
}

TEST(Moves, EveryMoveHasItsReverse) {
  const LatticeGeom g(3);
  const ConfigSet set = reachable_set(g, 2);
  for (const LoopConfig& cfg : set.configs) {
    for (const Move& m : applicable_moves(cfg, 2)) {
      const LoopConfig out = apply(cfg, m);
      Move back = m;
      back.direction = m.direction == MoveDir::Forward ? MoveDir::Reverse : MoveDir::Forward;
      const auto partner = applicable_moves(out, 2);
      EXPECT_NE(std::find(partner.begin(), partner.end(), back), partner.end()) << to_string(m);
      EXPECT_EQ(apply(out, back), cfg);
      EXPECT_EQ(volume(out) - volume(cfg), m.direction == MoveDir::Forward ? 1 : -1);
    }
  }
}

TEST(Moves, BumpGrowsLoopByTwo) {
  const LatticeGeom g(3);
  const LoopConfig cfg = unit_loop(g, 1, 1, 0);
  // Raising the face above the unit loop pushes its top side up.
  const Move bump{MoveKind::M3, g.face(0, 1), 0, kBottom, MoveDir::Forward};
  const LoopConfig out = apply(cfg, bump);
  EXPECT_EQ(extract_loops(out)[0].length, extract_loops(cfg)[0].length + 2);
  EXPECT_EQ(volume(out), volume(cfg) + 1);
}

TEST(Moves, InapplicableMoveThrows) {
  const LatticeGeom g(2);
  EXPECT_THROW(apply(LoopConfig(g), {MoveKind::M2, 0, 0, 0, MoveDir::Forward}), MoveError);
  EXPECT_THROW(apply(LoopConfig(g), {MoveKind::M1, 9, 0, 0, MoveDir::Forward}), MoveError);
}

TEST(Moves, LowerMaskClassification) {
  EXPECT_EQ(classify_lower_mask(0)->first, MoveKind::M1);
  EXPECT_EQ(classify_lower_mask(0b0001)->first, MoveKind::M3);
  EXPECT_EQ(classify_lower_mask(0b0111)->second, 4 + 3);
  EXPECT_EQ(classify_lower_mask(0b0011)->first, MoveKind::M2);
  EXPECT_EQ(classify_lower_mask(0b1001)->second, 3);
  EXPECT_FALSE(classify_lower_mask(0b0101));
  EXPECT_FALSE(classify_lower_mask(0b1111));
}

TEST(Reachable, SmallCensus) {
  EXPECT_EQ(reachable_set(LatticeGeom(1), 2).size(), 3u);
  EXPECT_EQ(reachable_set(LatticeGeom(2), 1).size(), 14u);
  EXPECT_EQ(reachable_set(LatticeGeom(2), 2).size(), 27u);
}

TEST(Reachable, EqualsPackingEnumeration) {
  for (int n = 1; n <= 3; ++n) {
    const LatticeGeom g(n);
    for (int c = 1; c <= 2; ++c) {
      const ConfigSet set = reachable_set(g, c);
      std::vector<LoopConfig> sorted = set.configs;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(sorted, enumerate_loop_packings(g, c, FramingMode::CcwOnly, 10'000'000)) << n << " " << c;
    }
  }
}

TEST(Reachable, ColorFactorization) {
  const LatticeGeom g(3);
  const ConfigSet plain = reachable_set(g, 1);
  long expect = 0;
  for (const auto& cfg : plain.configs) expect += 1L << count_loops(cfg);
  EXPECT_EQ(static_cast<long>(reachable_set(g, 2).size()), expect);
}

TEST(Reachable, CapacityError) {
  EXPECT_THROW(reachable_set(LatticeGeom(3), 2, 10), CapacityError);
}

TEST(Reachable, SaveLoadRoundTrip) {
  const LatticeGeom g(2);
  const ConfigSet set = reachable_set(g, 2);
  const std::string path = testing::TempDir() + "/reach.txt";
  save_config_set(set, path);
  const ConfigSet back = load_config_set(g, path);
  EXPECT_EQ(back.configs, set.configs);
  EXPECT_EQ(back.layer, set.layer);
  std::remove(path.c_str());
}
