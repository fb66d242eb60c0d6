#include <gtest/gtest.h>

#include <cmath>

#include "loopforge/entanglement.hpp"
#include "loopforge/errors.hpp"

using namespace loopforge;

namespace {

Bipartition single_cell_split(const LatticeGeom& g) { return link_bipartition(g, {g.vlink(0, 0), g.hlink(0, 0)}); }

WeightedEnsemble single(const LatticeGeom& g, const LoopConfig& cfg) {
  WeightedEnsemble e(g, ModelKind::Colored, {g.size(), 2, 1, 1.0, 1.0});
  e.add({cfg, {}, 0.0, volume(cfg), count_loops(cfg)});
  e.finalize();
  return e;
}

}  // namespace

TEST(Entropy, SingleCellSplitIsLnThree) {
  const LatticeGeom g(1);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.0);
  const Bipartition bp = single_cell_split(g);
  const EntropyReport svd = rdm_entropy_svd(e, bp);
  const EntropyReport lab = schmidt_entropy(e, bp);
  EXPECT_NEAR(svd.s_nats, std::log(3.0), 1e-12);
  EXPECT_NEAR(lab.s_nats, std::log(3.0), 1e-12);
  EXPECT_NEAR(lab.mean_crossing, 2.0 / 3.0, 1e-14);
  EXPECT_NEAR(lab.h_p, lab.s_nats - 2.0 / 3.0 * std::log(2.0), 1e-12);
  EXPECT_EQ(lab.label_count, 3u);
}

TEST(Entropy, ProductEnsembleIsZero) {
  const LatticeGeom g(2);
  const WeightedEnsemble e = single(g, LoopConfig(g));
  const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
  EXPECT_NEAR(rdm_entropy_svd(e, bp).s_nats, 0.0, 1e-15);
  EXPECT_NEAR(schmidt_entropy(e, bp).s_nats, 0.0, 1e-15);
  EXPECT_TRUE(area_law_check(schmidt_entropy(e, bp, true), bp, 2));
}

TEST(Entropy, NTwoVerticalBisectionLabelsMatchSvd) {
  const LatticeGeom g(2);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.3);
  const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
  const EntropyReport r = schmidt_entropy(e, bp, true);
  EXPECT_NEAR(r.s_nats, r.oracle, 1e-9);
  EXPECT_TRUE(area_law_check(r, bp, 2));
}

TEST(Entropy, UncoloredSvdEqualsLabelDistributionOnNTwo) {
  const LatticeGeom g(2);
  for (double t : {0.7, 1.0, 1.3}) {
    const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
    const EntropyReport col = schmidt_entropy(build_colored_gs(g, 2, t), bp, true);
    const EntropyReport unc = rdm_entropy_svd(build_uncolored_gs(g, 2, t), bp);
    EXPECT_NEAR(unc.s_nats, col.h_p, 1e-9);
    EXPECT_NEAR(col.oracle - unc.s_nats, col.mean_crossing * std::log(2.0), 1e-9);
  }
}

TEST(Entropy, VacuumDominatedLimit) {
  const LatticeGeom g(2);
  const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
  double last = 1e300;
  for (double t : {1.0, 0.3, 0.1, 0.01}) {
    const EntropyReport r = schmidt_entropy(build_colored_gs(g, 2, t), bp, true);
    EXPECT_LT(r.oracle, last);
    last = r.oracle;
  }
  const EntropyReport r = schmidt_entropy(build_colored_gs(g, 2, 0.01), bp, true);
  EXPECT_LT(r.oracle, 0.01);
  EXPECT_LT(r.mean_crossing, 0.01);
}

TEST(Entropy, LabelsNeedColoredEnsemble) {
  const LatticeGeom g(2);
  const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
  EXPECT_THROW(schmidt_entropy(build_uncolored_gs(g, 2, 1.0), bp), ModelError);
}

TEST(AreaLaw, AllVerticalCutsOnNThree) {
  const LatticeGeom g(3);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.5);
  for (int k = 1; k < 3; ++k) {
    const Bipartition bp = vertical_cut_mask(g, k).bipartition(kTagA);
    EXPECT_TRUE(area_law_check(schmidt_entropy(e, bp, true), bp, 2));
  }
}

TEST(RegionStats, VacuumIsZero) {
  const LatticeGeom g(4);
  const RegionMask mask = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  const RegionStats st = loop_region_stats(single(g, LoopConfig(g)), mask);
  for (auto [s, v] : st.exact) EXPECT_EQ(v, 0.0);
}

TEST(RegionStats, SingleLoopInAAndD) {
  const LatticeGeom g(4);
  const RegionMask mask = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  // Unit loop at face (0,1): its bottom link is owned by the A face below, the rest by D faces.
  LoopConfig cfg(g);
  draw_cycle(cfg, {g.vertex(0, 1), g.vertex(0, 2), g.vertex(1, 2), g.vertex(1, 1)}, 0, true);
  const auto tags = loop_tags(cfg, mask);
  ASSERT_EQ(tags.size(), 1u);
  const RegionStats st = loop_region_stats(single(g, cfg), mask);
  EXPECT_EQ(st.exact.at(kTagA | kTagD), 1.0);
  double rest = 0;
  for (auto [s, v] : st.exact) rest += s == (kTagA | kTagD) ? 0 : v;
  EXPECT_EQ(rest, 0.0);
  EXPECT_EQ(st.crossing_d.at(kTagA), 1.0);
}

TEST(RegionStats, IdentitiesHoldPerConfiguration) {
  const LatticeGeom g(4);
  const RegionMask mask = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  const RegionStats st = loop_region_stats(build_colored_gs(g, 2, 1.5), mask);
  EXPECT_LE(st.identity_residual, 1e-12);
  EXPECT_GT(st.exact.at(kTagA | kTagB | kTagC | kTagD), 0.0);
}

TEST(Tee, TermsAndSigns) {
  const auto kp = tee_terms(Prescription::KP);
  ASSERT_EQ(kp.size(), 7u);
  int sum = 0;
  for (auto [r, s] : kp) sum += s;
  EXPECT_EQ(sum, 1);
  const auto lw = tee_terms(Prescription::LW);
  ASSERT_EQ(lw.size(), 4u);
  EXPECT_EQ(parse_prescription("lw"), Prescription::LW);
  EXPECT_THROW(parse_prescription("xx"), ParseError);
}

TEST(Tee, ProductEnsembleIsZero) {
  const LatticeGeom g(4);
  const WeightedEnsemble e = single(g, LoopConfig(g));
  const RegionMask kp = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  const RegionMask lw = parse_region_mask("AAAA\nBDDB\nBDDB\nCCCC\n", g);
  EXPECT_NEAR(tee(e, kp, Prescription::KP).value, 0.0, 1e-15);
  EXPECT_NEAR(tee(e, lw, Prescription::LW).value, 0.0, 1e-15);
}

TEST(Tee, MaskTopologyChecks) {
  const LatticeGeom g(4);
  EXPECT_NO_THROW(check_mask_topology(parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g), Prescription::KP));
  EXPECT_NO_THROW(check_mask_topology(parse_region_mask("AAAA\nBDDB\nBDDB\nCCCC\n", g), Prescription::LW));
  EXPECT_THROW(check_mask_topology(parse_region_mask("AAAA\nBDDB\nBDDB\nCCCC\n", g), Prescription::KP), MaskError);
  EXPECT_THROW(check_mask_topology(parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g), Prescription::LW), MaskError);
  EXPECT_THROW(check_mask_topology(parse_region_mask("ADAD\nDBDD\nDCCD\nDDDD\n", g), Prescription::KP), MaskError);
}

TEST(Tee, LwIsNonNegativeOnNFour) {
  const LatticeGeom g(4);
  const RegionMask lw = parse_region_mask("AAAA\nBDDB\nBDDB\nCCCC\n", g);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.5);
  EXPECT_GE(tee(e, lw, Prescription::LW, EntropyMethod::Svd).value, -1e-9);
  EXPECT_GE(tee(e, lw, Prescription::LW, EntropyMethod::Labels).value, -1e-9);
}

TEST(Theorem, TrivialForOneColor) {
  const LatticeGeom g(4);
  const RegionMask kp = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  const TheoremReport r = theorem_check(g, 1, 1.5, kp, Prescription::KP, true);
  EXPECT_NEAR(r.delta_i_svd, 0.0, 1e-12);
  EXPECT_NEAR(r.residual_svd, 0.0, 1e-12);
}

TEST(Mountain, RingCounts) {
  const LatticeGeom g2(2), g4(4);
  const MountainReport a = mountain_entropy(g2, 2, vertical_cut_mask(g2, 1).bipartition(kTagA));
  EXPECT_EQ(a.crossed, 1);
  EXPECT_NEAR(a.s_svd, std::log(2.0), 1e-12);
  const MountainReport b = mountain_entropy(g4, 2, vertical_cut_mask(g4, 2).bipartition(kTagA));
  EXPECT_EQ(b.crossed, 2);
  EXPECT_NEAR(b.s_svd, 2 * std::log(2.0), 1e-12);
  const MountainReport c = mountain_entropy(g4, 2, link_bipartition(g4, {g4.hlink(2, 1)}));
  EXPECT_EQ(c.crossed, 0);
  EXPECT_NEAR(c.s_svd, 0.0, 1e-12);
  EXPECT_THROW(mountain_state(LatticeGeom(3), 2), ModelError);
}
