#include <gtest/gtest.h>

#include <cmath>

#include "loopforge/entanglement.hpp"

using namespace loopforge;

// Worked examples from the entanglement and theorem specifications that probe
// the crossing-label decomposition beyond n = 2.

TEST(Identities, NThreeVerticalBisectionLabelsMatchSvd) {
  const LatticeGeom g(3);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.5);
  const EntropyReport r = schmidt_entropy(e, vertical_cut_mask(g, 1).bipartition(kTagA), true);
  EXPECT_NEAR(r.s_nats, r.oracle, 1e-9);
}

TEST(Identities, NThreeUncoloredEntropyEqualsLabelDistribution) {
  const LatticeGeom g(3);
  const Bipartition bp = vertical_cut_mask(g, 1).bipartition(kTagA);
  const EntropyReport col = schmidt_entropy(build_colored_gs(g, 2, 1.0), bp, true);
  const EntropyReport unc = rdm_entropy_svd(build_uncolored_gs(g, 2, 1.0), bp);
  EXPECT_NEAR(unc.s_nats, col.h_p, 1e-9);
}

TEST(Identities, KpTheoremNFour) {
  const LatticeGeom g(4);
  const RegionMask mask = parse_region_mask("DDDD\nDABD\nDCCD\nDDDD\n", g);
  const TheoremReport r = theorem_check(g, 2, 1.5, mask, Prescription::KP, true);
  EXPECT_GT(r.loop_stat, 0.0);
  EXPECT_NEAR(r.per_loop_defect, 0.0, 1e-12);
  EXPECT_LE(r.residual_svd, 1e-9);
}

TEST(Identities, LwTheoremNFour) {
  const LatticeGeom g(4);
  const RegionMask mask = parse_region_mask("AAAA\nBDDB\nBDDB\nCCCC\n", g);
  const TheoremReport r = theorem_check(g, 2, 1.5, mask, Prescription::LW, true);
  EXPECT_LE(r.residual_svd, 1e-9);
}
