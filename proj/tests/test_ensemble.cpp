#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "loopforge/ensemble.hpp"
#include "loopforge/errors.hpp"

using namespace loopforge;

TEST(Colored, SingleCellPartitionFunction) {
  const LatticeGeom g(1);
  for (double t : {0.5, 1.0, 1.7}) {
    const WeightedEnsemble e = build_colored_gs(g, 2, t);
    EXPECT_EQ(e.size(), 3u);
    EXPECT_NEAR(e.log_z(), std::log(1 + 2 * t * t), 1e-14);
  }
}

TEST(Colored, UniformAtTEqualsOne) {
  const LatticeGeom g(3);
  const WeightedEnsemble e = build_colored_gs(g, 2, 1.0);
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(e.probability(i), 1.0 / e.size(), 1e-15);
}

TEST(Colored, CensusPartitionFunction) {
  const LatticeGeom g(2);
  const WeightedEnsemble e = build_colored_gs(g, 1, 2.0);
  // Direct sum over the volume census {0:1, 1:4, 2:4, 3:4, 4:1}.
  const double z = 1 + 4 * std::pow(2.0, 2) + 4 * std::pow(2.0, 4) + 4 * std::pow(2.0, 6) + std::pow(2.0, 8);
  EXPECT_NEAR(e.log_z(), std::log(z), 1e-13);
}

TEST(Uncolored, SingleCell) {
  const LatticeGeom g(1);
  const double t = 1.3;
  const WeightedEnsemble e = build_uncolored_gs(g, 2, t);
  ASSERT_EQ(e.size(), 2u);
  std::map<long, double> w2;
  for (const auto& m : e.members()) w2[m.volume] = std::exp(2 * m.logamp);
  EXPECT_NEAR(w2[0], 1.0, 1e-15);
  EXPECT_NEAR(w2[1], 2 * t * t, 1e-14);
  EXPECT_NEAR(e.log_z(), build_colored_gs(g, 2, t).log_z(), 1e-14);
}

TEST(Uncolored, COneIsColored) {
  const LatticeGeom g(3);
  const WeightedEnsemble a = build_uncolored_gs(g, 1, 1.4), b = build_colored_gs(g, 1, 1.4);
  ASSERT_EQ(a.size(), b.size());
  std::map<std::string, double> pa;
  for (std::size_t i = 0; i < a.size(); ++i) pa[a.label(i)] = a.members()[i].logamp;
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_NEAR(pa.at(b.label(i)), b.members()[i].logamp, 1e-15);
}

TEST(Uncolored, SamePartitionFunction) {
  const LatticeGeom g(2);
  EXPECT_NEAR(build_uncolored_gs(g, 2, 1.3).log_z(), build_colored_gs(g, 2, 1.3).log_z(), 1e-12);
}

TEST(Decorated, SingleCellSupport) {
  const LatticeGeom g(1);
  const WeightedEnsemble e = build_decorated_gs(g, 1, 1.0, 1.0);
  std::size_t cyclic = 0;
  for (const auto& w : enumerate_words(4, 1, Sector::All)) cyclic += cyclic_balanced(w).balanced;
  EXPECT_EQ(e.size(), 1 + cyclic);
}

TEST(Decorated, UniformDecorationsAtUOne) {
  const LatticeGeom g(2);
  const WeightedEnsemble e = build_decorated_gs(g, 2, 1.3, 1.0);
  std::map<std::string, double> by_skeleton;
  for (const auto& m : e.members()) {
    auto [it, fresh] = by_skeleton.emplace(m.config.hex(), m.logamp);
    if (!fresh) {
      EXPECT_NEAR(it->second, m.logamp, 1e-14);
    }
  }
}

TEST(Decorated, SmallTConcentratesOnVacuum) {
  const LatticeGeom g(1);
  const WeightedEnsemble e = build_decorated_gs(g, 1, 1e-4, 1.2);
  double pvac = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e.members()[i].loops == 0) pvac += e.probability(i);
  }
  EXPECT_GT(pvac, 1 - 1e-6);
}

TEST(Decorated, WordWeightsFollowCyclicArea) {
  const LatticeGeom g(1);
  const double u = 1.4;
  const WeightedEnsemble e = build_decorated_gs(g, 2, 1.0, u);
  for (const auto& m : e.members()) {
    if (m.loops == 0) continue;
    const Loop loop = extract_loops(m.config)[0];
    const MotzkinWord w = loop_word(loop, m.decoration);
    EXPECT_NEAR(m.logamp, m.volume * std::log(1.0) + cyclic_area(w) * std::log(u), 1e-14);
  }
}

TEST(Stats, MeanVolumeSingleCell) {
  const LatticeGeom g(1);
  EXPECT_NEAR(stats(build_colored_gs(g, 2, 1.0)).mean_volume, 2.0 / 3.0, 1e-15);
}

TEST(Stats, LargeTPicksFullSquare) {
  const LatticeGeom g(2);
  const EnsembleStats st = stats(build_colored_gs(g, 1, 10.0));
  EXPECT_EQ(st.argmax_volume, 4);
}

TEST(Stats, MountainArgmax) {
  const LatticeGeom g(3);
  const WeightedEnsemble e = build_colored_gs(g, 2, 2.0);
  long vmax = 0;
  for (const auto& m : e.members()) vmax = std::max(vmax, m.volume);
  const EnsembleStats st = stats(e);
  // Exhaustive maximum over the reachable set: outer ring plus the center cell.
  EXPECT_EQ(vmax, 10);
  EXPECT_EQ(st.argmax_volume, vmax);
  EXPECT_EQ(extract_loops(e.members()[st.argmax].config).size(), 2u);
}

TEST(Stats, HeightProfileAveragesVolume) {
  const LatticeGeom g(3);
  const EnsembleStats st = stats(build_colored_gs(g, 2, 1.3));
  double sum = 0;
  for (double h : st.mean_height) sum += h;
  EXPECT_NEAR(sum, st.mean_volume, 1e-12);
}
