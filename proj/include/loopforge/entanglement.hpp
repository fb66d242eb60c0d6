#pragma once

#include <map>
#include <string>
#include <vector>

#include "loopforge/ensemble.hpp"
#include "loopforge/geometry.hpp"

namespace loopforge {

struct EntropyReport {
  std::string method;         // "svd" or "labels"
  double s_nats = 0;
  // Label bookkeeping (labels method only).
  double h_p = 0;             // entropy of p over uncolored crossing labels
  double mean_crossing = 0;   // <l>, loops with links on both sides
  double label_entropy = 0;   // entropy of the colored label grouping
  double mean_enclosing = 0;  // <L_h>, loops in the complement enclosing every region face
  std::map<std::string, double> p;  // uncolored label -> probability
  std::size_t label_count = 0;
  // SVD bookkeeping.
  std::size_t rows = 0, cols = 0, blocks = 0, largest_block = 0;
  bool has_oracle = false;
  double oracle = 0;          // SVD value when computed alongside labels
  int boundary_links = 0;
};

EntropyReport rdm_entropy_svd(const WeightedEnsemble& e, const Bipartition& bp);
EntropyReport rdm_entropy_svd(const WeightedEnsemble& e, const RegionMask& mask, TagSet region);

// Colored ensembles only. S = H(p_R) + <l> ln c; `with_oracle` also runs the SVD.
EntropyReport schmidt_entropy(const WeightedEnsemble& e, const Bipartition& bp, bool with_oracle = false);
EntropyReport schmidt_entropy(const WeightedEnsemble& e, const RegionMask& mask, TagSet region,
                              bool with_oracle = false);

// S <= |dA| ln(1 + 2c).
bool area_law_check(const EntropyReport& r, const Bipartition& bp, int c);
double area_law_bound(const Bipartition& bp, int c);

struct RegionStats {
  std::map<TagSet, double> exact;        // <L>_S: loops whose visited tag set is exactly S
  std::map<TagSet, double> crossing;     // <l>_R over all loops
  std::map<TagSet, double> crossing_d;   // <l>_R over loops that also visit D
  double identity_residual = 0;          // max over R of |<l>^D_R - sum of matching <L>_S|
};

// Tag set visited by each loop of a configuration.
std::vector<TagSet> loop_tags(const LoopConfig& cfg, const RegionMask& mask);
RegionStats loop_region_stats(const WeightedEnsemble& e, const RegionMask& mask);

enum class Prescription { KP, LW };
std::string to_string(Prescription p);
Prescription parse_prescription(const std::string& s);

// Region sets entering each combination with their signs.
std::vector<std::pair<TagSet, int>> tee_terms(Prescription p);
// Throws MaskError unless the mask has the topology the prescription needs.
void check_mask_topology(const RegionMask& mask, Prescription p);

struct TEEReport {
  Prescription prescription = Prescription::KP;
  std::string method;
  std::vector<std::pair<std::string, double>> entropies;  // region name -> S
  double value = 0;
};

enum class EntropyMethod { Svd, Labels };
TEEReport tee(const WeightedEnsemble& e, const RegionMask& mask, Prescription p);
TEEReport tee(const WeightedEnsemble& e, const RegionMask& mask, Prescription p, EntropyMethod m);

struct TheoremReport {
  Prescription prescription = Prescription::KP;
  int c = 1;
  double t = 1;
  TEEReport colored;          // labels method
  TEEReport colored_svd;      // SVD method, when feasible
  TEEReport uncolored;        // SVD method
  double delta_i = 0;         // I_col - I_uncol (labels for the colored side)
  double delta_i_svd = 0;     // same with SVD on both sides
  double loop_stat = 0;       // <L>_ABCD (KP) or <L>_ACD (LW)
  double residual = 0;        // |delta_i - loop_stat ln c|
  double residual_svd = 0;    // |delta_i_svd - loop_stat ln c|
  double per_loop_defect = 0; // <sum of signed crossing indicators> - loop_stat
  RegionStats stats;
};

TheoremReport theorem_check(const LatticeGeom& geom, int c, double t, const RegionMask& mask, Prescription p,
                            bool with_svd = true);

struct MountainReport {
  int rings = 0;
  int crossed = 0;
  double s_svd = 0;
  double expected = 0;
};

WeightedEnsemble mountain_state(const LatticeGeom& geom, int c);
MountainReport mountain_entropy(const LatticeGeom& geom, int c, const Bipartition& bp);

}  // namespace loopforge
