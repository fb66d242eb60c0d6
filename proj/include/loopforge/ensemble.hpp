#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "loopforge/loopconfig.hpp"
#include "loopforge/motzkin.hpp"
#include "loopforge/moves.hpp"

namespace loopforge {

enum class ModelKind { Colored, Uncolored, Decorated };

std::string to_string(ModelKind k);

struct ModelParams {
  int n = 1;
  int c = 1;  // loop colors (colored/uncolored)
  int d = 1;  // parenthesis colors (decorated)
  double t = 1;
  double u = 1;
};

struct EnsembleMember {
  LoopConfig config;               // uncolored skeleton for the uncolored/decorated models
  std::vector<Symbol> decoration;  // per link, empty unless decorated
  double logamp = 0;
  long volume = 0;
  int loops = 0;
};

// Label of a basis state: hex of the link array, plus ":" and the per-link
// decoration hex for decorated states.
std::string state_label(const LoopConfig& cfg, const std::vector<Symbol>& decoration);

class WeightedEnsemble {
 public:
  WeightedEnsemble(const LatticeGeom& geom, ModelKind kind, ModelParams params)
      : geom_(&geom), kind_(kind), params_(params) {}

  const LatticeGeom& geom() const { return *geom_; }
  ModelKind kind() const { return kind_; }
  const ModelParams& params() const { return params_; }
  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  double log_z() const { return log_z_; }

  double probability(std::size_t i) const;
  std::string label(std::size_t i) const { return state_label(members_[i].config, members_[i].decoration); }

  void add(EnsembleMember m) { members_.push_back(std::move(m)); }
  // Recomputes log_Z from the member amplitudes.
  void finalize();

 private:
  const LatticeGeom* geom_;
  ModelKind kind_;
  ModelParams params_;
  std::vector<EnsembleMember> members_;
  double log_z_ = 0;
};

WeightedEnsemble build_colored_gs(const LatticeGeom& geom, int c, double t, const ConfigSet* support = nullptr);
WeightedEnsemble build_uncolored_gs(const LatticeGeom& geom, int c, double t, const ConfigSet* support = nullptr);

constexpr std::size_t kDecoratedCap = 2'000'000;
WeightedEnsemble build_decorated_gs(const LatticeGeom& geom, int d, double t, double u,
                                    std::size_t cap = kDecoratedCap);

// Word carried by a decorated loop, read in traversal order from its first link.
MotzkinWord loop_word(const Loop& loop, const std::vector<Symbol>& decoration);

struct EnsembleStats {
  double log_z = 0;
  double mean_volume = 0;
  double mean_loops = 0;
  std::vector<double> mean_height;
  std::size_t argmax = 0;
  std::string argmax_label;
  long argmax_volume = 0;
  double max_abs_log_weight = 0;  // max |2 logamp - log_Z|
};

EnsembleStats stats(const WeightedEnsemble& e);

}  // namespace loopforge
