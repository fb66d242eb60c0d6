#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "loopforge/geometry.hpp"
#include "loopforge/loopconfig.hpp"
#include "loopforge/moves.hpp"

namespace loopforge {

// One proposal slot: rewrite `face` with the given kind and variant in the given
// direction. The catalog holds every slot for every face, so it is closed under
// reversal and proposals are symmetric.
struct ProposalSlot {
  int face;
  MoveKind kind;
  int variant;
  MoveDir direction;
};

std::vector<ProposalSlot> proposal_catalog(const LatticeGeom& geom);

// Uncolored chain state with cached heights, volume and loop count.
struct SamplerState {
  LoopConfig config;
  std::vector<int> heights;
  long volume = 0;
  int loops = 0;

  explicit SamplerState(const LatticeGeom& geom);
};

struct StepCounters {
  std::uint64_t proposed[3] = {0, 0, 0};
  std::uint64_t applicable[3] = {0, 0, 0};
  std::uint64_t accepted[3] = {0, 0, 0};
};

// Target-weight ratio and resulting state of a proposal, if the slot applies.
struct ProposalOutcome {
  LoopConfig result;
  int delta_loops;
  int delta_volume;
  double ratio;
};
std::optional<ProposalOutcome> evaluate_proposal(const LoopConfig& cfg, const ProposalSlot& slot, int c, double t);

using SamplerRng = std::mt19937_64;

// One Metropolis proposal. Returns true if the state changed.
bool mc_step(SamplerState& state, const std::vector<ProposalSlot>& catalog, int c, double t, SamplerRng& rng,
             StepCounters* counters = nullptr);

struct SamplerConfig {
  int n = 2;
  int c = 2;
  double t = 1.0;
  long sweeps = 1000;
  long burn_in = 100;
  long thinning = 1;
  int chains = 1;
  std::uint64_t seed = 1;
  int threads = 1;
  bool est_height = false;
  bool est_ell = false;
  std::optional<Bipartition> ell_cut;  // default: vertical bisection
  std::optional<RegionMask> regions;
  bool est_distribution = false;
  std::string trace_path;
};

void validate_config(const SamplerConfig& cfg);

// Seed of chain i: the (i+1)-th output of SplitMix64 started at the master seed.
std::uint64_t chain_seed(std::uint64_t master, int chain);
std::uint64_t splitmix64(std::uint64_t& state);

struct SeriesSummary {
  double mean = 0;
  double stderr_bm = 0;  // batch means with kBatches batches
  double tau_int = 0;    // integrated autocorrelation time in measurements
};

constexpr int kBatches = 32;

SeriesSummary summarize_series(const std::vector<double>& x);
double batch_means_error(const std::vector<double>& x, int batches = kBatches);
// Integrated autocorrelation time with the self-consistent window W >= 5 tau.
double integrated_autocorrelation(const std::vector<double>& x);

struct EstimatorResult {
  std::string name;
  double mean = 0;
  double stderr_pooled = 0;
  double tau_int = 0;  // max over chains
  std::vector<SeriesSummary> per_chain;
};

struct KindAcceptance {
  std::string kind;
  std::uint64_t proposed = 0;
  std::uint64_t applicable = 0;
  std::uint64_t accepted = 0;
  double rate() const { return applicable ? static_cast<double>(accepted) / applicable : 0.0; }
};

struct EstimateReport {
  SamplerConfig config;
  std::size_t catalog_size = 0;
  long measurements_per_chain = 0;
  std::vector<std::uint64_t> chain_seeds;
  std::vector<EstimatorResult> estimators;
  std::vector<KindAcceptance> acceptance;
  std::map<std::string, double> distribution;  // hex label -> empirical frequency, pooled

  const EstimatorResult& at(const std::string& name) const;
};

EstimateReport run(const SamplerConfig& cfg);

// Exact chain on the vacuum-connected uncolored sector.
struct TransitionMatrix {
  std::vector<LoopConfig> states;
  Eigen::MatrixXd p;
  Eigen::VectorXd pi;  // exact c^loops t^(2V) / Z
};

TransitionMatrix build_transition_matrix(const LatticeGeom& geom, int c, double t);
double detailed_balance_residual(const TransitionMatrix& tm);

}  // namespace loopforge
