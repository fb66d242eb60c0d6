#include "loopforge/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "loopforge/entanglement.hpp"
#include "loopforge/errors.hpp"

namespace loopforge {

std::vector<ProposalSlot> proposal_catalog(const LatticeGeom& geom) {
  std::vector<ProposalSlot> out;
  for (int f = 0; f < geom.num_faces(); ++f) {
    for (MoveDir d : {MoveDir::Forward, MoveDir::Reverse}) {
      out.push_back({f, MoveKind::M1, 0, d});
      for (int v = 0; v < 4; ++v) out.push_back({f, MoveKind::M2, v, d});
      for (int v = 0; v < 8; ++v) out.push_back({f, MoveKind::M3, v, d});
    }
  }
  return out;
}

SamplerState::SamplerState(const LatticeGeom& geom) : config(geom), heights(geom.num_faces(), 0) {}

std::optional<ProposalOutcome> evaluate_proposal(const LoopConfig& cfg, const ProposalSlot& slot, int c, double t) {
  const bool raise = slot.direction == MoveDir::Forward;
  const auto& sides = cfg.geom().face_links(slot.face);
  unsigned mask = 0;
  for (int s = 0; s < 4; ++s) mask |= cfg.occupied(sides[s]) ? 1u << s : 0u;
  const auto cls = classify_lower_mask(raise ? mask : (15u & ~mask));
  if (!cls || cls->first != slot.kind || cls->second != slot.variant) return std::nullopt;
  auto rw = rewrite_face(cfg, slot.face, raise, 0);
  if (!rw) return std::nullopt;
  const int dl = slot.kind == MoveKind::M1 ? (raise ? 1 : -1) : 0;
  const int dv = raise ? 1 : -1;
  const double ratio = std::pow(static_cast<double>(c), dl) * std::pow(t, 2.0 * dv);
  return ProposalOutcome{std::move(rw->result), dl, dv, ratio};
}

bool mc_step(SamplerState& state, const std::vector<ProposalSlot>& catalog, int c, double t, SamplerRng& rng,
             StepCounters* counters) {
  std::uniform_int_distribution<std::size_t> pick(0, catalog.size() - 1);
  const ProposalSlot& slot = catalog[pick(rng)];
  const int k = static_cast<int>(slot.kind) - 1;
  if (counters) ++counters->proposed[k];
  auto out = evaluate_proposal(state.config, slot, c, t);
  if (!out) return false;
  if (counters) ++counters->applicable[k];
  if (out->ratio < 1.0) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (u(rng) >= out->ratio) return false;
  }
  if (counters) ++counters->accepted[k];
  state.config = std::move(out->result);
  state.heights[slot.face] += out->delta_volume;
  state.volume += out->delta_volume;
  state.loops += out->delta_loops;
  return true;
}

void validate_config(const SamplerConfig& cfg) {
  if (cfg.n < 1 || cfg.n > LatticeGeom::kMaxSize) throw SizeError("sampler: n out of range");
  if (cfg.c < 1) throw ModelError("sampler: c must be >= 1");
  if (!(cfg.t > 0)) throw ModelError("sampler: t must be > 0");
  if (cfg.burn_in < 0 || cfg.sweeps <= cfg.burn_in) throw UsageError("sampler: need sweeps > burn_in >= 0");
  if (cfg.thinning < 1) throw UsageError("sampler: thinning must be >= 1");
  if (cfg.chains < 1) throw UsageError("sampler: chains must be >= 1");
  if (cfg.est_ell && !cfg.ell_cut && cfg.n < 2) throw UsageError("sampler: ell needs n >= 2 or an explicit cut");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t chain_seed(std::uint64_t master, int chain) {
  std::uint64_t s = master;
  std::uint64_t out = 0;
  for (int i = 0; i <= chain; ++i) out = splitmix64(s);
  return out;
}

double batch_means_error(const std::vector<double>& x, int batches) {
  const std::size_t len = x.size() / batches;
  if (len == 0) return 0.0;
  std::vector<double> m(batches, 0.0);
  for (int b = 0; b < batches; ++b) {
    for (std::size_t i = 0; i < len; ++i) m[b] += x[b * len + i];
    m[b] /= static_cast<double>(len);
  }
  const double mean = std::accumulate(m.begin(), m.end(), 0.0) / batches;
  double var = 0;
  for (double v : m) var += (v - mean) * (v - mean);
  var /= (batches - 1);
  return std::sqrt(var / batches);
}

double integrated_autocorrelation(const std::vector<double>& x) {
  const std::size_t n = x.size();
  if (n < 2) return 0.5;
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double c0 = 0;
  for (double v : x) c0 += (v - mean) * (v - mean);
  c0 /= static_cast<double>(n);
  if (c0 <= 0) return 0.5;
  double tau = 0.5;
  for (std::size_t lag = 1; lag < n / 2; ++lag) {
    double ct = 0;
    for (std::size_t i = 0; i + lag < n; ++i) ct += (x[i] - mean) * (x[i + lag] - mean);
    tau += ct / static_cast<double>(n) / c0;
    if (static_cast<double>(lag) >= 5.0 * tau) break;
  }
  return std::max(tau, 0.5);
}

SeriesSummary summarize_series(const std::vector<double>& x) {
  SeriesSummary s;
  if (x.empty()) return s;
  s.mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  s.stderr_bm = batch_means_error(x);
  s.tau_int = integrated_autocorrelation(x);
  return s;
}

const EstimatorResult& EstimateReport::at(const std::string& name) const {
  for (const auto& e : estimators) {
    if (e.name == name) return e;
  }
  throw UsageError("no estimator named " + name);
}

namespace {

struct ChainResult {
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  std::vector<long> sweep_index;
  StepCounters counters;
  std::unordered_map<std::string, long> histogram;
};

ChainResult run_chain(const SamplerConfig& cfg, const LatticeGeom& geom, const std::vector<ProposalSlot>& catalog,
                      const Bipartition* cut, std::uint64_t seed) {
  ChainResult res;
  res.names = {"V", "loops"};
  if (cfg.est_ell) res.names.push_back("ell");
  if (cfg.est_height) {
    for (int f = 0; f < geom.num_faces(); ++f) res.names.push_back("h" + std::to_string(f));
  }
  if (cfg.regions) {
    for (TagSet s = 1; s < 16; ++s) res.names.push_back("L_" + tag_set_name(s));
    for (const auto& [r, sign] : tee_terms(Prescription::KP)) res.names.push_back("ell_" + tag_set_name(r));
  }
  res.series.resize(res.names.size());

  SamplerRng rng(seed);
  SamplerState st(geom);
  std::vector<double> row(res.names.size());
  for (long sweep = 0; sweep < cfg.sweeps; ++sweep) {
    for (std::size_t k = 0; k < catalog.size(); ++k) mc_step(st, catalog, cfg.c, cfg.t, rng, &res.counters);
    if (sweep < cfg.burn_in || (sweep - cfg.burn_in) % cfg.thinning != 0) continue;
    std::size_t j = 0;
    row[j++] = static_cast<double>(st.volume);
    row[j++] = static_cast<double>(st.loops);
    if (cfg.est_ell) {
      int crossing = 0;
      for (const Loop& loop : extract_loops(st.config)) {
        bool in = false, out = false;
        for (int l : loop.links) (cut->in_region[l] ? in : out) = true;
        crossing += in && out;
      }
      row[j++] = crossing;
    }
    if (cfg.est_height) {
      for (int f = 0; f < geom.num_faces(); ++f) row[j++] = st.heights[f];
    }
    if (cfg.regions) {
      double exact[16] = {};
      const auto tags = loop_tags(st.config, *cfg.regions);
      for (TagSet s : tags) exact[s] += 1;
      for (TagSet s = 1; s < 16; ++s) row[j++] = exact[s];
      for (const auto& [r, sign] : tee_terms(Prescription::KP)) {
        int n = 0;
        for (TagSet s : tags) n += (s & r) && (s & ~r & 15u);
        row[j++] = n;
      }
    }
    for (std::size_t i = 0; i < row.size(); ++i) res.series[i].push_back(row[i]);
    res.sweep_index.push_back(sweep);
    if (cfg.est_distribution) ++res.histogram[st.config.hex()];
  }
  return res;
}

}  // namespace

EstimateReport run(const SamplerConfig& cfg) {
  validate_config(cfg);
  const LatticeGeom geom(cfg.n);
  const auto catalog = proposal_catalog(geom);
  Bipartition cut;
  if (cfg.est_ell) cut = cfg.ell_cut ? *cfg.ell_cut : vertical_cut_mask(geom, cfg.n / 2).bipartition(kTagA);
  std::optional<SamplerConfig> local;
  const SamplerConfig* use = &cfg;
  if (cfg.regions) {
    // Rebind the mask to this run's geometry.
    local = cfg;
    std::vector<RegionTag> labels;
    for (int f = 0; f < geom.num_faces(); ++f) labels.push_back(cfg.regions->label(f));
    local->regions.emplace(geom, labels);
    use = &*local;
  }

  EstimateReport rep;
  rep.config = cfg;
  rep.config.regions.reset();
  rep.config.ell_cut.reset();
  rep.catalog_size = catalog.size();
  for (int i = 0; i < cfg.chains; ++i) rep.chain_seeds.push_back(chain_seed(cfg.seed, i));

  std::vector<ChainResult> results(cfg.chains);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int i = next++; i < cfg.chains; i = next++) {
      try {
        results[i] = run_chain(*use, geom, catalog, &cut, rep.chain_seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min(cfg.threads, cfg.chains));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  rep.measurements_per_chain = static_cast<long>(results[0].sweep_index.size());
  for (std::size_t k = 0; k < results[0].names.size(); ++k) {
    EstimatorResult e;
    e.name = results[0].names[k];
    double var = 0;
    for (const auto& r : results) {
      const SeriesSummary s = summarize_series(r.series[k]);
      e.per_chain.push_back(s);
      e.mean += s.mean;
      var += s.stderr_bm * s.stderr_bm;
      e.tau_int = std::max(e.tau_int, s.tau_int);
    }
    e.mean /= cfg.chains;
    e.stderr_pooled = std::sqrt(var) / cfg.chains;
    rep.estimators.push_back(std::move(e));
  }
  const char* kinds[3] = {"M1", "M2", "M3"};
  for (int k = 0; k < 3; ++k) {
    KindAcceptance a;
    a.kind = kinds[k];
    for (const auto& r : results) {
      a.proposed += r.counters.proposed[k];
      a.applicable += r.counters.applicable[k];
      a.accepted += r.counters.accepted[k];
    }
    rep.acceptance.push_back(a);
  }
  if (cfg.est_distribution) {
    const double total = static_cast<double>(rep.measurements_per_chain) * cfg.chains;
    for (const auto& r : results) {
      for (const auto& [label, count] : r.histogram) rep.distribution[label] += count / total;
    }
  }
  if (!cfg.trace_path.empty()) {
    std::ofstream out(cfg.trace_path);
    if (!out) throw Error("cannot write trace to " + cfg.trace_path);
    out << "chain,sweep";
    for (const auto& name : results[0].names) out << ',' << name;
    out << '\n';
    for (int c = 0; c < cfg.chains; ++c) {
      const auto& r = results[c];
      for (std::size_t i = 0; i < r.sweep_index.size(); ++i) {
        out << c << ',' << r.sweep_index[i];
        for (const auto& s : r.series) out << ',' << s[i];
        out << '\n';
      }
    }
  }
  return rep;
}

TransitionMatrix build_transition_matrix(const LatticeGeom& geom, int c, double t) {
  const ConfigSet set = reachable_set(geom, 1);
  const auto catalog = proposal_catalog(geom);
  TransitionMatrix tm;
  tm.states = set.configs;
  const auto n = static_cast<Eigen::Index>(set.size());
  tm.p = Eigen::MatrixXd::Zero(n, n);
  tm.pi.resize(n);
  std::vector<double> logw(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    logw[i] = count_loops(tm.states[i]) * std::log(static_cast<double>(c)) +
              2.0 * static_cast<double>(volume(tm.states[i])) * std::log(t);
  }
  const double mx = *std::max_element(logw.begin(), logw.end());
  for (Eigen::Index i = 0; i < n; ++i) tm.pi[i] = std::exp(logw[i] - mx);
  tm.pi /= tm.pi.sum();
  const double q = 1.0 / static_cast<double>(catalog.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    double stay = 1.0;
    for (const auto& slot : catalog) {
      auto out = evaluate_proposal(tm.states[i], slot, c, t);
      if (!out) continue;
      const auto j = set.find(out->result);
      if (!j) throw ConstraintError("proposal left the vacuum-connected sector");
      const double pij = q * std::min(1.0, out->ratio);
      tm.p(i, static_cast<Eigen::Index>(*j)) += pij;
      stay -= pij;
    }
    tm.p(i, i) += stay;
  }
  return tm;
}

double detailed_balance_residual(const TransitionMatrix& tm) {
  double worst = 0;
  for (Eigen::Index i = 0; i < tm.p.rows(); ++i) {
    for (Eigen::Index j = 0; j < tm.p.cols(); ++j) {
      worst = std::max(worst, std::abs(tm.pi[i] * tm.p(i, j) - tm.pi[j] * tm.p(j, i)));
    }
  }
  return worst;
}

}  // namespace loopforge
