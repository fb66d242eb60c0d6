#include "loopforge/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "loopforge/errors.hpp"
#include "loopforge/linalg.hpp"

namespace loopforge {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Colored: return "colored";
    case ModelKind::Uncolored: return "uncolored";
    case ModelKind::Decorated: return "decorated";
  }
  return "?";
}

std::string state_label(const LoopConfig& cfg, const std::vector<Symbol>& decoration) {
  std::string out = cfg.hex();
  if (decoration.empty()) return out;
  static const char* hex = "0123456789abcdef";
  out += ':';
  for (Symbol s : decoration) {
    out += hex[s >> 4];
    out += hex[s & 15];
  }
  return out;
}

double WeightedEnsemble::probability(std::size_t i) const { return std::exp(2 * members_[i].logamp - log_z_); }

void WeightedEnsemble::finalize() {
  std::vector<double> two;
  two.reserve(members_.size());
  for (const auto& m : members_) two.push_back(2 * m.logamp);
  log_z_ = log_sum_exp(two);
}

namespace {

void check_params(int c, double t) {
  if (c < 1 || c > kMaxColors) throw ModelError("colors must be in [1, 16]");
  if (!(t > 0)) throw ModelError("t must be positive");
}

}  // namespace

WeightedEnsemble build_colored_gs(const LatticeGeom& geom, int c, double t, const ConfigSet* support) {
  check_params(c, t);
  ConfigSet own;
  if (!support) {
    own = reachable_set(geom, c);
    support = &own;
  }
  WeightedEnsemble e(geom, ModelKind::Colored, {geom.size(), c, 1, t, 1});
  const double lt = std::log(t);
  for (const LoopConfig& cfg : support->configs) {
    const long v = volume(cfg);
    e.add({cfg, {}, static_cast<double>(v) * lt, v, count_loops(cfg)});
  }
  e.finalize();
  return e;
}

WeightedEnsemble build_uncolored_gs(const LatticeGeom& geom, int c, double t, const ConfigSet* support) {
  check_params(c, t);
  ConfigSet own;
  if (!support) {
    own = reachable_set(geom, 1);
    support = &own;
  }
  WeightedEnsemble e(geom, ModelKind::Uncolored, {geom.size(), c, 1, t, 1});
  const double lt = std::log(t), lc = std::log(static_cast<double>(c));
  for (const LoopConfig& cfg : support->configs) {
    const Uncolored uc = uncolor(cfg);
    const long v = volume(uc.config);
    e.add({uc.config, {}, static_cast<double>(v) * lt + 0.5 * uc.loop_count * lc, v, uc.loop_count});
  }
  e.finalize();
  return e;
}

MotzkinWord loop_word(const Loop& loop, const std::vector<Symbol>& decoration) {
  MotzkinWord w;
  w.symbols.reserve(loop.links.size());
  for (int l : loop.links) w.symbols.push_back(decoration[l]);
  return w;
}

WeightedEnsemble build_decorated_gs(const LatticeGeom& geom, int d, double t, double u, std::size_t cap) {
  if (d < 1 || d > 8) throw ModelError("d must be in [1, 8]");
  if (!(t > 0) || !(u > 0)) throw ModelError("t and u must be positive");
  const ConfigSet skeletons = reachable_set(geom, 1);
  WeightedEnsemble e(geom, ModelKind::Decorated, {geom.size(), 1, d, t, u});
  const double lt = std::log(t), lu = std::log(u);
  std::map<int, std::pair<std::vector<MotzkinWord>, std::vector<long>>> words_by_len;
  auto words_for = [&](int len) -> const std::pair<std::vector<MotzkinWord>, std::vector<long>>& {
    auto it = words_by_len.find(len);
    if (it != words_by_len.end()) return it->second;
    auto& entry = words_by_len[len];
    entry.first = cyclic_words(len, d, cap);
    for (const auto& w : entry.first) entry.second.push_back(cyclic_area(w));
    return entry;
  };
  for (const LoopConfig& sk : skeletons.configs) {
    const auto loops = extract_loops(sk);
    const long v = volume(sk);
    std::vector<std::size_t> counts;
    std::size_t total = 1;
    for (const Loop& loop : loops) {
      counts.push_back(words_for(loop.length).first.size());
      total *= counts.back();
    }
    if (e.size() + total > cap) throw CapacityError("decorated ensemble exceeded capacity", cap);
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::size_t rest = idx;
      std::vector<Symbol> deco(geom.num_links(), 0);
      long a = 0;
      for (std::size_t k = 0; k < loops.size(); ++k) {
        const std::size_t p = rest % counts[k];
        rest /= counts[k];
        const auto& wl = words_for(loops[k].length);
        const MotzkinWord& w = wl.first[p];
        for (std::size_t i = 0; i < w.size(); ++i) deco[loops[k].links[i]] = w.symbols[i];
        a += wl.second[p];
      }
      e.add({sk, std::move(deco), static_cast<double>(v) * lt + static_cast<double>(a) * lu, v,
             static_cast<int>(loops.size())});
    }
  }
  e.finalize();
  return e;
}

EnsembleStats stats(const WeightedEnsemble& e) {
  EnsembleStats s;
  s.log_z = e.log_z();
  s.mean_height.assign(e.geom().num_faces(), 0.0);
  double best = -1e300;
  std::string best_label;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto& m = e.members()[i];
    const double p = e.probability(i);
    s.mean_volume += p * static_cast<double>(m.volume);
    s.mean_loops += p * m.loops;
    const HeightField h = height_field(m.config);
    for (std::size_t f = 0; f < h.size(); ++f) s.mean_height[f] += p * h[f];
    s.max_abs_log_weight = std::max(s.max_abs_log_weight, std::abs(2 * m.logamp - e.log_z()));
    const std::string lab = e.label(i);
    if (m.logamp > best || (m.logamp == best && lab < best_label)) {
      best = m.logamp;
      best_label = lab;
      s.argmax = i;
    }
  }
  s.argmax_label = best_label;
  s.argmax_volume = e.members()[s.argmax].volume;
  return s;
}

}  // namespace loopforge
