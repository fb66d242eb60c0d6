#include "loopforge/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "loopforge/commands.hpp"
#include "loopforge/entanglement.hpp"
#include "loopforge/errors.hpp"
#include "loopforge/hamiltonian.hpp"
#include "loopforge/motzkin.hpp"
#include "loopforge/sampler.hpp"

namespace loopforge {

const char* const kMaskKpN4 = "DDDD\nDABD\nDCCD\nDDDD\n";
const char* const kMaskLwN4 = "AAAA\nBDDB\nBDDB\nCCCC\n";
const char* const kMaskKpN3 = "ABD\nCCD\nDDD\n";
const char* const kMaskDiscN2Corner = "AD\nDD\n";
const char* const kMaskDiscN3Center = "DDD\nDAD\nDDD\n";
const char* const kMaskDiscN3Block = "AAD\nAAD\nDDD\n";
const char* const kMaskDiscN3Bar = "DAD\nDAD\nDDD\n";

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string sci(double x) {
  std::ostringstream os;
  os << std::setprecision(3) << std::scientific << x;
  return os.str();
}

std::string fix(double x, int digits = 4) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::fixed << x;
  return os.str();
}

struct HamInstance {
  std::string name;
  std::unique_ptr<LatticeGeom> geom;
  Basis basis;
  SparseOperator h;
  double residual = 0;
  double max_term_residual = 0;
};

struct EntropyRow {
  std::string name;
  double s_labels = 0, s_svd = 0, s_uncolored = 0, h_p = 0, ell = 0, bound = 0;
  int c = 2;
};

struct TheoremRow {
  std::string name;
  TheoremReport report;
  double bound_violation = -1e300;  // max over constituent entropies of S - bound
  double seconds = 0;
};

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& opt) : opt_(opt) {}

  CriterionResult c1();
  CriterionResult c2();
  CriterionResult c3();
  CriterionResult c4();
  CriterionResult c5();
  CriterionResult c6();
  CriterionResult c7();
  CriterionResult c8();
  CriterionResult c9();
  CriterionResult c10();
  CriterionResult c11();

 private:
  std::vector<HamInstance>& hamiltonians();
  std::vector<EntropyRow>& entropy_table();
  std::vector<TheoremRow>& theorem_table();

  AcceptanceOptions opt_;
  std::optional<std::vector<HamInstance>> ham_;
  double ham_seconds_ = 0;
  std::optional<std::vector<EntropyRow>> ent_;
  std::optional<std::vector<TheoremRow>> thm_;
  double thm_seconds_ = 0;
};

std::vector<HamInstance>& Suite::hamiltonians() {
  if (ham_) return *ham_;
  const auto t0 = Clock::now();
  ham_.emplace();
  auto add = [&](const std::string& name, int n, HamiltonianModel model, auto make_basis, auto make_psi) {
    HamInstance inst;
    inst.name = name;
    inst.geom = std::make_unique<LatticeGeom>(n);
    inst.basis = make_basis(*inst.geom);
    inst.h = build_hamiltonian(model, inst.basis);
    const FrustrationReport fr = verify_frustration_free(inst.h, inst.basis, make_psi(*inst.geom));
    inst.residual = fr.residual;
    inst.max_term_residual = fr.max_term_residual;
    ham_->push_back(std::move(inst));
  };
  for (int n = 1; n <= 3; ++n) {
    for (int c = 1; c <= 2; ++c) {
      for (double t : {0.5, 1.0, 1.5, 2.0}) {
        const std::string tag = "n=" + std::to_string(n) + " c=" + std::to_string(c) + " t=" + fix(t, 1);
        add("colored " + tag, n, {ModelKind::Colored, c, 1, t, 1.0},
            [c](const LatticeGeom& g) { return build_full_basis(g, c); },
            [c, t](const LatticeGeom& g) { return build_colored_gs(g, c, t); });
        add("uncolored " + tag, n, {ModelKind::Uncolored, c, 1, t, 1.0},
            [](const LatticeGeom& g) { return build_full_basis(g, 1); },
            [c, t](const LatticeGeom& g) { return build_uncolored_gs(g, c, t); });
      }
    }
  }
  for (int n = 1; n <= 2; ++n) {
    for (int d = 1; d <= 2; ++d) {
      for (double u : {0.8, 1.4}) {
        const double t = 1.2;
        add("decorated n=" + std::to_string(n) + " d=" + std::to_string(d) + " t=1.2 u=" + fix(u, 1), n,
            {ModelKind::Decorated, 1, d, t, u}, [d](const LatticeGeom& g) { return build_decorated_basis(g, d); },
            [d, t, u](const LatticeGeom& g) { return build_decorated_gs(g, d, t, u); });
      }
    }
  }
  ham_seconds_ = since(t0);
  return *ham_;
}

CriterionResult Suite::c1() {
  CriterionResult r{1, "frustration-free ground states", true, "", 0};
  auto& hs = hamiltonians();
  double worst = 0;
  std::string worst_name;
  for (const auto& h : hs) {
    if (h.residual > worst) {
      worst = h.residual;
      worst_name = h.name;
    }
  }
  r.passed = worst <= tol::kFrustration && ham_seconds_ <= tol::kBudgetHamiltonian;
  r.detail = std::to_string(hs.size()) + " instances, max |H psi|/|psi| = " + sci(worst) +
             (worst_name.empty() ? "" : " (" + worst_name + ")") + ", build+check " + fix(ham_seconds_, 1) +
             "s (budget " + fix(tol::kBudgetHamiltonian, 0) + "s)";
  return r;
}

CriterionResult Suite::c2() {
  CriterionResult r{2, "unique ground state, wrong framing costs >= 1", true, "", 0};
  auto& hs = hamiltonians();
  std::string failures;
  double min_cw = 1e300, min_gap = 1e300;
  for (const auto& h : hs) {
    const GroundSpaceReport gs = ground_space(h.h, tol::kGroundSpace);
    min_gap = std::min(min_gap, gs.gap);
    if (gs.dim != 1) failures += " " + h.name + " dim=" + std::to_string(gs.dim) + ";";
    for (int i = 0; i < h.basis.size(); ++i) {
      bool cw = false;
      for (const Loop& loop : extract_loops(h.basis.configs[i])) cw = cw || loop.signed_area < 0;
      if (!cw) continue;
      const double e = h.h.diagonal(i);
      min_cw = std::min(min_cw, e);
      if (e < tol::kWrongFramingEnergy) failures += " " + h.name + " cw-state " + h.basis.label(i) + ";";
    }
  }
  r.passed = failures.empty();
  r.detail = "ground-space dim 1 on " + std::to_string(hs.size()) + " instances, smallest gap " + sci(min_gap) +
             ", min CW-state energy " + fix(min_cw, 6) + (failures.empty() ? "" : "; failures:" + failures);
  return r;
}

CriterionResult Suite::c3() {
  CriterionResult r{3, "reachable set equals packing enumeration", true, "", 0};
  std::string info;
  for (int n = 1; n <= 3; ++n) {
    const LatticeGeom g(n);
    for (int c = 1; c <= 2; ++c) {
      const ConfigSet set = reachable_set(g, c);
      const auto packings = enumerate_loop_packings(g, c, FramingMode::CcwOnly, kDefaultConfigCap);
      bool equal = packings.size() == set.size();
      for (const auto& p : packings) equal = equal && set.find(p).has_value();
      r.passed = r.passed && equal;
      info += " n" + std::to_string(n) + "c" + std::to_string(c) + "=" + std::to_string(set.size()) +
              (equal ? "" : "(MISMATCH vs " + std::to_string(packings.size()) + ")");
    }
  }
  const LatticeGeom g2(2);
  const ConfigSet set = reachable_set(g2, 1);
  std::map<long, int> census;
  for (const auto& c : set.configs) ++census[volume(c)];
  const std::map<long, int> frozen{{0, 1}, {1, 4}, {2, 4}, {3, 4}, {4, 1}};
  const bool census_ok = set.size() == 14 && census == frozen;
  r.passed = r.passed && census_ok;
  r.detail = "sizes" + info + "; n=2 c=1 volume census " + (census_ok ? "{0:1,1:4,2:4,3:4,4:1}" : "MISMATCH");
  return r;
}

std::vector<EntropyRow>& Suite::entropy_table() {
  if (ent_) return *ent_;
  ent_.emplace();
  const int c = 2;
  struct Cut {
    std::string name;
    int n;
    std::function<Bipartition(const LatticeGeom&)> make;
  };
  std::vector<Cut> cuts;
  cuts.push_back({"n=1 links{vertical left, top}", 1,
                  [](const LatticeGeom& g) { return link_bipartition(g, {g.vlink(0, 0), g.hlink(0, 0)}); }});
  for (int n = 2; n <= 3; ++n) {
    for (int k = 1; k < n; ++k) {
      cuts.push_back({"n=" + std::to_string(n) + " vertical:" + std::to_string(k), n,
                      [k](const LatticeGeom& g) { return vertical_cut_mask(g, k).bipartition(kTagA); }});
    }
  }
  const std::pair<const char*, const char*> masks[] = {{"n=2 corner face", kMaskDiscN2Corner},
                                                       {"n=3 center face (annular complement)", kMaskDiscN3Center},
                                                       {"n=3 2x2 block", kMaskDiscN3Block},
                                                       {"n=3 bar", kMaskDiscN3Bar}};
  for (const auto& [name, text] : masks) {
    const int n = std::string(text).find('\n');
    const std::string body = text;
    cuts.push_back({name, n, [body](const LatticeGeom& g) { return parse_region_mask(body, g).bipartition(kTagA); }});
  }
  std::map<int, std::unique_ptr<LatticeGeom>> geoms;
  std::map<int, ConfigSet> col_sets, unc_sets;
  for (const auto& cut : cuts) {
    if (!geoms.count(cut.n)) {
      geoms[cut.n] = std::make_unique<LatticeGeom>(cut.n);
      col_sets.emplace(cut.n, reachable_set(*geoms[cut.n], c));
      unc_sets.emplace(cut.n, reachable_set(*geoms[cut.n], 1));
    }
  }
  for (double t : {0.7, 1.0, 1.3}) {
    std::map<int, std::pair<WeightedEnsemble, WeightedEnsemble>> ens;
    for (auto& [n, g] : geoms) {
      ens.emplace(n, std::make_pair(build_colored_gs(*g, c, t, &col_sets.at(n)),
                                    build_uncolored_gs(*g, c, t, &unc_sets.at(n))));
    }
    for (const auto& cut : cuts) {
      const LatticeGeom& g = *geoms[cut.n];
      const Bipartition bp = cut.make(g);
      const auto& [col, unc] = ens.at(cut.n);
      const EntropyReport lab = schmidt_entropy(col, bp, true);
      EntropyRow row;
      row.name = cut.name + " t=" + fix(t, 1);
      row.s_labels = lab.s_nats;
      row.s_svd = lab.oracle;
      row.h_p = lab.h_p;
      row.ell = lab.mean_crossing;
      row.s_uncolored = rdm_entropy_svd(unc, bp).s_nats;
      row.bound = area_law_bound(bp, c);
      row.c = c;
      ent_->push_back(row);
    }
  }
  return *ent_;
}

CriterionResult Suite::c4() {
  CriterionResult r{4, "label entropy equals SVD entropy", true, "", 0};
  double worst = 0;
  std::string worst_name;
  int bad = 0;
  const auto& rows = entropy_table();
  for (const auto& row : rows) {
    const double d = std::abs(row.s_labels - row.s_svd);
    if (d > tol::kEntropy) ++bad;
    if (d > worst) {
      worst = d;
      worst_name = row.name;
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(rows.size()) + " instances, " + std::to_string(bad) + " above " + sci(tol::kEntropy) +
             ", max |S_labels - S_svd| = " + sci(worst) + (worst_name.empty() ? "" : " (" + worst_name + ")");
  return r;
}

CriterionResult Suite::c5() {
  CriterionResult r{5, "S_colored - S_uncolored = <l> ln c", true, "", 0};
  double worst_a = 0, worst_b = 0;
  std::string name_a, name_b;
  int bad = 0;
  const auto& rows = entropy_table();
  for (const auto& row : rows) {
    const double a = std::abs(row.s_svd - row.s_uncolored - row.ell * std::log(static_cast<double>(row.c)));
    const double b = std::abs(row.s_uncolored - row.h_p);
    if (a > tol::kEntropy || b > tol::kEntropy) ++bad;
    if (a > worst_a) {
      worst_a = a;
      name_a = row.name;
    }
    if (b > worst_b) {
      worst_b = b;
      name_b = row.name;
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(bad) + "/" + std::to_string(rows.size()) + " instances above " + sci(tol::kEntropy) +
             "; max |S_col - S_uncol - <l> ln c| = " + sci(worst_a) + (name_a.empty() ? "" : " (" + name_a + ")") +
             "; max |S_uncol - H(p_R)| = " + sci(worst_b) + (name_b.empty() ? "" : " (" + name_b + ")");
  return r;
}

std::vector<TheoremRow>& Suite::theorem_table() {
  if (thm_) return *thm_;
  const auto t0 = Clock::now();
  thm_.emplace();
  static const LatticeGeom g4(4);
  const RegionMask kp = parse_region_mask(kMaskKpN4, g4);
  const RegionMask lw = parse_region_mask(kMaskLwN4, g4);
  for (Prescription p : {Prescription::KP, Prescription::LW}) {
    const RegionMask& mask = p == Prescription::KP ? kp : lw;
    for (double t : {1.0, 1.5}) {
      const auto t1 = Clock::now();
      TheoremRow row;
      row.name = to_string(p) + " n=4 c=2 t=" + fix(t, 1);
      row.report = theorem_check(g4, 2, t, mask, p, true);
      for (const TEEReport* rep : {&row.report.colored, &row.report.colored_svd, &row.report.uncolored}) {
        const auto terms = tee_terms(p);
        for (std::size_t i = 0; i < rep->entropies.size(); ++i) {
          const double bound = area_law_bound(mask.bipartition(terms[i].first), 2);
          row.bound_violation = std::max(row.bound_violation, rep->entropies[i].second - bound);
        }
      }
      row.seconds = since(t1);
      thm_->push_back(std::move(row));
    }
  }
  thm_seconds_ = since(t0);
  return *thm_;
}

CriterionResult Suite::c6() {
  CriterionResult r{6, "loop-statistic theorems (KP, LW)", true, "", 0};
  const auto& rows = theorem_table();
  bool nonvacuous = false;
  std::string detail;
  for (const auto& row : rows) {
    const auto& t = row.report;
    const bool ok = t.residual_svd <= tol::kTheorem;
    r.passed = r.passed && ok;
    if (t.prescription == Prescription::KP && t.loop_stat > 0) nonvacuous = true;
    detail += " [" + row.name + ": dI=" + fix(t.delta_i_svd, 6) + " <L>ln c=" + fix(t.loop_stat * std::log(2.0), 6) +
              " residual=" + sci(t.residual_svd) + " (labels " + sci(t.residual) + ") per-loop defect=" +
              sci(t.per_loop_defect) + (ok ? "" : " FAIL") + "]";
  }
  r.passed = r.passed && nonvacuous && thm_seconds_ <= tol::kBudgetTheorem;
  r.detail = std::string("<L>_ABCD > 0: ") + (nonvacuous ? "yes" : "no") + "; n=5 not run (capacity);" + detail +
             " time " + fix(thm_seconds_, 1) + "s";
  return r;
}

CriterionResult Suite::c7() {
  CriterionResult r{7, "area-law bound", true, "", 0};
  double worst = -1e300;
  std::size_t count = 0;
  for (const auto& row : entropy_table()) {
    for (double s : {row.s_labels, row.s_svd, row.s_uncolored}) {
      worst = std::max(worst, s - row.bound);
      ++count;
    }
  }
  for (const auto& row : theorem_table()) {
    worst = std::max(worst, row.bound_violation);
    count += 3 * tee_terms(row.report.prescription).size();
  }
  r.passed = worst <= 0;
  r.detail = std::to_string(count) + " entropies, max (S - |dA| ln(1+2c)) = " + fix(worst, 6);
  return r;
}

CriterionResult Suite::c8() {
  CriterionResult r{8, "mountain cat state entropy", true, "", 0};
  const LatticeGeom g(4);
  const MountainReport m = mountain_entropy(g, 2, vertical_cut_mask(g, 2).bipartition(kTagA));
  const double want = 2 * std::log(2.0);
  r.passed = m.crossed == 2 && std::abs(m.s_svd - want) <= tol::kMountain && std::abs(m.expected - want) <= tol::kMountain;
  r.detail = "rings " + std::to_string(m.rings) + ", crossed " + std::to_string(m.crossed) + ", S_svd - 2 ln 2 = " +
             sci(m.s_svd - want);
  return r;
}

CriterionResult Suite::c9() {
  CriterionResult r{9, "Motzkin chain entropies and trends", true, "", 0};
  double worst = 0;
  int checked = 0;
  for (int d = 1; d <= 2; ++d) {
    for (double u : {0.5, 1.0, 1.5}) {
      for (int n = 2; n <= 12; ++n) {
        const ChainState gs = chain_ground_state(n, d, u);
        for (int k = 1; k < n; ++k) {
          const ChainEntropy ce = chain_entropy(gs, k);
          worst = std::max(worst, std::abs(ce.labels - ce.svd));
          ++checked;
        }
      }
    }
  }
  const bool equal_ok = worst <= tol::kMotzkin;
  std::string trend;
  bool volume_ok = true;
  for (int n : {8, 10, 12}) {
    const double step = chain_entropy(n + 2, 2, 1.5, (n + 2) / 2).svd - chain_entropy(n, 2, 1.5, n / 2).svd;
    volume_ok = volume_ok && step >= tol::kVolumeLawStep;
    trend += " " + std::to_string(n) + "->" + std::to_string(n + 2) + ":" + fix(step);
  }
  bool log_ok = true;
  double margin = 1e300;
  for (int n = 2; n <= 12; ++n) {
    const double s = chain_entropy(n, 1, 1.0, n / 2).svd;
    margin = std::min(margin, std::log(static_cast<double>(n)) + 1 - s);
    log_ok = log_ok && s <= std::log(static_cast<double>(n)) + 1;
  }
  r.passed = equal_ok && volume_ok && log_ok;
  r.detail = std::to_string(checked) + " cuts, max |labels - svd| = " + sci(worst) + "; d=2 u=1.5 half-cut steps" +
             trend + "; d=1 u=1 min(ln n + 1 - S) = " + fix(margin);
  return r;
}

CriterionResult Suite::c10() {
  CriterionResult r{10, "Monte Carlo against exact layer", true, "", 0};
  const auto t0 = Clock::now();
  std::string detail;
  auto exact_ell = [](const WeightedEnsemble& e, const Bipartition& bp) {
    double ell = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      int k = 0;
      for (const Loop& loop : extract_loops(e.members()[i].config)) {
        bool in = false, out = false;
        for (int l : loop.links) (bp.in_region[l] ? in : out) = true;
        k += in && out;
      }
      ell += e.probability(i) * k;
    }
    return ell;
  };
  struct Case {
    int n;
    double t;
    long sweeps;
    int chains;
    bool distribution;
  };
  for (const Case& cs : {Case{2, 1.2, 1000000, 1, true}, Case{3, 1.5, 200000, 4, false}}) {
    const LatticeGeom g(cs.n);
    const WeightedEnsemble e = build_uncolored_gs(g, 2, cs.t);
    const EnsembleStats st = stats(e);
    const Bipartition bp = vertical_cut_mask(g, cs.n / 2).bipartition(kTagA);
    SamplerConfig cfg;
    cfg.n = cs.n;
    cfg.c = 2;
    cfg.t = cs.t;
    cfg.sweeps = cs.sweeps;
    cfg.burn_in = 1000;
    cfg.chains = cs.chains;
    cfg.threads = opt_.threads;
    cfg.seed = 20260101;
    cfg.est_ell = true;
    cfg.est_distribution = cs.distribution;
    const EstimateReport rep = run(cfg);
    const auto& v = rep.at("V");
    const auto& l = rep.at("ell");
    const double ell = exact_ell(e, bp);
    const double zv = std::abs(v.mean - st.mean_volume) / v.stderr_pooled;
    const double zl = std::abs(l.mean - ell) / l.stderr_pooled;
    const bool ok = zv <= tol::kStandardErrors && zl <= tol::kStandardErrors;
    r.passed = r.passed && ok;
    detail += " n=" + std::to_string(cs.n) + " t=" + fix(cs.t, 1) + ": <V> " + fix(v.mean) + " vs " +
              fix(st.mean_volume) + " (" + fix(zv, 2) + " SE), <l> " + fix(l.mean) + " vs " + fix(ell) + " (" +
              fix(zl, 2) + " SE);";
    if (cs.distribution) {
      double tv = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        auto it = rep.distribution.find(e.members()[i].config.hex());
        tv += std::abs(e.probability(i) - (it == rep.distribution.end() ? 0.0 : it->second));
      }
      for (const auto& [label, p] : rep.distribution) {
        bool known = false;
        for (std::size_t i = 0; i < e.size() && !known; ++i) known = e.members()[i].config.hex() == label;
        if (!known) tv += p;
      }
      tv /= 2;
      r.passed = r.passed && tv <= tol::kTotalVariation;
      detail += " TV " + sci(tv) + ";";
    }
  }
  const LatticeGeom g2(2);
  const TransitionMatrix tm = build_transition_matrix(g2, 2, 1.2);
  const double db = detailed_balance_residual(tm);
  r.passed = r.passed && db <= tol::kDetailedBalance;
  detail += " detailed balance " + sci(db) + ";";

  SamplerConfig big;
  big.n = 20;
  big.c = 2;
  big.t = 1.5;
  // From the vacuum, separate mountains coarsen into one after about 3e4 sweeps.
  big.sweeps = 80000;
  big.burn_in = 50000;
  big.chains = 1;
  big.seed = 20260102;
  big.est_height = true;
  const EstimateReport rep = run(big);
  double center = 0, edge = 0;
  int edges = 0;
  for (int row = 0; row < 20; ++row) {
    for (int col = 0; col < 20; ++col) {
      const double h = rep.at("h" + std::to_string(row * 20 + col)).mean;
      if (row == 0 || col == 0 || row == 19 || col == 19) {
        edge += h;
        ++edges;
      }
      if ((row == 9 || row == 10) && (col == 9 || col == 10)) center += h / 4;
    }
  }
  edge /= edges;
  r.passed = r.passed && center - edge > 0;
  const double secs = since(t0);
  r.passed = r.passed && secs <= tol::kBudgetSampler;
  r.detail = detail + " n=20 t=1.5 center " + fix(center, 2) + " vs edge " + fix(edge, 2) + ", <V> " +
             fix(rep.at("V").mean, 1) + "; " + fix(secs, 1) + "s";
  return r;
}

CriterionResult Suite::c11() {
  CriterionResult r{11, "deterministic outputs", true, "", 0};
  std::string detail;
  auto same = [&](const std::string& name, const std::function<std::string()>& f) {
    const std::string a = f(), b = f();
    const bool ok = a == b;
    r.passed = r.passed && ok;
    detail += " " + name + (ok ? ":ok" : ":DIFFERS");
  };
  auto strip = [](const json& j) { return strip_timestamps(j).dump(); };
  ModelArgs m2{2, 2, 1.2, false, false, 1, 1.0};
  same("enumerate", [&] { return strip(cmd_enumerate({m2, true})); });
  same("groundstate", [&] { return strip(cmd_groundstate({m2, ""})); });
  same("groundstate-decorated", [&] { return strip(cmd_groundstate({{1, 1, 1.2, false, true, 2, 0.8}, ""})); });
  same("entropy", [&] {
    EntropyArgs a;
    a.model = m2;
    a.cut.text = "vertical:1";
    return strip(cmd_entropy(a));
  });
  same("hamiltonian", [&] { return strip(cmd_hamiltonian({m2, "", true, 1e-8})); });
  same("motzkin", [&] {
    std::string csv = cmd_motzkin({8, 2, 1.5, "all", ""});
    return csv.substr(csv.find('\n'));
  });
  same("sample", [&] {
    SampleArgs a;
    a.config.n = 3;
    a.config.c = 2;
    a.config.t = 1.3;
    a.config.sweeps = 2000;
    a.config.burn_in = 100;
    a.config.chains = 3;
    a.config.seed = 99;
    a.config.threads = opt_.threads;
    a.estimate = "height,ell";
    return strip(cmd_sample(a));
  });
  r.detail = "reruns compared with timestamps removed:" + detail;
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt, std::ostream& log) {
  Suite suite(opt);
  const std::vector<std::function<CriterionResult()>> criteria = {
      [&] { return suite.c1(); }, [&] { return suite.c2(); },  [&] { return suite.c3(); },
      [&] { return suite.c4(); }, [&] { return suite.c5(); },  [&] { return suite.c6(); },
      [&] { return suite.c7(); }, [&] { return suite.c8(); },  [&] { return suite.c9(); },
      [&] { return suite.c10(); }, [&] { return suite.c11(); }};
  std::vector<CriterionResult> results;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
    const auto t0 = Clock::now();
    CriterionResult res;
    try {
      res = criteria[i]();
    } catch (const std::exception& e) {
      res = {id, "criterion " + std::to_string(id), false, std::string("exception: ") + e.what(), 0};
    }
    res.seconds = since(t0);
    log << (res.passed ? "[PASS] " : "[FAIL] ") << std::setw(2) << res.id << "  " << res.name << "  -- "
        << res.detail << "  (" << fix(res.seconds, 1) << "s)" << std::endl;
    results.push_back(res);
  }
  int passed = 0;
  for (const auto& r : results) passed += r.passed;
  log << "acceptance: " << passed << "/" << results.size() << " criteria passed" << std::endl;
  if (!opt.json_path.empty()) {
    json out = {{"schema_version", kSchemaVersion}, {"kind", "acceptance"}};
    json manifest = make_manifest("suite acceptance", {{"only", opt.only}}, 0, "all", std::nullopt,
                                  {opt.json_path}, 0);
    out["manifest"] = manifest;
    json items = json::array();
    for (const auto& r : results) {
      items.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                       {"seconds", r.seconds}});
    }
    out["criteria"] = items;
    write_text(opt.json_path, out.dump(2) + "\n");
  }
  return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.passed; });
}

}  // namespace loopforge
