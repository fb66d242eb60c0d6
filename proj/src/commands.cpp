#include "loopforge/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "loopforge/errors.hpp"
#include "loopforge/hamiltonian.hpp"
#include "loopforge/motzkin.hpp"

namespace loopforge {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json model_params(const ModelArgs& m) {
  json p = {{"n", m.n}, {"model", m.tag()}};
  if (m.decorated) {
    p["d"] = m.d;
    p["u"] = m.u;
    p["t"] = m.t;
  } else {
    p["colors"] = m.colors;
    p["t"] = m.t;
  }
  return p;
}

json envelope(const std::string& kind, json manifest) {
  return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"manifest", std::move(manifest)}};
}

void check_model(const ModelArgs& m) {
  if (m.n < 1 || m.n > LatticeGeom::kMaxSize) throw UsageError("--n must be in [1, 64]");
  if (m.uncolored && m.decorated) throw UsageError("--uncolored and --decorated are exclusive");
  if (!m.decorated && (m.colors < 1 || m.colors > kMaxColors)) throw UsageError("--colors must be in [1, 16]");
  if (m.decorated && (m.d < 1 || m.d > 8)) throw UsageError("--d must be in [1, 8]");
  if (!(m.t > 0)) throw UsageError("--t must be positive");
  if (m.decorated && !(m.u > 0)) throw UsageError("--u must be positive");
}

WeightedEnsemble build_model(const LatticeGeom& g, const ModelArgs& m) {
  if (m.decorated) return build_decorated_gs(g, m.d, m.t, m.u);
  if (m.uncolored) {
    const ConfigSet set = cached_reachable_set(g, 1);
    return build_uncolored_gs(g, m.colors, m.t, &set);
  }
  const ConfigSet set = cached_reachable_set(g, m.colors);
  return build_colored_gs(g, m.colors, m.t, &set);
}

json census_of(const std::vector<long>& volumes, const std::vector<int>& loops) {
  std::map<long, long> by_v;
  std::map<int, long> by_l;
  for (long v : volumes) ++by_v[v];
  for (int l : loops) ++by_l[l];
  json bv = json::object(), bl = json::object();
  for (auto [v, k] : by_v) bv[std::to_string(v)] = k;
  for (auto [l, k] : by_l) bl[std::to_string(l)] = k;
  return {{"size", volumes.size()},
          {"by_volume", bv},
          {"by_loops", bl},
          {"max_volume", by_v.empty() ? 0 : by_v.rbegin()->first}};
}

json entropy_json(const EntropyReport& r, int c) {
  json j = {{"method", r.method}, {"s_nats", r.s_nats}, {"boundary_links", r.boundary_links}};
  if (c > 1) j["s_per_ln_c"] = r.s_nats / std::log(static_cast<double>(c));
  if (r.method == "labels") {
    j["h_p"] = r.h_p;
    j["mean_crossing"] = r.mean_crossing;
    j["label_entropy"] = r.label_entropy;
    j["mean_enclosing"] = r.mean_enclosing;
    j["label_count"] = r.label_count;
    j["uncolored_label_count"] = r.p.size();
  } else {
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["blocks"] = r.blocks;
    j["largest_block"] = r.largest_block;
  }
  return j;
}

json tee_json(const TEEReport& r, int c, const RegionMask& mask) {
  json terms = json::array();
  const auto signs = tee_terms(r.prescription);
  for (std::size_t i = 0; i < r.entropies.size(); ++i) {
    const Bipartition bp = mask.bipartition(signs[i].first);
    terms.push_back({{"region", r.entropies[i].first},
                     {"sign", signs[i].second},
                     {"s_nats", r.entropies[i].second},
                     {"boundary_links", bp.boundary_links},
                     {"area_law_ok", r.entropies[i].second <= area_law_bound(bp, c)}});
  }
  json j = {{"prescription", to_string(r.prescription)}, {"method", r.method}, {"value", r.value}, {"terms", terms}};
  if (c > 1) j["value_per_ln_c"] = r.value / std::log(static_cast<double>(c));
  j["sign"] = r.value > 0 ? "positive" : (r.value < 0 ? "negative" : "zero");
  return j;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad integer '" + item + "' in '" + s + "'");
    }
  }
  return out;
}

}  // namespace

std::string ModelArgs::tag() const {
  if (decorated) return "decorated";
  return uncolored ? "uncolored" : "colored";
}

json make_manifest(const std::string& command, const json& parameters, int n, const std::string& model,
                   std::optional<std::uint64_t> seed, const std::vector<std::string>& outputs, double wall_seconds) {
  json m = {{"command", command},
            {"parameters", parameters},
            {"tool_version", kToolVersion},
            {"n", n},
            {"model", model},
            {"seed", seed ? json(*seed) : json(nullptr)},
            {"outputs", outputs},
            {"timestamp", {{"utc", utc_now()}, {"wall_seconds", wall_seconds}}}};
  return m;
}

json strip_timestamps(json doc) {
  if (doc.is_object()) {
    doc.erase("timestamp");
    for (auto& [k, v] : doc.items()) v = strip_timestamps(v);
  } else if (doc.is_array()) {
    for (auto& v : doc) v = strip_timestamps(v);
  }
  return doc;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ConfigSet cached_reachable_set(const LatticeGeom& geom, int colors) {
  const char* dir = std::getenv("LOOPFORGE_CACHE");
  if (!dir || !*dir) return reachable_set(geom, colors);
  const std::filesystem::path path =
      std::filesystem::path(dir) / ("reach_n" + std::to_string(geom.size()) + "_c" + std::to_string(colors) + ".txt");
  if (std::filesystem::exists(path)) return load_config_set(geom, path.string());
  ConfigSet set = reachable_set(geom, colors);
  std::filesystem::create_directories(dir);
  const std::string tmp = path.string() + ".tmp";
  save_config_set(set, tmp);
  std::filesystem::rename(tmp, path);
  return set;
}

json cmd_enumerate(const EnumerateArgs& a) {
  const auto t0 = Clock::now();
  check_model(a.model);
  const LatticeGeom g(a.model.n);
  std::vector<long> vols;
  std::vector<int> loops;
  json params = model_params(a.model);
  params.erase("t");
  params["oracle"] = a.oracle;
  json census;
  if (a.model.decorated) {
    const WeightedEnsemble e = build_decorated_gs(g, a.model.d, 1.0, 1.0);
    for (const auto& m : e.members()) {
      vols.push_back(m.volume);
      loops.push_back(m.loops);
    }
    census = census_of(vols, loops);
    std::set<std::string> skeletons;
    for (const auto& m : e.members()) skeletons.insert(m.config.hex());
    census["skeletons"] = skeletons.size();
  } else {
    const int colors = a.model.uncolored ? 1 : a.model.colors;
    const ConfigSet set = cached_reachable_set(g, colors);
    for (const auto& c : set.configs) {
      vols.push_back(volume(c));
      loops.push_back(count_loops(c));
    }
    census = census_of(vols, loops);
    census["max_layer"] = set.layer.empty() ? 0 : set.layer.back();
    if (a.oracle) {
      const auto packings = enumerate_loop_packings(g, colors, FramingMode::CcwOnly, kDefaultConfigCap);
      bool equal = packings.size() == set.size();
      for (const auto& p : packings) equal = equal && set.find(p).has_value();
      census["oracle_size"] = packings.size();
      census["oracle_equal"] = equal;
    }
  }
  json out = envelope("census", make_manifest("enumerate", params, a.model.n, a.model.tag(), std::nullopt, {},
                                              seconds_since(t0)));
  out["census"] = census;
  return out;
}

json cmd_groundstate(const GroundstateArgs& a) {
  const auto t0 = Clock::now();
  check_model(a.model);
  const LatticeGeom g(a.model.n);
  const WeightedEnsemble e = build_model(g, a.model);
  const EnsembleStats st = stats(e);
  std::vector<std::string> outputs;
  json params = model_params(a.model);
  if (!a.dump_path.empty()) {
    outputs.push_back(a.dump_path);
    params["dump"] = a.dump_path;
  }
  json manifest = make_manifest("groundstate", params, a.model.n, a.model.tag(), std::nullopt, outputs, 0);
  if (!a.dump_path.empty()) {
    std::ostringstream os;
    json header = {{"schema_version", kSchemaVersion}, {"kind", "ensemble_dump"}, {"manifest", manifest}};
    os << header.dump() << '\n';
    for (std::size_t i = 0; i < e.size(); ++i) {
      const auto& m = e.members()[i];
      json rec = {{"label_hex", e.label(i)}, {"logamp", m.logamp}, {"V", m.volume}, {"loops", m.loops}};
      os << rec.dump() << '\n';
    }
    write_text(a.dump_path, os.str());
  }
  manifest["timestamp"]["wall_seconds"] = seconds_since(t0);
  json out = envelope("groundstate", manifest);
  out["stats"] = {{"size", e.size()},
                  {"log_z", st.log_z},
                  {"mean_volume", st.mean_volume},
                  {"mean_loops", st.mean_loops},
                  {"mean_height", st.mean_height},
                  {"argmax_label", st.argmax_label},
                  {"argmax_volume", st.argmax_volume},
                  {"max_abs_log_weight", st.max_abs_log_weight}};
  return out;
}

Bipartition resolve_cut(const LatticeGeom& geom, const CutSpec& cut) {
  const std::string& s = cut.text;
  if (s.rfind("vertical:", 0) == 0) {
    const auto k = parse_int_list(s.substr(9));
    if (k.size() != 1 || k[0] <= 0 || k[0] >= geom.size()) {
      throw UsageError("vertical cut needs 0 < k < n, got '" + s + "'");
    }
    return vertical_cut_mask(geom, k[0]).bipartition(kTagA);
  }
  if (s.rfind("links:", 0) == 0) return link_bipartition(geom, parse_int_list(s.substr(6)));
  if (s.empty()) throw UsageError("--cut is required");
  return load_region_mask(s, geom).bipartition(parse_tag_set(cut.region));
}

json cmd_entropy(const EntropyArgs& a) {
  const auto t0 = Clock::now();
  check_model(a.model);
  if (a.method != "auto" && a.method != "svd" && a.method != "labels" && a.method != "both") {
    throw UsageError("--method: auto|svd|labels|both");
  }
  const std::string method = a.method != "auto" ? a.method : (a.model.tag() == "colored" ? "both" : "svd");
  if (method != "svd" && a.model.tag() != "colored") throw UsageError("--method labels needs the colored model");
  const LatticeGeom g(a.model.n);
  const Bipartition bp = resolve_cut(g, a.cut);
  const WeightedEnsemble e = build_model(g, a.model);
  const int c = a.model.decorated ? 1 : a.model.colors;
  json reports = json::array();
  double worst = 0;
  std::map<std::string, double> p;
  if (method != "svd") {
    const EntropyReport r = schmidt_entropy(e, bp, false);
    reports.push_back(entropy_json(r, c));
    worst = std::max(worst, r.s_nats);
    p = r.p;
  }
  if (method != "labels") {
    const EntropyReport r = rdm_entropy_svd(e, bp);
    reports.push_back(entropy_json(r, c));
    worst = std::max(worst, r.s_nats);
  }
  json params = model_params(a.model);
  params["cut"] = a.cut.text;
  params["region"] = a.cut.region;
  params["method"] = a.method;
  params["full_p"] = a.full_p;
  json out = envelope("entropy", make_manifest("entropy", params, a.model.n, a.model.tag(), std::nullopt, {},
                                               seconds_since(t0)));
  int region_links = 0;
  for (bool b : bp.in_region) region_links += b;
  out["cut"] = {{"spec", a.cut.text}, {"region", a.cut.region}, {"boundary_links", bp.boundary_links},
                {"region_links", region_links}};
  out["reports"] = reports;
  out["area_law"] = {{"bound", area_law_bound(bp, c)}, {"ok", worst <= area_law_bound(bp, c)}};
  if (reports.size() == 2) out["labels_minus_svd"] = reports[0]["s_nats"].get<double>() - reports[1]["s_nats"].get<double>();
  if (a.full_p) out["p"] = p;
  return out;
}

namespace {
void add_bits(json& j) {
  if (j.is_object()) {
    if (j.contains("s_nats")) j["s_bits"] = j["s_nats"].get<double>() / std::log(2.0);
    if (j.contains("prescription") && j.contains("value")) j["value_bits"] = j["value"].get<double>() / std::log(2.0);
    for (auto& [k, v] : j.items()) {
      if (k != "manifest") add_bits(v);
    }
  } else if (j.is_array()) {
    for (auto& v : j) add_bits(v);
  }
}
}  // namespace

json with_bits(json doc) {
  add_bits(doc);
  if (doc.contains("manifest")) doc["manifest"]["parameters"]["bits"] = true;
  return doc;
}

json cmd_tee(const TeeArgs& a) {
  const auto t0 = Clock::now();
  check_model(a.model);
  if (a.model.decorated) throw UsageError("tee supports the colored and uncolored models");
  const Prescription p = parse_prescription(a.prescription);
  const LatticeGeom g(a.model.n);
  const RegionMask mask = load_region_mask(a.mask_path, g);
  check_mask_topology(mask, p);
  json params = model_params(a.model);
  params["mask"] = a.mask_path;
  params["mask_text"] = mask.to_text();
  params["prescription"] = to_string(p);
  params["method"] = a.method;
  params["check_theorem"] = a.check_theorem;
  json reports = json::array();
  json theorem;
  if (a.check_theorem) {
    if (a.model.uncolored) throw UsageError("--check-theorem compares colored and uncolored runs; drop --uncolored");
    const TheoremReport r = theorem_check(g, a.model.colors, a.model.t, mask, p, true);
    reports.push_back(tee_json(r.colored, a.model.colors, mask));
    reports.push_back(tee_json(r.colored_svd, a.model.colors, mask));
    json unc = tee_json(r.uncolored, a.model.colors, mask);
    unc["model"] = "uncolored";
    reports.push_back(unc);
    json exact = json::object(), crossing = json::object();
    for (auto [s, v] : r.stats.exact) exact[tag_set_name(s)] = v;
    for (auto [s, v] : r.stats.crossing) crossing[tag_set_name(s)] = v;
    theorem = {{"delta_i_labels", r.delta_i},
               {"delta_i_svd", r.delta_i_svd},
               {"loop_stat", r.loop_stat},
               {"loop_stat_ln_c", r.loop_stat * std::log(static_cast<double>(a.model.colors))},
               {"residual_labels", r.residual},
               {"residual_svd", r.residual_svd},
               {"per_loop_defect", r.per_loop_defect},
               {"identity_residual", r.stats.identity_residual},
               {"loop_stats_exact", exact},
               {"loop_stats_crossing", crossing}};
  } else {
    const WeightedEnsemble e = build_model(g, a.model);
    std::vector<EntropyMethod> methods;
    const bool colored = !a.model.uncolored;
    if (a.method == "auto") methods = {colored ? EntropyMethod::Labels : EntropyMethod::Svd};
    else if (a.method == "svd") methods = {EntropyMethod::Svd};
    else if (a.method == "labels") methods = {EntropyMethod::Labels};
    else if (a.method == "both") methods = {EntropyMethod::Labels, EntropyMethod::Svd};
    else throw UsageError("--method: auto|svd|labels|both");
    for (EntropyMethod m : methods) {
      if (m == EntropyMethod::Labels && !colored) throw UsageError("labels method needs the colored model");
      reports.push_back(tee_json(tee(e, mask, p, m), a.model.colors, mask));
    }
  }
  json out = envelope("tee", make_manifest("tee", params, a.model.n, a.model.tag(), std::nullopt, {},
                                           seconds_since(t0)));
  out["reports"] = reports;
  if (a.check_theorem) out["theorem"] = theorem;
  return out;
}

json cmd_hamiltonian(const HamiltonianArgs& a) {
  const auto t0 = Clock::now();
  check_model(a.model);
  const LatticeGeom g(a.model.n);
  HamiltonianModel model;
  model.t = a.model.t;
  model.u = a.model.u;
  model.d = a.model.d;
  model.c = a.model.colors;
  Basis basis;
  if (a.model.decorated) {
    model.kind = ModelKind::Decorated;
    model.c = 1;
    basis = build_decorated_basis(g, a.model.d);
  } else if (a.model.uncolored) {
    model.kind = ModelKind::Uncolored;
    basis = build_full_basis(g, 1);
  } else {
    model.kind = ModelKind::Colored;
    basis = build_full_basis(g, a.model.colors);
  }
  const SparseOperator h = build_hamiltonian(model, basis);
  const WeightedEnsemble e = build_model(g, a.model);
  const FrustrationReport fr = verify_frustration_free(h, basis, e);
  json params = model_params(a.model);
  params["verify"] = a.verify;
  params["tol"] = a.tol;
  std::vector<std::string> outputs;
  if (!a.export_path.empty()) {
    params["export"] = a.export_path;
    outputs = {a.export_path, a.export_path + ".labels"};
    std::ostringstream os, labels;
    os << std::setprecision(17);
    os << "% " << h.dim << ' ' << h.dim << ' ' << h.matrix.nonZeros() << '\n';
    for (int k = 0; k < h.matrix.outerSize(); ++k) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(h.matrix, k); it; ++it) {
        os << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
      }
    }
    for (int i = 0; i < basis.size(); ++i) labels << i << ' ' << basis.label(i) << '\n';
    write_text(a.export_path, os.str());
    write_text(a.export_path + ".labels", labels.str());
  }
  json out;
  json body = {{"basis_size", basis.size()},
               {"ground_state_support", e.size()},
               {"kinetic_terms", h.kinetic.size()},
               {"penalty_terms", h.penalties.size()},
               {"nonzeros", h.matrix.nonZeros()},
               {"frustration", {{"residual", fr.residual}, {"max_term_residual", fr.max_term_residual}}}};
  if (a.verify) {
    const GroundSpaceReport gs = ground_space(h, a.tol);
    body["ground_space"] = {{"dim", gs.dim},
                            {"components", gs.components},
                            {"largest_component", gs.largest_component},
                            {"iterative_components", gs.iterative_components},
                            {"min_eigenvalue", gs.min_eigenvalue},
                            {"gap", gs.gap},
                            {"tol", a.tol}};
  }
  out = envelope("hamiltonian", make_manifest("hamiltonian", params, a.model.n, a.model.tag(), std::nullopt, outputs,
                                              seconds_since(t0)));
  out["hamiltonian"] = body;
  return out;
}

std::string cmd_motzkin(const MotzkinArgs& a) {
  const auto t0 = Clock::now();
  if (a.d < 1 || a.d > 8) throw UsageError("--d must be in [1, 8]");
  if (!(a.u > 0)) throw UsageError("--u must be positive");
  std::vector<int> lengths{a.len};
  if (!a.sweep.empty()) {
    if (a.sweep.rfind("len:", 0) != 0) throw UsageError("--sweep must look like len:lo:hi:step");
    std::string spec = a.sweep.substr(4);
    std::replace(spec.begin(), spec.end(), ':', ',');
    const auto v = parse_int_list(spec);
    if (v.size() != 3 || v[0] < 1 || v[1] < v[0] || v[2] < 1) throw UsageError("--sweep must look like len:lo:hi:step");
    lengths.clear();
    for (int n = v[0]; n <= v[1]; n += v[2]) lengths.push_back(n);
  }
  std::ostringstream rows;
  rows << std::setprecision(15);
  rows << "len,d,u,cut,s_labels,s_svd,label_count" << (a.bits ? ",s_labels_bits,s_svd_bits" : "") << "\n";
  for (int n : lengths) {
    if (n < 2) throw UsageError("chain length must be >= 2");
    std::vector<int> cuts;
    if (a.cut == "all") {
      for (int k = 1; k < n; ++k) cuts.push_back(k);
    } else if (a.cut == "half") {
      cuts.push_back(n / 2);
    } else {
      const auto k = parse_int_list(a.cut);
      if (k.size() != 1 || k[0] <= 0 || k[0] >= n) throw UsageError("--cut needs 0 < cut < len");
      cuts.push_back(k[0]);
    }
    const ChainState gs = chain_ground_state(n, a.d, a.u);
    for (int k : cuts) {
      const ChainEntropy ce = chain_entropy(gs, k);
      rows << n << ',' << a.d << ',' << a.u << ',' << k << ',' << ce.labels << ',' << ce.svd << ',' << ce.label_count;
      if (a.bits) rows << ',' << ce.labels / std::log(2.0) << ',' << ce.svd / std::log(2.0);
      rows << '\n';
    }
  }
  const json params = {{"len", a.len}, {"d", a.d}, {"u", a.u}, {"cut", a.cut}, {"sweep", a.sweep}, {"bits", a.bits}};
  json manifest = make_manifest("motzkin", params, a.len, "motzkin", std::nullopt, {}, seconds_since(t0));
  manifest["schema_version"] = kSchemaVersion;
  return "# manifest: " + manifest.dump() + "\n" + rows.str();
}

json cmd_sample(const SampleArgs& a) {
  const auto t0 = Clock::now();
  SamplerConfig cfg = a.config;
  const LatticeGeom g(std::max(1, std::min(cfg.n, LatticeGeom::kMaxSize)));
  std::stringstream ss(a.estimate);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (item == "height") cfg.est_height = true;
    else if (item == "ell") cfg.est_ell = true;
    else if (item.rfind("ell:", 0) == 0) {
      cfg.est_ell = true;
      cfg.ell_cut = resolve_cut(g, {item.substr(4), "A"});
    } else if (item.rfind("regions:", 0) == 0) cfg.regions = load_region_mask(item.substr(8), g);
    else if (item == "distribution") cfg.est_distribution = true;
    else throw UsageError("unknown estimator '" + item + "'");
  }
  const EstimateReport r = run(cfg);
  json params = {{"n", cfg.n},           {"colors", cfg.c},        {"t", cfg.t},
                 {"sweeps", cfg.sweeps}, {"burn_in", cfg.burn_in}, {"thinning", cfg.thinning},
                 {"chains", cfg.chains}, {"seed", cfg.seed},       {"estimate", a.estimate}};
  std::vector<std::string> outputs;
  if (!cfg.trace_path.empty()) {
    params["trace"] = cfg.trace_path;
    outputs.push_back(cfg.trace_path);
  }
  json out = envelope("estimate", make_manifest("sample", params, cfg.n, "uncolored", cfg.seed, outputs,
                                                seconds_since(t0)));
  json est = json::array();
  for (const auto& e : r.estimators) {
    json chains = json::array();
    for (const auto& s : e.per_chain) {
      chains.push_back({{"mean", s.mean}, {"stderr", s.stderr_bm}, {"tau_int", s.tau_int}});
    }
    est.push_back({{"name", e.name},
                   {"mean", e.mean},
                   {"stderr", e.stderr_pooled},
                   {"tau_int", e.tau_int},
                   {"per_chain", chains}});
  }
  json acc = json::array();
  for (const auto& k : r.acceptance) {
    acc.push_back({{"kind", k.kind},
                   {"proposed", k.proposed},
                   {"applicable", k.applicable},
                   {"accepted", k.accepted},
                   {"rate", k.rate()}});
  }
  out["sampler"] = {{"catalog_size", r.catalog_size},
                    {"sweep_proposals", r.catalog_size},
                    {"measurements_per_chain", r.measurements_per_chain},
                    {"chain_seeds", r.chain_seeds},
                    {"seed_rule", "splitmix64 stream from the master seed; chain i takes output i"},
                    {"error_method", "batch means, 32 batches per chain; pooled over chains"},
                    {"acf_window", "self-consistent window W >= 5 tau"}};
  out["estimators"] = est;
  out["acceptance"] = acc;
  if (cfg.est_distribution) out["distribution"] = r.distribution;
  return out;
}

}  // namespace loopforge
