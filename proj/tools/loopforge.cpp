#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "loopforge/acceptance.hpp"
#include "loopforge/commands.hpp"
#include "loopforge/errors.hpp"

using namespace loopforge;

namespace {

void add_model(CLI::App* cmd, ModelArgs& m, bool with_t = true) {
  cmd->add_option("--n", m.n, "Lattice size (n x n faces)")->required();
  cmd->add_option("--colors", m.colors, "Number of loop colors c");
  if (with_t) cmd->add_option("--t", m.t, "Volume weight t (amplitude t^V)");
  cmd->add_flag("--uncolored", m.uncolored, "Uncolored model with sqrt(c) per loop");
  cmd->add_flag("--decorated", m.decorated, "Decorated model (single-color loops carrying Motzkin words)");
  cmd->add_option("--d", m.d, "Parenthesis colors of the decorated model");
  cmd->add_option("--u", m.u, "Area weight u of the decorated model");
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    write_text(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "loopforge: exact and Monte Carlo tools for colored loop models on the square lattice.\n"
      "Entropies are in nats. Loops are framed counterclockwise; region masks are face-granular\n"
      "(one character A/B/C/D/. per face, row 0 at the top)."};
  app.require_subcommand(1);
  int threads = 1;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads for parallel stages")->check(CLI::PositiveNumber);
  app.add_option("--out", out_path, "Output file (default stdout)");
  bool bits = false;
  app.add_flag("--bits", bits, "Also report entropies in bits (nats fields are unchanged)");

  EnumerateArgs en;
  auto* c_en = app.add_subcommand("enumerate", "Census of the vacuum-connected configurations by volume and loops");
  add_model(c_en, en.model, false);
  c_en->add_flag("--oracle", en.oracle, "Cross-check against the backtracking packing enumeration");

  GroundstateArgs gs;
  auto* c_gs = app.add_subcommand("groundstate", "Ground-state ensemble statistics and optional JSON-lines dump");
  add_model(c_gs, gs.model);
  c_gs->add_option("--dump", gs.dump_path, "Write one record per basis label (label_hex, logamp, V, loops)");

  EntropyArgs ent;
  auto* c_ent = app.add_subcommand("entropy", "Entanglement entropy (nats) of a bipartition");
  add_model(c_ent, ent.model);
  c_ent->add_option("--cut", ent.cut.text, "vertical:k | links:l1,l2,... | mask file")->required();
  c_ent->add_option("--region", ent.cut.region, "Tag set of the mask forming the region (e.g. A, AB)");
  c_ent->add_option("--method", ent.method, "auto | svd | labels | both (auto: both for the colored model, else svd)");
  c_ent->add_flag("--full-p", ent.full_p, "Include the crossing-label distribution");

  TeeArgs te;
  auto* c_te = app.add_subcommand("tee", "Topological entanglement entropy combination (nats)");
  add_model(c_te, te.model);
  c_te->add_option("--mask", te.mask_path, "Region mask file with A/B/C/D faces")->required();
  c_te->add_option("--prescription", te.prescription, "kp | lw");
  c_te->add_option("--method", te.method, "auto | svd | labels | both");
  c_te->add_flag("--check-theorem", te.check_theorem, "Compare colored and uncolored combinations with <L>");

  HamiltonianArgs ha;
  auto* c_ha = app.add_subcommand("hamiltonian", "Build the parent Hamiltonian; residuals and ground-space dimension");
  add_model(c_ha, ha.model);
  c_ha->add_option("--export", ha.export_path, "Write 'row col value' triplets plus a .labels file");
  c_ha->add_flag("--verify", ha.verify, "Compute the ground-space dimension");
  c_ha->add_option("--tol", ha.tol, "Zero-energy tolerance");

  MotzkinArgs mz;
  auto* c_mz = app.add_subcommand("motzkin", "Colored Motzkin chain entropies (nats) as CSV");
  c_mz->add_option("--len", mz.len, "Chain length");
  c_mz->add_option("--d", mz.d, "Number of parenthesis colors");
  c_mz->add_option("--u", mz.u, "Area weight u");
  c_mz->add_option("--cut", mz.cut, "half | all | bond index");
  c_mz->add_option("--sweep", mz.sweep, "len:lo:hi:step");

  SampleArgs sa;
  auto* c_sa = app.add_subcommand("sample", "Metropolis sampling of the uncolored loop gas c^loops t^(2V)");
  c_sa->add_option("--n", sa.config.n, "Lattice size")->required();
  c_sa->add_option("--colors", sa.config.c, "Loop fugacity c");
  c_sa->add_option("--t", sa.config.t, "Volume weight t");
  c_sa->add_option("--sweeps", sa.config.sweeps, "Sweeps per chain (one sweep = one proposal per catalog slot)");
  c_sa->add_option("--burn-in", sa.config.burn_in, "Discarded sweeps");
  c_sa->add_option("--thinning", sa.config.thinning, "Measure every k-th sweep");
  c_sa->add_option("--chains", sa.config.chains, "Independent chains");
  c_sa->add_option("--seed", sa.config.seed, "Master seed (64-bit)");
  c_sa->add_option("--estimate", sa.estimate, "height,ell[,ell:<cut>],regions:<mask>,distribution");
  c_sa->add_option("--trace", sa.config.trace_path, "Thinned trace CSV");

  AcceptanceOptions ao;
  auto* c_su = app.add_subcommand("suite", "Run a named verification suite");
  std::string suite_name;
  c_su->add_option("name", suite_name, "acceptance")->required();
  c_su->add_option("--only", ao.only, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 11));
  c_su->add_option("--json", ao.json_path, "Also write the results as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    std::string text;
    if (*c_en) text = cmd_enumerate(en).dump(2) + "\n";
    if (*c_gs) text = cmd_groundstate(gs).dump(2) + "\n";
    if (*c_ent) text = (bits ? with_bits(cmd_entropy(ent)) : cmd_entropy(ent)).dump(2) + "\n";
    if (*c_te) text = (bits ? with_bits(cmd_tee(te)) : cmd_tee(te)).dump(2) + "\n";
    if (*c_ha) text = cmd_hamiltonian(ha).dump(2) + "\n";
    if (*c_mz) {
      mz.bits = bits;
      text = cmd_motzkin(mz);
    }
    if (*c_sa) {
      sa.config.threads = threads;
      text = cmd_sample(sa).dump(2) + "\n";
    }
    if (*c_su) {
      if (suite_name != "acceptance") throw UsageError("unknown suite '" + suite_name + "'");
      ao.threads = threads;
      const auto results = run_acceptance(ao, std::cout);
      return !results.empty() && all_passed(results) ? 0 : 1;
    }
    emit(out_path, text);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const MaskError& e) {
    std::cerr << "mask error: " << e.what() << "\n";
    return 2;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
