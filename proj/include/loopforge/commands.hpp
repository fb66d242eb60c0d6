#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "loopforge/entanglement.hpp"
#include "loopforge/moves.hpp"
#include "loopforge/sampler.hpp"

namespace loopforge {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr const char* kToolVersion = "0.1.0";

// Wall-clock data lives under manifest.timestamp; everything else is a pure
// function of the parameters (and the seed, for sampling).
json make_manifest(const std::string& command, const json& parameters, int n, const std::string& model,
                   std::optional<std::uint64_t> seed, const std::vector<std::string>& outputs, double wall_seconds);
json strip_timestamps(json doc);

// Reachable set, read from or written to $LOOPFORGE_CACHE when it is set.
ConfigSet cached_reachable_set(const LatticeGeom& geom, int colors);

struct ModelArgs {
  int n = 2;
  int colors = 2;
  double t = 1.0;
  bool uncolored = false;
  bool decorated = false;
  int d = 1;
  double u = 1.0;
  std::string tag() const;
};

struct EnumerateArgs {
  ModelArgs model;
  bool oracle = false;
};
json cmd_enumerate(const EnumerateArgs& a);

struct GroundstateArgs {
  ModelArgs model;
  std::string dump_path;
};
json cmd_groundstate(const GroundstateArgs& a);

// Cut syntax: "vertical:k", "links:l1,l2,..." or a mask file path.
struct CutSpec {
  std::string text;
  std::string region = "A";
};
Bipartition resolve_cut(const LatticeGeom& geom, const CutSpec& cut);

struct EntropyArgs {
  ModelArgs model;
  CutSpec cut;
  std::string method = "auto";  // auto | svd | labels | both
  bool full_p = false;
};
json cmd_entropy(const EntropyArgs& a);

struct TeeArgs {
  ModelArgs model;
  std::string mask_path;
  std::string prescription = "kp";
  std::string method = "auto";  // auto | svd | labels | both
  bool check_theorem = false;
};
json cmd_tee(const TeeArgs& a);

struct HamiltonianArgs {
  ModelArgs model;
  std::string export_path;
  bool verify = false;
  double tol = 1e-8;
};
json cmd_hamiltonian(const HamiltonianArgs& a);

struct MotzkinArgs {
  int len = 8;
  int d = 2;
  double u = 1.0;
  std::string cut = "half";  // "half", "all" or a bond index
  std::string sweep;  // "len:lo:hi:step"
  bool bits = false;  // append entropy columns in bits
};
// Adds s_bits / value_bits next to every entropy in nats and records the flag in the manifest.
json with_bits(json doc);

// CSV table; the manifest is carried on a leading comment line.
std::string cmd_motzkin(const MotzkinArgs& a);

struct SampleArgs {
  SamplerConfig config;
  std::string estimate;  // comma list: height, ell, regions:<mask>, distribution
};
json cmd_sample(const SampleArgs& a);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace loopforge
