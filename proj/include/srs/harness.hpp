#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srs/geometry.hpp"

namespace srs {

inline constexpr const char* kVersion = "0.1.0";

struct MixtureComponent {
  std::vector<double> center;
  double sigma = 0.1;
  double weight = 1.0;
};

struct GeneratorSpec {
  enum class Kind { UniformCube, Mixture, File };
  Kind kind = Kind::UniformCube;
  double side = 1.0;                         // uniform fills [0, side]^d
  std::vector<MixtureComponent> components;  // mixture
  std::string path;                          // file (.json by extension, else CSV)
};

// Deterministic synthetic data. n and dim apply to the synthetic kinds; a
// file source is loaded as stored.
PointSet generate(const GeneratorSpec& spec, std::size_t n, int dim,
                  std::uint64_t seed);

struct ExperimentConfig {
  std::string mode = "sample";  // gen | sample | verify-net | lemma-check | cluster | bench
  GeneratorSpec generator;
  std::size_t n = 256;
  int dim = 2;
  double w = 0.1;
  std::string profile = "triangle";
  double eps = 0.2;
  double tau = 0.1;
  double delta = 0.1;
  int net_dirs = 180;
  std::string net_mode = "critical";  // critical | grid
  std::vector<std::uint64_t> seeds = {1};
  std::string out = "srs_out";  // output path, or prefix when suffixes apply

  std::size_t target = 0;            // sample: 0 derives the size from eps
  std::string match_mode = "exact";  // exact | greedy
  std::string sample_path;           // verify-net: the sample to check
  int k_max = 0;                     // cluster: 0 picks the log2 default
  std::string object_kind = "slab";  // lemma-check: slab | cube | shell | all
  int objects = 20;                  // lemma-check: objects per seed
  int exponent = 0;                  // lemma-check: 0 uses dim
  bool timing = false;               // measure runtime_ms (breaks byte-identity)
};

// Canonical JSON round trip; from-JSON accepts the bare config object or a
// metadata document carrying it under "config".
std::string config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const std::string& text);

// FNV-1a over the canonical form, as 16 hex digits.
std::string config_hash(const ExperimentConfig& cfg);

// Executes cfg.mode and writes its output files. Throws Error on invalid
// configuration; the CLI turns that into error JSON and a nonzero exit.
void run_experiment(const ExperimentConfig& cfg);

}  // namespace srs
