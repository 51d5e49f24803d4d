#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "srs/error.hpp"
#include "srs/harness.hpp"

namespace {

using srs::Error;
using srs::ExperimentConfig;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw Error("io_error", "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, sep)) out.push_back(tok);
  return out;
}

double parse_num(const std::string& tok, const std::string& what) {
  try {
    std::size_t used = 0;
    const double value = std::stod(tok, &used);
    if (used == tok.size()) return value;
  } catch (const std::exception&) {
  }
  throw Error("bad_config", "invalid " + what + ": " + tok);
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const std::string& tok : split(text, ',')) {
    try {
      std::size_t used = 0;
      seeds.push_back(std::stoull(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error("bad_config", "invalid seed list: " + text);
    }
  }
  if (seeds.empty()) throw Error("bad_config", "invalid seed list: " + text);
  return seeds;
}

// "c0,..,c{d-1},sigma,weight;..." with one ';'-separated block per component.
std::vector<srs::MixtureComponent> parse_mixture(const std::string& text,
                                                 int dim) {
  std::vector<srs::MixtureComponent> components;
  for (const std::string& block : split(text, ';')) {
    const std::vector<std::string> fields = split(block, ',');
    if (static_cast<int>(fields.size()) != dim + 2)
      throw Error("bad_config", "mixture component needs dim + 2 fields: " + block);
    srs::MixtureComponent c;
    for (int a = 0; a < dim; ++a)
      c.center.push_back(parse_num(fields[a], "mixture center"));
    c.sigma = parse_num(fields[dim], "mixture sigma");
    c.weight = parse_num(fields[dim + 1], "mixture weight");
    components.push_back(std::move(c));
  }
  return components;
}

struct GeneratorFlags {
  std::string kind;
  std::string mixture;
  std::string data;
};

void add_common_options(CLI::App* sub, ExperimentConfig& cfg,
                        GeneratorFlags& gen, std::string& seeds,
                        std::string& config_path) {
  sub->add_option("--config", config_path, "config or metadata JSON to replay");
  sub->add_option("--n", cfg.n, "points to generate");
  sub->add_option("--dim", cfg.dim, "ambient dimension");
  sub->add_option("--w", cfg.w, "smoothing width");
  sub->add_option("--profile", cfg.profile,
                  "kernel profile (ball|triangle|epanechnikov|gaussian)");
  sub->add_option("--eps", cfg.eps, "target sample error");
  sub->add_option("--tau", cfg.tau, "net threshold");
  sub->add_option("--delta", cfg.delta, "failure probability");
  sub->add_option("--net-dirs", cfg.net_dirs, "evaluation net directions");
  sub->add_option("--net-mode", cfg.net_mode, "offset placement (critical|grid)");
  sub->add_option("--seeds", seeds, "comma-separated seed list");
  sub->add_option("--out", cfg.out, "output path or prefix");
  sub->add_option("--target", cfg.target, "sample size (0 derives from eps)");
  sub->add_option("--match-mode", cfg.match_mode, "matching mode (exact|greedy)");
  sub->add_option("--sample", cfg.sample_path, "sample file to verify");
  sub->add_option("--k-max", cfg.k_max, "cluster levels (0 picks log2 n)");
  sub->add_option("--object-kind", cfg.object_kind,
                  "restricted object kind (slab|cube|shell|all)");
  sub->add_option("--objects", cfg.objects, "objects per seed");
  sub->add_option("--exponent", cfg.exponent, "rho exponent (0 uses dim)");
  sub->add_flag("--timing", cfg.timing, "measure runtimes (breaks byte-identity)");
  sub->add_option("--gen", gen.kind, "generator kind (uniform|mixture|file)");
  sub->add_option("--side", cfg.generator.side, "uniform cube side");
  sub->add_option("--mixture", gen.mixture,
                  "mixture components, 'c0,..,sigma,weight;...'");
  sub->add_option("--data", gen.data, "input point file (.csv or .json)");
}

std::string find_config(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return argv[i + 1];
    if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
  }
  return {};
}

void apply_thread_env() {
  const char* text = std::getenv("SRS_THREADS");
  if (text == nullptr) return;
  const int threads = static_cast<int>(parse_num(text, "SRS_THREADS"));
  if (threads < 1) throw Error("bad_config", "SRS_THREADS must be positive");
#ifdef _OPENMP
  omp_set_num_threads(threads);
#endif
}

}  // namespace

int main(int argc, char** argv) {
  try {
    apply_thread_env();
    ExperimentConfig cfg;
    const std::string preload = find_config(argc, argv);
    if (!preload.empty()) cfg = srs::config_from_json(slurp(preload));

    CLI::App app{"smoothed range space sampling toolkit"};
    app.set_version_flag("--version", srs::kVersion);
    app.require_subcommand(0, 1);
    GeneratorFlags gen;
    std::string seeds;
    std::string config_path;
    app.add_option("--config", config_path, "config or metadata JSON to replay");
    const std::vector<std::pair<const char*, const char*>> modes = {
        {"gen", "write a synthetic point set"},
        {"sample", "build an eps-sample by matching-based halving"},
        {"verify-net", "check a sample as an (eps,tau)-net and hitting set"},
        {"lemma-check", "rho and edge-type diagnostics on restricted objects"},
        {"cluster", "greedy k-center levels and predicted sample sizes"},
        {"bench", "compare serial and parallel evaluation"}};
    for (const auto& [name, help] : modes)
      add_common_options(app.add_subcommand(name, help), cfg, gen, seeds,
                         config_path);

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      return app.exit(e);
    }

    if (!gen.kind.empty()) {
      if (gen.kind == "uniform")
        cfg.generator.kind = srs::GeneratorSpec::Kind::UniformCube;
      else if (gen.kind == "mixture")
        cfg.generator.kind = srs::GeneratorSpec::Kind::Mixture;
      else if (gen.kind == "file")
        cfg.generator.kind = srs::GeneratorSpec::Kind::File;
      else
        throw Error("bad_config", "unknown generator kind: " + gen.kind);
    }
    if (!gen.data.empty()) {
      cfg.generator.path = gen.data;
      if (gen.kind.empty()) cfg.generator.kind = srs::GeneratorSpec::Kind::File;
    }
    if (!gen.mixture.empty()) {
      cfg.generator.components = parse_mixture(gen.mixture, cfg.dim);
      if (gen.kind.empty()) cfg.generator.kind = srs::GeneratorSpec::Kind::Mixture;
    }
    if (!seeds.empty()) cfg.seeds = parse_seeds(seeds);

    const std::vector<CLI::App*> chosen = app.get_subcommands();
    if (!chosen.empty())
      cfg.mode = chosen.front()->get_name();
    else if (preload.empty())
      throw Error("bad_config", "pass a subcommand or --config");

    srs::run_experiment(cfg);
    return 0;
  } catch (const Error& e) {
    const nlohmann::json doc = {
        {"error", {{"code", e.code()}, {"message", e.what()}}}};
    std::fprintf(stderr, "%s\n", doc.dump().c_str());
    return 1;
  } catch (const std::exception& e) {
    const nlohmann::json doc = {
        {"error", {{"code", "internal"}, {"message", e.what()}}}};
    std::fprintf(stderr, "%s\n", doc.dump().c_str());
    return 2;
  }
}
