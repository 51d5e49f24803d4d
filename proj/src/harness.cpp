#include "srs/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "srs/clustering.hpp"
#include "srs/discrepancy.hpp"
#include "srs/error.hpp"
#include "srs/io.hpp"
#include "srs/matching.hpp"
#include "srs/nets.hpp"
#include "srs/rng.hpp"

namespace srs {

namespace {

using nlohmann::json;

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

PointSet load_points(const std::string& path) {
  if (ends_with(path, ".json")) return io::read_points_json(path);
  return io::read_points_csv(path);
}

const char* generator_kind_name(GeneratorSpec::Kind kind) {
  switch (kind) {
    case GeneratorSpec::Kind::UniformCube: return "uniform";
    case GeneratorSpec::Kind::Mixture: return "mixture";
    case GeneratorSpec::Kind::File: return "file";
  }
  return "uniform";
}

GeneratorSpec::Kind parse_generator_kind(const std::string& name) {
  if (name == "uniform") return GeneratorSpec::Kind::UniformCube;
  if (name == "mixture") return GeneratorSpec::Kind::Mixture;
  if (name == "file") return GeneratorSpec::Kind::File;
  throw Error("bad_config", "unknown generator kind: " + name);
}

NetMode parse_net_mode(const std::string& name) {
  if (name == "critical") return NetMode::CriticalOffsets;
  if (name == "grid") return NetMode::GridOffsets;
  throw Error("bad_config", "unknown net mode: " + name);
}

MatchMode parse_match_mode(const std::string& name) {
  if (name == "exact") return MatchMode::Exact;
  if (name == "greedy") return MatchMode::Greedy;
  throw Error("bad_config", "unknown match mode: " + name);
}

json config_json(const ExperimentConfig& cfg) {
  json gen = {{"kind", generator_kind_name(cfg.generator.kind)},
              {"side", cfg.generator.side},
              {"path", cfg.generator.path}};
  json comps = json::array();
  for (const MixtureComponent& c : cfg.generator.components)
    comps.push_back(
        {{"center", c.center}, {"sigma", c.sigma}, {"weight", c.weight}});
  gen["components"] = comps;
  return {{"mode", cfg.mode},
          {"generator", gen},
          {"n", cfg.n},
          {"dim", cfg.dim},
          {"w", cfg.w},
          {"profile", cfg.profile},
          {"eps", cfg.eps},
          {"tau", cfg.tau},
          {"delta", cfg.delta},
          {"net_dirs", cfg.net_dirs},
          {"net_mode", cfg.net_mode},
          {"seeds", cfg.seeds},
          {"out", cfg.out},
          {"target", cfg.target},
          {"match_mode", cfg.match_mode},
          {"sample_path", cfg.sample_path},
          {"k_max", cfg.k_max},
          {"object_kind", cfg.object_kind},
          {"objects", cfg.objects},
          {"exponent", cfg.exponent},
          {"timing", cfg.timing}};
}

json meta_json(const ExperimentConfig& cfg, const std::string& hash) {
  return {{"version", kVersion},
          {"config_hash", hash},
          {"config", config_json(cfg)},
          {"constants",
           {{"sample_size_constant", 2},
            {"net_size_constant", 8},
            {"predict_size_constant", 2},
            {"halving_exact_cap", 2048},
            {"gaussian_truncation", 4.0}}},
          {"net_resolution",
           {{"directions", cfg.net_dirs}, {"offsets", cfg.net_mode}}}};
}

void write_json_file(const json& doc, const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "io_error", "cannot open for writing: " + path);
  out << doc.dump(2) << "\n";
  require(out.good(), "io_error", "write failed: " + path);
}

void write_meta(const ExperimentConfig& cfg, const std::string& hash) {
  write_json_file(meta_json(cfg, hash), cfg.out + ".meta.json");
}

// Trailing comment so CSV outputs carry provenance; readers skip '#' lines.
void stamp_csv(const std::string& path, const std::string& hash) {
  std::ofstream out(path, std::ios::app);
  require(out.good(), "io_error", "cannot open for writing: " + path);
  out << "# version=" << kVersion << " config_hash=" << hash << "\n";
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// --------------------------------------------------------------------------
// Modes
// --------------------------------------------------------------------------

void run_gen(const ExperimentConfig& cfg, const std::string& hash) {
  PointSet P = generate(cfg.generator, cfg.n, cfg.dim, cfg.seeds.front());
  if (ends_with(cfg.out, ".json")) {
    json points = json::array();
    for (std::size_t i = 0; i < P.size(); ++i) {
      json row = json::array();
      for (double c : P.point(i)) row.push_back(c);
      points.push_back(row);
    }
    json doc = {{"points", points},
                {"meta", {{"version", kVersion}, {"config_hash", hash}}}};
    if (P.has_weights()) doc["weights"] = P.weights();
    write_json_file(doc, cfg.out);
    return;
  }
  const std::string path =
      ends_with(cfg.out, ".csv") ? cfg.out : cfg.out + ".points.csv";
  io::write_points_csv(P, path);
  stamp_csv(path, hash);
}

void run_sample(const ExperimentConfig& cfg, const std::string& hash) {
  const KernelProfile profile = KernelProfile::parse(cfg.profile);
  const NetMode net_mode = parse_net_mode(cfg.net_mode);
  const MatchMode match_mode = parse_match_mode(cfg.match_mode);
  std::vector<io::ResultRow> rows;
  for (std::uint64_t seed : cfg.seeds) {
    PointSet P = generate(cfg.generator, cfg.n, cfg.dim, seed);
    const auto start = std::chrono::steady_clock::now();
    MergeReduceResult reduced =
        cfg.target > 0
            ? merge_reduce(P, cfg.target, cfg.w, profile, seed, match_mode)
            : merge_reduce_eps(P, cfg.eps, cfg.w, profile, seed, cfg.delta,
                               match_mode);
    const double ms = cfg.timing ? elapsed_ms(start) : 0.0;
    const PointSet& S = reduced.sample;
    EvaluationNet net = build_evaluation_net(PointSet::concat(P, S), cfg.w,
                                             profile, cfg.net_dirs, net_mode);
    const double error = eps_sample_error(P, S, net, Exec::Parallel).value;
    // Next-halving diagnostic: the discrepancy a further halving step of the
    // sample would face on the same net.
    Matching M = min_cost_matching(S, match_mode);
    Coloring chi = color_from_matching(M, rng::derive(seed, 777));
    const double disc = disc_sup(S, chi, net, Exec::Parallel).value;
    const std::string sample_path =
        cfg.out + ".sample." + std::to_string(seed) + ".csv";
    io::write_points_csv(S, sample_path);
    stamp_csv(sample_path, hash);
    rows.push_back({P.size(), cfg.w, profile.name(), seed, S.size(), error,
                    disc, ms});
  }
  const std::string results_path = cfg.out + ".results.csv";
  io::write_results_csv(rows, results_path);
  stamp_csv(results_path, hash);
}

void run_verify_net(const ExperimentConfig& cfg, const std::string& hash) {
  require(!cfg.sample_path.empty(), "bad_config",
          "verify-net needs a sample path");
  const KernelProfile profile = KernelProfile::parse(cfg.profile);
  PointSet P = generate(cfg.generator, cfg.n, cfg.dim, cfg.seeds.front());
  PointSet Q = load_points(cfg.sample_path);
  EvaluationNet net =
      build_evaluation_net(PointSet::concat(P, Q), cfg.w, profile,
                           cfg.net_dirs, parse_net_mode(cfg.net_mode));
  NetReport report =
      verify_eps_tau_net(P, Q, cfg.eps, cfg.tau, net, Exec::Parallel);
  json doc = json::parse(io::net_report_json(report));
  doc["meta"] = {{"version", kVersion}, {"config_hash", hash}};
  write_json_file(doc, cfg.out + ".report.json");
}

void run_lemma_check(const ExperimentConfig& cfg, const std::string& hash) {
  const MatchMode match_mode = parse_match_mode(cfg.match_mode);
  const int exponent = cfg.exponent > 0 ? cfg.exponent : cfg.dim;
  require(cfg.objects > 0, "bad_config", "objects must be positive");
  require(cfg.object_kind == "slab" || cfg.object_kind == "cube" ||
              cfg.object_kind == "shell" || cfg.object_kind == "all",
          "bad_config", "unknown object kind: " + cfg.object_kind);

  std::ofstream csv(cfg.out + ".lemma.csv");
  require(csv.good(), "io_error", "cannot open for writing: " + cfg.out);
  csv << "seed,object,kind,rho,width,t1,t2,t3,straddle,cost_1,cost_d\n";
  json records = json::array();
  for (std::uint64_t seed : cfg.seeds) {
    PointSet P = generate(cfg.generator, cfg.n, cfg.dim, seed);
    Matching M = min_cost_matching(P, match_mode);
    const double cost1 = cost_power(M, P, 1);
    const double costd = cost_power(M, P, cfg.dim);
    PointSet::EnclosingCube cube = P.enclosing_cube();
    std::vector<double> mid(cube.low.size());
    for (std::size_t a = 0; a < mid.size(); ++a)
      mid[a] = cube.low[a] + 0.5 * cube.side;
    const Cube ambient{mid, cube.side};
    auto gen = rng::Stream::from(seed, 41);
    auto point_in_cube = [&]() {
      std::vector<double> x(mid.size());
      for (std::size_t a = 0; a < x.size(); ++a)
        x[a] = cube.low[a] + cube.side * gen.next_unit();
      return x;
    };
    for (int idx = 0; idx < cfg.objects; ++idx) {
      std::string kind = cfg.object_kind;
      if (kind == "all") kind = idx % 3 == 0 ? "slab" : idx % 3 == 1 ? "cube" : "shell";
      RestrictedObject obj = [&] {
        if (kind == "slab") {
          std::vector<double> u(mid.size());
          double norm2 = 0.0;
          do {
            norm2 = 0.0;
            for (double& x : u) {
              x = gen.next_normal();
              norm2 += x * x;
            }
          } while (norm2 < 1e-12);
          for (double& x : u) x /= std::sqrt(norm2);
          std::vector<double> through = point_in_cube();
          double offset = 0.0;
          for (std::size_t a = 0; a < u.size(); ++a) offset += u[a] * through[a];
          return RestrictedObject::slab(std::move(u), offset, cfg.w);
        }
        if (kind == "cube") return RestrictedObject::cube(point_in_cube(), cfg.w);
        const double radius = (0.25 + 0.25 * gen.next_unit()) * cube.side;
        return RestrictedObject::shell(point_in_cube(), radius, cfg.w);
      }();
      obj = obj.within(ambient);
      const double r = rho(obj, M, P, exponent);
      const EdgeTypeCounts counts = classify_edges(obj, M, P);
      csv << seed << "," << idx << "," << kind << "," << io::format_double(r)
          << "," << io::format_double(obj.width_parameter()) << "," << counts.t1
          << "," << counts.t2 << "," << counts.t3 << "," << counts.straddle
          << "," << io::format_double(cost1) << "," << io::format_double(costd)
          << "\n";
      records.push_back(json::parse(io::diagnostics_json(obj, r, counts, exponent)));
    }
  }
  csv << "# version=" << kVersion << " config_hash=" << hash << "\n";
  require(csv.good(), "io_error", "write failed: " + cfg.out);
  csv.close();
  json doc = {{"records", records},
              {"meta", {{"version", kVersion}, {"config_hash", hash}}}};
  write_json_file(doc, cfg.out + ".lemma.json");
}

void run_cluster(const ExperimentConfig& cfg, const std::string& hash) {
  PointSet P = generate(cfg.generator, cfg.n, cfg.dim, cfg.seeds.front());
  const int k_max = cfg.k_max > 0
                        ? cfg.k_max
                        : static_cast<int>(default_k_max(P.size()));
  ClusterSummary summary =
      gonzalez_linf(P, k_max, cfg.seeds.front(), Exec::Parallel);
  const std::string table_path = cfg.out + ".cluster.csv";
  io::write_cluster_csv(summary, table_path);
  stamp_csv(table_path, hash);

  json centers = json::array();
  for (std::size_t i = 0; i < summary.centers.size(); ++i) {
    json row = json::array();
    for (double c : summary.centers.point(i)) row.push_back(c);
    centers.push_back(row);
  }
  json levels = json::array();
  for (const ClusterLevel& lv : summary.levels)
    levels.push_back({{"k", lv.k}, {"ell", lv.ell}, {"phi", lv.phi}});
  json doc = {{"k", summary.k},
              {"ell", summary.ell},
              {"phi", summary.phi},
              {"centers", centers},
              {"levels", levels},
              {"meta", {{"version", kVersion}, {"config_hash", hash}}}};
  if (summary.phi > 0.0) {
    doc["adaptive_size"] =
        predict_sample_size(summary.phi, cfg.w, cfg.eps, cfg.delta, cfg.dim);
    const double side = P.enclosing_cube().side;
    if (side > 0.0)
      doc["plain_size"] =
          predict_sample_size(side, cfg.w, cfg.eps, cfg.delta, cfg.dim);
  }
  write_json_file(doc, cfg.out + ".cluster.json");
}

void run_bench(const ExperimentConfig& cfg, const std::string& hash) {
  const KernelProfile profile = KernelProfile::parse(cfg.profile);
  PointSet P = generate(cfg.generator, cfg.n, cfg.dim, cfg.seeds.front());
  EvaluationNet net = build_evaluation_net(P, cfg.w, profile, cfg.net_dirs,
                                           parse_net_mode(cfg.net_mode));
  Matching M = min_cost_matching(P, MatchMode::Greedy);
  Coloring chi = color_from_matching(M, cfg.seeds.front());
  std::vector<std::size_t> half;
  for (std::size_t i = 0; i < P.size(); i += 2) half.push_back(i);
  PointSet Q = P.subset(half);

  std::ofstream csv(cfg.out + ".bench.csv");
  require(csv.good(), "io_error", "cannot open for writing: " + cfg.out);
  csv << "op,exec,value\n";
  auto run_op = [&](const char* op, const char* exec_name, Exec exec,
                    auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    const double value = fn(exec);
    const double ms = elapsed_ms(start);
    csv << op << "," << exec_name << "," << io::format_double(value) << "\n";
    std::fprintf(stderr, "%-18s %-8s %10.2f ms\n", op, exec_name, ms);
  };
  for (auto [name, exec] : {std::pair{"serial", Exec::Serial},
                            std::pair{"parallel", Exec::Parallel}}) {
    run_op("disc_sup", name, exec, [&](Exec e) {
      return disc_sup(P, chi, net, e).value;
    });
    run_op("eps_sample_error", name, exec, [&](Exec e) {
      return eps_sample_error(P, Q, net, e).value;
    });
  }
  csv << "# version=" << kVersion << " config_hash=" << hash << "\n";
  require(csv.good(), "io_error", "write failed: " + cfg.out);
}

}  // namespace

PointSet generate(const GeneratorSpec& spec, std::size_t n, int dim,
                  std::uint64_t seed) {
  if (spec.kind == GeneratorSpec::Kind::File) {
    require(!spec.path.empty(), "bad_config", "file generator needs a path");
    return load_points(spec.path);
  }
  require(n > 0, "bad_config", "n must be positive");
  require(dim >= 1, "bad_config", "dimension must be positive");
  std::vector<double> coords(n * static_cast<std::size_t>(dim));
  if (spec.kind == GeneratorSpec::Kind::UniformCube) {
    require(spec.side > 0.0, "bad_config", "cube side must be positive");
    auto gen = rng::Stream::from(seed, 11);
    for (double& c : coords) c = spec.side * gen.next_unit();
    return PointSet(dim, std::move(coords));
  }
  require(!spec.components.empty(), "bad_config",
          "mixture generator needs components");
  double total_weight = 0.0;
  for (const MixtureComponent& c : spec.components) {
    require(static_cast<int>(c.center.size()) == dim, "bad_config",
            "mixture component dimension mismatch");
    require(c.sigma >= 0.0, "bad_config", "mixture sigma must be non-negative");
    require(c.weight > 0.0, "bad_config", "mixture weight must be positive");
    total_weight += c.weight;
  }
  auto gen = rng::Stream::from(seed, 13);
  for (std::size_t i = 0; i < n; ++i) {
    double pick = gen.next_unit() * total_weight;
    std::size_t which = 0;
    for (; which + 1 < spec.components.size(); ++which) {
      pick -= spec.components[which].weight;
      if (pick < 0.0) break;
    }
    const MixtureComponent& c = spec.components[which];
    for (int a = 0; a < dim; ++a)
      coords[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(a)] =
          c.center[static_cast<std::size_t>(a)] + c.sigma * gen.next_normal();
  }
  return PointSet(dim, std::move(coords));
}

std::string config_to_json(const ExperimentConfig& cfg) {
  return config_json(cfg).dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw Error("bad_config", std::string("invalid config JSON: ") + e.what());
  }
  if (doc.is_object() && doc.contains("config")) doc = doc["config"];
  require(doc.is_object(), "bad_config", "config must be a JSON object");
  ExperimentConfig cfg;
  try {
    cfg.mode = doc.value("mode", cfg.mode);
    if (doc.contains("generator")) {
      const json& g = doc["generator"];
      cfg.generator.kind =
          parse_generator_kind(g.value("kind", std::string("uniform")));
      cfg.generator.side = g.value("side", cfg.generator.side);
      cfg.generator.path = g.value("path", cfg.generator.path);
      if (g.contains("components")) {
        for (const json& c : g["components"]) {
          MixtureComponent mc;
          mc.center = c.at("center").get<std::vector<double>>();
          mc.sigma = c.value("sigma", mc.sigma);
          mc.weight = c.value("weight", mc.weight);
          cfg.generator.components.push_back(std::move(mc));
        }
      }
    }
    cfg.n = doc.value("n", cfg.n);
    cfg.dim = doc.value("dim", cfg.dim);
    cfg.w = doc.value("w", cfg.w);
    cfg.profile = doc.value("profile", cfg.profile);
    cfg.eps = doc.value("eps", cfg.eps);
    cfg.tau = doc.value("tau", cfg.tau);
    cfg.delta = doc.value("delta", cfg.delta);
    cfg.net_dirs = doc.value("net_dirs", cfg.net_dirs);
    cfg.net_mode = doc.value("net_mode", cfg.net_mode);
    cfg.seeds = doc.value("seeds", cfg.seeds);
    cfg.out = doc.value("out", cfg.out);
    cfg.target = doc.value("target", cfg.target);
    cfg.match_mode = doc.value("match_mode", cfg.match_mode);
    cfg.sample_path = doc.value("sample_path", cfg.sample_path);
    cfg.k_max = doc.value("k_max", cfg.k_max);
    cfg.object_kind = doc.value("object_kind", cfg.object_kind);
    cfg.objects = doc.value("objects", cfg.objects);
    cfg.exponent = doc.value("exponent", cfg.exponent);
    cfg.timing = doc.value("timing", cfg.timing);
  } catch (const json::exception& e) {
    throw Error("bad_config", std::string("malformed config field: ") + e.what());
  }
  return cfg;
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string dump = config_json(cfg).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

void run_experiment(const ExperimentConfig& cfg) {
  require(!cfg.seeds.empty(), "bad_config", "seeds must be non-empty");
  require(!cfg.out.empty(), "bad_config", "output path must be non-empty");
  const std::string hash = config_hash(cfg);
  if (cfg.mode == "gen") {
    run_gen(cfg, hash);
  } else if (cfg.mode == "sample") {
    run_sample(cfg, hash);
  } else if (cfg.mode == "verify-net") {
    run_verify_net(cfg, hash);
  } else if (cfg.mode == "lemma-check") {
    run_lemma_check(cfg, hash);
  } else if (cfg.mode == "cluster") {
    run_cluster(cfg, hash);
  } else if (cfg.mode == "bench") {
    run_bench(cfg, hash);
  } else {
    throw Error("bad_config", "unknown mode: " + cfg.mode);
  }
  write_meta(cfg, hash);
}

}  // namespace srs
