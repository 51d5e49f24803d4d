#include "srs/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "srs/error.hpp"

namespace srs::io {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  require(out.good(), "io_error", "cannot open for writing: " + path);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "io_error", "cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

bool parse_double(std::string_view tok, double& value) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  return ec == std::errc{} && ptr == last && !tok.empty();
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

json point_to_json(std::span<const double> p) {
  json arr = json::array();
  for (double c : p) arr.push_back(c);
  return arr;
}

json vector_to_json(const std::vector<double>& v) {
  return json(v);
}

json cube_to_json(const Cube& c) {
  return {{"kind", "cube"}, {"center", vector_to_json(c.center)}, {"side", c.side}};
}

json object_to_json(const RestrictedObject& O) {
  json j;
  if (const Cube* c = std::get_if<Cube>(&O.shape)) {
    j = cube_to_json(*c);
  } else if (const Slab* s = std::get_if<Slab>(&O.shape)) {
    j = {{"kind", "slab"},
         {"normal", vector_to_json(s->normal)},
         {"offset", s->offset},
         {"half_width", s->half_width}};
  } else {
    const Shell& sh = std::get<Shell>(O.shape);
    j = {{"kind", "shell"},
         {"center", vector_to_json(sh.center)},
         {"radius", sh.radius},
         {"half_width", sh.half_width}};
  }
  if (O.bounding.has_value()) j["bounding"] = cube_to_json(*O.bounding);
  return j;
}

json profile_to_json(const KernelProfile& profile) {
  return {{"name", profile.name()}, {"truncation", profile.truncation}};
}

json range_to_json(const SmoothedRange& h) {
  json j;
  if (h.is_halfspace()) {
    j = {{"kind", "halfspace"},
         {"normal", vector_to_json(h.halfspace().normal)},
         {"offset", h.halfspace().offset}};
  } else if (h.is_point_centered()) {
    j = {{"kind", "point_centered"},
         {"center", vector_to_json(h.point_centered().center)},
         {"half_height", h.point_centered().half_height}};
  } else {
    j = {{"kind", "sphere_boundary"},
         {"center", vector_to_json(h.sphere_boundary().center)},
         {"radius", h.sphere_boundary().radius},
         {"inside_is_one", h.sphere_boundary().inside_is_one}};
  }
  j["width"] = h.width();
  j["profile"] = profile_to_json(h.profile());
  return j;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_points_csv(const PointSet& P, const std::string& path) {
  std::ofstream out = open_out(path);
  for (int a = 0; a < P.dim(); ++a) out << (a ? ",x" : "x") << a;
  if (P.has_weights()) out << ",weight";
  out << "\n";
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto p = P.point(i);
    for (int a = 0; a < P.dim(); ++a) {
      if (a) out << ",";
      out << format_double(p[static_cast<std::size_t>(a)]);
    }
    if (P.has_weights()) out << "," << format_double(P.weight(i));
    out << "\n";
  }
  require(out.good(), "io_error", "write failed: " + path);
}

PointSet read_points_csv(const std::string& path, int expected_dim) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  bool weighted_header = false;
  bool saw_header = false;
  std::size_t cols = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i != text.size() && text[i] != '\n') continue;
    std::string_view line = trim(std::string_view(text).substr(start, i - start));
    start = i + 1;
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> toks = split_csv(line);
    std::vector<double> vals(toks.size());
    bool numeric = true;
    for (std::size_t t = 0; t < toks.size(); ++t)
      numeric = numeric && parse_double(toks[t], vals[t]);
    if (!numeric) {
      require(rows.empty() && !saw_header, "bad_format",
              "non-numeric row in " + path);
      saw_header = true;
      cols = toks.size();
      weighted_header = lower(toks.back()) == "weight";
      continue;
    }
    if (rows.empty() && !saw_header) cols = toks.size();
    require(toks.size() == cols, "bad_format",
            "inconsistent column count in " + path);
    rows.push_back(std::move(vals));
  }
  require(!rows.empty(), "bad_format", "no points in " + path);

  bool weighted = weighted_header;
  if (!saw_header && expected_dim > 0) {
    require(cols == static_cast<std::size_t>(expected_dim) ||
                cols == static_cast<std::size_t>(expected_dim) + 1,
            "bad_format", "column count does not fit the expected dimension");
    weighted = cols == static_cast<std::size_t>(expected_dim) + 1;
  }
  const std::size_t dim = cols - (weighted ? 1 : 0);
  require(dim >= 1, "bad_format", "no coordinate columns in " + path);
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  std::vector<double> weights;
  if (weighted) weights.reserve(rows.size());
  for (const std::vector<double>& row : rows) {
    coords.insert(coords.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(dim));
    if (weighted) weights.push_back(row.back());
  }
  if (weighted) return PointSet(static_cast<int>(dim), std::move(coords), std::move(weights));
  return PointSet(static_cast<int>(dim), std::move(coords));
}

void write_points_json(const PointSet& P, const std::string& path) {
  json points = json::array();
  for (std::size_t i = 0; i < P.size(); ++i) points.push_back(point_to_json(P.point(i)));
  json doc;
  if (P.has_weights()) {
    doc = {{"points", points}, {"weights", vector_to_json(P.weights())}};
  } else {
    doc = points;
  }
  std::ofstream out = open_out(path);
  out << doc.dump(2) << "\n";
  require(out.good(), "io_error", "write failed: " + path);
}

PointSet read_points_json(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error("bad_format", std::string("invalid JSON: ") + e.what());
  }
  json points;
  std::vector<double> weights;
  bool weighted = false;
  if (doc.is_object()) {
    require(doc.contains("points"), "bad_format", "missing points array");
    points = doc["points"];
    if (doc.contains("weights")) {
      weighted = true;
      weights = doc["weights"].get<std::vector<double>>();
    }
  } else {
    points = doc;
  }
  require(points.is_array() && !points.empty(), "bad_format", "no points in " + path);
  const std::size_t dim = points[0].is_array() ? points[0].size() : 0;
  require(dim >= 1, "bad_format", "points must be arrays of coordinates");
  std::vector<double> coords;
  coords.reserve(points.size() * dim);
  for (const json& p : points) {
    require(p.is_array() && p.size() == dim, "bad_format",
            "inconsistent point dimensions");
    for (const json& c : p) coords.push_back(c.get<double>());
  }
  if (weighted) return PointSet(static_cast<int>(dim), std::move(coords), std::move(weights));
  return PointSet(static_cast<int>(dim), std::move(coords));
}

void write_matching_csv(const Matching& M, const PointSet& P,
                        const std::string& path) {
  std::ofstream out = open_out(path);
  out << "i,j,length\n";
  for (auto [i, j] : M.pairs) {
    auto a = P.point(i);
    auto b = P.point(j);
    double d2 = 0.0;
    for (std::size_t axis = 0; axis < a.size(); ++axis) {
      const double diff = a[axis] - b[axis];
      d2 += diff * diff;
    }
    out << i << "," << j << "," << format_double(std::sqrt(d2)) << "\n";
  }
  require(out.good(), "io_error", "write failed: " + path);
}

std::string diagnostics_json(const RestrictedObject& O, double rho_value,
                             const EdgeTypeCounts& counts, int exponent) {
  json j = {{"object", object_to_json(O)},
            {"exponent", exponent},
            {"rho", rho_value},
            {"edge_types",
             {{"t1", counts.t1},
              {"t2", counts.t2},
              {"t3", counts.t3},
              {"straddle", counts.straddle},
              {"total", counts.total()}}}};
  return j.dump();
}

std::string net_report_json(const NetReport& report) {
  json j = {{"eps", report.eps},
            {"tau", report.tau},
            {"is_net", report.is_net},
            {"is_hitting_set", report.is_hitting_set},
            {"witness", nullptr}};
  if (report.witness.has_value()) {
    const NetWitness& w = *report.witness;
    j["witness"] = {{"net_index", w.net_index},
                    {"sde_p", w.sde_p},
                    {"best_value_q", w.best_value_q},
                    {"sde_q", w.sde_q},
                    {"range", range_to_json(w.range)}};
  }
  return j.dump();
}

void write_cluster_csv(const ClusterSummary& summary, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "k,ell_k,phi_k\n";
  for (const ClusterLevel& lv : summary.levels)
    out << lv.k << "," << format_double(lv.ell) << "," << format_double(lv.phi)
        << "\n";
  require(out.good(), "io_error", "write failed: " + path);
}

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path) {
  std::ofstream out = open_out(path);
  out << "n,w,profile,seed,size,error,disc,runtime_ms\n";
  for (const ResultRow& r : rows)
    out << r.n << "," << format_double(r.w) << "," << r.profile << "," << r.seed
        << "," << r.size << "," << format_double(r.error) << ","
        << format_double(r.disc) << "," << format_double(r.runtime_ms) << "\n";
  require(out.good(), "io_error", "write failed: " + path);
}

}  // namespace srs::io
