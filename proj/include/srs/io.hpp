#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "srs/clustering.hpp"
#include "srs/geometry.hpp"
#include "srs/matching.hpp"
#include "srs/nets.hpp"

namespace srs::io {

// 17 significant digits ('.' decimal, no locale), exact under round trip.
std::string format_double(double x);

// One point per row. Writers emit a header (x0..x{d-1}[,weight]); readers
// accept headerless files, in which case every column is a coordinate unless
// expected_dim says the final one is a weight. Lines starting with '#' are
// skipped, so provenance comments survive a round trip.
void write_points_csv(const PointSet& P, const std::string& path);
PointSet read_points_csv(const std::string& path, int expected_dim = 0);

// Array-of-arrays, or {"points": ..., "weights": ...} when weighted.
void write_points_json(const PointSet& P, const std::string& path);
PointSet read_points_json(const std::string& path);

// Rows (i, j, length); an odd leftover point is not part of the matching.
void write_matching_csv(const Matching& M, const PointSet& P,
                        const std::string& path);

// One JSON record {object, exponent, rho, edge_types}.
std::string diagnostics_json(const RestrictedObject& O, double rho_value,
                             const EdgeTypeCounts& counts, int exponent);

// Verdict plus the witness range with its full geometric parameters.
std::string net_report_json(const NetReport& report);

// Per-level table rows (k, ell_k, phi_k).
void write_cluster_csv(const ClusterSummary& summary, const std::string& path);

struct ResultRow {
  std::size_t n = 0;
  double w = 0.0;
  std::string profile;
  std::uint64_t seed = 0;
  std::size_t size = 0;
  double error = 0.0;
  double disc = 0.0;
  double runtime_ms = 0.0;
};

void write_results_csv(const std::vector<ResultRow>& rows,
                       const std::string& path);

}  // namespace srs::io
