#pragma once

#include <cstdint>
#include <vector>

#include "srs/geometry.hpp"
#include "srs/parallel.hpp"

namespace srs {

// One row of the farthest-point table: ell is twice the max-min L-inf
// distance to the first k centers, phi = max(k - 1, k * ell).
struct ClusterLevel {
  int k = 0;
  double ell = 0.0;
  double phi = 0.0;
};

struct ClusterSummary {
  int k = 1;               // level minimizing phi (smallest k on ties)
  PointSet centers;        // the first k centers, in selection order
  double ell = 0.0;        // ell at the chosen k
  double phi_k = 0.0;      // phi at the chosen k
  double phi = 0.0;        // min over the table, equals phi_k
  std::vector<ClusterLevel> levels;        // k = 1 .. min(k_max, |P|)
  std::vector<std::size_t> center_order;   // farthest-point order of all levels
};

std::size_t default_k_max(std::size_t n);

// Farthest-point traversal under the L-inf metric. The first center is the
// point of smallest index and distance ties also break by smallest index, so
// the result is deterministic; the seed is accepted for interface stability
// only. Distance updates parallelize over points.
ClusterSummary gonzalez_linf(const PointSet& P, int k_max, std::uint64_t seed,
                             Exec exec = Exec::Serial);

// Sample size 2 * (phi/w)^(2(d-1)/(d+2)) * ((1/eps) sqrt(L))^(2d/(d+2)) with
// L = max(1, ln(phi/(w eps delta))), rounded up. At d = 2 this is the
// adaptive form 2 * (1/eps) * sqrt((phi/w) L). Pass the enclosing cube side
// for phi to get the non-adaptive prediction.
std::size_t predict_sample_size(double phi, double w, double eps, double delta,
                                int d);

}  // namespace srs
