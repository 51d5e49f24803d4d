#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "srs/geometry.hpp"

namespace srs {

enum class MatchMode { Exact, Greedy };

struct Matching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // each i < j, list sorted
  std::size_t source_size = 0;
  std::optional<std::size_t> unmatched;  // odd-size leftover (largest index)
};

// Exact mode runs a general-graph minimum-weight perfect matching in O(n^3)
// and refuses instances above `exact_cap`. Greedy repeatedly pairs the
// globally closest unmatched pair (ties by index), O(n^2 log n).
Matching min_cost_matching(const PointSet& P, MatchMode mode,
                           std::size_t exact_cap = 2048);

// Sum of Euclidean edge lengths raised to `exponent`.
double cost_power(const Matching& M, const PointSet& P, int exponent);

struct Cube {
  std::vector<double> center;
  double side = 0.0;  // full side length; the width parameter of a side-w cube is w
};
struct Slab {
  std::vector<double> normal;  // unit
  double offset = 0.0;
  double half_width = 0.0;  // total width 2w
};
struct Shell {
  std::vector<double> center;
  double radius = 0.0;
  double half_width = 0.0;  // band |dist - radius| <= w
};

// A width-parameterized region, optionally restricted to an ambient cube.
struct RestrictedObject {
  std::variant<Cube, Slab, Shell> shape;
  std::optional<Cube> bounding;

  double width_parameter() const;  // the w in the (2w)^d contribution cap
  int dim() const;

  static RestrictedObject cube(std::vector<double> center, double side);
  static RestrictedObject slab(std::vector<double> normal, double offset, double half_width);
  static RestrictedObject shell(std::vector<double> center, double radius, double half_width);
  RestrictedObject within(Cube ambient) const;
};

// Matching length restricted to O: per edge whose segment meets O, the
// clipped span capped at (2w)^d. Tangency counts as meeting (parameter
// tolerance 1e-12).
double rho(const RestrictedObject& O, const Matching& M, const PointSet& P,
           int exponent);

// Edge census against the object and its 20x-expanded copy: t1 = both ends
// inside the expansion, t2 = one end inside O and the other beyond the
// expansion, t3 = both ends beyond the expansion, straddle = the remaining
// combination. Only edges whose segment meets O are counted.
struct EdgeTypeCounts {
  std::size_t t1 = 0;
  std::size_t t2 = 0;
  std::size_t t3 = 0;
  std::size_t straddle = 0;
  std::size_t total() const { return t1 + t2 + t3 + straddle; }
};
EdgeTypeCounts classify_edges(const RestrictedObject& O, const Matching& M,
                              const PointSet& P);

namespace detail {
// Minimum-weight perfect matching on a complete graph given by an n*n cost
// matrix (row-major, symmetric, zero diagonal); n even. Returns mate per
// vertex. Exposed for direct testing against the exhaustive oracle.
std::vector<int> min_weight_perfect_matching(int n, const std::vector<long long>& cost);
}  // namespace detail

}  // namespace srs
