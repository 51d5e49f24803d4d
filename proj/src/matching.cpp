#include "srs/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace srs {

namespace {

constexpr double kParamTol = 1e-12;

double edist(const PointSet& P, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (int a = 0; a < P.dim(); ++a) {
    double d = P.coord(i, a) - P.coord(j, a);
    s += d * d;
  }
  return std::sqrt(s);
}

Matching exact_matching(const PointSet& P, std::size_t m, std::size_t exact_cap) {
  require(m <= exact_cap, "exact_cap_exceeded",
          "exact matching refuses " + std::to_string(m) + " points (cap " +
              std::to_string(exact_cap) + "); use Greedy mode");
  double max_dist = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      max_dist = std::max(max_dist, edist(P, i, j));
  // Quantization keeps integer costs <= ~1e16; at the 2^40 default scale the
  // per-edge rounding error is below 5e-13.
  double scale = std::min(0x1.0p40, 1e16 / std::max(max_dist, 1e-300));
  std::vector<long long> cost(m * m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      long long c = std::llround(edist(P, i, j) * scale);
      cost[i * m + j] = cost[j * m + i] = c;
    }
  auto mate = detail::min_weight_perfect_matching(static_cast<int>(m), cost);
  Matching M;
  M.source_size = P.size();
  for (std::size_t i = 0; i < m; ++i) {
    auto j = static_cast<std::size_t>(mate[i]);
    if (i < j) M.pairs.emplace_back(i, j);
  }
  return M;
}

Matching greedy_matching(const PointSet& P, std::size_t m) {
  struct Cand {
    double d;
    std::uint32_t i, j;
  };
  std::vector<Cand> cands;
  cands.reserve(m * (m - 1) / 2);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      cands.push_back({edist(P, i, j), static_cast<std::uint32_t>(i),
                       static_cast<std::uint32_t>(j)});
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
    if (a.d != b.d) return a.d < b.d;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  std::vector<bool> used(m, false);
  Matching M;
  M.source_size = P.size();
  std::size_t left = m;
  for (const auto& c : cands) {
    if (left == 0) break;
    if (used[c.i] || used[c.j]) continue;
    used[c.i] = used[c.j] = true;
    M.pairs.emplace_back(c.i, c.j);
    left -= 2;
  }
  return M;
}

}  // namespace

Matching min_cost_matching(const PointSet& P, MatchMode mode, std::size_t exact_cap) {
  require(P.size() >= 2, "too_few_points", "matching needs at least two points");
  std::size_t m = P.size() - (P.size() % 2);  // odd leftover: largest index
  Matching M = (mode == MatchMode::Exact) ? exact_matching(P, m, exact_cap)
                                          : greedy_matching(P, m);
  if (m < P.size()) M.unmatched = P.size() - 1;
  std::sort(M.pairs.begin(), M.pairs.end());
  return M;
}

double cost_power(const Matching& M, const PointSet& P, int exponent) {
  require(exponent >= 1, "bad_exponent", "exponent must be >= 1");
  double total = 0.0;
  for (auto [i, j] : M.pairs) total += std::pow(edist(P, i, j), exponent);
  return total;
}

// ---------------------------------------------------------------------------
// Restricted objects
// ---------------------------------------------------------------------------

double RestrictedObject::width_parameter() const {
  if (const auto* c = std::get_if<Cube>(&shape)) return c->side;
  if (const auto* s = std::get_if<Slab>(&shape)) return s->half_width;
  return std::get<Shell>(shape).half_width;
}

int RestrictedObject::dim() const {
  if (const auto* c = std::get_if<Cube>(&shape)) return static_cast<int>(c->center.size());
  if (const auto* s = std::get_if<Slab>(&shape)) return static_cast<int>(s->normal.size());
  return static_cast<int>(std::get<Shell>(shape).center.size());
}

RestrictedObject RestrictedObject::cube(std::vector<double> center, double side) {
  require(side > 0.0, "bad_object", "cube side must be positive");
  return {Cube{std::move(center), side}, std::nullopt};
}

RestrictedObject RestrictedObject::slab(std::vector<double> normal, double offset,
                                        double half_width) {
  require(half_width > 0.0, "bad_object", "slab width must be positive");
  double n2 = 0.0;
  for (double c : normal) n2 += c * c;
  require(std::abs(n2 - 1.0) <= 1e-9, "bad_object", "slab normal must be unit");
  return {Slab{std::move(normal), offset, half_width}, std::nullopt};
}

RestrictedObject RestrictedObject::shell(std::vector<double> center, double radius,
                                         double half_width) {
  require(half_width > 0.0, "bad_object", "shell width must be positive");
  require(radius > 0.0, "bad_object", "shell radius must be positive");
  return {Shell{std::move(center), radius, half_width}, std::nullopt};
}

RestrictedObject RestrictedObject::within(Cube ambient) const {
  RestrictedObject o = *this;
  o.bounding = std::move(ambient);
  return o;
}

namespace {

struct Interval {
  double lo = 0.0, hi = 1.0;
  bool empty() const { return hi < lo - kParamTol; }
  void clamp(double a, double b) {
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
};

// Intersects [iv] with {t : lo <= s0 + t*ds <= hi}.
void clip_linear(Interval& iv, double s0, double ds, double lo, double hi) {
  if (std::abs(ds) < 1e-300) {
    if (s0 < lo - kParamTol || s0 > hi + kParamTol) iv = {1.0, 0.0};
    return;
  }
  double t0 = (lo - s0) / ds;
  double t1 = (hi - s0) / ds;
  if (t0 > t1) std::swap(t0, t1);
  iv.clamp(t0, t1);
}

void clip_cube(Interval& iv, const Cube& c, const double* p, const double* d, int dim) {
  for (int a = 0; a < dim && !iv.empty(); ++a)
    clip_linear(iv, p[a], d[a], c.center[a] - c.side / 2, c.center[a] + c.side / 2);
}

// {t : ||p + t d - c||^2 <= r2}; returns false when the quadratic has no
// real solution (segment line misses the ball).
bool ball_interval(const double* p, const double* d, const std::vector<double>& c,
                   double r2, int dim, double& t0, double& t1) {
  double A = 0.0, B = 0.0, C = -r2;
  for (int a = 0; a < dim; ++a) {
    double rel = p[a] - c[a];
    A += d[a] * d[a];
    B += 2 * rel * d[a];
    C += rel * rel;
  }
  if (A < 1e-300) {
    if (C > 0.0) return false;
    t0 = -std::numeric_limits<double>::infinity();
    t1 = std::numeric_limits<double>::infinity();
    return true;
  }
  double disc = B * B - 4 * A * C;
  if (disc < 0.0) return false;
  double root = std::sqrt(disc);
  t0 = (-B - root) / (2 * A);
  t1 = (-B + root) / (2 * A);
  return true;
}

// Span [t_min, t_max] of the segment's intersection with the object (the
// clip points closest to each endpoint). Shell interiors may split the
// intersection in two; the span bridges the gap, matching the clip-point
// definition. Returns false when the segment misses the object.
bool clip_span(const RestrictedObject& O, const double* p, const double* d, int dim,
               double& t_min, double& t_max) {
  Interval base{0.0, 1.0};
  if (O.bounding) clip_cube(base, *O.bounding, p, d, dim);
  if (base.empty()) return false;

  if (const auto* c = std::get_if<Cube>(&O.shape)) {
    clip_cube(base, *c, p, d, dim);
    if (base.empty()) return false;
    t_min = base.lo;
    t_max = base.hi;
    return true;
  }
  if (const auto* s = std::get_if<Slab>(&O.shape)) {
    double s0 = -s->offset, ds = 0.0;
    for (int a = 0; a < dim; ++a) {
      s0 += s->normal[a] * p[a];
      ds += s->normal[a] * d[a];
    }
    clip_linear(base, s0, ds, -s->half_width, s->half_width);
    if (base.empty()) return false;
    t_min = base.lo;
    t_max = base.hi;
    return true;
  }
  const auto& sh = std::get<Shell>(O.shape);
  double outer0, outer1;
  double ro = sh.radius + sh.half_width;
  if (!ball_interval(p, d, sh.center, ro * ro, dim, outer0, outer1)) return false;
  base.clamp(outer0, outer1);
  if (base.empty()) return false;
  double ri = sh.radius - sh.half_width;
  if (ri > 0.0) {
    double in0, in1;
    if (ball_interval(p, d, sh.center, ri * ri, dim, in0, in1)) {
      // Subtract the open inner-ball interval; keep whichever sides survive.
      Interval left{base.lo, std::min(base.hi, in0)};
      Interval right{std::max(base.lo, in1), base.hi};
      if (left.empty() && right.empty()) return false;
      t_min = left.empty() ? right.lo : left.lo;
      t_max = right.empty() ? left.hi : right.hi;
      return true;
    }
  }
  t_min = base.lo;
  t_max = base.hi;
  return true;
}

bool point_inside(const std::variant<Cube, Slab, Shell>& shape,
                  const std::optional<Cube>& bounding, const double* p, int dim) {
  if (bounding) {
    for (int a = 0; a < dim; ++a)
      if (std::abs(p[a] - bounding->center[a]) > bounding->side / 2) return false;
  }
  if (const auto* c = std::get_if<Cube>(&shape)) {
    for (int a = 0; a < dim; ++a)
      if (std::abs(p[a] - c->center[a]) > c->side / 2) return false;
    return true;
  }
  if (const auto* s = std::get_if<Slab>(&shape)) {
    double proj = -s->offset;
    for (int a = 0; a < dim; ++a) proj += s->normal[a] * p[a];
    return std::abs(proj) <= s->half_width;
  }
  const auto& sh = std::get<Shell>(shape);
  double r2 = 0.0;
  for (int a = 0; a < dim; ++a) {
    double rel = p[a] - sh.center[a];
    r2 += rel * rel;
  }
  return std::abs(std::sqrt(r2) - sh.radius) <= sh.half_width;
}

std::variant<Cube, Slab, Shell> expand_shape(const std::variant<Cube, Slab, Shell>& shape,
                                             double factor) {
  if (const auto* c = std::get_if<Cube>(&shape)) return Cube{c->center, c->side * factor};
  if (const auto* s = std::get_if<Slab>(&shape))
    return Slab{s->normal, s->offset, s->half_width * factor};
  const auto& sh = std::get<Shell>(shape);
  return Shell{sh.center, sh.radius, sh.half_width * factor};
}

}  // namespace

double rho(const RestrictedObject& O, const Matching& M, const PointSet& P,
           int exponent) {
  require(exponent >= 1, "bad_exponent", "exponent must be >= 1");
  require(O.width_parameter() > 0.0, "bad_object", "object width must be positive");
  int dim = P.dim();
  require(O.dim() == dim, "bad_dim", "object and point dimensions differ");
  double cap = std::pow(2.0 * O.width_parameter(), exponent);
  double total = 0.0;
  std::vector<double> dir(static_cast<std::size_t>(dim));
  for (auto [i, j] : M.pairs) {
    auto p = P.point(i);
    auto q = P.point(j);
    for (int a = 0; a < dim; ++a) dir[static_cast<std::size_t>(a)] = q[a] - p[a];
    double t0, t1;
    if (!clip_span(O, p.data(), dir.data(), dim, t0, t1)) continue;
    double span = std::max(0.0, t1 - t0) * edist(P, i, j);
    total += std::min(cap, std::pow(span, exponent));
  }
  return total;
}

EdgeTypeCounts classify_edges(const RestrictedObject& O, const Matching& M,
                              const PointSet& P) {
  int dim = P.dim();
  require(O.dim() == dim, "bad_dim", "object and point dimensions differ");
  auto expanded = expand_shape(O.shape, 20.0);
  EdgeTypeCounts counts;
  std::vector<double> dir(static_cast<std::size_t>(dim));
  for (auto [i, j] : M.pairs) {
    auto p = P.point(i);
    auto q = P.point(j);
    for (int a = 0; a < dim; ++a) dir[static_cast<std::size_t>(a)] = q[a] - p[a];
    double t0, t1;
    if (!clip_span(O, p.data(), dir.data(), dim, t0, t1)) continue;
    bool p20 = point_inside(expanded, std::nullopt, p.data(), dim);
    bool q20 = point_inside(expanded, std::nullopt, q.data(), dim);
    bool p_in = point_inside(O.shape, O.bounding, p.data(), dim);
    bool q_in = point_inside(O.shape, O.bounding, q.data(), dim);
    if (p20 && q20)
      ++counts.t1;
    else if (!p20 && !q20)
      ++counts.t3;
    else if ((p_in && !q20) || (q_in && !p20))
      ++counts.t2;
    else
      ++counts.straddle;
  }
  return counts;
}

}  // namespace srs
