#include "srs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace srs {

// ---------------------------------------------------------------------------
// KernelProfile
// ---------------------------------------------------------------------------

double KernelProfile::radial(double z) const {
  z = std::abs(z);
  switch (kind) {
    case ProfileKind::Ball:
      return z < 1.0 ? 1.0 : 0.0;
    case ProfileKind::Triangle:
      return std::max(0.0, 1.0 - z);
    case ProfileKind::Epanechnikov:
      return std::max(0.0, 1.0 - z * z);
    case ProfileKind::Gaussian:
      return z >= truncation ? 0.0 : std::exp(-z * z);
  }
  return 0.0;
}

double KernelProfile::slope_constant() const {
  switch (kind) {
    case ProfileKind::Ball:
      return std::numeric_limits<double>::infinity();
    case ProfileKind::Triangle:
      return 0.5;
    case ProfileKind::Epanechnikov:
      return 1.0;
    case ProfileKind::Gaussian:
      return 0.5;
  }
  return 0.0;
}

const char* KernelProfile::name() const {
  switch (kind) {
    case ProfileKind::Ball: return "ball";
    case ProfileKind::Triangle: return "triangle";
    case ProfileKind::Epanechnikov: return "epanechnikov";
    case ProfileKind::Gaussian: return "gaussian";
  }
  return "?";
}

KernelProfile KernelProfile::parse(std::string_view name) {
  if (name == "ball") return ball();
  if (name == "triangle") return triangle();
  if (name == "epanechnikov") return epanechnikov();
  if (name == "gaussian") return gaussian();
  throw Error("bad_profile", "unknown kernel profile: " + std::string(name));
}

// ---------------------------------------------------------------------------
// PointSet
// ---------------------------------------------------------------------------

PointSet::PointSet(int dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  validate(false);
}

PointSet::PointSet(int dim, std::vector<double> coords, std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  validate(false);
}

PointSet::PointSet(int dim, std::vector<double> coords, std::vector<double> weights,
                   bool allow_signed)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  validate(allow_signed);
}

void PointSet::validate(bool allow_signed) const {
  require(dim_ >= 1, "bad_dim", "point dimension must be >= 1");
  require(coords_.size() % static_cast<std::size_t>(dim_) == 0, "bad_coords",
          "coordinate count is not a multiple of the dimension");
  for (double c : coords_)
    require(std::isfinite(c), "bad_coords", "coordinates must be finite");
  if (!weights_.empty()) {
    require(weights_.size() * static_cast<std::size_t>(dim_) == coords_.size(),
            "bad_weights", "weight count does not match point count");
    for (double w : weights_) {
      require(std::isfinite(w) && w != 0.0, "bad_weights",
              "weights must be finite and nonzero");
      if (!allow_signed)
        require(w > 0.0, "bad_weights", "negative weights only arise from two_class");
    }
  }
  const_cast<PointSet*>(this)->signed_weights_ =
      std::any_of(weights_.begin(), weights_.end(), [](double w) { return w < 0.0; });
}

PointSet PointSet::two_class(const PointSet& positive, const PointSet& negative) {
  require(!positive.empty() && !negative.empty(), "bad_two_class",
          "both classes must be non-empty");
  require(positive.dim() == negative.dim(), "bad_two_class",
          "both classes must share a dimension");
  std::vector<double> coords = positive.coords_;
  coords.insert(coords.end(), negative.coords_.begin(), negative.coords_.end());
  std::vector<double> weights;
  weights.reserve(positive.size() + negative.size());
  for (std::size_t i = 0; i < positive.size(); ++i) weights.push_back(positive.weight(i));
  for (std::size_t i = 0; i < negative.size(); ++i) weights.push_back(-negative.weight(i));
  return PointSet(positive.dim(), std::move(coords), std::move(weights), true);
}

double PointSet::total_abs_weight() const {
  if (weights_.empty()) return static_cast<double>(size());
  double total = 0.0;
  for (double w : weights_) total += std::abs(w);
  return total;
}

PointSet PointSet::subset(std::span<const std::size_t> indices) const {
  std::vector<double> coords;
  coords.reserve(indices.size() * static_cast<std::size_t>(dim_));
  std::vector<double> weights;
  if (!weights_.empty()) weights.reserve(indices.size());
  for (std::size_t i : indices) {
    require(i < size(), "bad_index", "subset index out of range");
    auto p = point(i);
    coords.insert(coords.end(), p.begin(), p.end());
    if (!weights_.empty()) weights.push_back(weights_[i]);
  }
  return PointSet(dim_, std::move(coords), std::move(weights), true);
}

PointSet PointSet::concat(const PointSet& a, const PointSet& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  require(a.dim() == b.dim(), "bad_concat", "dimension mismatch");
  std::vector<double> coords = a.coords_;
  coords.insert(coords.end(), b.coords_.begin(), b.coords_.end());
  std::vector<double> weights;
  if (a.has_weights() || b.has_weights()) {
    weights.reserve(a.size() + b.size());
    for (std::size_t i = 0; i < a.size(); ++i) weights.push_back(a.weight(i));
    for (std::size_t i = 0; i < b.size(); ++i) weights.push_back(b.weight(i));
  }
  return PointSet(a.dim(), std::move(coords), std::move(weights), true);
}

PointSet::EnclosingCube PointSet::enclosing_cube() const {
  EnclosingCube cube;
  cube.low.assign(static_cast<std::size_t>(dim_), 0.0);
  if (empty()) return cube;
  std::vector<double> high(static_cast<std::size_t>(dim_),
                           -std::numeric_limits<double>::infinity());
  std::fill(cube.low.begin(), cube.low.end(), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < size(); ++i) {
    for (int a = 0; a < dim_; ++a) {
      double c = coord(i, a);
      cube.low[static_cast<std::size_t>(a)] = std::min(cube.low[static_cast<std::size_t>(a)], c);
      high[static_cast<std::size_t>(a)] = std::max(high[static_cast<std::size_t>(a)], c);
    }
  }
  for (int a = 0; a < dim_; ++a)
    cube.side = std::max(cube.side, high[static_cast<std::size_t>(a)] - cube.low[static_cast<std::size_t>(a)]);
  return cube;
}

// ---------------------------------------------------------------------------
// SmoothedRange
// ---------------------------------------------------------------------------

namespace {

void check_unit(const std::vector<double>& v, const char* what) {
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  require(std::abs(norm2 - 1.0) <= 1e-9, "bad_range",
          std::string(what) + " must be a unit vector");
}

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

SmoothedRange::SmoothedRange(Halfspace hs, double width, KernelProfile profile)
    : shape_(std::move(hs)), width_(width), profile_(profile) {
  const auto& h = std::get<Halfspace>(shape_);
  dim_ = static_cast<int>(h.normal.size());
  require(dim_ >= 1, "bad_range", "halfspace normal must be non-empty");
  require(width_ > 0.0, "bad_range", "width must be positive");
  check_unit(h.normal, "halfspace normal");
}

SmoothedRange::SmoothedRange(PointCentered pc, double width, KernelProfile profile)
    : shape_(std::move(pc)), width_(width), profile_(profile) {
  dim_ = static_cast<int>(std::get<PointCentered>(shape_).center.size());
  require(dim_ >= 1, "bad_range", "center must be non-empty");
  require(width_ > 0.0, "bad_range", "width must be positive");
}

SmoothedRange::SmoothedRange(SphereBoundary sb, double width, KernelProfile profile)
    : shape_(std::move(sb)), width_(width), profile_(profile) {
  const auto& s = std::get<SphereBoundary>(shape_);
  dim_ = static_cast<int>(s.center.size());
  require(dim_ >= 1, "bad_range", "center must be non-empty");
  require(width_ > 0.0, "bad_range", "width must be positive");
  require(s.radius > 0.0, "bad_range", "radius must be positive");
}

double SmoothedRange::signed_distance(std::span<const double> p) const {
  require(static_cast<int>(p.size()) == dim_, "bad_point",
          "point dimension does not match range dimension");
  if (const auto* h = std::get_if<Halfspace>(&shape_)) {
    double s = -h->offset;
    for (int a = 0; a < dim_; ++a)
      s += h->normal[static_cast<std::size_t>(a)] * p[static_cast<std::size_t>(a)];
    return s;
  }
  if (const auto* c = std::get_if<PointCentered>(&shape_))
    return dist(p, c->center);
  const auto& s = std::get<SphereBoundary>(shape_);
  double r = dist(p, s.center);
  return s.inside_is_one ? s.radius - r : r - s.radius;
}

double signed_profile_value(const KernelProfile& profile, double s, double width) {
  if (profile.kind == ProfileKind::Ball)
    return s > 0.0 ? 1.0 : (s < 0.0 ? 0.0 : 0.5);
  if (profile.kind == ProfileKind::Triangle) {
    if (s >= width) return 1.0;
    if (s >= 0.0) return 0.5 + s / (2.0 * width);
    if (s > -width) return 0.5 - std::abs(s) / (2.0 * width);
    return 0.0;
  }
  double span = width * profile.truncation;
  if (s >= span) return 1.0;
  if (s <= -span) return 0.0;
  if (s >= 0.0) return 1.0 - 0.5 * profile.radial(s / width);
  return 0.5 * profile.radial(-s / width);
}

double SmoothedRange::eval(std::span<const double> p) const {
  if (const auto* c = std::get_if<PointCentered>(&shape_)) {
    double z = dist(p, c->center) / width_;
    double v = profile_.radial(z);
    return c->half_height ? 0.5 * v : v;
  }
  return signed_profile_value(profile_, signed_distance(p), width_);
}

std::string SmoothedRange::describe() const {
  std::ostringstream out;
  out << profile_.name() << " w=" << width_ << " ";
  if (const auto* h = std::get_if<Halfspace>(&shape_)) {
    out << "halfspace n=(";
    for (std::size_t a = 0; a < h->normal.size(); ++a)
      out << (a ? "," : "") << h->normal[a];
    out << ") b=" << h->offset;
  } else if (const auto* c = std::get_if<PointCentered>(&shape_)) {
    out << "kernel center=(";
    for (std::size_t a = 0; a < c->center.size(); ++a)
      out << (a ? "," : "") << c->center[a];
    out << ")" << (c->half_height ? " half" : "");
  } else {
    const auto& s = std::get<SphereBoundary>(shape_);
    out << "sphere center=(";
    for (std::size_t a = 0; a < s.center.size(); ++a)
      out << (a ? "," : "") << s.center[a];
    out << ") r=" << s.radius << (s.inside_is_one ? " inside" : " outside");
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Free functions
// ---------------------------------------------------------------------------

double eval_range(const SmoothedRange& h, std::span<const double> p) { return h.eval(p); }

double sde(const PointSet& points, const SmoothedRange& h) {
  require(!points.empty(), "empty_points", "sde needs at least one point");
  require(points.dim() == h.dim(), "bad_dim", "point and range dimensions differ");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double w = points.weight(i);
    num += w * h.eval(points.point(i));
    den += std::abs(w);
  }
  return num / den;
}

double kde(const PointSet& points, std::span<const double> x, double width,
           const KernelProfile& profile) {
  require(!points.empty(), "empty_points", "kde needs at least one point");
  require(static_cast<int>(x.size()) == points.dim(), "bad_dim",
          "query dimension does not match point set");
  require(width > 0.0, "bad_width", "width must be positive");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    double w = points.weight(i);
    double z = dist(x, points.point(i)) / width;
    num += w * profile.radial(z);
    den += std::abs(w);
  }
  return num / den;
}

std::vector<std::size_t> superlevel_indices(const PointSet& points,
                                            const SmoothedRange& h, double tau) {
  require(tau > 0.0 && tau < 1.0, "bad_tau", "tau must lie strictly inside (0,1)");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (h.eval(points.point(i)) >= tau) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// EvaluationNet
// ---------------------------------------------------------------------------

EvaluationNet EvaluationNet::directional(int dim, std::vector<std::vector<double>> directions,
                                         std::vector<std::vector<double>> offsets_per_direction,
                                         double width, KernelProfile profile, NetMode mode) {
  require(directions.size() == offsets_per_direction.size(), "bad_net",
          "one offset list per direction required");
  EvaluationNet net;
  net.dim_ = dim;
  net.width_ = width;
  net.profile_ = profile;
  net.mode_ = mode;
  net.directions_ = std::move(directions);
  net.offsets_ = std::move(offsets_per_direction);
  net.cum_.assign(net.directions_.size() + 1, 0);
  for (std::size_t j = 0; j < net.directions_.size(); ++j) {
    require(static_cast<int>(net.directions_[j].size()) == dim, "bad_net",
            "direction dimension mismatch");
    net.cum_[j + 1] = net.cum_[j] + net.offsets_[j].size();
  }
  net.total_ = net.cum_.back();
  return net;
}

EvaluationNet EvaluationNet::explicit_ranges(std::vector<SmoothedRange> ranges, NetMode mode) {
  require(!ranges.empty(), "bad_net", "explicit net needs at least one range");
  EvaluationNet net;
  net.dim_ = ranges.front().dim();
  net.width_ = ranges.front().width();
  net.profile_ = ranges.front().profile();
  net.mode_ = mode;
  for (const auto& r : ranges)
    require(r.dim() == net.dim_, "bad_net", "ranges must share a dimension");
  net.total_ = ranges.size();
  net.ranges_ = std::move(ranges);
  return net;
}

std::pair<std::size_t, std::size_t> EvaluationNet::locate(std::size_t flat_index) const {
  require(flat_index < total_, "bad_index", "net index out of range");
  auto it = std::upper_bound(cum_.begin(), cum_.end(), flat_index);
  std::size_t j = static_cast<std::size_t>(it - cum_.begin()) - 1;
  return {j, flat_index - cum_[j]};
}

SmoothedRange EvaluationNet::range(std::size_t flat_index) const {
  if (!is_directional()) {
    require(flat_index < total_, "bad_index", "net index out of range");
    return ranges_[flat_index];
  }
  auto [j, k] = locate(flat_index);
  return SmoothedRange(Halfspace{directions_[j], offsets_[j][k]}, width_, profile_);
}

}  // namespace srs
