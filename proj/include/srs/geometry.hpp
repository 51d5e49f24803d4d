#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "srs/error.hpp"

namespace srs {

// ---------------------------------------------------------------------------
// Kernel profiles
// ---------------------------------------------------------------------------

enum class ProfileKind { Ball, Triangle, Epanechnikov, Gaussian };

// Radial profile k(z) with k(0) = 1, non-increasing, and k(z) = 0 for z >= 1
// (finite-support kinds). `truncation` is the multiple of the width beyond
// which a range value is treated as exactly 0 or 1; it is 1 for the finite
// kinds and 4 for Gaussian (k(4) ~ 1.1e-7).
struct KernelProfile {
  ProfileKind kind = ProfileKind::Triangle;
  double truncation = 1.0;

  static KernelProfile ball() { return {ProfileKind::Ball, 1.0}; }
  static KernelProfile triangle() { return {ProfileKind::Triangle, 1.0}; }
  static KernelProfile epanechnikov() { return {ProfileKind::Epanechnikov, 1.0}; }
  static KernelProfile gaussian(double truncation = 4.0) {
    return {ProfileKind::Gaussian, truncation};
  }

  double radial(double z) const;

  // c1 in the gradient bound c1/width of range values; Ball is a step (+inf).
  double slope_constant() const;

  // Value varies linearly with signed distance between breakpoints.
  bool piecewise_linear() const { return kind == ProfileKind::Triangle; }

  const char* name() const;
  static KernelProfile parse(std::string_view name);
};

// ---------------------------------------------------------------------------
// Point sets
// ---------------------------------------------------------------------------

// Points in R^d with optional per-point weights (default all +1). Negative
// weights are reserved for the two-class classifier path and only enter via
// `two_class`; plain construction requires positive weights.
class PointSet {
 public:
  PointSet() = default;
  PointSet(int dim, std::vector<double> coords);
  PointSet(int dim, std::vector<double> coords, std::vector<double> weights);

  static PointSet two_class(const PointSet& positive, const PointSet& negative);

  std::size_t size() const { return dim_ == 0 ? 0 : coords_.size() / dim_; }
  int dim() const { return dim_; }
  bool empty() const { return coords_.empty(); }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(dim_),
            static_cast<std::size_t>(dim_)};
  }
  double coord(std::size_t i, int axis) const {
    return coords_[i * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(axis)];
  }
  double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }
  bool has_weights() const { return !weights_.empty(); }
  bool has_negative_weights() const { return signed_weights_; }
  double total_abs_weight() const;

  const std::vector<double>& coords() const { return coords_; }
  const std::vector<double>& weights() const { return weights_; }

  PointSet subset(std::span<const std::size_t> indices) const;
  static PointSet concat(const PointSet& a, const PointSet& b);

  // Side length and low corner of the smallest enclosing axis-aligned cube.
  struct EnclosingCube {
    double side = 0.0;
    std::vector<double> low;
  };
  EnclosingCube enclosing_cube() const;

 private:
  PointSet(int dim, std::vector<double> coords, std::vector<double> weights,
           bool allow_signed);
  void validate(bool allow_signed) const;

  int dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> weights_;
  bool signed_weights_ = false;
};

// ---------------------------------------------------------------------------
// Smoothed ranges
// ---------------------------------------------------------------------------

// {p : normal . p >= offset}, with the value-1 side where normal . p - offset > 0.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

// A kernel range centered at `center`. Default height 1 (K(x,x) = 1); the
// half_height flag selects the 1/2-scaled variant used in linking arguments.
struct PointCentered {
  std::vector<double> center;
  bool half_height = false;
};

// Smoothed transition across the sphere ||p - center|| = radius. With
// inside_is_one the disc interior carries value 1 and the value decays
// outward across the width band; otherwise the roles are swapped.
struct SphereBoundary {
  std::vector<double> center;
  double radius = 0.0;
  bool inside_is_one = true;
};

class SmoothedRange {
 public:
  SmoothedRange(Halfspace hs, double width, KernelProfile profile);
  SmoothedRange(PointCentered pc, double width, KernelProfile profile);
  SmoothedRange(SphereBoundary sb, double width, KernelProfile profile);

  int dim() const { return dim_; }
  double width() const { return width_; }
  const KernelProfile& profile() const { return profile_; }

  bool is_halfspace() const { return std::holds_alternative<Halfspace>(shape_); }
  bool is_point_centered() const { return std::holds_alternative<PointCentered>(shape_); }
  bool is_sphere_boundary() const { return std::holds_alternative<SphereBoundary>(shape_); }

  const Halfspace& halfspace() const { return std::get<Halfspace>(shape_); }
  const PointCentered& point_centered() const { return std::get<PointCentered>(shape_); }
  const SphereBoundary& sphere_boundary() const { return std::get<SphereBoundary>(shape_); }

  // Distance to the boundary surface, positive on the value-1 side. For
  // point-centered ranges the distance is unsigned (there is no inside).
  double signed_distance(std::span<const double> p) const;

  double eval(std::span<const double> p) const;

  std::string describe() const;

 private:
  std::variant<Halfspace, PointCentered, SphereBoundary> shape_;
  double width_ = 0.0;
  KernelProfile profile_;
  int dim_ = 0;
};

// Value of the signed-distance profile at distance s for the given width:
// the four-case piecewise ramp for Triangle, a step for Ball, and the
// kernel form 1 - k_w(s)/2 (s >= 0) / k_w(-s)/2 (s < 0) otherwise.
double signed_profile_value(const KernelProfile& profile, double s, double width);

double eval_range(const SmoothedRange& h, std::span<const double> p);
double sde(const PointSet& points, const SmoothedRange& h);
double kde(const PointSet& points, std::span<const double> x, double width,
           const KernelProfile& profile);
std::vector<std::size_t> superlevel_indices(const PointSet& points,
                                            const SmoothedRange& h, double tau);

// ---------------------------------------------------------------------------
// Evaluation nets
// ---------------------------------------------------------------------------

enum class NetMode { CriticalOffsets, GridOffsets, Explicit };

// Finite family of smoothed ranges used to approximate suprema over the full
// family. Directional nets store (direction, offset) pairs compactly and
// materialize halfspace ranges on demand; explicit nets hold arbitrary ranges
// sharing one width and profile.
class EvaluationNet {
 public:
  static EvaluationNet directional(int dim, std::vector<std::vector<double>> directions,
                                   std::vector<std::vector<double>> offsets_per_direction,
                                   double width, KernelProfile profile, NetMode mode);
  static EvaluationNet explicit_ranges(std::vector<SmoothedRange> ranges, NetMode mode = NetMode::Explicit);

  std::size_t size() const { return total_; }
  SmoothedRange range(std::size_t flat_index) const;

  bool is_directional() const { return !directions_.empty(); }
  std::size_t n_directions() const { return directions_.size(); }
  const std::vector<double>& direction(std::size_t j) const { return directions_[j]; }
  const std::vector<double>& offsets(std::size_t j) const { return offsets_[j]; }
  std::pair<std::size_t, std::size_t> locate(std::size_t flat_index) const;
  std::size_t flat_index(std::size_t j, std::size_t k) const { return cum_[j] + k; }

  int dim() const { return dim_; }
  double width() const { return width_; }
  const KernelProfile& profile() const { return profile_; }
  NetMode mode() const { return mode_; }

 private:
  int dim_ = 0;
  double width_ = 0.0;
  KernelProfile profile_;
  NetMode mode_ = NetMode::Explicit;
  std::vector<std::vector<double>> directions_;
  std::vector<std::vector<double>> offsets_;
  std::vector<std::size_t> cum_;  // prefix counts per direction
  std::vector<SmoothedRange> ranges_;
  std::size_t total_ = 0;
};

}  // namespace srs
