#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "srs/geometry.hpp"

// Shared fast path for directional sweeps: weighted profile sums along one
// direction as a function of the halfspace offset.
namespace srs::detail {

// Offsets farther than this from every projection put the range in a
// saturated regime (all values 0 or all 1).
inline double support_radius(const KernelProfile& profile, double w) {
  return profile.kind == ProfileKind::Ball ? 0.0 : w * profile.truncation;
}

inline std::vector<double> project_all(const PointSet& P,
                                       const std::vector<double>& u) {
  std::vector<double> proj(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    auto pt = P.point(i);
    double t = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) t += u[a] * pt[a];
    proj[i] = t;
  }
  return proj;
}

// Projections sorted ascending with prefix sums of the multipliers and of
// multiplier*projection.
struct DirEval {
  std::vector<double> t;
  std::vector<double> m;
  std::vector<double> pre_m;   // size n+1
  std::vector<double> pre_mt;  // size n+1

  DirEval(const PointSet& P, const std::vector<double>& mult,
          const std::vector<double>& u) {
    const std::size_t n = P.size();
    std::vector<std::pair<double, double>> tm(n);
    std::vector<double> proj = project_all(P, u);
    for (std::size_t i = 0; i < n; ++i) tm[i] = {proj[i], mult[i]};
    std::sort(tm.begin(), tm.end());
    t.resize(n);
    m.resize(n);
    pre_m.assign(n + 1, 0.0);
    pre_mt.assign(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = tm[i].first;
      m[i] = tm[i].second;
      pre_m[i + 1] = pre_m[i] + m[i];
      pre_mt[i + 1] = pre_mt[i] + m[i] * t[i];
    }
  }

  double max_projection() const { return t.empty() ? 0.0 : t.back(); }

  // sum_i m_i * v(t_i - o) for the halfspace at offset o.
  double sum_at(double o, const KernelProfile& profile, double w) const {
    const std::size_t n = t.size();
    switch (profile.kind) {
      case ProfileKind::Triangle: {
        // v ramps linearly from 0 at s = -w to 1 at s = +w.
        std::size_t lo = static_cast<std::size_t>(
            std::upper_bound(t.begin(), t.end(), o - w) - t.begin());
        std::size_t hi = static_cast<std::size_t>(
            std::lower_bound(t.begin(), t.end(), o + w) - t.begin());
        double mid = pre_m[hi] - pre_m[lo];
        return (pre_m[n] - pre_m[hi]) + 0.5 * mid +
               ((pre_mt[hi] - pre_mt[lo]) - o * mid) / (2.0 * w);
      }
      case ProfileKind::Ball: {
        // Step function; ties at the boundary count half.
        std::size_t lo = static_cast<std::size_t>(
            std::lower_bound(t.begin(), t.end(), o) - t.begin());
        std::size_t hi = static_cast<std::size_t>(
            std::upper_bound(t.begin(), t.end(), o) - t.begin());
        return (pre_m[n] - pre_m[hi]) + 0.5 * (pre_m[hi] - pre_m[lo]);
      }
      default: {
        // Smooth profiles: saturated outside the support window, direct
        // evaluation inside it.
        double span = support_radius(profile, w);
        std::size_t lo = static_cast<std::size_t>(
            std::upper_bound(t.begin(), t.end(), o - span) - t.begin());
        std::size_t hi = static_cast<std::size_t>(
            std::lower_bound(t.begin(), t.end(), o + span) - t.begin());
        double sum = pre_m[n] - pre_m[hi];
        for (std::size_t i = lo; i < hi; ++i)
          sum += m[i] * signed_profile_value(profile, t[i] - o, w);
        return sum;
      }
    }
  }
};

}  // namespace srs::detail
