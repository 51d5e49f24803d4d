#include "srs/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "srs/error.hpp"

namespace srs {

namespace {

double linf_distance(std::span<const double> a, std::span<const double> b) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    best = std::max(best, std::abs(a[i] - b[i]));
  return best;
}

}  // namespace

std::size_t default_k_max(std::size_t n) {
  std::size_t k = 1;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

ClusterSummary gonzalez_linf(const PointSet& P, int k_max,
                             [[maybe_unused]] std::uint64_t seed, Exec exec) {
  require(!P.empty(), "bad_cluster", "point set is empty");
  require(k_max >= 1, "bad_cluster", "k_max must be at least 1");
  const std::size_t n = P.size();
  const std::size_t levels = std::min(static_cast<std::size_t>(k_max), n);

  ClusterSummary out;
  out.center_order.reserve(levels);
  out.center_order.push_back(0);
  std::vector<double> dist(n);
  parallel_for(exec, static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t i) {
    dist[static_cast<std::size_t>(i)] = linf_distance(
        P.point(static_cast<std::size_t>(i)), P.point(0));
  });

  for (std::size_t k = 1; k <= levels; ++k) {
    ArgMax far = parallel_argmax(exec, static_cast<std::ptrdiff_t>(n),
                                 [&](std::ptrdiff_t i) {
                                   return dist[static_cast<std::size_t>(i)];
                                 });
    const double ell = 2.0 * far.value;
    const double phi = std::max(static_cast<double>(k) - 1.0,
                                static_cast<double>(k) * ell);
    out.levels.push_back({static_cast<int>(k), ell, phi});
    if (k == levels) break;
    out.center_order.push_back(far.index);
    parallel_for(exec, static_cast<std::ptrdiff_t>(n), [&](std::ptrdiff_t ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      dist[i] = std::min(dist[i], linf_distance(P.point(i), P.point(far.index)));
    });
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i < out.levels.size(); ++i)
    if (out.levels[i].phi < out.levels[best].phi) best = i;
  out.k = out.levels[best].k;
  out.ell = out.levels[best].ell;
  out.phi_k = out.levels[best].phi;
  out.phi = out.phi_k;
  out.centers = P.subset(std::span<const std::size_t>(
      out.center_order.data(), static_cast<std::size_t>(out.k)));
  return out;
}

std::size_t predict_sample_size(double phi, double w, double eps, double delta,
                                int d) {
  require(phi > 0.0, "bad_size", "phi must be positive");
  require(w > 0.0, "bad_size", "width must be positive");
  require(eps > 0.0 && eps < 1.0, "bad_size", "eps must lie in (0,1)");
  require(delta > 0.0 && delta < 1.0, "bad_size", "delta must lie in (0,1)");
  require(d >= 1, "bad_size", "dimension must be positive");
  const double a = 2.0 * (d - 1) / (d + 2);
  const double b = 2.0 * d / (d + 2);
  const double L = std::max(1.0, std::log(phi / (w * eps * delta)));
  const double size =
      2.0 * std::pow(phi / w, a) * std::pow(std::sqrt(L) / eps, b);
  return static_cast<std::size_t>(std::ceil(size));
}

}  // namespace srs
