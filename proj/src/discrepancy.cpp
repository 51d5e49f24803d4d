#include "srs/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <utility>

#include "direval.hpp"
#include "srs/error.hpp"
#include "srs/rng.hpp"

namespace srs {

using detail::DirEval;
using detail::project_all;
using detail::support_radius;

namespace {

// Seed for the d >= 3 direction sample; fixed so nets are reproducible
// without threading a second seed through every caller.
constexpr std::uint64_t kDirectionSeed = 0x8f1db5a2c3e47961ull;

std::vector<std::vector<double>> make_directions(int dim, std::size_t n_dirs) {
  std::vector<std::vector<double>> dirs(n_dirs);
  if (dim == 1) {
    for (std::size_t j = 0; j < n_dirs; ++j)
      dirs[j] = {j % 2 == 0 ? 1.0 : -1.0};
    return dirs;
  }
  if (dim == 2) {
    for (std::size_t j = 0; j < n_dirs; ++j) {
      double th = 2.0 * std::numbers::pi * static_cast<double>(j) /
                  static_cast<double>(n_dirs);
      dirs[j] = {std::cos(th), std::sin(th)};
    }
    return dirs;
  }
  for (std::size_t j = 0; j < n_dirs; ++j) {
    auto gen = rng::Stream::from(kDirectionSeed, j);
    std::vector<double> u(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    do {
      norm2 = 0.0;
      for (auto& x : u) {
        x = gen.next_normal();
        norm2 += x * x;
      }
    } while (norm2 < 1e-12);
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : u) x *= inv;
    dirs[j] = std::move(u);
  }
  return dirs;
}

SupResult sup_over_net(const PointSet& P, const std::vector<double>& mult,
                       const EvaluationNet& net, Exec exec) {
  require(net.size() > 0, "bad_net", "evaluation net is empty");
  require(net.dim() == P.dim(), "bad_net",
          "net dimension does not match point set");
  if (net.is_directional()) {
    const KernelProfile profile = net.profile();
    const double w = net.width();
    const std::size_t ndir = net.n_directions();
    std::vector<ArgMax> best(ndir);
    parallel_for(exec, static_cast<std::ptrdiff_t>(ndir), [&](std::size_t j) {
      DirEval ev(P, mult, net.direction(j));
      const auto& offs = net.offsets(j);
      ArgMax local;
      for (std::size_t k = 0; k < offs.size(); ++k)
        local.consider(std::abs(ev.sum_at(offs[k], profile, w)), k);
      best[j] = local;
    });
    ArgMax overall;
    for (std::size_t j = 0; j < ndir; ++j) {
      if (best[j].index == std::numeric_limits<std::size_t>::max()) continue;
      overall.consider(best[j].value, net.flat_index(j, best[j].index));
    }
    require(overall.index != std::numeric_limits<std::size_t>::max(), "bad_net",
            "evaluation net has no offsets");
    return SupResult{overall.value, overall.index, net.range(overall.index)};
  }
  ArgMax overall = parallel_argmax(
      exec, static_cast<std::ptrdiff_t>(net.size()), [&](std::size_t r) {
        SmoothedRange h = net.range(r);
        double sum = 0.0;
        for (std::size_t i = 0; i < P.size(); ++i)
          sum += mult[i] * h.eval(P.point(i));
        return std::abs(sum);
      });
  return SupResult{overall.value, overall.index, net.range(overall.index)};
}

}  // namespace

Coloring color_from_matching(const Matching& M, std::uint64_t seed) {
  Coloring chi;
  chi.seed = seed;
  chi.pairs = M.pairs;
  chi.signs.assign(M.source_size, int8_t{1});
  for (const auto& [i, j] : M.pairs) {
    bool heads = rng::to_coin(rng::derive(seed, i, j));
    chi.signs[i] = heads ? int8_t{1} : int8_t{-1};
    chi.signs[j] = static_cast<int8_t>(-chi.signs[i]);
  }
  return chi;
}

DiscrepancyDiagnostics disc_for_range(const PointSet& P, const Coloring& chi,
                                      const SmoothedRange& h) {
  require(chi.signs.size() == P.size(), "bad_coloring",
          "coloring size does not match point set");
  std::vector<double> v(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) v[i] = h.eval(P.point(i));
  DiscrepancyDiagnostics out;
  out.gaps.reserve(chi.pairs.size());
  out.contributions.reserve(chi.pairs.size());
  for (const auto& [i, j] : chi.pairs) {
    out.gaps.push_back(2.0 * std::abs(v[i] - v[j]));
    out.contributions.push_back(chi.signs[i] * v[i] + chi.signs[j] * v[j]);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) sum += chi.signs[i] * v[i];
  out.disc = std::abs(sum);
  return out;
}

EvaluationNet build_evaluation_net(const PointSet& P, double w,
                                   const KernelProfile& profile, std::size_t n_dirs,
                                   NetMode mode, int refine) {
  require(!P.empty(), "bad_net", "point set is empty");
  require(w > 0.0, "bad_net", "width must be positive");
  require(n_dirs >= 1, "bad_net", "need at least one direction");
  require(mode == NetMode::CriticalOffsets || mode == NetMode::GridOffsets,
          "bad_net", "directional net modes only");
  if (refine < 0)
    refine = (profile.kind == ProfileKind::Triangle ||
              profile.kind == ProfileKind::Ball)
                 ? 1
                 : 3;
  const double span = support_radius(profile, w);

  std::vector<std::vector<double>> dirs = make_directions(P.dim(), n_dirs);
  std::vector<std::vector<double>> offsets(n_dirs);
  for (std::size_t j = 0; j < n_dirs; ++j) {
    std::vector<double> proj = project_all(P, dirs[j]);
    std::vector<double> offs;
    if (mode == NetMode::GridOffsets) {
      auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
      double lo = *mn - span;
      double hi = *mx + span;
      double step = 0.5 * w;
      auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 3;
      offs.reserve(count);
      for (std::size_t k = 0; k < count; ++k)
        offs.push_back(lo - step + static_cast<double>(k) * step);
    } else {
      std::vector<double> bp;
      bp.reserve(2 * proj.size());
      for (double tv : proj) {
        bp.push_back(tv - span);
        bp.push_back(tv + span);
      }
      std::sort(bp.begin(), bp.end());
      bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
      offs.reserve(bp.size() * (1 + static_cast<std::size_t>(refine)) + 2);
      offs.push_back(bp.front() - w);
      for (std::size_t k = 0; k < bp.size(); ++k) {
        offs.push_back(bp[k]);
        if (k + 1 < bp.size()) {
          double gap = bp[k + 1] - bp[k];
          for (int r = 1; r <= refine; ++r)
            offs.push_back(bp[k] + gap * static_cast<double>(r) /
                                       static_cast<double>(refine + 1));
        }
      }
      offs.push_back(bp.back() + w);
    }
    offsets[j] = std::move(offs);
  }
  return EvaluationNet::directional(P.dim(), std::move(dirs), std::move(offsets),
                                    w, profile, mode);
}

SupResult disc_sup(const PointSet& P, const Coloring& chi,
                   const EvaluationNet& net, Exec exec) {
  require(chi.signs.size() == P.size(), "bad_coloring",
          "coloring size does not match point set");
  std::vector<double> mult(P.size());
  for (std::size_t i = 0; i < P.size(); ++i)
    mult[i] = static_cast<double>(chi.signs[i]);
  return sup_over_net(P, mult, net, exec);
}

SupResult eps_sample_error(const PointSet& P, const PointSet& Q,
                           const EvaluationNet& net, Exec exec) {
  require(!P.empty() && !Q.empty(), "bad_sample", "point sets must be non-empty");
  PointSet joint = PointSet::concat(P, Q);
  std::vector<double> mult(joint.size());
  const double wp = P.total_abs_weight();
  const double wq = Q.total_abs_weight();
  for (std::size_t i = 0; i < P.size(); ++i) mult[i] = P.weight(i) / wp;
  for (std::size_t q = 0; q < Q.size(); ++q)
    mult[P.size() + q] = -Q.weight(q) / wq;
  return sup_over_net(joint, mult, net, exec);
}

PointSet halve(const PointSet& P, MatchMode mode, std::uint64_t seed,
               std::size_t exact_cap) {
  require(!P.empty(), "bad_halve", "point set is empty");
  require(!P.has_weights(), "bad_halve", "halving expects unweighted points");
  Matching M = min_cost_matching(P, mode, exact_cap);
  Coloring chi = color_from_matching(M, seed);
  std::vector<std::size_t> keep;
  keep.reserve((P.size() + 1) / 2);
  for (std::size_t i = 0; i < P.size(); ++i)
    if (chi.signs[i] > 0) keep.push_back(i);
  return P.subset(keep);
}

MergeReduceResult merge_reduce(const PointSet& P, std::size_t target_size, double w,
                               [[maybe_unused]] const KernelProfile& profile,
                               std::uint64_t seed, MatchMode mode,
                               std::size_t exact_cap) {
  require(target_size >= 2, "bad_merge_reduce", "target size must be at least 2");
  require(w > 0.0, "bad_merge_reduce", "width must be positive");
  require(!P.has_weights(), "bad_merge_reduce",
          "merge_reduce expects unweighted points");
  MergeReduceResult out{P, target_size, false};
  if (target_size >= P.size()) {
    out.truncated = target_size > P.size();
    return out;
  }

  // A power-of-two block count keeps the tournament complete, so every
  // point survives the same number of halvings; a carried-over odd block
  // would be halved fewer times and its points would carry extra
  // multiplicity, biasing cluster proportions in the output.
  std::size_t levels = 0;
  while (P.size() > (2 * target_size) << levels) ++levels;
  const std::size_t nblocks = std::size_t{1} << levels;
  std::vector<PointSet> blocks;
  blocks.reserve(nblocks);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * P.size() / nblocks;
    const std::size_t hi = (b + 1) * P.size() / nblocks;
    std::vector<std::size_t> idx(hi - lo);
    std::iota(idx.begin(), idx.end(), lo);
    blocks.push_back(P.subset(idx));
  }

  std::uint64_t round = 0;
  while (blocks.size() > 1) {
    std::vector<PointSet> next;
    next.reserve(blocks.size() / 2);
    for (std::size_t p = 0; 2 * p + 1 < blocks.size(); ++p) {
      PointSet merged = PointSet::concat(blocks[2 * p], blocks[2 * p + 1]);
      next.push_back(halve(merged, mode, rng::derive(seed, round, p), exact_cap));
    }
    blocks = std::move(next);
    ++round;
  }

  PointSet cur = std::move(blocks.front());
  while (cur.size() > target_size && (cur.size() + 1) / 2 >= target_size) {
    cur = halve(cur, mode, rng::derive(seed, round, 0), exact_cap);
    ++round;
  }
  if (cur.size() > target_size) {
    // Another halving would undershoot; a seeded uniform trim lands on the
    // exact target without the multiplicity skew of a partial halving.
    std::vector<std::size_t> idx(cur.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    auto gen = rng::Stream::from(seed, round, 1);
    for (std::size_t i = 0; i < target_size; ++i)
      std::swap(idx[i], idx[i + gen.next_below(idx.size() - i)]);
    idx.resize(target_size);
    std::sort(idx.begin(), idx.end());
    cur = cur.subset(idx);
  }
  out.sample = std::move(cur);
  return out;
}

std::size_t eps_sample_size(double eps, double ell, double w, double delta) {
  require(eps > 0.0 && eps < 1.0, "bad_size", "eps must lie in (0,1)");
  require(ell > 0.0, "bad_size", "domain side must be positive");
  require(w > 0.0, "bad_size", "width must be positive");
  require(delta > 0.0 && delta < 1.0, "bad_size", "delta must lie in (0,1)");
  double lg = std::log(ell / (w * eps * delta));
  if (lg < 1.0) lg = 1.0;
  return static_cast<std::size_t>(std::ceil((2.0 / eps) * std::sqrt((ell / w) * lg)));
}

MergeReduceResult merge_reduce_eps(const PointSet& P, double eps, double w,
                                   const KernelProfile& profile, std::uint64_t seed,
                                   double delta, MatchMode mode,
                                   std::size_t exact_cap) {
  require(!P.empty(), "bad_merge_reduce", "point set is empty");
  double ell = P.enclosing_cube().side;
  std::size_t target = ell > 0.0 ? eps_sample_size(eps, ell, w, delta) : 2;
  if (target < 2) target = 2;
  return merge_reduce(P, target, w, profile, seed, mode, exact_cap);
}

}  // namespace srs
