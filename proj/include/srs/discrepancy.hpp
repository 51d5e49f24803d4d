#pragma once

#include <cstdint>
#include <vector>

#include "srs/geometry.hpp"
#include "srs/matching.hpp"
#include "srs/parallel.hpp"

namespace srs {

// Signed two-coloring of a point set, one fair coin per matched pair. The
// producing pairs are carried along for pairwise diagnostics.
struct Coloring {
  std::vector<int8_t> signs;  // +1 / -1 per point
  std::uint64_t seed = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Per-pair view of one range's discrepancy: gap_j = 2|v(p_j) - v(q_j)|,
// contribution_j = chi(p_j)v(p_j) + chi(q_j)v(q_j) in {-gap/2, +gap/2}.
struct DiscrepancyDiagnostics {
  std::vector<double> gaps;
  std::vector<double> contributions;
  double disc = 0.0;
};

Coloring color_from_matching(const Matching& M, std::uint64_t seed);

DiscrepancyDiagnostics disc_for_range(const PointSet& P, const Coloring& chi,
                                      const SmoothedRange& h);

// Direction net over halfspace ranges at fixed width/profile. CriticalOffsets
// places one range per breakpoint of the per-direction profile sum (point
// projections shifted by the support radius) plus `refine` interior points in
// each gap; GridOffsets spaces offsets half a width apart across the data
// span. refine < 0 picks the profile default (1 when the profile is piecewise
// linear, 3 otherwise).
EvaluationNet build_evaluation_net(const PointSet& P, double w,
                                   const KernelProfile& profile, std::size_t n_dirs,
                                   NetMode mode, int refine = -1);

struct SupResult {
  double value = 0.0;
  std::size_t index = 0;  // flat index into the net
  SmoothedRange witness;
};

// max_h |sum_i chi_i v_h(p_i)| over the net, with the argmax range. Sorted
// projections and prefix sums give O(log n) per offset on directional nets
// with piecewise-linear profiles.
SupResult disc_sup(const PointSet& P, const Coloring& chi, const EvaluationNet& net,
                   Exec exec = Exec::Serial);

// max_h |sde_P(h) - sde_Q(h)| over the net, with the argmax range.
SupResult eps_sample_error(const PointSet& P, const PointSet& Q,
                           const EvaluationNet& net, Exec exec = Exec::Serial);

// One round of matching + coloring; keeps the positive class (and the odd
// leftover). Size ceil(n/2).
PointSet halve(const PointSet& P, MatchMode mode, std::uint64_t seed,
               std::size_t exact_cap = 2048);

struct MergeReduceResult {
  PointSet sample;
  std::size_t target = 0;
  bool truncated = false;  // target exceeded |P|; P returned unchanged
};

// Block-wise repeated halving: 2^L equal blocks (the smallest L that keeps
// blocks at most 2*target) merge pairwise through a complete tournament, so
// every point survives the same number of halvings. The final block is
// halved while that stays at or above the target and then trimmed to the
// exact target by a seeded uniform subsample. Returns exactly target points
// unless the input is already no larger.
MergeReduceResult merge_reduce(const PointSet& P, std::size_t target_size, double w,
                               const KernelProfile& profile, std::uint64_t seed,
                               MatchMode mode = MatchMode::Exact,
                               std::size_t exact_cap = 2048);

// Sample size ceil((2/eps) * sqrt((ell/w) * ln(ell/(w eps delta)))) with the
// log clamped to at least 1.
std::size_t eps_sample_size(double eps, double ell, double w, double delta);

// eps-driven variant: the target comes from eps_sample_size with ell taken
// from the data's enclosing cube.
MergeReduceResult merge_reduce_eps(const PointSet& P, double eps, double w,
                                   const KernelProfile& profile, std::uint64_t seed,
                                   double delta = 0.1, MatchMode mode = MatchMode::Exact,
                                   std::size_t exact_cap = 2048);

}  // namespace srs
