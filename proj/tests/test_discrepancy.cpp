#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "srs/discrepancy.hpp"
#include "srs/error.hpp"
#include "srs/rng.hpp"

using namespace srs;
using doctest::Approx;

namespace {

PointSet uniform_points(std::size_t n, int dim, std::uint64_t seed) {
  auto gen = rng::Stream::from(seed, 17);
  std::vector<double> coords(n * static_cast<std::size_t>(dim));
  for (auto& c : coords) c = gen.next_unit();
  return PointSet(dim, std::move(coords));
}

std::vector<double> unit_dir(int dim, std::uint64_t seed) {
  auto gen = rng::Stream::from(seed, 29);
  std::vector<double> u(static_cast<std::size_t>(dim));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& x : u) {
      x = gen.next_normal();
      n2 += x * x;
    }
  } while (n2 < 1e-12);
  for (auto& x : u) x /= std::sqrt(n2);
  return u;
}

double median_projection(const PointSet& P, const std::vector<double>& u) {
  std::vector<double> t(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    double s = 0.0;
    auto pt = P.point(i);
    for (std::size_t a = 0; a < u.size(); ++a) s += u[a] * pt[a];
    t[i] = s;
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

const KernelProfile kTriangle{ProfileKind::Triangle};
const KernelProfile kBall{ProfileKind::Ball};
const KernelProfile kEpan{ProfileKind::Epanechnikov};

}  // namespace

TEST_CASE("coloring flips exactly one endpoint per pair") {
  PointSet P = uniform_points(16, 2, 101);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 7);
  REQUIRE(chi.signs.size() == 16);
  int sum = 0;
  for (const auto& [i, j] : chi.pairs) {
    CHECK(chi.signs[i] == -chi.signs[j]);
    sum += chi.signs[i] + chi.signs[j];
  }
  CHECK(sum == 0);

  Coloring again = color_from_matching(M, 7);
  CHECK(again.signs == chi.signs);
  Coloring other = color_from_matching(M, 8);
  CHECK(other.signs != chi.signs);

  PointSet odd = uniform_points(9, 2, 102);
  Matching Modd = min_cost_matching(odd, MatchMode::Exact);
  REQUIRE(Modd.unmatched.has_value());
  Coloring codd = color_from_matching(Modd, 3);
  CHECK(codd.signs[*Modd.unmatched] == 1);
}

TEST_CASE("pair orientation frequency is half over many seeds") {
  PointSet P = uniform_points(8, 2, 103);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  std::vector<int> heads(M.pairs.size(), 0);
  const int trials = 10000;
  for (int s = 0; s < trials; ++s) {
    Coloring chi = color_from_matching(M, static_cast<std::uint64_t>(s));
    for (std::size_t j = 0; j < M.pairs.size(); ++j)
      if (chi.signs[M.pairs[j].first] > 0) ++heads[j];
  }
  for (std::size_t j = 0; j < M.pairs.size(); ++j) {
    double freq = heads[j] / static_cast<double>(trials);
    CHECK(freq == Approx(0.5).epsilon(0.04).scale(1.0));  // 0.5 +/- 0.02
  }
}

TEST_CASE("discrepancy diagnostics match the defining sums") {
  PointSet P = uniform_points(24, 2, 104);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 11);
  std::vector<double> u = unit_dir(2, 5);
  double w = 0.3;
  double b = median_projection(P, u);
  SmoothedRange h(Halfspace{u, b}, w, kTriangle);

  DiscrepancyDiagnostics diag = disc_for_range(P, chi, h);
  REQUIRE(diag.gaps.size() == M.pairs.size());
  REQUIRE(diag.contributions.size() == M.pairs.size());

  std::vector<double> v(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    double s = -b;
    auto pt = P.point(i);
    for (std::size_t a = 0; a < u.size(); ++a) s += u[a] * pt[a];
    v[i] = signed_profile_value(kTriangle, s, w);
  }
  double oracle = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i) oracle += chi.signs[i] * v[i];
  CHECK(diag.disc == Approx(std::abs(oracle)).epsilon(1e-12).scale(1.0));

  double pair_sum = 0.0;
  for (std::size_t j = 0; j < M.pairs.size(); ++j) {
    auto [i, k] = M.pairs[j];
    CHECK(diag.gaps[j] == Approx(2.0 * std::abs(v[i] - v[k])).epsilon(1e-12).scale(1.0));
    CHECK(diag.gaps[j] >= 0.0);
    CHECK(std::abs(diag.contributions[j]) ==
          Approx(diag.gaps[j] / 2.0).epsilon(1e-12).scale(1.0));
    pair_sum += diag.contributions[j];
  }
  CHECK(diag.disc == Approx(std::abs(pair_sum)).epsilon(1e-10).scale(1.0));

  Coloring bad = chi;
  bad.signs.pop_back();
  CHECK_THROWS_WITH_AS(disc_for_range(P, bad, h), doctest::Contains("coloring"),
                       Error);
}

TEST_CASE("coincident pairs and saturated ranges have zero discrepancy") {
  std::vector<double> coords{0.3, 0.4, 0.3, 0.4};  // one coincident pair
  PointSet P(2, coords);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 1);
  SmoothedRange h(Halfspace{{1.0, 0.0}, 0.35}, 0.2, kTriangle);
  CHECK(disc_for_range(P, chi, h).disc == 0.0);

  PointSet Q = uniform_points(12, 2, 105);
  Matching MQ = min_cost_matching(Q, MatchMode::Exact);
  Coloring chiQ = color_from_matching(MQ, 2);
  SmoothedRange deep(Halfspace{{1.0, 0.0}, -5.0}, 0.2, kTriangle);  // all v = 1
  CHECK(disc_for_range(Q, chiQ, deep).disc == 0.0);
}

TEST_CASE("critical offsets enumerate profile breakpoints with midpoints") {
  std::vector<double> coords{0.1, 0.5, 0.4, 0.5, 0.9, 0.5};
  PointSet P(2, coords);
  double w = 0.05;

  EvaluationNet tri = build_evaluation_net(P, w, kTriangle, 1, NetMode::CriticalOffsets);
  REQUIRE(tri.n_directions() == 1);
  CHECK(tri.direction(0)[0] == Approx(1.0).epsilon(1e-15).scale(1.0));
  CHECK(tri.direction(0)[1] == Approx(0.0).scale(1.0).epsilon(1e-15));
  const auto& offs = tri.offsets(0);
  std::vector<double> bp{0.1 - w, 0.1 + w, 0.4 - w, 0.4 + w, 0.9 - w, 0.9 + w};
  REQUIRE(offs.size() == 13);  // sentinel + 6 breakpoints + 5 midpoints + sentinel
  CHECK(offs.front() == Approx(bp.front() - w).epsilon(1e-12).scale(1.0));
  CHECK(offs.back() == Approx(bp.back() + w).epsilon(1e-12).scale(1.0));
  for (std::size_t k = 0; k < bp.size(); ++k)
    CHECK(offs[1 + 2 * k] == Approx(bp[k]).epsilon(1e-12).scale(1.0));
  for (std::size_t k = 0; k + 1 < bp.size(); ++k)
    CHECK(offs[2 + 2 * k] == Approx(0.5 * (bp[k] + bp[k + 1])).epsilon(1e-12).scale(1.0));
  CHECK(tri.size() == 13);
  CHECK(tri.mode() == NetMode::CriticalOffsets);

  EvaluationNet ball = build_evaluation_net(P, w, kBall, 1, NetMode::CriticalOffsets);
  CHECK(ball.offsets(0).size() == 7);  // sentinel + 3 projections + 2 midpoints + sentinel

  EvaluationNet gauss =
      build_evaluation_net(P, w, KernelProfile::gaussian(), 1, NetMode::CriticalOffsets);
  CHECK(gauss.offsets(0).size() == 23);  // 2 + 6 breakpoints + 5 gaps x 3 interior
}

TEST_CASE("net size scales linearly in the direction count") {
  PointSet P = uniform_points(20, 2, 106);
  EvaluationNet a = build_evaluation_net(P, 0.1, kTriangle, 90, NetMode::CriticalOffsets);
  EvaluationNet b = build_evaluation_net(P, 0.1, kTriangle, 180, NetMode::CriticalOffsets);
  CHECK(b.size() == 2 * a.size());
}

TEST_CASE("grid offsets are evenly spaced and cover the data span") {
  PointSet P = uniform_points(15, 2, 107);
  double w = 0.25;
  EvaluationNet net = build_evaluation_net(P, w, kTriangle, 4, NetMode::GridOffsets);
  for (std::size_t j = 0; j < net.n_directions(); ++j) {
    const auto& offs = net.offsets(j);
    REQUIRE(offs.size() >= 3);
    for (std::size_t k = 0; k + 1 < offs.size(); ++k)
      CHECK(offs[k + 1] - offs[k] == Approx(0.5 * w).epsilon(1e-12).scale(1.0));
    std::vector<double> proj(P.size());
    const auto& u = net.direction(j);
    for (std::size_t i = 0; i < P.size(); ++i) {
      double s = 0.0;
      auto pt = P.point(i);
      for (std::size_t a = 0; a < u.size(); ++a) s += u[a] * pt[a];
      proj[i] = s;
    }
    auto [mn, mx] = std::minmax_element(proj.begin(), proj.end());
    CHECK(offs.front() < *mn - w);
    CHECK(offs.back() > *mx + w);
  }
}

TEST_CASE("higher dimensional nets use deterministic unit directions") {
  PointSet P = uniform_points(10, 3, 108);
  EvaluationNet a = build_evaluation_net(P, 0.2, kTriangle, 16, NetMode::CriticalOffsets);
  EvaluationNet b = build_evaluation_net(P, 0.2, kTriangle, 16, NetMode::CriticalOffsets);
  REQUIRE(a.n_directions() == 16);
  for (std::size_t j = 0; j < 16; ++j) {
    double n2 = 0.0;
    for (double x : a.direction(j)) n2 += x * x;
    CHECK(n2 == Approx(1.0).epsilon(1e-12).scale(1.0));
    CHECK(a.direction(j) == b.direction(j));
  }
}

TEST_CASE("single offset nets match the naive range evaluation") {
  PointSet base = uniform_points(40, 2, 109);
  std::vector<double> coords = base.coords();
  coords.insert(coords.end(), coords.begin(), coords.begin() + 10);  // 5 duplicate points
  PointSet P(2, coords);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 13);
  double w = 0.2;

  const KernelProfile profiles[] = {kBall, kTriangle, kEpan, KernelProfile::gaussian()};
  auto gen = rng::Stream::from(110, 1);
  for (const auto& prof : profiles) {
    for (int rep = 0; rep < 40; ++rep) {
      std::vector<double> u = unit_dir(2, static_cast<std::uint64_t>(200 + rep));
      double o = -0.5 + 2.0 * gen.next_unit();
      if (rep % 5 == 1) {  // pin offsets to exact breakpoints
        auto pt = P.point(3);
        o = u[0] * pt[0] + u[1] * pt[1];
        if (rep % 10 == 6) o += w;
      }
      EvaluationNet net = EvaluationNet::directional(
          2, {u}, {std::vector<double>{o}}, w, prof, NetMode::CriticalOffsets);
      SupResult sup = disc_sup(P, chi, net);
      double naive = disc_for_range(P, chi, net.range(0)).disc;
      CHECK(sup.value == Approx(naive).epsilon(1e-9).scale(1.0));
      CHECK(sup.index == 0);
    }
  }
}

TEST_CASE("supremum over a one-range net equals the range discrepancy") {
  PointSet P = uniform_points(18, 2, 111);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 5);
  SmoothedRange h(SphereBoundary{{0.5, 0.5}, 0.3, true}, 0.15, kEpan);
  EvaluationNet net = EvaluationNet::explicit_ranges({h});
  SupResult sup = disc_sup(P, chi, net);
  CHECK(sup.value == Approx(disc_for_range(P, chi, h).disc).epsilon(1e-12).scale(1.0));
  CHECK(sup.index == 0);

  PointSet coincident(2, std::vector<double>{0.2, 0.2, 0.2, 0.2, 0.7, 0.1, 0.7, 0.1});
  Matching Mc = min_cost_matching(coincident, MatchMode::Exact);
  Coloring cc = color_from_matching(Mc, 9);
  EvaluationNet dirnet =
      build_evaluation_net(coincident, 0.1, kTriangle, 24, NetMode::CriticalOffsets);
  CHECK(disc_sup(coincident, cc, dirnet).value <= 1e-12);
}

TEST_CASE("finer direction nets raise the supremum by at most two percent") {
  for (std::uint64_t seed : {112, 113, 114}) {
    PointSet P = uniform_points(48, 2, seed);
    Matching M = min_cost_matching(P, MatchMode::Exact);
    Coloring chi = color_from_matching(M, seed + 1);
    EvaluationNet coarse =
        build_evaluation_net(P, 0.15, kTriangle, 180, NetMode::CriticalOffsets);
    EvaluationNet fine =
        build_evaluation_net(P, 0.15, kTriangle, 1800, NetMode::CriticalOffsets);
    SupResult a = disc_sup(P, chi, coarse);
    SupResult b = disc_sup(P, chi, fine);
    CHECK(a.value <= b.value + 1e-12);  // coarse directions are a subset
    CHECK(b.value <= a.value * 1.02);
  }
}

TEST_CASE("serial and parallel supremum agree exactly") {
  PointSet P = uniform_points(60, 2, 115);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 21);
  EvaluationNet net = build_evaluation_net(P, 0.1, kTriangle, 120, NetMode::CriticalOffsets);

  SupResult s = disc_sup(P, chi, net, Exec::Serial);
  SupResult p = disc_sup(P, chi, net, Exec::Parallel);
  CHECK(s.value == p.value);
  CHECK(s.index == p.index);
  CHECK(disc_for_range(P, chi, s.witness).disc == Approx(s.value).epsilon(1e-9).scale(1.0));

  PointSet Q = halve(P, MatchMode::Exact, 33);
  SupResult es = eps_sample_error(P, Q, net, Exec::Serial);
  SupResult ep = eps_sample_error(P, Q, net, Exec::Parallel);
  CHECK(es.value == ep.value);
  CHECK(es.index == ep.index);

  std::vector<SmoothedRange> ranges;
  for (int k = 0; k < 9; ++k)
    ranges.emplace_back(PointCentered{{0.1 * k, 0.5}, false}, 0.2, kEpan);
  EvaluationNet ex = EvaluationNet::explicit_ranges(std::move(ranges));
  SupResult xs = disc_sup(P, chi, ex, Exec::Serial);
  SupResult xp = disc_sup(P, chi, ex, Exec::Parallel);
  CHECK(xs.value == xp.value);
  CHECK(xs.index == xp.index);
}

TEST_CASE("sample error vanishes when the sample is the data") {
  PointSet P = uniform_points(30, 2, 116);
  EvaluationNet net = build_evaluation_net(P, 0.2, kTriangle, 60, NetMode::CriticalOffsets);
  CHECK(eps_sample_error(P, P, net).value <= 1e-12);

  PointSet pos = uniform_points(10, 2, 117);
  PointSet neg = uniform_points(8, 2, 118);
  PointSet two = PointSet::two_class(pos, neg);
  EvaluationNet net2 = build_evaluation_net(two, 0.2, kTriangle, 60, NetMode::CriticalOffsets);
  CHECK(eps_sample_error(two, two, net2).value <= 1e-12);
}

TEST_CASE("halving keeps one endpoint per pair") {
  PointSet P = uniform_points(20, 2, 119);
  PointSet H = halve(P, MatchMode::Exact, 3);
  CHECK(H.size() == 10);
  PointSet H2 = halve(P, MatchMode::Exact, 3);
  CHECK(H2.coords() == H.coords());

  PointSet odd = uniform_points(17, 2, 120);
  PointSet Hodd = halve(odd, MatchMode::Exact, 4);
  CHECK(Hodd.size() == 9);

  PointSet weighted(2, std::vector<double>{0.0, 0.0, 1.0, 1.0},
                    std::vector<double>{2.0, 1.0});
  CHECK_THROWS_WITH_AS(halve(weighted, MatchMode::Exact, 1),
                       doctest::Contains("unweighted"), Error);
}

TEST_CASE("halving error equals discrepancy over n") {
  PointSet P = uniform_points(64, 2, 121);
  const std::uint64_t seed = 41;
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, seed);
  PointSet Q = halve(P, MatchMode::Exact, seed);
  REQUIRE(Q.size() == 32);

  EvaluationNet net = build_evaluation_net(P, 0.15, kTriangle, 90, NetMode::CriticalOffsets);
  for (std::size_t flat : {std::size_t{0}, net.size() / 3, 2 * net.size() / 3}) {
    SmoothedRange h = net.range(flat);
    double err = std::abs(sde(P, h) - sde(Q, h));
    CHECK(err == Approx(disc_for_range(P, chi, h).disc / 64.0).epsilon(1e-10).scale(1.0));
  }
  SupResult es = eps_sample_error(P, Q, net);
  SupResult ds = disc_sup(P, chi, net);
  CHECK(es.value == Approx(ds.value / 64.0).epsilon(1e-9).scale(1.0));
  CHECK(es.value <= ds.value / 64.0 + 1e-12);
}

TEST_CASE("halved estimates are unbiased across seeds") {
  PointSet P = uniform_points(32, 2, 122);
  std::vector<double> u = unit_dir(2, 7);
  SmoothedRange h(Halfspace{u, median_projection(P, u)}, 0.3, kTriangle);
  std::vector<double> v(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) v[i] = h.eval(P.point(i));
  double truth = sde(P, h);

  Matching M = min_cost_matching(P, MatchMode::Exact);
  const int trials = 10000;
  double sum = 0.0, sumsq = 0.0;
  for (int s = 0; s < trials; ++s) {
    Coloring chi = color_from_matching(M, static_cast<std::uint64_t>(s));
    double est = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i)
      if (chi.signs[i] > 0) est += v[i];
    est *= 2.0 / static_cast<double>(P.size());
    sum += est;
    sumsq += est * est;
  }
  double mean = sum / trials;
  double var = std::max(0.0, sumsq / trials - mean * mean);
  double stderr_mean = std::sqrt(var / trials);
  CHECK(std::abs(mean - truth) <= 3.0 * stderr_mean + 1e-12);
}

TEST_CASE("exceedance rates respect the tail bound") {
  PointSet P = uniform_points(64, 2, 123);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  const int trials = 10000;
  for (std::uint64_t dirseed = 0; dirseed < 5; ++dirseed) {
    std::vector<double> u = unit_dir(2, dirseed);
    SmoothedRange h(Halfspace{u, median_projection(P, u)}, 0.2, kTriangle);
    std::vector<double> gap(M.pairs.size());
    double sum_sq = 0.0;
    for (std::size_t j = 0; j < M.pairs.size(); ++j) {
      auto [i, k] = M.pairs[j];
      gap[j] = h.eval(P.point(i)) - h.eval(P.point(k));
      sum_sq += 4.0 * gap[j] * gap[j];
    }
    REQUIRE(sum_sq > 0.0);
    for (int m = 1; m <= 3; ++m) {
      double alpha = m * std::sqrt(sum_sq) / 2.0;
      int exceed = 0;
      for (int s = 0; s < trials; ++s) {
        Coloring chi = color_from_matching(M, static_cast<std::uint64_t>(s));
        double disc = 0.0;
        for (std::size_t j = 0; j < M.pairs.size(); ++j)
          disc += chi.signs[M.pairs[j].first] * gap[j];
        if (std::abs(disc) >= alpha) ++exceed;
      }
      double bound = 2.0 * std::exp(-2.0 * alpha * alpha / sum_sq);
      double slack = 3.0 * std::sqrt(std::min(bound, 1.0) * (1.0 - std::min(bound, 1.0)) / trials);
      CHECK(exceed / static_cast<double>(trials) <= bound + slack);
    }
  }
}

TEST_CASE("squared gaps obey the power-mean inequality") {
  for (int d : {3, 4}) {
    PointSet P = uniform_points(64, d, static_cast<std::uint64_t>(300 + d));
    Matching M = min_cost_matching(P, MatchMode::Exact);
    Coloring chi = color_from_matching(M, 1);
    for (std::uint64_t r = 0; r < 10; ++r) {
      std::vector<double> u = unit_dir(d, 400 + r);
      SmoothedRange h(Halfspace{u, median_projection(P, u)}, 0.25,
                      r % 2 == 0 ? kTriangle : KernelProfile::gaussian());
      DiscrepancyDiagnostics diag = disc_for_range(P, chi, h);
      double lhs = 0.0, pw = 0.0;
      for (double g : diag.gaps) {
        lhs += g * g;
        pw += std::pow(g, d);
      }
      double m = static_cast<double>(diag.gaps.size());
      double rhs = std::pow(m, 1.0 - 2.0 / d) * std::pow(pw, 2.0 / d);
      CHECK(lhs <= rhs * (1.0 + 1e-12) + 1e-15);
    }
  }
}

TEST_CASE("merge_reduce handles trivial targets") {
  PointSet P = uniform_points(24, 2, 124);
  MergeReduceResult same = merge_reduce(P, 24, 0.1, kTriangle, 1);
  CHECK(same.sample.coords() == P.coords());
  CHECK_FALSE(same.truncated);

  MergeReduceResult big = merge_reduce(P, 64, 0.1, kTriangle, 1);
  CHECK(big.sample.coords() == P.coords());
  CHECK(big.truncated);
  CHECK(big.target == 64);

  CHECK_THROWS_WITH_AS(merge_reduce(P, 1, 0.1, kTriangle, 1),
                       doctest::Contains("target"), Error);
  PointSet weighted(2, std::vector<double>{0.0, 0.0, 1.0, 1.0},
                    std::vector<double>{2.0, 1.0});
  CHECK_THROWS_AS(merge_reduce(weighted, 2, 0.1, kTriangle, 1), Error);
}

TEST_CASE("merge_reduce reduces to the target deterministically") {
  PointSet P = uniform_points(300, 2, 125);
  MergeReduceResult a = merge_reduce(P, 16, 0.1, kTriangle, 7);
  CHECK(a.sample.size() == 16);
  CHECK_FALSE(a.truncated);
  MergeReduceResult b = merge_reduce(P, 16, 0.1, kTriangle, 7);
  CHECK(b.sample.coords() == a.sample.coords());
  MergeReduceResult c = merge_reduce(P, 16, 0.1, kTriangle, 8);
  CHECK(c.sample.coords() != a.sample.coords());

  // every sampled point is one of the originals
  for (std::size_t i = 0; i < a.sample.size(); ++i) {
    bool found = false;
    for (std::size_t k = 0; k < P.size() && !found; ++k)
      found = a.sample.coord(i, 0) == P.coord(k, 0) &&
              a.sample.coord(i, 1) == P.coord(k, 1);
    CHECK(found);
  }

  MergeReduceResult g = merge_reduce(P, 16, 0.1, kTriangle, 7, MatchMode::Greedy);
  CHECK(g.sample.size() == 16);

  PointSet pow2 = uniform_points(256, 2, 126);
  MergeReduceResult exact = merge_reduce(pow2, 32, 0.1, kTriangle, 9);
  CHECK(exact.sample.size() == 32);  // power-of-two flow lands on the target
}

TEST_CASE("merge_reduce keeps cluster proportions at awkward targets") {
  // Two index-contiguous clusters; a ragged tournament would halve one
  // side fewer times and skew the output toward it.
  auto gen = rng::Stream::from(131, 9);
  std::vector<double> coords;
  for (int i = 0; i < 512; ++i) {
    coords.push_back(gen.next_unit());
    coords.push_back(gen.next_unit());
  }
  for (int i = 0; i < 512; ++i) {
    coords.push_back(40.0 + gen.next_unit());
    coords.push_back(40.0 + gen.next_unit());
  }
  PointSet P(2, std::move(coords));
  for (std::size_t target : {49, 98, 130}) {
    CAPTURE(target);
    MergeReduceResult r = merge_reduce(P, target, 1.0, kTriangle, 3);
    REQUIRE(r.sample.size() == target);
    std::size_t low_side = 0;
    for (std::size_t i = 0; i < r.sample.size(); ++i)
      low_side += r.sample.coord(i, 0) < 20.0;
    const double frac = static_cast<double>(low_side) / target;
    CHECK(frac > 0.4);
    CHECK(frac < 0.6);
  }
}

TEST_CASE("eps driven target follows the size formula") {
  CHECK(eps_sample_size(0.2, 1.0, 0.1, 0.1) == 79);
  CHECK(eps_sample_size(0.9, 1.0, 1.0, 0.9) == 3);  // log clamp engaged
  CHECK_THROWS_AS(eps_sample_size(0.0, 1.0, 0.1, 0.1), Error);
  CHECK_THROWS_AS(eps_sample_size(0.2, 1.0, 0.1, 1.5), Error);

  auto gen = rng::Stream::from(127, 3);
  std::vector<double> coords{0.0, 0.0, 1.0, 1.0};
  for (int i = 0; i < 196; ++i) coords.push_back(gen.next_unit());
  PointSet P(2, std::move(coords));  // enclosing cube side exactly 1
  REQUIRE(P.enclosing_cube().side == 1.0);
  MergeReduceResult r = merge_reduce_eps(P, 0.2, 0.1, kTriangle, 5);
  CHECK(r.target == 79);
  CHECK_FALSE(r.truncated);
  CHECK(r.sample.size() == 79);

  MergeReduceResult tiny = merge_reduce_eps(uniform_points(8, 2, 128), 0.01, 0.1, kTriangle, 5);
  CHECK(tiny.truncated);
}

TEST_CASE("kernel sample error matches direct density differences") {
  PointSet P = uniform_points(30, 2, 129);
  std::vector<std::size_t> idx(10);
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i * 3;
  PointSet Q = P.subset(idx);
  double w = 0.25;

  std::vector<SmoothedRange> ranges;
  std::vector<std::vector<double>> centers;
  auto gen = rng::Stream::from(130, 5);
  for (int k = 0; k < 12; ++k) {
    centers.push_back({gen.next_unit(), gen.next_unit()});
    ranges.emplace_back(PointCentered{centers.back(), false}, w, kEpan);
  }
  EvaluationNet net = EvaluationNet::explicit_ranges(std::move(ranges));
  SupResult res = eps_sample_error(P, Q, net);

  double best = 0.0;
  for (const auto& x : centers)
    best = std::max(best, std::abs(kde(P, x, w, kEpan) - kde(Q, x, w, kEpan)));
  CHECK(res.value == Approx(best).epsilon(1e-12).scale(1.0));
}

TEST_CASE("degenerate nets and mismatched inputs are rejected") {
  CHECK_THROWS_WITH_AS(EvaluationNet::explicit_ranges({}),
                       doctest::Contains("at least one range"), Error);

  PointSet P = uniform_points(6, 2, 131);
  Matching M = min_cost_matching(P, MatchMode::Exact);
  Coloring chi = color_from_matching(M, 1);
  EvaluationNet empty = EvaluationNet::directional(2, {{1.0, 0.0}}, {{}}, 0.1,
                                                   kTriangle, NetMode::CriticalOffsets);
  CHECK_THROWS_WITH_AS(disc_sup(P, chi, empty), doctest::Contains("empty"), Error);

  PointSet P3 = uniform_points(6, 3, 132);
  EvaluationNet net = build_evaluation_net(P, 0.1, kTriangle, 8, NetMode::CriticalOffsets);
  CHECK_THROWS_WITH_AS(eps_sample_error(P3, P3, net), doctest::Contains("dimension"),
                       Error);
  CHECK_THROWS_AS(build_evaluation_net(P, 0.1, kTriangle, 0, NetMode::CriticalOffsets),
                  Error);
  CHECK_THROWS_AS(build_evaluation_net(P, -0.1, kTriangle, 4, NetMode::CriticalOffsets),
                  Error);
}
