#include "srs/nets.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "direval.hpp"
#include "srs/error.hpp"
#include "srs/rng.hpp"

namespace srs {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void check_eps_tau(double eps, double tau) {
  require(eps > 0.0 && eps < 1.0, "bad_params", "eps must lie in (0,1)");
  require(tau > 0.0, "bad_params", "tau must be positive");
  require(tau < eps, "bad_params", "tau must be smaller than eps");
}

std::vector<double> density_multipliers(const PointSet& P) {
  const double total = P.total_abs_weight();
  std::vector<double> mult(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) mult[i] = P.weight(i) / total;
  return mult;
}

// First range, in net order, that fails one condition, with the quantities
// observed there.
struct ConditionFail {
  std::size_t flat = kNone;
  double sde_p = 0.0;
  double best_v = 0.0;
  double sde_q = 0.0;
};

void keep_earlier(ConditionFail& into, const ConditionFail& from) {
  if (from.flat < into.flat) into = from;
}

struct SweepOutcome {
  ConditionFail net_fail;
  ConditionFail hit_fail;
};

// Evaluates both conditions over every net range with sde_P >= eps.
SweepOutcome sweep(const PointSet& P, const PointSet& Q, double eps, double tau,
                   const EvaluationNet& net, Exec exec) {
  require(net.size() > 0, "bad_net", "evaluation net is empty");
  require(net.dim() == P.dim(), "bad_net",
          "net dimension does not match point set");
  require(Q.empty() || Q.dim() == P.dim(), "bad_sample",
          "sample dimension does not match point set");
  const std::vector<double> mult_p = density_multipliers(P);
  const std::vector<double> mult_q =
      Q.empty() ? std::vector<double>{} : density_multipliers(Q);

  if (net.is_directional()) {
    const KernelProfile& profile = net.profile();
    const double w = net.width();
    const std::size_t n_dirs = net.n_directions();
    std::vector<SweepOutcome> per_dir(n_dirs);
    parallel_for(exec, static_cast<std::ptrdiff_t>(n_dirs), [&](std::ptrdiff_t jj) {
      const std::size_t j = static_cast<std::size_t>(jj);
      detail::DirEval ev_p(P, mult_p, net.direction(j));
      std::optional<detail::DirEval> ev_q;
      if (!Q.empty()) ev_q.emplace(Q, mult_q, net.direction(j));
      const std::vector<double>& offs = net.offsets(j);
      SweepOutcome local;
      for (std::size_t k = 0; k < offs.size(); ++k) {
        if (local.net_fail.flat != kNone && local.hit_fail.flat != kNone) break;
        const double o = offs[k];
        const double sp = ev_p.sum_at(o, profile, w);
        if (sp < eps) continue;
        // The profile is non-decreasing in the signed distance, so the
        // largest projection attains max_q v_h(q).
        const double bv =
            ev_q ? signed_profile_value(profile, ev_q->max_projection() - o, w)
                 : 0.0;
        const double sq = ev_q ? ev_q->sum_at(o, profile, w) : 0.0;
        if (bv < tau && local.net_fail.flat == kNone)
          local.net_fail = {net.flat_index(j, k), sp, bv, sq};
        if (sq < tau && local.hit_fail.flat == kNone)
          local.hit_fail = {net.flat_index(j, k), sp, bv, sq};
      }
      per_dir[j] = local;
    });
    SweepOutcome merged;
    for (const SweepOutcome& local : per_dir) {
      keep_earlier(merged.net_fail, local.net_fail);
      keep_earlier(merged.hit_fail, local.hit_fail);
    }
    return merged;
  }

  const std::size_t m = net.size();
  std::vector<double> sp(m), bv(m), sq(m);
  parallel_for(exec, static_cast<std::ptrdiff_t>(m), [&](std::ptrdiff_t rr) {
    const std::size_t r = static_cast<std::size_t>(rr);
    const SmoothedRange h = net.range(r);
    double s = 0.0;
    for (std::size_t i = 0; i < P.size(); ++i) s += mult_p[i] * h.eval(P.point(i));
    sp[r] = s;
    double best = 0.0;
    double t = 0.0;
    for (std::size_t q = 0; q < Q.size(); ++q) {
      const double v = h.eval(Q.point(q));
      best = std::max(best, v);
      t += mult_q[q] * v;
    }
    bv[r] = best;
    sq[r] = t;
  });
  SweepOutcome merged;
  for (std::size_t r = 0; r < m; ++r) {
    if (merged.net_fail.flat != kNone && merged.hit_fail.flat != kNone) break;
    if (sp[r] < eps) continue;
    if (bv[r] < tau && merged.net_fail.flat == kNone)
      merged.net_fail = {r, sp[r], bv[r], sq[r]};
    if (sq[r] < tau && merged.hit_fail.flat == kNone)
      merged.hit_fail = {r, sp[r], bv[r], sq[r]};
  }
  return merged;
}

NetReport make_report(const PointSet& P, const PointSet& Q, double eps,
                      double tau, const EvaluationNet& net, Exec exec,
                      bool witness_for_hitting) {
  check_eps_tau(eps, tau);
  const SweepOutcome out = sweep(P, Q, eps, tau, net, exec);
  NetReport report;
  report.eps = eps;
  report.tau = tau;
  report.is_net = out.net_fail.flat == kNone;
  report.is_hitting_set = out.hit_fail.flat == kNone;
  const ConditionFail& fail = witness_for_hitting ? out.hit_fail : out.net_fail;
  if (fail.flat != kNone) {
    report.witness = NetWitness{fail.flat, fail.sde_p, fail.best_v, fail.sde_q,
                                net.range(fail.flat)};
  }
  return report;
}

}  // namespace

NetReport verify_eps_tau_net(const PointSet& P, const PointSet& Q, double eps,
                             double tau, const EvaluationNet& net, Exec exec) {
  return make_report(P, Q, eps, tau, net, exec, false);
}

NetReport verify_hitting_set(const PointSet& P, const PointSet& Q, double eps,
                             double tau, const EvaluationNet& net, Exec exec) {
  return make_report(P, Q, eps, tau, net, exec, true);
}

std::size_t eps_net_size(double eps_minus_tau, double delta, int shatter_dim) {
  require(eps_minus_tau > 0.0 && eps_minus_tau < 1.0, "bad_size",
          "eps - tau must lie in (0,1)");
  require(delta > 0.0 && delta < 1.0, "bad_size", "delta must lie in (0,1)");
  require(shatter_dim >= 1, "bad_size", "shatter dimension must be positive");
  const double m = (8.0 * shatter_dim / eps_minus_tau) *
                   std::log(8.0 / (eps_minus_tau * delta));
  return static_cast<std::size_t>(std::ceil(m));
}

LinkedNetResult build_eps_net_linked(const PointSet& P, double eps, double tau,
                                     double delta, std::uint64_t seed,
                                     RangeFamily family) {
  check_eps_tau(eps, tau);
  require(delta > 0.0 && delta < 1.0, "bad_params", "delta must lie in (0,1)");
  require(!P.empty(), "bad_sample", "point set is empty");
  require(!P.has_weights(), "bad_sample",
          "net construction expects unweighted points");
  const int nu =
      family == RangeFamily::Ball ? P.dim() + 1 : P.dim();
  const std::size_t target = eps_net_size(eps - tau, delta, nu);
  rng::Stream gen = rng::Stream::from(seed, 1);
  std::vector<std::size_t> picks(target);
  for (std::size_t& i : picks)
    i = static_cast<std::size_t>(gen.next_below(P.size()));
  LinkedNetResult out{P.subset(picks), family, nu, target};
  return out;
}

namespace {

double coordinate_scale(const PointSet& pts) {
  double scale = 1.0;
  for (double c : pts.coords()) scale = std::max(scale, std::abs(c));
  return scale;
}

std::vector<double> unit(std::vector<double> v) {
  double len = 0.0;
  for (double c : v) len += c * c;
  len = std::sqrt(len);
  for (double& c : v) c /= len;
  return v;
}

// Tilt angle used to split a boundary pair into its two one-point-in
// variants. Small enough to leave every point farther than ~1e-7 of the
// diameter from the boundary line on its original side.
constexpr double kTilt = 1e-7;

void append_pair_halfspaces(std::span<const double> a, std::span<const double> b,
                            double eta, std::vector<Halfspace>& out) {
  const double dx = b[0] - a[0];
  const double dy = b[1] - a[1];
  const double len = std::hypot(dx, dy);
  if (len < eta) return;
  const std::vector<double> u = {-dy / len, dx / len};
  const std::vector<double> v = {dx / len, dy / len};
  const std::vector<double> mid = {0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1])};
  for (double sign : {1.0, -1.0}) {
    const std::vector<double> n = {sign * u[0], sign * u[1]};
    const double o = n[0] * a[0] + n[1] * a[1];
    out.push_back({n, o - eta});
    out.push_back({n, o + eta});
    for (double tilt : {kTilt, -kTilt}) {
      const std::vector<double> nt =
          unit({sign * u[0] + tilt * v[0], sign * u[1] + tilt * v[1]});
      out.push_back({nt, nt[0] * mid[0] + nt[1] * mid[1]});
    }
  }
}

void append_triple_halfspaces(std::span<const double> a, std::span<const double> b,
                              std::span<const double> c, double eta,
                              std::vector<Halfspace>& out) {
  const double e1[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
  const double e2[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
  std::vector<double> n = {e1[1] * e2[2] - e1[2] * e2[1],
                           e1[2] * e2[0] - e1[0] * e2[2],
                           e1[0] * e2[1] - e1[1] * e2[0]};
  const double len = std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]);
  if (len < eta * eta) return;
  for (double& x : n) x /= len;
  const double o = n[0] * a[0] + n[1] * a[1] + n[2] * a[2];
  out.push_back({n, o - eta});
  out.push_back({n, o + eta});
  const std::vector<double> neg = {-n[0], -n[1], -n[2]};
  out.push_back({neg, -o - eta});
  out.push_back({neg, -o + eta});
}

}  // namespace

std::vector<Halfspace> canonical_halfspaces(const PointSet& pts) {
  const int d = pts.dim();
  require(d == 2 || d == 3, "bad_dim",
          "canonical halfspaces are implemented for dimensions 2 and 3");
  require(pts.size() >= 2, "bad_sample", "need at least two points");
  const double eta = 1e-9 * coordinate_scale(pts);
  std::vector<Halfspace> out;
  if (d == 2) {
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        append_pair_halfspaces(pts.point(i), pts.point(j), eta, out);
  } else {
    require(pts.size() >= 3, "bad_sample", "need at least three points");
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        for (std::size_t k = j + 1; k < pts.size(); ++k)
          append_triple_halfspaces(pts.point(i), pts.point(j), pts.point(k),
                                   eta, out);
  }
  require(!out.empty(), "bad_sample",
          "all point tuples are degenerate, no halfspace boundaries");
  return out;
}

namespace {

// Extreme |signed mass| over every halfspace whose boundary passes through
// the given point tuple, together with the complementary halfspace. Points
// within `tol` of the boundary can land on either side, so their positive
// and negative multipliers are toggled to the extremes.
void consider_boundary(const std::vector<double>& proj, double o, double tol,
                       const std::vector<double>& mult, double total,
                       double& best) {
  double base = 0.0;
  double pos = 0.0;
  double neg = 0.0;
  for (std::size_t i = 0; i < proj.size(); ++i) {
    const double s = proj[i] - o;
    if (s > tol) {
      base += mult[i];
    } else if (s >= -tol) {
      if (mult[i] > 0.0) pos += mult[i];
      else neg += mult[i];
    }
  }
  for (double x : {base + pos, base + neg}) {
    best = std::max(best, std::abs(x));
    best = std::max(best, std::abs(total - x));
  }
}

}  // namespace

double binary_sample_error(const PointSet& P, const PointSet& Q) {
  require(!P.empty() && !Q.empty(), "bad_sample",
          "point sets must be non-empty");
  require(P.dim() == Q.dim(), "bad_dim", "dimensions do not match");
  const int d = P.dim();
  require(d == 2 || d == 3, "bad_dim",
          "binary sample error is implemented for dimensions 2 and 3");
  const PointSet joint = PointSet::concat(P, Q);
  std::vector<double> mult(joint.size());
  const double wp = P.total_abs_weight();
  const double wq = Q.total_abs_weight();
  for (std::size_t i = 0; i < P.size(); ++i) mult[i] = P.weight(i) / wp;
  for (std::size_t i = 0; i < Q.size(); ++i)
    mult[P.size() + i] = -Q.weight(i) / wq;
  double total = 0.0;
  for (double m : mult) total += m;

  const double tol = 1e-9 * coordinate_scale(joint);
  const std::size_t n = joint.size();
  double best = std::abs(total);  // the all-containing halfspace
  std::vector<double> proj(n);
  auto run = [&](const std::vector<double>& normal, double offset) {
    for (std::size_t i = 0; i < n; ++i) {
      auto p = joint.point(i);
      double t = 0.0;
      for (int a = 0; a < d; ++a) t += normal[a] * p[a];
      proj[i] = t;
    }
    consider_boundary(proj, offset, tol, mult, total, best);
  };

  if (d == 2) {
    for (std::size_t i = 0; i < n; ++i) {
      auto a = joint.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        auto b = joint.point(j);
        const double dx = b[0] - a[0];
        const double dy = b[1] - a[1];
        const double len = std::hypot(dx, dy);
        if (len < tol) continue;
        const std::vector<double> normal = {-dy / len, dx / len};
        run(normal, normal[0] * a[0] + normal[1] * a[1]);
      }
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      auto a = joint.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        auto b = joint.point(j);
        const double e1[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
        for (std::size_t k = j + 1; k < n; ++k) {
          auto c = joint.point(k);
          const double e2[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
          std::vector<double> normal = {e1[1] * e2[2] - e1[2] * e2[1],
                                        e1[2] * e2[0] - e1[0] * e2[2],
                                        e1[0] * e2[1] - e1[1] * e2[0]};
          const double len = std::sqrt(normal[0] * normal[0] +
                                       normal[1] * normal[1] +
                                       normal[2] * normal[2]);
          if (len < tol * tol) continue;
          for (double& x : normal) x /= len;
          run(normal, normal[0] * a[0] + normal[1] * a[1] + normal[2] * a[2]);
        }
      }
    }
  }
  return best;
}

SampleHittingReport check_sample_implies_hitting(const PointSet& P,
                                                 const PointSet& Q, double eps,
                                                 double tau,
                                                 const EvaluationNet& net,
                                                 Exec exec) {
  check_eps_tau(eps, tau);
  SampleHittingReport report;
  report.margin = eps - tau;
  report.sample_error = Q.empty() ? 1.0 : eps_sample_error(P, Q, net, exec).value;
  report.applicable = report.sample_error <= report.margin;
  report.hitting = verify_hitting_set(P, Q, eps, tau, net, exec);
  report.holds = !report.applicable || report.hitting.is_hitting_set;
  return report;
}

LinkingReport check_linking_sample(const PointSet& P, const PointSet& Q,
                                   double w, const KernelProfile& profile,
                                   const EvaluationNet& net, double tolerance,
                                   Exec exec) {
  require(w > 0.0, "bad_params", "width must be positive");
  require(tolerance >= 0.0, "bad_params", "tolerance must be non-negative");
  if (net.is_directional()) {
    require(net.width() == w && net.profile().kind == profile.kind, "bad_net",
            "net parameters must match the smoothed family");
  }
  LinkingReport report;
  report.tolerance = tolerance;
  report.smoothed_error = eps_sample_error(P, Q, net, exec).value;
  report.binary_error = binary_sample_error(P, Q);
  report.holds = report.smoothed_error <= report.binary_error + tolerance;
  return report;
}

}  // namespace srs
