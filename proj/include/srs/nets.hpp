#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "srs/discrepancy.hpp"
#include "srs/geometry.hpp"
#include "srs/parallel.hpp"

namespace srs {

// First range (in net order) that defeats the verified condition.
struct NetWitness {
  std::size_t net_index = 0;
  double sde_p = 0.0;        // data-side smoothed density, >= eps by selection
  double best_value_q = 0.0; // max_{q in Q} v_h(q); 0 when Q is empty
  double sde_q = 0.0;        // sample-side smoothed density; 0 when Q is empty
  SmoothedRange range;
};

// Verdict of one verification sweep. Both conditions are evaluated on the
// same pass; the witness belongs to the condition the invoked operation
// verifies and is present exactly when that flag is false.
struct NetReport {
  double eps = 0.0;
  double tau = 0.0;
  bool is_net = true;
  bool is_hitting_set = true;
  std::optional<NetWitness> witness;
};

// Over all net ranges with sde_P(h) >= eps, requires some q in Q with
// v_h(q) >= tau.
NetReport verify_eps_tau_net(const PointSet& P, const PointSet& Q, double eps,
                             double tau, const EvaluationNet& net,
                             Exec exec = Exec::Serial);

// Same sweep, stronger condition sde_Q(h) >= tau.
NetReport verify_hitting_set(const PointSet& P, const PointSet& Q, double eps,
                             double tau, const EvaluationNet& net,
                             Exec exec = Exec::Serial);

enum class RangeFamily { Halfspace, Ball };

// Sample size ceil((8 nu / (eps - tau)) * ln(8 / ((eps - tau) delta))) for a
// binary family of shatter dimension nu.
std::size_t eps_net_size(double eps_minus_tau, double delta, int shatter_dim);

struct LinkedNetResult {
  PointSet sample;
  RangeFamily family = RangeFamily::Halfspace;
  int shatter_dim = 0;     // nu of the linked binary family
  std::size_t target = 0;  // evaluated size formula
};

// Uniform i.i.d. sample of P sized so that, with probability >= 1 - delta, it
// is an (eps - tau)-net of the linked binary family (halfspaces: nu = d,
// balls: nu = d + 1) and hence an (eps, tau)-net of the smoothed family.
LinkedNetResult build_eps_net_linked(const PointSet& P, double eps, double tau,
                                     double delta, std::uint64_t seed,
                                     RangeFamily family = RangeFamily::Halfspace);

// Combinatorially distinct halfspace boundaries over `pts`. In R^2 each point
// pair yields 8 perturbed variants (both orientations, both sides, both
// single-point tilts), which realizes every halfspace-induced subset of a
// general-position set. In R^3 each non-degenerate triple yields 4 (every
// boundary plane with both orientations and shifts; per-vertex tilts are not
// enumerated, so not every membership combination appears).
std::vector<Halfspace> canonical_halfspaces(const PointSet& pts);

// max_h | P-fraction in h - Q-fraction in h | over all halfspaces, exact for
// points in general position (boundary memberships are toggled analytically).
double binary_sample_error(const PointSet& P, const PointSet& Q);

// Implication check: if the measured smoothed sample error is at most
// eps - tau, Q must verify as an (eps, tau)-hitting set.
struct SampleHittingReport {
  double sample_error = 0.0;
  double margin = 0.0;      // eps - tau
  bool applicable = false;  // sample_error <= margin
  bool holds = true;        // !applicable or the hitting check passed
  NetReport hitting;
};

SampleHittingReport check_sample_implies_hitting(const PointSet& P, const PointSet& Q,
                                                 double eps, double tau,
                                                 const EvaluationNet& net,
                                                 Exec exec = Exec::Serial);

// Linking check: the smoothed sample error of Q over the net must not exceed
// the binary halfspace sample error by more than the measurement tolerance.
struct LinkingReport {
  double smoothed_error = 0.0;
  double binary_error = 0.0;
  double tolerance = 0.0;
  bool holds = true;
};

LinkingReport check_linking_sample(const PointSet& P, const PointSet& Q, double w,
                                   const KernelProfile& profile,
                                   const EvaluationNet& net, double tolerance = 0.01,
                                   Exec exec = Exec::Serial);

}  // namespace srs
