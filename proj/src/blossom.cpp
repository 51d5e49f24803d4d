// General-graph maximum weight matching, O(n^3): the primal-dual blossom
// scheme with lazy slack tracking (the layout widespread in olympiad
// notebooks, e.g. the UOJ #81 reference solution). Minimization is handled
// by the cost-to-weight flip at the bottom.
#include <algorithm>
#include <deque>
#include <limits>
#include <vector>

#include "srs/error.hpp"
#include "srs/matching.hpp"

namespace srs::detail {
namespace {

using ll = long long;

struct Edge {
  int u = 0, v = 0;
  ll w = 0;
};

class Blossom {
 public:
  explicit Blossom(int n) : n_(n), m_(2 * n + 1) {
    g_.assign(static_cast<std::size_t>(m_) * m_, Edge{});
    lab_.assign(m_, 0);
    match_.assign(m_, 0);
    slack_.assign(m_, 0);
    st_.assign(m_, 0);
    pa_.assign(m_, 0);
    S_.assign(m_, 0);
    vis_.assign(m_, 0);
    flower_.assign(m_, {});
    flower_from_.assign(static_cast<std::size_t>(m_) * (n_ + 1), 0);
  }

  void set_weight(int u, int v, ll w) {
    at(u, v) = Edge{u, v, w};
    at(v, u) = Edge{v, u, w};
  }

  // Runs the augmenting phases; returns mate per vertex (1-based, 0 = none).
  std::vector<int> solve() {
    std::fill(match_.begin(), match_.end(), 0);
    n_x_ = n_;
    ll w_max = 0;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        from(u, v) = (u == v) ? u : 0;
        w_max = std::max(w_max, at(u, v).w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (phase()) {
    }
    return {match_.begin(), match_.begin() + n_ + 1};
  }

 private:
  static constexpr ll kInf = std::numeric_limits<ll>::max() / 4;

  Edge& at(int u, int v) { return g_[static_cast<std::size_t>(u) * m_ + v]; }
  int& from(int b, int x) { return flower_from_[static_cast<std::size_t>(b) * (n_ + 1) + x]; }

  ll e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - e.w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(at(u, x)) < e_delta(at(slack_[x], x))) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (at(u, x).w > 0 && st_[u] != x && S_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
      return;
    }
    for (int t : flower_[x]) q_push(t);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int t : flower_[x]) set_st(t, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) -
                              flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = at(u, v).v;
    if (u <= n_) return;
    Edge e = at(u, v);
    int xr = from(u, e.u);
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++lca_tick_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == lca_tick_) return u;
      vis_[u] = lca_tick_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    S_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) at(b, x).w = at(x, b).w = 0;
    for (int x = 1; x <= n_; ++x) from(b, x) = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (at(xs, x).w > 0 &&
            (at(b, x).w == 0 || e_delta(at(xs, x)) < e_delta(at(b, x)))) {
          at(b, x) = at(xs, x);
          at(x, b) = at(x, xs);
        }
      for (int x = 1; x <= n_; ++x)
        if (from(xs, x)) from(b, x) = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int t : flower_[b]) set_st(t, t);
    int xr = from(b, at(b, pa_[b]).u);
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i];
      int xns = flower_[b][i + 1];
      pa_[xs] = at(xns, xs).u;
      S_[xs] = 1;
      S_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    S_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = static_cast<std::size_t>(pr) + 1; i < flower_[b].size(); ++i) {
      int xs = flower_[b][i];
      S_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st_[e.u];
    int v = st_[e.v];
    if (S_[v] == -1) {
      pa_[v] = e.u;
      S_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = slack_[nu] = 0;
      S_[nu] = 0;
      q_push(nu);
    } else if (S_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool phase() {
    std::fill(S_.begin() + 1, S_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        S_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    long rounds = 0;
    const long round_cap = 200L * n_ + 10000;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (S_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (at(u, v).w > 0 && st_[u] != st_[v]) {
            if (e_delta(at(u, v)) == 0) {
              if (on_found_edge(at(u, v))) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      require(++rounds <= round_cap, "matching_internal",
              "dual adjustment failed to converge");
      ll d = kInf;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && S_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (S_[x] == -1)
            d = std::min(d, e_delta(at(slack_[x], x)));
          else if (S_[x] == 0)
            d = std::min(d, e_delta(at(slack_[x], x)) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (S_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (S_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b) {
          if (S_[b] == 0)
            lab_[b] += d * 2;
          else if (S_[b] == 1)
            lab_[b] -= d * 2;
        }
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
            e_delta(at(slack_[x], x)) == 0) {
          if (on_found_edge(at(slack_[x], x))) return true;
        }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_, m_, n_x_ = 0;
  int lca_tick_ = 0;
  std::vector<Edge> g_;
  std::vector<ll> lab_;
  std::vector<int> match_, slack_, st_, pa_, S_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<int> flower_from_;
  std::deque<int> q_;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(int n, const std::vector<ll>& cost) {
  require(n >= 2 && n % 2 == 0, "bad_matching_input", "even vertex count required");
  require(cost.size() == static_cast<std::size_t>(n) * n, "bad_matching_input",
          "cost matrix size mismatch");
  ll max_cost = 0;
  for (ll c : cost) {
    require(c >= 0, "bad_matching_input", "costs must be non-negative");
    max_cost = std::max(max_cost, c);
  }
  require(max_cost <= (ll{1} << 56), "bad_matching_input", "costs too large");

  // Flip to maximization; doubling keeps the duals integral. Every weight is
  // >= 2 so a maximum weight matching is perfect, and among perfect matchings
  // it minimizes the original cost.
  Blossom solver(n);
  for (int u = 1; u <= n; ++u)
    for (int v = 1; v <= n; ++v)
      if (u != v)
        solver.set_weight(u, v, 2 * (max_cost - cost[static_cast<std::size_t>(u - 1) * n + (v - 1)] + 1));
  auto mate1 = solver.solve();
  std::vector<int> mate(n, -1);
  for (int u = 1; u <= n; ++u) {
    require(mate1[u] != 0, "matching_internal", "matching is not perfect");
    mate[u - 1] = mate1[u] - 1;
  }
  for (int u = 0; u < n; ++u)
    require(mate[u] >= 0 && mate[u] < n && mate[mate[u]] == u && mate[u] != u,
            "matching_internal", "mate array inconsistent");
  return mate;
}

}  // namespace srs::detail
