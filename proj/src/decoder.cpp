// Copyright 2026 The foldqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <climits>
#include <limits>
#include <numeric>
#include <deque>
#include <queue>
#include <stdexcept>

#include "foldqec/noise.hpp"

namespace foldqec {

MatchingGraph::MatchingGraph(const StabilizerCode &code, char check_type) {
  for (int g = 0; g < static_cast<int>(code.generators.size()); ++g)
    if (code.gen_type[g] == check_type) gens_.push_back(g);
  const int m = nodes();
  const int d = code.d;
  checks_.assign(code.n, {});
  coef_.assign(code.n, {});
  for (int k = 0; k < m; ++k) {
    const PauliWord &g = code.generators[gens_[k]];
    for (int q = 0; q < code.n; ++q) {
      PauliWord e = check_type == 'Z' ? PauliWord::x_at(code.n, d, q) : PauliWord::z_at(code.n, d, q);
      int c = mod(commutator_exponent(g, e), d);
      if (c == 0) continue;
      if (std::gcd(c, d) != 1) throw std::invalid_argument("check coefficient is not a unit mod d");
      checks_[q].push_back(k);
      coef_[q].push_back(c);
    }
  }
  adj_.assign(m + 1, {});
  auto &adj = adj_;
  for (int q = 0; q < code.n; ++q) {
    const auto &c = checks_[q];
    if (c.size() > 2) throw std::invalid_argument("qudit touches more than two checks of one type");
    if (c.size() == 2) {
      adj[c[0]].push_back({c[1], q});
      adj[c[1]].push_back({c[0], q});
    } else if (c.size() == 1) {
      adj[c[0]].push_back({m, q});
      adj[m].push_back({c[0], q});
    }
  }
  dist_.assign(m + 1, std::vector<int>(m + 1, INT_MAX / 4));
  prev_node_.assign(m + 1, std::vector<int>(m + 1, -1));
  prev_qudit_.assign(m + 1, std::vector<int>(m + 1, -1));
  for (int s = 0; s <= m; ++s) {
    auto &dist = dist_[s];
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      // Paths never pass through the boundary.
      if (v == m && s != m) continue;
      for (auto [w, q] : adj[v]) {
        if (dist[w] <= dist[v] + 1) continue;
        dist[w] = dist[v] + 1;
        prev_node_[s][w] = v;
        prev_qudit_[s][w] = q;
        queue.push_back(w);
      }
    }
  }
}

std::vector<std::pair<int, int>> MatchingGraph::path(int a, int b) const {
  std::vector<std::pair<int, int>> out;
  if (dist_[a][b] >= INT_MAX / 4) throw std::logic_error("check graph is disconnected");
  for (int v = b; v != a; v = prev_node_[a][v]) out.push_back({prev_qudit_[a][v], v});
  std::reverse(out.begin(), out.end());
  return out;
}

int MatchingGraph::coefficient(int node, int q) const {
  for (std::size_t i = 0; i < checks_[q].size(); ++i)
    if (checks_[q][i] == node) return coef_[q][i];
  return 0;
}

namespace {

// Maximum-weight matching on a general graph by the primal-dual blossom
// method, O(n^3). Vertices are 1..n; weight 0 means no edge.
class Blossom {
 public:
  explicit Blossom(int n)
      : n_(n), nx_(n), g_(2 * n + 1, std::vector<Edge>(2 * n + 1)), lab_(2 * n + 1, 0),
        match_(2 * n + 1, 0), slack_(2 * n + 1, 0), st_(2 * n + 1, 0), pa_(2 * n + 1, 0),
        flo_from_(2 * n + 1, std::vector<int>(n + 1, 0)), S_(2 * n + 1, 0), vis_(2 * n + 1, 0),
        flo_(2 * n + 1) {
    for (int u = 1; u <= n; ++u)
      for (int v = 1; v <= n; ++v) g_[u][v] = {u, v, 0};
  }

  void set_weight(int u, int v, long long w) {
    g_[u][v].w = w;
    g_[v][u].w = w;
  }

  std::vector<int> solve() {
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flo_[u].clear();
    }
    long long wmax = 0;
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        flo_from_[u][v] = u == v ? u : 0;
        wmax = std::max(wmax, g_[u][v].w);
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = wmax;
    while (augment_once()) {
    }
    return std::vector<int>(match_.begin(), match_.begin() + n_ + 1);
  }

 private:
  struct Edge {
    int u = 0, v = 0;
    long long w = 0;
  };

  long long delta(const Edge &e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || delta(g_[u][x]) < delta(g_[slack_[x]][x])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (g_[u][x].w > 0 && st_[u] != x && S_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_)
      q_.push_back(x);
    else
      for (int y : flo_[x]) q_push(y);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int y : flo_[x]) set_st(y, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flo_[b].begin(), flo_[b].end(), xr) - flo_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flo_[b].begin() + 1, flo_[b].end());
      return static_cast<int>(flo_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u <= n_) return;
    Edge e = g_[u][v];
    int xr = flo_from_[u][e.u], pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flo_[u][i], flo_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flo_[u].begin(), flo_[u].begin() + pr, flo_[u].end());
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
    for (++stamp_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == stamp_) return u;
      vis_[u] = stamp_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= nx_ && st_[b]) ++b;
    if (b > nx_) ++nx_;
    lab_[b] = 0;
    S_[b] = 0;
    match_[b] = match_[lca];
    flo_[b].clear();
    flo_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flo_[b].push_back(x);
      flo_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flo_[b].begin() + 1, flo_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flo_[b].push_back(x);
      flo_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= nx_; ++x) g_[b][x].w = g_[x][b].w = 0;
    for (int x = 1; x <= n_; ++x) flo_from_[b][x] = 0;
    for (int xs : flo_[b]) {
      for (int x = 1; x <= nx_; ++x)
        if (g_[b][x].w == 0 || delta(g_[xs][x]) < delta(g_[b][x])) {
          g_[b][x] = g_[xs][x];
          g_[x][b] = g_[x][xs];
        }
      for (int x = 1; x <= n_; ++x)
        if (flo_from_[xs][x]) flo_from_[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int x : flo_[b]) set_st(x, x);
    int xr = flo_from_[b][g_[b][pa_[b]].u], pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flo_[b][i], xns = flo_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      S_[xs] = 1;
      S_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    S_[xr] = 1;
    pa_[xr] = pa_[b];
    for (std::size_t i = pr + 1; i < flo_[b].size(); ++i) {
      int xs = flo_[b][i];
      S_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge &e) {
    int u = st_[e.u], v = st_[e.v];
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

  bool augment_once() {
    std::fill(S_.begin() + 1, S_.begin() + nx_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + nx_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= nx_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        S_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;
    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (S_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (g_[u][v].w > 0 && st_[u] != st_[v]) {
            if (delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }
      long long d = LLONG_MAX;
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && S_[b] == 1) d = std::min(d, lab_[b] / 2);
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (S_[x] == -1)
            d = std::min(d, delta(g_[slack_[x]][x]));
          else if (S_[x] == 0)
            d = std::min(d, delta(g_[slack_[x]][x]) / 2);
        }
      for (int u = 1; u <= n_; ++u) {
        if (S_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (S_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b) {
          if (S_[b] == 0)
            lab_[b] += d * 2;
          else if (S_[b] == 1)
            lab_[b] -= d * 2;
        }
      q_.clear();
      for (int x = 1; x <= nx_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && delta(g_[slack_[x]][x]) == 0)
          if (on_found_edge(g_[slack_[x]][x])) return true;
      for (int b = n_ + 1; b <= nx_; ++b)
        if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_, nx_;
  std::vector<std::vector<Edge>> g_;
  std::vector<long long> lab_;
  std::vector<int> match_, slack_, st_, pa_;
  std::vector<std::vector<int>> flo_from_;
  std::vector<int> S_, vis_;
  std::vector<std::vector<int>> flo_;
  std::deque<int> q_;
  int stamp_ = 0;
};

}  // namespace

std::vector<int> match_defects(const std::vector<std::vector<long>> &pair_cost,
                               const std::vector<long> &boundary_cost) {
  const int k = static_cast<int>(boundary_cost.size());
  std::vector<int> partner(k, -1);
  if (k == 0) return partner;
  long top = 0;
  for (int i = 0; i < k; ++i) {
    top = std::max(top, boundary_cost[i]);
    for (int j = 0; j < k; ++j) top = std::max(top, pair_cost[i][j]);
  }
  // Maximising (big - cost) over perfect matchings; big exceeds any total cost.
  // Defect i is vertex i + 1, its boundary copy is vertex k + i + 1.
  const long long big = static_cast<long long>(top + 1) * (k + 1);
  Blossom b(2 * k);
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      b.set_weight(i + 1, j + 1, big - pair_cost[i][j]);
      b.set_weight(k + i + 1, k + j + 1, big);
    }
    b.set_weight(i + 1, k + i + 1, big - boundary_cost[i]);
  }
  auto mate = b.solve();
  for (int i = 0; i < k; ++i) {
    int m = mate[i + 1];
    if (m == 0) throw std::logic_error("matching left a defect unmatched");
    partner[i] = m <= k ? m - 1 : -1;
    if (partner[i] < 0 && m != k + i + 1) throw std::logic_error("defect matched to a foreign boundary copy");
  }
  return partner;
}

struct Decoder::Work {
  const MatchingGraph *graph = nullptr;
  char error_type = 'X';
  int d = 2;
  // residual[t][node]
  std::vector<std::vector<int>> r;
  // Edge weights: space[t][q] and time[t][node] (between rounds t and t+1).
  std::vector<std::vector<long>> space_w, time_w;
  // Edges used an odd number of times by the last stage.
  std::vector<std::vector<char>> space_used, time_used;
  PauliWord correction;
};

Decoder::Decoder(const StabilizerCode &code)
    : code_(&code), zgraph_(code, 'Z'), xgraph_(code, 'X') {}

Decoder::Work Decoder::make_work(const SyndromeHistory &h, char error_type) const {
  Work w;
  w.graph = error_type == 'X' ? &zgraph_ : &xgraph_;
  w.error_type = error_type;
  w.d = code_->d;
  w.correction = PauliWord(code_->n, code_->d);
  auto ev = h.events();
  for (const auto &row : ev) {
    if (static_cast<int>(row.size()) != static_cast<int>(code_->generators.size()))
      throw ShapeError("syndrome row does not match the generator count");
    std::vector<int> r;
    for (int g : w.graph->generators()) r.push_back(mod(row[g], w.d));
    w.r.push_back(std::move(r));
  }
  const int T = static_cast<int>(w.r.size());
  w.space_w.assign(T, std::vector<long>(code_->n, kUnitWeight));
  w.time_w.assign(T, std::vector<long>(w.graph->nodes(), kUnitWeight));
  w.space_used.assign(T, std::vector<char>(code_->n, 0));
  w.time_used.assign(T, std::vector<char>(w.graph->nodes(), 0));
  return w;
}

void Decoder::stage(Work &w, int unit) const {
  const MatchingGraph &G = *w.graph;
  const int d = w.d;
  const int m = G.nodes();
  const int T = static_cast<int>(w.r.size());
  const int B = T * m;  // shared boundary node
  std::vector<int> defects;  // space-time node ids t * m + k
  for (int t = 0; t < T; ++t)
    for (int k = 0; k < m; ++k)
      if ((w.r[t][k] / unit) % 2 == 1) defects.push_back(t * m + k);
  for (auto &row : w.space_used) std::fill(row.begin(), row.end(), 0);
  for (auto &row : w.time_used) std::fill(row.begin(), row.end(), 0);
  const int n = static_cast<int>(defects.size());
  if (n == 0) return;

  // Edge into a node: kind 0 = space (layer, qudit), kind 1 = time (lower layer, node).
  struct Step {
    int prev = -1, kind = 0, a = 0, b = 0;
  };
  const long inf = std::numeric_limits<long>::max() / 4;
  std::vector<std::vector<long>> dist(n);
  std::vector<std::vector<Step>> via(n);
  for (int i = 0; i < n; ++i) {
    auto &dd = dist[i];
    auto &vv = via[i];
    dd.assign(B + 1, inf);
    vv.assign(B + 1, {});
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dd[defects[i]] = 0;
    pq.push({0, defects[i]});
    auto relax = [&](int from, int to, long wt, Step st) {
      if (dd[from] + wt < dd[to]) {
        dd[to] = dd[from] + wt;
        st.prev = from;
        vv[to] = st;
        pq.push({dd[to], to});
      }
    };
    while (!pq.empty()) {
      auto [du, u] = pq.top();
      pq.pop();
      if (du != dd[u] || u == B) continue;
      int t = u / m, k = u % m;
      for (auto [o, q] : G.neighbours(k)) relax(u, o == m ? B : t * m + o, w.space_w[t][q], {-1, 0, t, q});
      if (t + 1 < T) relax(u, u + m, w.time_w[t][k], {-1, 1, t, k});
      if (t > 0) relax(u, u - m, w.time_w[t - 1][k], {-1, 1, t - 1, k});
    }
  }
  std::vector<std::vector<long>> pc(n, std::vector<long>(n, 0));
  std::vector<long> bc(n);
  for (int i = 0; i < n; ++i) {
    bc[i] = dist[i][B];
    for (int j = 0; j < n; ++j) pc[i][j] = dist[i][defects[j]];
    if (bc[i] >= inf) throw std::logic_error("defect cannot reach the boundary");
  }
  auto partner = match_defects(pc, bc);

  // Every hypothesised error carries `unit`; its syndrome is removed from the residual.
  auto apply = [&](const Step &st) {
    if (st.kind == 0) {
      int t = st.a, q = st.b;
      for (int k : G.checks_of()[q])
        w.r[t][k] = mod(w.r[t][k] - static_cast<long long>(G.coefficient(k, q)) * unit, d);
      if (w.error_type == 'X')
        w.correction.set_x(q, w.correction.x(q) - unit);
      else
        w.correction.set_z(q, w.correction.z(q) - unit);
      w.space_used[t][q] ^= 1;
    } else {
      int t = st.a, k = st.b;
      w.r[t][k] = mod(w.r[t][k] - unit, d);
      w.r[t + 1][k] = mod(w.r[t + 1][k] + unit, d);
      w.time_used[t][k] ^= 1;
    }
  };
  for (int i = 0; i < n; ++i) {
    int j = partner[i];
    if (j >= 0 && j < i) continue;
    for (int v = j < 0 ? B : defects[j]; v != defects[i]; v = via[i][v].prev) apply(via[i][v]);
  }
  for (const auto &row : w.r)
    for (int v : row)
      if ((v / unit) % 2 != 0 || v % unit != 0) throw std::logic_error("matching stage left an odd residual");
}

void Decoder::reweight(Work &w) const {
  // A parity-stage mistake shows up as X^2 (Z^2) residue along its own paths,
  // so the second stage treats those edges as more likely.
  for (std::size_t t = 0; t < w.r.size(); ++t) {
    for (std::size_t q = 0; q < w.space_w[t].size(); ++q)
      w.space_w[t][q] = w.space_used[t][q] ? kUsedWeight : kUnitWeight;
    for (std::size_t k = 0; k < w.time_w[t].size(); ++k)
      w.time_w[t][k] = w.time_used[t][k] ? kUsedWeight : kUnitWeight;
  }
}

std::vector<std::vector<int>> Decoder::parity_stage_residual(const SyndromeHistory &h,
                                                             char error_type) const {
  Work w = make_work(h, error_type);
  stage(w, 1);
  return w.r;
}

PauliWord Decoder::decode(const SyndromeHistory &h) const {
  const int d = code_->d;
  if (d != 2 && d != 4) throw std::invalid_argument("decoding supports d = 2 and d = 4 only");
  if (h.d != d) throw ShapeError("history dimension does not match the code");
  PauliWord corr(code_->n, d);
  for (char type : {'X', 'Z'}) {
    Work w = make_work(h, type);
    stage(w, 1);
    if (d == 4) {
      if (reweight_) reweight(w);
      stage(w, 2);
    }
    for (const auto &row : w.r)
      for (int v : row)
        if (v != 0) throw std::logic_error("decoder correction leaves a syndrome");
    corr *= w.correction;
  }
  return corr.without_phase();
}

PauliWord decode(const SyndromeHistory &h, const StabilizerCode &code) {
  return Decoder(code).decode(h);
}

}  // namespace foldqec
