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
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "foldqec/scheduler.hpp"

namespace foldqec {

std::vector<int> SwapSchedule::placement(int step) const {
  std::vector<int> at = start;
  std::map<int, int> who;
  for (size_t q = 0; q < at.size(); ++q) who[at[q]] = static_cast<int>(q);
  for (int t = 0; t < step && t < depth(); ++t) {
    for (const auto &[a, b] : steps[t]) {
      auto ia = who.find(a), ib = who.find(b);
      int qa = ia == who.end() ? -1 : ia->second;
      int qb = ib == who.end() ? -1 : ib->second;
      who.erase(a);
      who.erase(b);
      if (qa >= 0) {
        at[qa] = b;
        who[b] = qa;
      }
      if (qb >= 0) {
        at[qb] = a;
        who[a] = qb;
      }
    }
  }
  return at;
}

std::vector<int> SwapSchedule::path(int q) const {
  std::vector<int> out;
  for (int t = 0; t <= depth(); ++t) out.push_back(placement(t)[q]);
  return out;
}

namespace {

int manhattan(const std::array<int, 2> &a, const std::array<int, 2> &b) {
  return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]);
}

}  // namespace

SwapSchedule fold_schedule(int D) {
  auto code = build_square(D, 2);
  auto layout = assign_bipartition(code, fold_square(code));
  // The reversed-parity orientation is the one a 6D-5 path lands on; the
  // first round after folding runs the reversed circuit.
  auto folded = syndrome_circuit_folded(code, layout, Parity::Reversed);
  const int M = 2 * D - 2;
  const int W = 2 * M + 2, H = M + 1;
  const int T = 6 * D - 5;
  const int n = code.n;
  SwapSchedule s;
  s.D = D;
  for (int y = 0; y < H; ++y)
    for (int x = 0; x < W; ++x) s.sites.push_back({x, y});
  auto site = [&](int x, int y) { return y * W + x; };
  for (int q = 0; q < n; ++q) {
    const Vec2 &p = code.qudit_pos[q];
    const auto &c = folded.circuit.coords[folded.data_site[q]];
    s.start.push_back(site(2 * p[0], p[1]));
    s.target.push_back(site(c[0], c[1]));
  }
  auto dist = [&](int a, int b) { return manhattan(s.sites[a], s.sites[b]); };

  // Prioritized space-time planning. A qudit being planned may push a
  // parked, not yet planned qudit one site back; the pushed qudit keeps
  // that forced prefix when its own turn comes.
  const int S = W * H;
  std::vector<std::vector<int>> pos(T + 1, std::vector<int>(S, -1));
  std::vector<std::vector<char>> touch(T, std::vector<char>(S, 0));
  std::vector<std::vector<int>> forced(n);
  for (int q = 0; q < n; ++q) forced[q] = {s.start[q]};
  std::vector<char> planned(n, 0);
  auto upos = [&](int r, int t) {
    const auto &f = forced[r];
    return t < static_cast<int>(f.size()) ? f[t] : f.back();
  };
  struct Parent {
    int site = -1, push = -1;
    bool seen = false;
  };
  const std::array<std::array<int, 2>, 5> moves{{{0, 0}, {1, 0}, {0, -1}, {0, 1}, {-1, 0}}};
  std::vector<std::vector<int>> U(T + 1, std::vector<int>(S, -1));
  for (int round = 0; round < n; ++round) {
    int q = -1, q_need = -1;
    for (int r = 0; r < n; ++r) {
      if (planned[r]) continue;
      int need = static_cast<int>(forced[r].size()) - 1 + dist(forced[r].back(), s.target[r]);
      if (need > q_need) {
        q = r;
        q_need = need;
      }
    }
    for (int t = 0; t <= T; ++t) {
      std::fill(U[t].begin(), U[t].end(), -1);
      for (int r = 0; r < n; ++r)
        if (!planned[r] && r != q) U[t][upos(r, t)] = r;
    }
    std::vector<int> lastocc(S, -1);
    for (int t = 0; t <= T; ++t)
      for (int a = 0; a < S; ++a)
        if (pos[t][a] >= 0) lastocc[a] = t;
    for (int t = 0; t < T; ++t)
      for (int a = 0; a < S; ++a)
        if (touch[t][a]) lastocc[a] = std::max(lastocc[a], t + 1);

    const int k = static_cast<int>(forced[q].size()) - 1;
    const int goal = s.target[q];
    std::vector<Parent> parent((T + 1) * S);
    std::deque<std::pair<int, int>> queue{{forced[q].back(), k}};
    parent[k * S + forced[q].back()].seen = true;
    bool found = false;
    while (!queue.empty()) {
      auto [a, t] = queue.front();
      queue.pop_front();
      if (t == T) {
        if (a == goal) {
          found = true;
          break;
        }
        continue;
      }
      if (dist(a, goal) > T - t) continue;
      const auto &ca = s.sites[a];
      for (const auto &dv : moves) {
        int bx = ca[0] + dv[0], by = ca[1] + dv[1];
        if (bx < 0 || bx >= W || by < 0 || by >= H) continue;
        int b = site(bx, by);
        Parent &pb = parent[(t + 1) * S + b];
        if (pb.seen || pos[t + 1][b] >= 0) continue;
        int push = -1;
        if (b == a) {
          if (U[t + 1][b] >= 0) continue;
        } else {
          if (pos[t][b] >= 0 || touch[t][a] || touch[t][b]) continue;
          if (U[t + 1][b] >= 0 || U[t][b] >= 0) {
            int r = U[t][b];
            if (r < 0 || U[t + 1][b] != r || static_cast<int>(forced[r].size()) - 1 > t) continue;
            if (U[t + 1][a] >= 0 || lastocc[a] > t) continue;
            if (dist(a, s.target[r]) > T - t - 1) continue;
            push = r;
          } else if (U[t + 1][a] >= 0) {
            continue;
          }
        }
        pb = {a, push, true};
        queue.push_back({b, t + 1});
      }
    }
    if (!found) throw std::runtime_error("no folding schedule within 6D-5 steps");
    std::vector<int> path(T + 1);
    std::vector<std::array<int, 3>> pushes;
    for (int t = T, a = goal; t >= k; --t) {
      path[t] = a;
      if (t == k) break;
      const Parent &pa = parent[t * S + a];
      if (pa.push >= 0) pushes.push_back({pa.push, t - 1, pa.site});
      a = pa.site;
    }
    for (int t = 0; t < k; ++t) path[t] = forced[q][t];
    for (int t = 0; t <= T; ++t) {
      pos[t][path[t]] = q;
      if (t < T && path[t + 1] != path[t]) touch[t][path[t]] = touch[t][path[t + 1]] = 1;
    }
    planned[q] = 1;
    for (const auto &[r, t, a] : pushes) {
      auto &f = forced[r];
      while (static_cast<int>(f.size()) <= t) f.push_back(f.back());
      f.push_back(a);
    }
  }
  std::vector<int> at = s.start;
  for (int t = 0; t < T; ++t) {
    std::vector<std::pair<int, int>> swaps;
    std::vector<int> next(n);
    for (int a = 0; a < S; ++a)
      if (pos[t + 1][a] >= 0) next[pos[t + 1][a]] = a;
    for (int q = 0; q < n; ++q) {
      if (next[q] == at[q]) continue;
      std::pair<int, int> e{std::min(at[q], next[q]), std::max(at[q], next[q])};
      if (std::find(swaps.begin(), swaps.end(), e) == swaps.end()) swaps.push_back(e);
    }
    at = next;
    s.steps.push_back(swaps);
  }
  return s;
}

std::vector<int> fold_rounds(const SwapSchedule &s, int per_round) {
  if (per_round < 1) throw std::invalid_argument("per_round must be positive");
  std::vector<int> cuts;
  std::map<int, int> moves;  // qudit -> swaps since the last cut
  for (int t = 0; t < s.depth(); ++t) {
    auto at = s.placement(t);
    std::map<int, int> who;
    for (size_t q = 0; q < at.size(); ++q) who[at[q]] = static_cast<int>(q);
    std::vector<int> movers;
    for (const auto &[a, b] : s.steps[t]) {
      for (int site : {a, b}) {
        auto it = who.find(site);
        if (it != who.end()) movers.push_back(it->second);
      }
    }
    bool full = false;
    for (int q : movers) full = full || moves[q] + 1 > per_round;
    if (full) {
      cuts.push_back(t);
      moves.clear();
    }
    for (int q : movers) ++moves[q];
  }
  cuts.push_back(s.depth());
  return cuts;
}

std::string check_fold_schedule(const SwapSchedule &s) {
  for (int t = 0; t < s.depth(); ++t) {
    std::set<int> used;
    for (const auto &[a, b] : s.steps[t]) {
      if (!used.insert(a).second || !used.insert(b).second) {
        return "step " + std::to_string(t) + " reuses a site";
      }
      if (manhattan(s.sites[a], s.sites[b]) != 1) return "step " + std::to_string(t) + " has a non-local swap";
    }
  }
  if (s.placement(s.depth()) != s.target) return "final placement differs from the folded layout";
  return "";
}

}  // namespace foldqec
