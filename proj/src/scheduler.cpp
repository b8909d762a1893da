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

#include "foldqec/scheduler.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>

#include "foldqec/clifford.hpp"

namespace foldqec {

namespace {

int letter_of(const Vec2 &off) {
  if (off == Vec2{0, 1}) return 'N';
  if (off == Vec2{0, -1}) return 'S';
  if (off == Vec2{1, 0}) return 'E';
  if (off == Vec2{-1, 0}) return 'W';
  return 0;
}

GateApplication inverse(const GateApplication &g) {
  return GateApplication(g.kind, g.targets, -g.power);
}

bool is_prep(GateKind k) { return k == GateKind::PrepX || k == GateKind::PrepZ; }
bool is_meas(GateKind k) { return k == GateKind::MeasX || k == GateKind::MeasZ; }

// CX event measuring generator exponent e of the given type on data site q.
GateApplication syndrome_cx(char type, int anc, int q, int e) {
  if (type == 'X') return GateApplication(GateKind::CX, {anc, q}, -e);
  return GateApplication(GateKind::CX, {q, anc}, e);
}

Vec2 string_direction(const StabilizerCode &code, const PauliWord &w) {
  auto s = w.support();
  if (s.size() < 2) return {0, 0};
  Vec2 p0 = code.qudit_pos[s[0]], far = p0;
  int best = -1;
  for (int q : s) {
    Vec2 v = code.qudit_pos[q] - p0;
    int n2 = v[0] * v[0] + v[1] * v[1];
    if (n2 > best) {
      best = n2;
      far = code.qudit_pos[q];
    }
  }
  return far - p0;
}

// CX time assignment: every generator gets distinct times in 1..L for its
// events, no data qudit is touched twice in one layer, and overlapping X/Z
// generators keep one relative order on all shared qudits.
struct CxTask {
  int L = 4;
  std::vector<std::vector<int>> qudits;
  std::vector<char> type;
  // Fixed times per generator; empty entries are searched.
  std::vector<std::vector<int>> fixed;
  std::function<bool(int, int, int)> reach;
  // Pairs allowed to disagree on order (repaired separately).
  std::function<bool(int, int)> tolerated;
  long long node_limit = 5000000;
};

struct Overlap {
  int h;
  std::vector<std::pair<int, int>> shared;  // event index in g, in h
};

std::vector<std::vector<Overlap>> overlaps(const CxTask &task) {
  size_t m = task.qudits.size();
  std::vector<std::vector<Overlap>> out(m);
  for (size_t g = 0; g < m; ++g) {
    for (size_t h = 0; h < m; ++h) {
      if (g == h || task.type[g] == task.type[h]) continue;
      Overlap o{static_cast<int>(h), {}};
      for (size_t a = 0; a < task.qudits[g].size(); ++a)
        for (size_t b = 0; b < task.qudits[h].size(); ++b)
          if (task.qudits[g][a] == task.qudits[h][b]) o.shared.push_back({int(a), int(b)});
      if (o.shared.size() >= 2) out[g].push_back(o);
    }
  }
  return out;
}

bool consistent(const Overlap &o, const std::vector<int> &tg, const std::vector<int> &th) {
  bool first = tg[o.shared[0].first] < th[o.shared[0].second];
  for (const auto &[a, b] : o.shared)
    if ((tg[a] < th[b]) != first) return false;
  return true;
}

std::optional<std::vector<std::vector<int>>> solve_cx_times(const CxTask &task) {
  size_t m = task.qudits.size();
  auto ov = overlaps(task);
  std::vector<std::vector<int>> assign(m);
  std::set<std::pair<int, int>> used;
  auto place = [&](int g, const std::vector<int> &ts, bool on) {
    for (size_t e = 0; e < ts.size(); ++e) {
      if (on) used.insert({task.qudits[g][e], ts[e]});
      else used.erase({task.qudits[g][e], ts[e]});
    }
    if (on) assign[g] = ts;
    else assign[g].clear();
  };
  auto fits = [&](int g, const std::vector<int> &ts) {
    for (size_t e = 0; e < ts.size(); ++e)
      if (used.count({task.qudits[g][e], ts[e]})) return false;
    for (const auto &o : ov[g]) {
      if (assign[o.h].empty() || (task.tolerated && task.tolerated(g, o.h))) continue;
      if (!consistent(o, ts, assign[o.h])) return false;
    }
    return true;
  };
  std::vector<int> open;
  for (size_t g = 0; g < m; ++g) {
    if (task.fixed[g].empty()) {
      open.push_back(static_cast<int>(g));
    } else {
      if (!fits(static_cast<int>(g), task.fixed[g])) return std::nullopt;
      place(static_cast<int>(g), task.fixed[g], true);
    }
  }
  // Breadth-first order through the overlap graph keeps neighbours adjacent.
  std::vector<int> order;
  std::set<int> pending(open.begin(), open.end());
  while (!pending.empty()) {
    std::queue<int> bfs;
    bfs.push(*pending.begin());
    pending.erase(pending.begin());
    while (!bfs.empty()) {
      int g = bfs.front();
      bfs.pop();
      order.push_back(g);
      std::vector<int> nb;
      for (const auto &o : ov[g]) nb.push_back(o.h);
      for (size_t h = 0; h < m; ++h) {
        if (h == size_t(g)) continue;
        for (int q : task.qudits[h])
          if (std::count(task.qudits[g].begin(), task.qudits[g].end(), q)) nb.push_back(int(h));
      }
      for (int h : nb) {
        if (pending.erase(h)) bfs.push(h);
      }
    }
  }
  std::vector<std::vector<std::vector<int>>> options(m);
  for (int g : order) {
    size_t k = task.qudits[g].size();
    std::vector<int> slots(task.L);
    std::iota(slots.begin(), slots.end(), 1);
    std::vector<int> pick(task.L, 0);
    std::fill(pick.begin(), pick.begin() + k, 1);
    std::sort(pick.begin(), pick.end());
    // Every ordered choice of k distinct times.
    do {
      std::vector<int> chosen;
      for (int i = 0; i < task.L; ++i)
        if (pick[i]) chosen.push_back(slots[i]);
      do {
        bool ok = true;
        for (size_t e = 0; e < k && ok; ++e) ok = !task.reach || task.reach(g, int(e), chosen[e]);
        if (ok) options[g].push_back(chosen);
      } while (std::next_permutation(chosen.begin(), chosen.end()));
    } while (std::next_permutation(pick.begin(), pick.end()));
    if (options[g].empty()) return std::nullopt;
  }
  long long nodes = 0;
  std::function<bool(size_t)> bt = [&](size_t i) -> bool {
    if (i == order.size()) return true;
    if (++nodes > task.node_limit) return false;
    int g = order[i];
    for (const auto &ts : options[g]) {
      if (!fits(g, ts)) continue;
      place(g, ts, true);
      if (bt(i + 1)) return true;
      place(g, ts, false);
    }
    return false;
  };
  if (!bt(0)) return std::nullopt;
  return assign;
}

}  // namespace

SyndromeOrders standard_orders() { return SyndromeOrders{}; }
SyndromeOrders adversarial_orders() { return SyndromeOrders{"NEWS", "NWES"}; }

SyndromeCircuit syndrome_circuit_unfolded(const StabilizerCode &code, const SyndromeOrders &orders) {
  const auto &g = code.graph;
  size_t m = code.generators.size();
  if (g.draws.empty() || g.vertices.size() + g.faces.size() != m) {
    throw std::invalid_argument("layout without ancilla interleaving");
  }
  int n = code.n;
  std::vector<int> draws_of(n, 0);
  for (const auto &e : g.draws) ++draws_of[e.qudit];

  CxTask task;
  task.type = code.gen_type;
  task.qudits.assign(m, {});
  task.fixed.assign(m, {});
  for (size_t k = 0; k < m; ++k) {
    const Cell &cell = k < g.vertices.size() ? g.vertices[k] : g.faces[k - g.vertices.size()];
    const std::string &ord = code.gen_type[k] == 'X' ? orders.x : orders.z;
    bool glued = false;
    std::vector<int> times;
    for (int di : cell.draws) {
      const auto &e = g.draws[di];
      int L = letter_of(e.mid - cell.center);
      auto pos = ord.find(static_cast<char>(L));
      if (L == 0 || pos == std::string::npos) {
        throw std::invalid_argument("layout without ancilla interleaving");
      }
      task.qudits[k].push_back(e.qudit);
      times.push_back(static_cast<int>(pos) + 1);
      glued = glued || draws_of[e.qudit] > 1;
    }
    // Generators on a glued seam see mirrored neighbourhoods; search them.
    if (!glued) task.fixed[k] = times;
  }
  std::optional<std::vector<std::vector<int>>> times;
  for (task.L = 4; task.L <= 6 && !times; ++task.L) times = solve_cx_times(task);
  if (!times) throw std::runtime_error("no collision-free syndrome schedule");
  int L = task.L - 1;

  SyndromeCircuit out;
  out.circuit = ScheduledCircuit(n + static_cast<int>(m), code.d);
  for (int q = 0; q < n; ++q) out.circuit.coords.push_back(code.qudit_pos[q]);
  for (size_t k = 0; k < m; ++k) out.circuit.coords.push_back(code.gen_pos[k]);
  for (const auto &e : g.draws) {
    if (e.mid != code.qudit_pos[e.qudit]) out.circuit.extra_coords.push_back({e.qudit, e.mid});
  }
  for (int q = 0; q < n; ++q) {
    out.data_site.push_back(q);
    out.data_site_end.push_back(q);
  }
  out.circuit.layers.assign(L + 2, Layer{{}, 1});
  out.cx_layers.assign(m, {});
  for (size_t k = 0; k < m; ++k) {
    char type = code.gen_type[k];
    int anc = n + static_cast<int>(k);
    out.ancilla_site.push_back(anc);
    out.ancilla_prep.push_back(anc);
    out.circuit.layers[0].ops.push_back({type == 'X' ? GateKind::PrepX : GateKind::PrepZ, {anc}});
    const PauliWord &w = code.generators[k];
    for (size_t e = 0; e < task.qudits[k].size(); ++e) {
      int q = task.qudits[k][e], t = (*times)[k][e];
      out.circuit.layers[t].ops.push_back(syndrome_cx(type, anc, q, type == 'X' ? w.x(q) : w.z(q)));
      out.cx_layers[k].push_back(t);
    }
    std::sort(out.cx_layers[k].begin(), out.cx_layers[k].end());
    out.circuit.layers[L + 1].ops.push_back({type == 'X' ? GateKind::MeasX : GateKind::MeasZ, {anc}});
  }
  return out;
}

SyndromeCircuit syndrome_circuit_folded(const StabilizerCode &code, const FoldLayout &layout,
                                        Parity parity, bool fold_correction,
                                        const SyndromeOrders &orders) {
  const int n = code.n;
  const size_t m = code.generators.size();
  if (layout.n != n || layout.gen_mirror.size() != m) throw std::invalid_argument("layout does not match code");
  for (int q = 0; q < n; ++q) {
    if (layout.type[q] == PairType::Untyped) throw std::invalid_argument("untyped layout");
  }
  const int K = 2;
  // Planar cluster of each data qudit and each generator's ancilla pair.
  std::vector<Vec2> cpos(n);
  for (int q = 0; q < n; ++q) {
    cpos[q] = code.qudit_pos[layout.role[q] == Role::Bottom ? layout.partner[q] : q];
  }
  std::vector<Vec2> gpos(m);
  std::vector<bool> touches_fold(m, false);
  for (size_t g = 0; g < m; ++g) {
    int side = 0;
    for (int q : code.generators[g].support()) {
      if (layout.role[q] == Role::Top) side = 1;
      if (layout.role[q] == Role::Bottom) side = -1;
      if (layout.role[q] == Role::Fold) touches_fold[g] = true;
    }
    if (side == 0) throw std::invalid_argument("generator supported only on the fold");
    gpos[g] = side > 0 ? code.gen_pos[g] : layout.reflect_vec(code.gen_pos[g]);
  }
  for (size_t g = 0; g < m; ++g) {
    if (gpos[g] != gpos[layout.gen_mirror[g]]) throw std::invalid_argument("missing fold ancilla");
  }

  CxTask task;
  task.type = code.gen_type;
  task.qudits.assign(m, {});
  std::vector<std::vector<int>> letters(m), standard(m);
  for (size_t g = 0; g < m; ++g) {
    const std::string &ord = code.gen_type[g] == 'X' ? orders.x : orders.z;
    for (int q : code.generators[g].support()) {
      int L = letter_of(cpos[q] - gpos[g]);
      if (L == 0) throw std::invalid_argument("generator not adjacent to its qudit cluster");
      task.qudits[g].push_back(q);
      letters[g].push_back(L);
      standard[g].push_back(static_cast<int>(ord.find(static_cast<char>(L))) + 1);
    }
  }

  // Fold qudits stay put; the side their ancillas approach from picks the slot.
  std::vector<int> fold_slot(n, 1);
  for (size_t g = 0; g < m; ++g) {
    for (size_t e = 0; e < letters[g].size(); ++e) {
      int q = task.qudits[g][e];
      if (layout.role[q] == Role::Fold && letters[g][e] == 'E') fold_slot[q] = 0;
    }
  }
  // Slot rules: slots sit side by side along x, so an east neighbour meets
  // slot 1 against slot 0, and north/south neighbours meet equal slots.
  auto meets = [](int letter, int sa, int ds) {
    if (letter == 'W') return sa == 0 && ds == 1;
    if (letter == 'E') return sa == 1 && ds == 0;
    return sa == ds;
  };
  std::map<Vec2, int> top_slot;  // pre-swap slot of the top qudit per pair cluster
  int s_x = 0;
  auto sigma = [&](int g) { return code.gen_type[g] == 'X' ? s_x : 1 - s_x; };
  auto anc_slot = [&](int g, int t) { return t <= K ? sigma(g) : 1 - sigma(g); };
  auto data_slot = [&](int q, int t) {
    if (layout.role[q] == Role::Fold) return fold_slot[q];
    int o = top_slot.at(cpos[q]);
    int pre = layout.role[q] == Role::Top ? o : 1 - o;
    return t <= K ? pre : 1 - pre;
  };
  task.reach = [&](int g, int e, int t) {
    return meets(letters[g][e], anc_slot(g, t), data_slot(task.qudits[g][e], t));
  };
  task.tolerated = [&](int g, int h) { return layout.gen_mirror[g] == h; };

  std::optional<std::vector<std::vector<int>>> times;
  int L = 0;
  for (int layers = 4; layers <= 6 && !times; ++layers) {
    for (s_x = 0; s_x < 2 && !times; ++s_x) {
      // Orient each pair cluster to suit the bulk orders; clusters the bulk
      // does not constrain are enumerated.
      std::map<Vec2, std::array<int, 2>> score;
      for (int q = 0; q < n; ++q)
        if (layout.role[q] == Role::Top) score[cpos[q]] = {0, 0};
      for (int o = 0; o < 2; ++o) {
        for (auto &[c, sc] : score) top_slot[c] = o;
        for (size_t g = 0; g < m; ++g) {
          if (touches_fold[g]) continue;
          for (size_t e = 0; e < letters[g].size(); ++e) {
            int q = task.qudits[g][e];
            if (task.reach(int(g), int(e), standard[g][e])) ++score[cpos[q]][o];
          }
        }
      }
      std::vector<Vec2> free;
      for (auto &[c, sc] : score) {
        top_slot[c] = sc[1] > sc[0] ? 1 : 0;
        if (sc[0] == sc[1]) free.push_back(c);
      }
      if (free.size() > 12) free.resize(12);
      for (int mask = 0; mask < (1 << free.size()) && !times; ++mask) {
        for (size_t b = 0; b < free.size(); ++b) top_slot[free[b]] = (mask >> b) & 1;
        task.fixed.assign(m, {});
        for (size_t g = 0; g < m; ++g) {
          if (touches_fold[g]) continue;
          bool ok = true;
          for (size_t e = 0; e < letters[g].size(); ++e) ok = ok && task.reach(int(g), int(e), standard[g][e]);
          if (ok) task.fixed[g] = standard[g];
        }
        task.L = layers;
        times = solve_cx_times(task);
      }
      if (times) L = layers;
    }
  }
  if (!times) throw std::runtime_error("no folded syndrome schedule");
  --s_x;

  // Sites: one per occupied slot.
  SyndromeCircuit out;
  std::map<std::pair<Vec2, int>, int> data_at, anc_at;
  std::vector<std::array<int, 2>> coords;
  auto site = [&](std::map<std::pair<Vec2, int>, int> &tab, const Vec2 &c, int slot) {
    auto key = std::make_pair(c, slot);
    auto it = tab.find(key);
    if (it != tab.end()) return it->second;
    int id = static_cast<int>(coords.size());
    coords.push_back({2 * c[0] + slot, c[1]});
    tab[key] = id;
    return id;
  };
  for (int q = 0; q < n; ++q) {
    if (layout.role[q] == Role::Fold) {
      site(data_at, cpos[q], fold_slot[q]);
    } else {
      site(data_at, cpos[q], 0);
      site(data_at, cpos[q], 1);
    }
  }
  for (size_t g = 0; g < m; ++g) {
    site(anc_at, gpos[g], 0);
    site(anc_at, gpos[g], 1);
  }
  out.circuit = ScheduledCircuit(static_cast<int>(coords.size()), code.d);
  out.circuit.coords = coords;
  bool fwd = parity == Parity::Forward;
  int t_first = fwd ? 1 : L, t_last = fwd ? L : 1;
  for (int q = 0; q < n; ++q) {
    out.data_site.push_back(data_at.at({cpos[q], data_slot(q, t_first)}));
    out.data_site_end.push_back(data_at.at({cpos[q], data_slot(q, t_last)}));
  }
  // Layer index of CX time t.
  auto layer_of = [&](int t) {
    int r = fwd ? t : L + 1 - t;
    int swap_after = fwd ? K : L - K;
    return r <= swap_after ? r : r + 1;
  };
  int swap_layer = (fwd ? K : L - K) + 1;
  out.circuit.layers.assign(L + 3, Layer{{}, 1});
  Layer &prep = out.circuit.layers[0];
  Layer &meas = out.circuit.layers[L + 2];
  out.cx_layers.assign(m, {});
  std::vector<int> anc_end(m);
  for (size_t g = 0; g < m; ++g) {
    char type = code.gen_type[g];
    int a0 = anc_at.at({gpos[g], anc_slot(int(g), t_first)});
    anc_end[g] = anc_at.at({gpos[g], anc_slot(int(g), t_last)});
    out.ancilla_site.push_back(a0);
    prep.ops.push_back({type == 'X' ? GateKind::PrepX : GateKind::PrepZ, {a0}});
    meas.ops.push_back({type == 'X' ? GateKind::MeasX : GateKind::MeasZ, {anc_end[g]}});
    const PauliWord &w = code.generators[g];
    for (size_t e = 0; e < task.qudits[g].size(); ++e) {
      int q = task.qudits[g][e], t = (*times)[g][e];
      int a = anc_at.at({gpos[g], anc_slot(int(g), t)});
      int ds = data_at.at({cpos[q], data_slot(q, t)});
      out.circuit.layers[layer_of(t)].ops.push_back(
          syndrome_cx(type, a, ds, type == 'X' ? w.x(q) : w.z(q)));
      out.cx_layers[g].push_back(layer_of(t));
    }
    std::sort(out.cx_layers[g].begin(), out.cx_layers[g].end());
  }
  for (const auto &[key, id] : data_at) {
    auto other = data_at.find({key.first, 1});
    if (key.second == 0 && other != data_at.end()) {
      out.circuit.layers[swap_layer].ops.push_back({GateKind::SWAP, {id, other->second}});
    }
  }
  for (const auto &[key, id] : anc_at) {
    if (key.second == 0) out.circuit.layers[swap_layer].ops.push_back({GateKind::SWAP, {id, anc_at.at({key.first, 1})}});
  }
  // The measured operator of an ancilla starts where the ancilla is measured.
  out.ancilla_prep = out.ancilla_site;
  out.ancilla_site = anc_end;
  out.swap_layer = swap_layer;

  // Order conflicts between mirrored X/Z pairs leave a CX between their
  // ancillas; cancel it with a local CX power before measurement.
  auto ov = overlaps(task);
  std::vector<std::pair<int, int>> conflicted;
  for (size_t g = 0; g < m; ++g) {
    if (code.gen_type[g] != 'X') continue;
    for (const auto &o : ov[g]) {
      if (o.h == layout.gen_mirror[g] && !consistent(o, (*times)[g], (*times)[o.h])) {
        conflicted.push_back({int(g), o.h});
      }
    }
  }
  if (fold_correction && !conflicted.empty()) {
    int fix = L + 2;
    out.circuit.layers.insert(out.circuit.layers.begin() + fix, Layer{{}, 1});
    out.correction_layers.push_back(fix);
    std::vector<bool> is_data(out.circuit.n(), false);
    for (int q : out.data_site) is_data[q] = true;
    auto clean = [&](int g) {
      PauliWord M = measured_operator(out.circuit, out.ancilla_site[g]);
      for (int st = 0; st < M.n(); ++st)
        if (!is_data[st] && (M.x(st) || M.z(st))) return false;
      return measured_generator(out, g, n) == code.generators[g];
    };
    for (const auto &[g, h] : conflicted) {
      bool done = false;
      for (int dir = 0; dir < 2 && !done; ++dir) {
        for (int k = 1; k < code.d && !done; ++k) {
          int c = dir ? anc_end[h] : anc_end[g], t = dir ? anc_end[g] : anc_end[h];
          out.circuit.layers[fix].ops.push_back({GateKind::CX, {c, t}, k});
          try {
            done = clean(g) && clean(h);
          } catch (const std::exception &) {
            done = false;
          }
          if (!done) out.circuit.layers[fix].ops.pop_back();
        }
      }
      if (!done) throw std::runtime_error("no ancilla correction for a fold pair");
    }
  }
  return out;
}

PauliWord measured_operator(const ScheduledCircuit &c, int site) {
  if (site < 0 || site >= c.n()) throw std::out_of_range("ancilla site out of range");
  int t_meas = -1;
  GateKind basis = GateKind::MeasZ;
  for (int t = 0; t < c.depth(); ++t) {
    for (const auto &g : c.layers[t].ops) {
      if (std::find(g.targets.begin(), g.targets.end(), site) == g.targets.end()) continue;
      if (t_meas >= 0) throw std::invalid_argument("mid-circuit ancilla measurement");
      if (is_meas(g.kind)) {
        t_meas = t;
        basis = g.kind;
      }
    }
  }
  PauliWord M = basis == GateKind::MeasX ? PauliWord::x_at(c.dims, site) : PauliWord::z_at(c.dims, site);
  int start = t_meas < 0 ? c.depth() - 1 : t_meas - 1;
  for (int t = start; t >= 0; --t) {
    for (const auto &g : c.layers[t].ops) {
      if (is_unitary(g.kind)) {
        M = conjugate(inverse(g), M);
        continue;
      }
      int s = g.targets[0];
      bool xs = M.x(s) != 0, zs = M.z(s) != 0;
      if (!xs && !zs) continue;
      bool xbasis = g.kind == GateKind::PrepX || g.kind == GateKind::MeasX;
      if ((xbasis && zs) || (!xbasis && xs)) {
        throw std::runtime_error("measurement of site " + std::to_string(site) +
                                 " is disturbed at site " + std::to_string(s));
      }
      if (is_meas(g.kind)) throw std::invalid_argument("depends on an earlier measurement");
      M.set_x(s, 0);
      M.set_z(s, 0);
    }
  }
  return M;
}

PauliWord measured_generator(const SyndromeCircuit &s, int g, int n_code) {
  PauliWord M = measured_operator(s.circuit, s.ancilla_site[g]);
  PauliWord out(n_code, M.dim());
  for (int q = 0; q < n_code; ++q) {
    out.set_x(q, M.x(s.data_site[q]));
    out.set_z(q, M.z(s.data_site[q]));
  }
  out.set_phase(M.phase());
  return out;
}

std::string check_measured_operators(const SyndromeCircuit &s, const StabilizerCode &code) {
  std::vector<bool> is_data(s.circuit.n(), false);
  for (int q : s.data_site) is_data[q] = true;
  for (size_t g = 0; g < code.generators.size(); ++g) {
    PauliWord M;
    try {
      M = measured_operator(s.circuit, s.ancilla_site[g]);
    } catch (const std::exception &e) {
      return "generator " + std::to_string(g) + ": " + e.what();
    }
    for (int site = 0; site < M.n(); ++site) {
      if (!is_data[site] && (M.x(site) || M.z(site))) {
        return "generator " + std::to_string(g) + " couples to non-data site " + std::to_string(site) +
               ": " + M.str();
      }
    }
    PauliWord got = measured_generator(s, static_cast<int>(g), code.n);
    if (got != code.generators[g]) {
      return "generator " + std::to_string(g) + " measures " + got.str() + " instead of " +
             code.generators[g].str();
    }
  }
  return "";
}

PauliWord propagate_fault(const ScheduledCircuit &c, int after, const PauliWord &fault) {
  PauliWord P = fault;
  for (int t = after + 1; t < c.depth(); ++t) {
    for (const auto &g : c.layers[t].ops) {
      if (is_unitary(g.kind)) P = conjugate(g, P);
    }
  }
  return P;
}

HookReport hook_error_analysis(const SyndromeCircuit &s, const StabilizerCode &code) {
  HookReport rep;
  std::map<int, int> qudit_at;
  for (int q = 0; q < code.n; ++q) qudit_at[s.data_site_end[q]] = q;
  Vec2 dir_x = string_direction(code, code.logical_x);
  Vec2 dir_z = string_direction(code, code.logical_z);
  int d = code.d;
  for (size_t g = 0; g < code.generators.size(); ++g) {
    const auto &ls = s.cx_layers[g];
    if (ls.size() < 3) {
      rep.partial = true;
      continue;
    }
    ++rep.ancillas_checked;
    int anc = s.swap_layer >= 0 && ls[1] > s.swap_layer ? s.ancilla_site[g] : s.ancilla_prep[g];
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) {
        if (!a && !b) continue;
        PauliWord f(s.circuit.dims);
        f.set_x(anc, a);
        f.set_z(anc, b);
        PauliWord P = propagate_fault(s.circuit, ls[1], f);
        std::vector<int> supp;
        bool xtype = true, ztype = true;
        for (const auto &[site, q] : qudit_at) {
          if (P.x(site) || P.z(site)) supp.push_back(q);
          if (P.z(site)) xtype = false;
          if (P.x(site)) ztype = false;
        }
        int w = static_cast<int>(supp.size());
        rep.max_weight = std::max(rep.max_weight, w);
        if (w < 2) continue;
        HookEvent ev;
        ev.generator = static_cast<int>(g);
        ev.fault = f.restrict_to({anc}).str();
        ev.support = supp;
        if (w == 2) {
          Vec2 disp = code.qudit_pos[supp[1]] - code.qudit_pos[supp[0]];
          bool px = cross(disp, dir_x) == 0, pz = cross(disp, dir_z) == 0;
          ev.parallel = (xtype && px) || (ztype && pz) || (!xtype && !ztype && (px || pz));
        }
        if (ev.parallel) ++rep.parallel_hooks;
        rep.events.push_back(ev);
      }
    }
  }
  return rep;
}

}  // namespace foldqec
