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

#include "foldqec/code.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <numeric>
#include <stdexcept>

#include "foldqec/zmod.hpp"

namespace foldqec {

namespace {

void require_D(int D, int d) {
  if (D < 2) throw std::invalid_argument("distance D must be at least 2");
  if (d < 2) throw std::invalid_argument("qudit dimension must be at least 2");
}

int inverse_unit(int a, int d) {
  for (int u = 1; u < d; ++u) {
    if (mod(1LL * a * u, d) == 1) return u;
  }
  throw std::logic_error("not a unit");
}

void set_logicals(StabilizerCode &code, const std::vector<int> &xs,
                  const std::vector<int> &zs) {
  code.logical_x = string_operator(code, xs, 'X');
  code.logical_z = string_operator(code, zs, 'Z');
  int c = commutator_exponent(code.logical_z, code.logical_x);
  code.logical_z = code.logical_z.pow(inverse_unit(c, code.d));
}

// Rotated-lattice data qudit (i, j) in the lattice frame.
Vec2 rotated_frame(int i, int j) { return {i - j, i + j}; }

Vec2 rotated_dir(int i, int j, int D) {
  return mod(i + j + D, 2) == 0 ? Vec2{0, 1} : Vec2{1, 0};
}

bool rotated_is_x(int k, int l, int D) { return mod(k + l + D, 2) == 0; }

}  // namespace

int StabilizerCode::n_vertices() const {
  return static_cast<int>(std::count(gen_type.begin(), gen_type.end(), 'X'));
}

int StabilizerCode::n_faces() const {
  return static_cast<int>(std::count(gen_type.begin(), gen_type.end(), 'Z'));
}

std::vector<PauliWord> StabilizerCode::x_generators() const {
  std::vector<PauliWord> r;
  for (size_t i = 0; i < generators.size(); ++i) {
    if (gen_type[i] == 'X') r.push_back(generators[i]);
  }
  return r;
}

std::vector<PauliWord> StabilizerCode::z_generators() const {
  std::vector<PauliWord> r;
  for (size_t i = 0; i < generators.size(); ++i) {
    if (gen_type[i] == 'Z') r.push_back(generators[i]);
  }
  return r;
}

int FoldLayout::n_fold() const {
  return static_cast<int>(std::count(role.begin(), role.end(), Role::Fold));
}

int FoldLayout::n_pairs() const {
  return static_cast<int>(std::count(role.begin(), role.end(), Role::Top));
}

Vec2 FoldLayout::reflect_vec(const Vec2 &v) const {
  return {reflect[0] * v[0] + reflect[1] * v[1], reflect[2] * v[0] + reflect[3] * v[1]};
}

StabilizerCode code_from_graph(const DirectedSurfaceGraph &g, int d) {
  StabilizerCode code;
  code.d = d;
  code.n = g.n;
  code.graph = g;
  code.qudit_pos.assign(g.n, Vec2{0, 0});
  code.qudit_dir.assign(g.n, Vec2{0, 0});
  code.qudit_dir_glued.assign(g.n, Vec2{0, 0});
  std::vector<bool> seen(g.n, false);
  for (const auto &e : g.draws) {
    if (!seen[e.qudit]) {
      code.qudit_pos[e.qudit] = e.mid;
      code.qudit_dir[e.qudit] = e.dir;
      seen[e.qudit] = true;
    }
    code.qudit_dir_glued[e.qudit] = e.dir;
  }
  for (const auto &v : g.vertices) {
    PauliWord w(g.n, d);
    for (int k : v.draws) {
      const auto &e = g.draws[k];
      bool head = (e.mid + e.dir) == v.center;
      if (!head && (e.mid - e.dir) != v.center) {
        throw std::invalid_argument("vertex is not an endpoint of its edge");
      }
      w.set_x(e.qudit, head ? 1 : -1);
    }
    code.generators.push_back(w);
    code.gen_type.push_back('X');
    code.gen_pos.push_back(v.center);
  }
  for (const auto &f : g.faces) {
    PauliWord w(g.n, d);
    for (int k : f.draws) {
      const auto &e = g.draws[k];
      // Clockwise traversal gets Z, counterclockwise Z^dagger.
      w.set_z(e.qudit, cross(e.mid - f.center, e.dir) < 0 ? 1 : -1);
    }
    code.generators.push_back(w);
    code.gen_type.push_back('Z');
    code.gen_pos.push_back(f.center);
  }
  return code;
}

PauliWord string_operator(const StabilizerCode &code, const std::vector<int> &support,
                          char type) {
  int d = code.d;
  std::map<int, int> val;  // qudit -> exponent, 0 = unknown
  if (support.empty()) throw std::invalid_argument("empty string support");
  val[support[0]] = 1;
  std::set<int> in_support(support.begin(), support.end());
  char other = type == 'X' ? 'Z' : 'X';
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t g = 0; g < code.generators.size(); ++g) {
      if (code.gen_type[g] != other) continue;
      const auto &G = code.generators[g];
      long long known = 0;
      int unknown = -1, n_unknown = 0;
      for (int q : support) {
        int c = type == 'X' ? G.z(q) : G.x(q);
        if (!c) continue;
        auto it = val.find(q);
        if (it != val.end()) {
          known += 1LL * c * it->second;
        } else {
          unknown = q;
          ++n_unknown;
        }
      }
      if (n_unknown != 1) continue;
      int c = type == 'X' ? G.z(unknown) : G.x(unknown);
      // c e + known = 0 for X strings (sign flips for Z strings cancel).
      val[unknown] = mod(-known * inverse_unit(mod(c, d), d), d);
      progress = true;
    }
  }
  PauliWord w(code.n, d);
  for (int q : support) {
    if (!val.count(q)) throw std::logic_error("string exponents underdetermined");
    if (type == 'X') w.set_x(q, val[q]);
    else w.set_z(q, val[q]);
  }
  return w;
}

std::string validate_code(const StabilizerCode &code) {
  const auto &G = code.generators;
  for (size_t i = 0; i < G.size(); ++i) {
    for (size_t j = i + 1; j < G.size(); ++j) {
      if (commutator_exponent(G[i], G[j])) {
        return "generators " + std::to_string(i) + " and " + std::to_string(j) +
               " do not commute";
      }
    }
    if (commutator_exponent(G[i], code.logical_x)) {
      return "logical X does not commute with generator " + std::to_string(i);
    }
    if (commutator_exponent(G[i], code.logical_z)) {
      return "logical Z does not commute with generator " + std::to_string(i);
    }
  }
  if (commutator_exponent(code.logical_z, code.logical_x) != 1) {
    return "logical pair does not satisfy ZX = wXZ";
  }
  auto span = pauli_span(G);
  if (!span.order_is_power(code.n - 1)) return "stabilizer group order is not d^(n-1)";
  return "";
}

StabilizerCode build_square(int D, int d) {
  require_D(D, d);
  int M = 2 * D - 2;
  DirectedSurfaceGraph g;
  std::map<Vec2, int> draw_at;
  for (int y = 0; y <= M; ++y) {
    for (int x = 0; x <= M; ++x) {
      if ((x + y) % 2) continue;
      Vec2 dir = x % 2 == 0 ? Vec2{1, 0} : Vec2{0, 1};
      draw_at[{x, y}] = static_cast<int>(g.draws.size());
      g.draws.push_back({g.n++, {x, y}, dir});
    }
  }
  const Vec2 nb[4] = {{0, 1}, {-1, 0}, {1, 0}, {0, -1}};
  for (int y = 0; y <= M; ++y) {
    for (int x = 0; x <= M; ++x) {
      if ((x + y) % 2 == 0) continue;
      Cell c{{x, y}, {}};
      for (const auto &o : nb) {
        auto it = draw_at.find(Vec2{x, y} + o);
        if (it != draw_at.end()) c.draws.push_back(it->second);
      }
      (y % 2 == 0 ? g.vertices : g.faces).push_back(c);
    }
  }
  StabilizerCode code = code_from_graph(g, d);
  code.family = "square";
  code.D = D;
  std::vector<int> xs, zs;
  for (int k = 0; k <= M; k += 2) {
    xs.push_back(g.draws[draw_at[{0, k}]].qudit);
    zs.push_back(g.draws[draw_at[{k, 0}]].qudit);
  }
  set_logicals(code, xs, zs);
  return code;
}

StabilizerCode build_diamond(int D, int d) {
  require_D(D, d);
  DirectedSurfaceGraph g;
  std::map<std::pair<int, int>, int> draw_at;
  for (int j = 0; j < D; ++j) {
    for (int i = 0; i < D; ++i) {
      draw_at[{i, j}] = static_cast<int>(g.draws.size());
      g.draws.push_back({g.n++, rotated_frame(i, j), rotated_dir(i, j, D)});
    }
  }
  for (int l = -1; l < D; ++l) {
    for (int k = -1; k < D; ++k) {
      bool is_x = rotated_is_x(k, l, D);
      bool row_edge = l == -1 || l == D - 1;
      bool col_edge = k == -1 || k == D - 1;
      if (row_edge && col_edge) continue;
      if (row_edge && !is_x) continue;
      if (col_edge && is_x) continue;
      Cell c{{k - l, k + l + 1}, {}};
      for (int b = l; b <= l + 1; ++b) {
        for (int a = k; a <= k + 1; ++a) {
          auto it = draw_at.find({a, b});
          if (it != draw_at.end()) c.draws.push_back(it->second);
        }
      }
      (is_x ? g.vertices : g.faces).push_back(c);
    }
  }
  StabilizerCode code = code_from_graph(g, d);
  code.family = "diamond";
  code.D = D;
  std::vector<int> xs, zs;
  for (int t = 0; t < D; ++t) {
    xs.push_back(draw_at[{0, t}]);
    zs.push_back(draw_at[{t, 0}]);
  }
  set_logicals(code, xs, zs);
  return code;
}

namespace {

// Rotated patch spanning columns -(D-1)..D-1 whose bottom seam row is glued to
// itself by i <-> -i.
StabilizerCode build_compatible_cone(int D, int d) {
  DirectedSurfaceGraph g;
  std::map<std::pair<int, int>, int> qid;
  std::map<std::pair<int, int>, int> draw_at;  // keyed by drawn position
  auto add = [&](int i, int j) {
    qid[{i, j}] = g.n;
    draw_at[{i, j}] = static_cast<int>(g.draws.size());
    g.draws.push_back({g.n++, rotated_frame(i, j), rotated_dir(i, j, D)});
  };
  for (int j = 0; j < D; ++j) {
    for (int i = 0; i < D; ++i) add(i, j);
  }
  for (int j = 0; j < D; ++j) {
    for (int i = 1; i < D; ++i) add(-i, j);
  }
  for (int i = 1; i < D; ++i) {
    add(i, -1);
    // The glued copy is the same edge seen after a half turn about the apex.
    Vec2 dir = rotated_dir(i, -1, D);
    draw_at[{-i, -1}] = static_cast<int>(g.draws.size());
    g.draws.push_back({qid[{i, -1}], rotated_frame(-i, -1), {-dir[0], -dir[1]}});
  }
  std::vector<std::pair<int, int>> top;
  for (int l = 0; l + 1 < D; ++l)
    for (int k = 0; k + 1 < D; ++k) top.push_back({k, l});
  for (int k = 0; k + 1 < D; ++k) top.push_back({k, -1});
  for (int k = 0; k + 1 < D; ++k)
    if (rotated_is_x(k, D - 1, D)) top.push_back({k, D - 1});
  for (int l = 0; l + 1 < D; ++l)
    if (!rotated_is_x(D - 1, l, D)) top.push_back({D - 1, l});
  std::vector<std::pair<int, int>> plaq = top;
  for (auto [k, l] : top) plaq.push_back({-k - 1, l});
  for (auto [k, l] : plaq) {
    Cell c{{k - l, k + l + 1}, {}};
    for (int b = l; b <= l + 1; ++b) {
      for (int a = k; a <= k + 1; ++a) {
        auto it = draw_at.find({a, b});
        if (it != draw_at.end()) c.draws.push_back(it->second);
      }
    }
    (rotated_is_x(k, l, D) ? g.vertices : g.faces).push_back(c);
  }
  StabilizerCode code = code_from_graph(g, d);
  code.family = "cone-compatible";
  code.D = D;
  std::vector<int> xs, zs;
  for (int t = 0; t < D; ++t) {
    xs.push_back(qid[{-(D - 1) + t, t}]);
    zs.push_back(qid[{t, D - 1 - t}]);
  }
  set_logicals(code, xs, zs);
  return code;
}

}  // namespace

StabilizerCode build_cone(int D, int d, ConeVariant v) {
  require_D(D, d);
  if (v == ConeVariant::Minimal) {
    StabilizerCode c = build_square(D, d);
    c.family = "cone-minimal";
    return c;
  }
  return build_compatible_cone(D, d);
}

std::string cone_variant_name(ConeVariant v) {
  return v == ConeVariant::Minimal ? "minimal" : "compatible";
}

FoldLayout fold_square(const StabilizerCode &code) {
  if (code.family != "square" && code.family != "cone-minimal") {
    throw std::invalid_argument("fold_square needs a square code");
  }
  FoldLayout f;
  f.n = code.n;
  f.reflect = {0, 1, 1, 0};
  std::map<Vec2, int> at;
  for (int q = 0; q < code.n; ++q) at[code.qudit_pos[q]] = q;
  f.role.resize(code.n);
  f.partner.resize(code.n);
  f.cluster.resize(code.n);
  f.type.assign(code.n, PairType::Untyped);
  for (int q = 0; q < code.n; ++q) {
    auto [x, y] = code.qudit_pos[q];
    f.partner[q] = at.at({y, x});
    f.role[q] = x == y ? Role::Fold : (x > y ? Role::Top : Role::Bottom);
    f.cluster[q] = x >= y ? Vec2{x, y} : Vec2{y, x};
  }
  std::map<Vec2, int> gat;
  for (size_t i = 0; i < code.gen_pos.size(); ++i) gat[code.gen_pos[i]] = static_cast<int>(i);
  for (const auto &p : code.gen_pos) f.gen_mirror.push_back(gat.at({p[1], p[0]}));
  return f;
}

FoldLayout fold_cone(const StabilizerCode &cone) {
  if (cone.family == "cone-minimal") return fold_square(cone);
  if (cone.family != "cone-compatible") throw std::invalid_argument("not a cone");
  FoldLayout f;
  f.n = cone.n;
  // (i, j) -> (-i, j) acts on the frame as (x, y) -> (-y, -x).
  f.reflect = {0, -1, -1, 0};
  f.handedness = -1;
  f.role.resize(cone.n);
  f.partner.resize(cone.n);
  f.cluster.resize(cone.n);
  f.type.assign(cone.n, PairType::Untyped);
  std::map<Vec2, int> at;
  for (int q = 0; q < cone.n; ++q) at[cone.qudit_pos[q]] = q;
  for (int q = 0; q < cone.n; ++q) {
    auto [x, y] = cone.qudit_pos[q];
    int i = (x + y) / 2, j = (y - x) / 2;
    if (j == -1 || i == 0) {
      f.role[q] = Role::Fold;
      f.partner[q] = q;
      f.cluster[q] = {i, j};
    } else {
      f.role[q] = i > 0 ? Role::Top : Role::Bottom;
      f.partner[q] = at.at(rotated_frame(-i, j));
      f.cluster[q] = {std::abs(i), j};
    }
  }
  std::map<Vec2, int> gat;
  for (size_t i = 0; i < cone.gen_pos.size(); ++i) gat[cone.gen_pos[i]] = static_cast<int>(i);
  for (const auto &p : cone.gen_pos) {
    // Center (k - l, k + l + 1) of plaquette (k, l) maps to that of (-k - 1, l).
    int k = (p[0] + p[1] - 1) / 2, l = (p[1] - p[0] - 1) / 2;
    f.gen_mirror.push_back(gat.at({-k - 1 - l, -k - 1 + l + 1}));
  }
  return f;
}

FoldLayout assign_bipartition(const StabilizerCode &code, FoldLayout layout) {
  for (int q = 0; q < code.n; ++q) {
    int p = layout.partner[q];
    const Vec2 &u = code.qudit_dir[layout.role[q] == Role::Bottom ? p : q];
    const Vec2 &w = layout.role[q] == Role::Fold
                        ? code.qudit_dir_glued[q]
                        : code.qudit_dir[layout.role[q] == Role::Bottom ? q : p];
    if ((u[0] == 0 && u[1] == 0) || (w[0] == 0 && w[1] == 0)) {
      throw std::invalid_argument("missing edge direction");
    }
    int c = layout.handedness * cross(u, layout.reflect_vec(w));
    if (c == 0) throw std::invalid_argument("overlapping edges are parallel");
    layout.type[q] = c > 0 ? PairType::Dark : PairType::Light;
  }
  // A fold qudit needs the correction when its vertex and mirrored face
  // orient it the same way after accounting for the gluing.
  layout.phase_fix.assign(code.n, 0);
  if (layout.gen_mirror.size() != code.generators.size()) return layout;
  for (int q = 0; q < code.n; ++q) {
    if (layout.role[q] != Role::Fold) continue;
    for (size_t g = 0; g < code.generators.size(); ++g) {
      if (code.gen_type[g] != 'X' || code.generators[g].x(q) == 0) continue;
      int m = layout.gen_mirror[g];
      if (m < 0 || code.generators[m].z(q) == 0) continue;
      int s = code.generators[g].x(q) == 1 ? 1 : -1;
      int t = code.generators[m].z(q) == 1 ? 1 : -1;
      const Vec2 &u = code.qudit_dir[q], &w = code.qudit_dir_glued[q];
      int glue = u[0] * w[0] + u[1] * w[1] > 0 ? 1 : -1;
      layout.phase_fix[q] = s * t * glue == 1;
      break;
    }
  }
  return layout;
}

std::vector<bool> steane_star_set() {
  // Qudit 0 is the center, 1..3 the corners, 4..6 the side midpoints.
  return {false, false, false, false, true, true, true};
}

StabilizerCode build_steane(int d) {
  if (d < 2) throw std::invalid_argument("qudit dimension must be at least 2");
  StabilizerCode code;
  code.family = "steane";
  code.D = 3;
  code.d = d;
  code.n = 7;
  const std::vector<std::vector<int>> tiles = {{1, 4, 0, 6}, {2, 5, 0, 4}, {3, 6, 0, 5}};
  auto star = steane_star_set();
  for (const auto &t : tiles) {
    PauliWord w(7, d);
    for (int q : t) w.set_x(q, star[q] ? -1 : 1);
    code.generators.push_back(w);
    code.gen_type.push_back('X');
  }
  for (const auto &t : tiles) {
    PauliWord w(7, d);
    for (int q : t) w.set_z(q, 1);
    code.generators.push_back(w);
    code.gen_type.push_back('Z');
  }
  // Corners on a unit triangle, midpoints between them, center in the middle.
  code.qudit_pos = {{2, 1}, {0, 0}, {4, 0}, {2, 3}, {2, 0}, {3, 2}, {1, 2}};
  code.qudit_dir.assign(7, Vec2{0, 0});
  code.qudit_dir_glued.assign(7, Vec2{0, 0});
  code.gen_pos = {{1, 1}, {3, 1}, {2, 2}, {1, 1}, {3, 1}, {2, 2}};
  set_logicals(code, {1, 4, 2}, {1, 4, 2});
  return code;
}

bool in_stabilizer_group(const StabilizerCode &code, const PauliWord &P, bool with_phase) {
  auto span = pauli_span(code.generators);
  auto a = span.solve(symplectic(P));
  if (!a) return false;
  if (!with_phase) return true;
  return product_of(code.generators, *a) == P;
}

StabilizerCode relabel(const StabilizerCode &code, const std::vector<int> &perm) {
  auto move = [&](const PauliWord &w) {
    PauliWord r(code.n, code.d);
    r.set_phase(w.phase());
    for (int q = 0; q < code.n; ++q) {
      r.set_x(perm[q], w.x(q));
      r.set_z(perm[q], w.z(q));
    }
    return r;
  };
  StabilizerCode c = code;
  for (auto &g : c.generators) g = move(g);
  c.logical_x = move(code.logical_x);
  c.logical_z = move(code.logical_z);
  for (int q = 0; q < code.n; ++q) {
    c.qudit_pos[perm[q]] = code.qudit_pos[q];
    c.qudit_dir[perm[q]] = code.qudit_dir[q];
    c.qudit_dir_glued[perm[q]] = code.qudit_dir_glued[q];
  }
  for (auto &e : c.graph.draws) e.qudit = perm[e.qudit];
  return c;
}

namespace {

// Shortest odd closed walk through the boundary node of the check graph of
// `checks`, parity toggled on the support of `dual`. -1 if not graphic.
int string_distance(const StabilizerCode &code, char check_type, const PauliWord &dual) {
  int m = 0;
  std::vector<std::vector<int>> in(code.n);
  for (size_t g = 0; g < code.generators.size(); ++g) {
    if (code.gen_type[g] != check_type) continue;
    for (int q : code.generators[g].support()) in[q].push_back(m);
    ++m;
  }
  int B = m;
  std::vector<std::vector<std::pair<int, int>>> adj(m + 1);  // (node, toggle)
  for (int q = 0; q < code.n; ++q) {
    if (in[q].size() > 2) return -1;
    int a = in[q].size() > 0 ? in[q][0] : B;
    int b = in[q].size() > 1 ? in[q][1] : B;
    int t = (dual.x(q) || dual.z(q)) ? 1 : 0;
    adj[a].push_back({b, t});
    if (a != b) adj[b].push_back({a, t});
  }
  std::vector<int> dist(2 * (m + 1), -1);
  std::deque<int> dq{2 * B};
  dist[2 * B] = 0;
  while (!dq.empty()) {
    int s = dq.front();
    dq.pop_front();
    int node = s / 2, par = s % 2;
    for (auto [nb, t] : adj[node]) {
      int ns = 2 * nb + (par ^ t);
      if (dist[ns] < 0) {
        dist[ns] = dist[s] + 1;
        dq.push_back(ns);
      }
    }
  }
  if (dist[2 * B + 1] < 0) throw std::runtime_error("check graph is disconnected");
  return dist[2 * B + 1];
}

}  // namespace

int code_distance(const StabilizerCode &code) {
  int dx = string_distance(code, 'Z', code.logical_z);
  int dz = string_distance(code, 'X', code.logical_x);
  if (dx < 0 || dz < 0) return brute_force_distance(code);
  return std::min(dx, dz);
}

int brute_force_distance(const StabilizerCode &code) {
  int n = code.n, d = code.d;
  auto zg = code.z_generators(), xg = code.x_generators();
  for (int w = 1; w <= n; ++w) {
    std::vector<int> sel(n, 0);
    std::fill(sel.end() - w, sel.end(), 1);
    do {
      std::vector<int> sup;
      for (int q = 0; q < n; ++q)
        if (sel[q]) sup.push_back(q);
      std::vector<int> e(w, 1);
      while (true) {
        for (char type : {'X', 'Z'}) {
          PauliWord P(n, d);
          for (int k = 0; k < w; ++k) {
            if (type == 'X') P.set_x(sup[k], e[k]);
            else P.set_z(sup[k], e[k]);
          }
          const auto &checks = type == 'X' ? zg : xg;
          bool ok = true;
          for (const auto &g : checks) {
            if (commutator_exponent(g, P)) {
              ok = false;
              break;
            }
          }
          const auto &dual = type == 'X' ? code.logical_z : code.logical_x;
          if (ok && commutator_exponent(dual, P)) return w;
        }
        int k = 0;
        while (k < w && ++e[k] == d) e[k++] = 1;
        if (k == w) break;
      }
    } while (std::next_permutation(sel.begin(), sel.end()));
  }
  throw std::runtime_error("no logical operator found");
}

}  // namespace foldqec
