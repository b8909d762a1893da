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
#include <map>
#include <set>
#include <stdexcept>

#include "foldqec/scheduler.hpp"
#include "foldqec/zmod.hpp"

namespace foldqec {

namespace {

PauliWord embed_word(const PauliWord &w, const std::vector<int> &embed, int n) {
  PauliWord r(n, w.dim());
  r.set_phase(w.phase());
  for (int q = 0; q < w.n(); ++q) {
    r.set_x(embed[q], w.x(q));
    r.set_z(embed[q], w.z(q));
  }
  return r;
}

}  // namespace

StabilizerCode conversion_start_code(const Conversion &c) {
  StabilizerCode s;
  s.family = "diamond+fresh";
  s.D = c.diamond.D;
  s.d = c.diamond.d;
  s.n = c.cone.n;
  for (size_t g = 0; g < c.diamond.generators.size(); ++g) {
    s.generators.push_back(embed_word(c.diamond.generators[g], c.embed, s.n));
    s.gen_type.push_back(c.diamond.gen_type[g]);
    s.gen_pos.push_back(c.diamond.gen_pos[g]);
  }
  for (size_t k = 0; k < c.fresh.size(); ++k) {
    int q = c.fresh[k];
    char b = c.fresh_basis[k];
    s.generators.push_back(b == 'X' ? PauliWord::x_at(s.n, s.d, q) : PauliWord::z_at(s.n, s.d, q));
    s.gen_type.push_back(b);
    s.gen_pos.push_back(c.cone.qudit_pos[q]);
  }
  s.logical_x = embed_word(c.diamond.logical_x, c.embed, s.n);
  s.logical_z = embed_word(c.diamond.logical_z, c.embed, s.n);
  s.qudit_pos = c.cone.qudit_pos;
  s.qudit_dir = c.cone.qudit_dir;
  s.qudit_dir_glued = c.cone.qudit_dir_glued;
  return s;
}

Conversion conversion_diamond_to_cone(int D, int d, ConeVariant v) {
  if (v != ConeVariant::Compatible) {
    throw std::invalid_argument("the minimal cone's stabilizer group does not contain the diamond's");
  }
  // |+> everywhere except a |0> triangle beside the diamond corner where
  // the two boundary types meet.
  auto cone = build_cone(D, d, v);
  auto dia = build_diamond(D, d);
  std::set<Vec2> own(dia.qudit_pos.begin(), dia.qudit_pos.end());
  std::set<Vec2> zeros;
  if (D >= 3) zeros = {{-(D - 1), D - 3}, {-D, D - 2}, {-(D + 1), D - 3}};
  std::string basis;
  for (int q = 0; q < cone.n; ++q)
    if (!own.count(cone.qudit_pos[q])) basis += zeros.count(cone.qudit_pos[q]) ? 'Z' : 'X';
  return conversion_diamond_to_cone(D, d, basis);
}

std::string conversion_best_basis(int D, int d) {
  // Hill climb from all |+>, ranking by effective distance and then by the
  // number of deterministic generators.
  std::string basis(static_cast<size_t>(D * D - 1), 'X');
  auto score = [&](const std::string &b) {
    auto c = conversion_diamond_to_cone(D, d, b);
    int det = 0;
    for (char x : c.deterministic) det += x;
    return std::pair<int, int>{conversion_effective_distance(c), det};
  };
  auto best = score(basis);
  const size_t m = basis.size();
  auto flip = [&](size_t k) { basis[k] = basis[k] == 'X' ? 'Z' : 'X'; };
  for (bool improved = true; improved;) {
    improved = false;
    // Single and pair flips; a corner often needs two at once.
    for (size_t i = 0; i < m && !improved; ++i) {
      for (size_t j = i; j < m && !improved; ++j) {
        flip(i);
        if (j != i) flip(j);
        auto sc = score(basis);
        if (sc > best) {
          best = sc;
          improved = true;
        } else {
          flip(i);
          if (j != i) flip(j);
        }
      }
    }
  }
  return basis;
}

Conversion conversion_diamond_to_cone(int D, int d, const std::string &fresh_basis) {
  Conversion c;
  c.diamond = build_diamond(D, d);
  c.cone = build_cone(D, d, ConeVariant::Compatible);
  std::map<Vec2, int> at;
  for (int q = 0; q < c.cone.n; ++q) at[c.cone.qudit_pos[q]] = q;
  std::vector<char> used(c.cone.n, 0);
  for (int q = 0; q < c.diamond.n; ++q) {
    int k = at.at(c.diamond.qudit_pos[q]);
    c.embed.push_back(k);
    used[k] = 1;
  }
  for (int q = 0; q < c.cone.n; ++q)
    if (!used[q]) c.fresh.push_back(q);

  c.prep = ScheduledCircuit(c.cone.n, d);
  auto &layer = c.prep.add_layer();
  if (fresh_basis.size() != c.fresh.size()) throw std::invalid_argument("one basis letter per fresh qudit");
  c.fresh_basis = fresh_basis;
  for (size_t k = 0; k < c.fresh.size(); ++k)
    layer.ops.push_back({fresh_basis[k] == 'X' ? GateKind::PrepX : GateKind::PrepZ, {c.fresh[k]}});

  auto start = conversion_start_code(c);
  auto old_span = pauli_span(start.generators);
  auto new_span = pauli_span(c.cone.generators);
  auto add = [&](const PauliWord &g, const std::optional<std::vector<int>> &a) {
    c.generators.push_back(g);
    c.deterministic.push_back(a.has_value());
    if (!a) {
      c.outcome.push_back(0);
      return;
    }
    // g = w^m P with P a product of stabilizers, so the outcome is m.
    int dp = mod(g.phase() - product_of(start.generators, *a).phase(), 2 * g.dim());
    if (dp % 2) throw std::logic_error("half-integer outcome phase");
    c.outcome.push_back(dp / 2);
  };
  // Shared group = complement of (C(old) + C(new)).
  std::vector<std::vector<int>> olds, news;
  for (const auto &g : start.generators) olds.push_back(symplectic(g));
  for (const auto &g : c.cone.generators) news.push_back(symplectic(g));
  auto cent = symplectic_complement(d, c.cone.n, olds);
  for (auto &v : symplectic_complement(d, c.cone.n, news)) cent.push_back(std::move(v));
  auto shared = symplectic_complement(d, c.cone.n, cent);
  for (auto &v : ZnSpan(d, 2 * c.cone.n, shared).rows_from(0)) {
    auto a = new_span.solve(v);
    if (!a) throw std::logic_error("shared element outside the cone group");
    add(product_of(c.cone.generators, *a), old_span.solve(v));
  }
  for (const auto &g : c.cone.generators) {
    auto a = old_span.solve(symplectic(g));
    if (!a) add(g, a);
  }
  return c;
}

int conversion_effective_distance(const Conversion &c) {
  const int n = c.cone.n, d = c.cone.d;
  auto start = conversion_start_code(c);
  int best = n + 1;
  for (char type : {'X', 'Z'}) {
    std::vector<PauliWord> checks, gauge;
    for (size_t g = 0; g < c.generators.size(); ++g)
      if (c.deterministic[g]) checks.push_back(c.generators[g]);
    for (size_t g = 0; g < c.cone.generators.size(); ++g)
      if (c.cone.gen_type[g] == type) gauge.push_back(c.cone.generators[g]);
    for (size_t g = 0; g < start.generators.size(); ++g)
      if (start.gen_type[g] == type) gauge.push_back(start.generators[g]);
    auto gspan = pauli_span(gauge);
    for (int w = 1; w < best; ++w) {
      std::vector<int> sel(n, 0);
      std::fill(sel.end() - w, sel.end(), 1);
      bool found = false;
      do {
        std::vector<int> sup;
        for (int q = 0; q < n; ++q)
          if (sel[q]) sup.push_back(q);
        std::vector<int> e(w, 1);
        while (!found) {
          PauliWord P(n, d);
          for (int k = 0; k < w; ++k) {
            if (type == 'X') P.set_x(sup[k], e[k]);
            else P.set_z(sup[k], e[k]);
          }
          bool silent = true;
          for (const auto &g : checks) {
            if (commutator_exponent(g, P)) {
              silent = false;
              break;
            }
          }
          if (silent && !gspan.contains(symplectic(P))) found = true;
          int k = 0;
          while (k < w && ++e[k] == d) e[k++] = 1;
          if (k == w) break;
        }
      } while (!found && std::next_permutation(sel.begin(), sel.end()));
      if (found) {
        best = w;
        break;
      }
    }
  }
  return best;
}

}  // namespace foldqec
