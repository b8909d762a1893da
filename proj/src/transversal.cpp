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

#include "foldqec/transversal.hpp"

#include <stdexcept>

#include "foldqec/clifford.hpp"
#include "foldqec/zmod.hpp"

namespace foldqec {

namespace {

PauliWord shift(const PauliWord &w, int n_total, int offset) {
  PauliWord r(n_total, w.dim());
  r.set_phase(w.phase());
  for (int q = 0; q < w.n(); ++q) {
    r.set_x(q + offset, w.x(q));
    r.set_z(q + offset, w.z(q));
  }
  return r;
}

int power_for(PairType t, int dark, int light) {
  if (t == PairType::Untyped) throw std::invalid_argument("layout is not typed");
  return t == PairType::Dark ? dark : light;
}

}  // namespace

CodeSpace CodeSpace::of(const StabilizerCode &c) {
  return CodeSpace{c.n, c.d, c.generators, {c.logical_x}, {c.logical_z}};
}

CodeSpace CodeSpace::stack(const StabilizerCode &a, const StabilizerCode &b) {
  if (a.d != b.d) throw std::invalid_argument("stacked codes need equal d");
  CodeSpace s;
  s.n = a.n + b.n;
  s.d = a.d;
  for (const auto &g : a.generators) s.generators.push_back(shift(g, s.n, 0));
  for (const auto &g : b.generators) s.generators.push_back(shift(g, s.n, a.n));
  s.logical_x = {shift(a.logical_x, s.n, 0), shift(b.logical_x, s.n, a.n)};
  s.logical_z = {shift(a.logical_z, s.n, 0), shift(b.logical_z, s.n, a.n)};
  return s;
}

TransversalConvention h_convention() { return TransversalConvention{1, -1, 1, -1, 1, -1}; }
TransversalConvention s_convention() { return TransversalConvention{1, -1, 1, -1, 1, -1}; }

ScheduledCircuit logical_H(const FoldLayout &layout, int d, const TransversalConvention &c) {
  ScheduledCircuit circ(layout.n, d);
  Layer one{{}, 0}, l2{{}, -1};
  for (int q = 0; q < layout.n; ++q) {
    PairType t = layout.type[q];
    if (layout.role[q] == Role::Fold) {
      one.ops.push_back({GateKind::H, {q}, power_for(t, c.fold_dark, c.fold_light)});
    } else if (layout.role[q] == Role::Top) {
      int p = layout.partner[q];
      one.ops.push_back({GateKind::H, {q}, power_for(t, c.top_dark, c.top_light)});
      one.ops.push_back({GateKind::H, {p}, power_for(t, c.bottom_dark, c.bottom_light)});
      l2.ops.push_back({GateKind::SWAP, {q, p}});
    }
  }
  circ.layers = {one, l2};
  return circ;
}

ScheduledCircuit logical_S(const FoldLayout &layout, int d, const TransversalConvention &c) {
  ScheduledCircuit circ(layout.n, d);
  Layer one{{}, -1}, fix{{}, 0};
  for (int q = 0; q < layout.n; ++q) {
    PairType t = layout.type[q];
    if (layout.role[q] == Role::Fold) {
      int pw = power_for(t, c.fold_dark, c.fold_light);
      one.ops.push_back({GateKind::S, {q}, pw});
      if (pw < 0 && !layout.phase_fix.empty() && layout.phase_fix[q] && d > 2) {
        fix.ops.push_back({GateKind::Z, {q}, d - 2});
      }
    } else if (layout.role[q] == Role::Top) {
      one.ops.push_back({GateKind::CZ, {q, layout.partner[q]}, power_for(t, c.top_dark, c.top_light)});
    }
  }
  circ.layers.push_back(one);
  if (!fix.ops.empty()) circ.layers.push_back(fix);
  return circ;
}

ScheduledCircuit transversal_CX(const StabilizerCode &ctrl, const StabilizerCode &tgt) {
  if (ctrl.family != tgt.family || ctrl.D != tgt.D || ctrl.d != tgt.d || ctrl.n != tgt.n) {
    throw std::invalid_argument("transversal CX needs matching codes");
  }
  ScheduledCircuit circ(2 * ctrl.n, ctrl.d);
  Layer &l = circ.layers.emplace_back(Layer{{}, -1});
  for (int q = 0; q < ctrl.n; ++q) l.ops.push_back({GateKind::CX, {q, q + ctrl.n}});
  return circ;
}

ScheduledCircuit steane_H(int d) {
  ScheduledCircuit c(7, d);
  auto star = steane_star_set();
  Layer &l = c.add_layer(0);
  for (int q = 0; q < 7; ++q) l.ops.push_back({GateKind::H, {q}, star[q] ? -1 : 1});
  return c;
}

ScheduledCircuit steane_S(int d) {
  ScheduledCircuit c(7, d);
  auto star = steane_star_set();
  Layer &l = c.add_layer(0);
  for (int q = 0; q < 7; ++q) l.ops.push_back({GateKind::S, {q}, star[q] ? -1 : 1});
  if (d > 2) {
    Layer &z = c.add_layer(0);
    for (int q = 0; q < 7; ++q)
      if (star[q]) z.ops.push_back({GateKind::Z, {q}, d - 2});
  }
  return c;
}

ScheduledCircuit steane_M(int d) {
  ScheduledCircuit c(14, d);
  auto star = steane_star_set();
  Layer one{{}, 0}, s{{}, -1};
  for (int q = 0; q < 7; ++q) {
    one.ops.push_back({GateKind::H, {q}, star[q] ? -1 : 1});
    one.ops.push_back({GateKind::H, {q + 7}, star[q] ? -1 : 1});
    s.ops.push_back({GateKind::SWAP, {q, q + 7}});
  }
  c.layers = {one, s};
  return c;
}

ScheduledCircuit steane_CZ(int d) {
  ScheduledCircuit c(14, d);
  auto star = steane_star_set();
  Layer &l = c.layers.emplace_back(Layer{{}, -1});
  for (int q = 0; q < 7; ++q) l.ops.push_back({GateKind::CZ, {q, q + 7}, star[q] ? -1 : 1});
  return c;
}

ScheduledCircuit strongly_transversal(GateKind k, int n, int d) {
  ScheduledCircuit c(n, d);
  Layer &l = c.add_layer(0);
  for (int q = 0; q < n; ++q) l.ops.push_back({k, {q}});
  return c;
}

LogicalImage logical_image(int k, std::vector<int> a, std::vector<int> b, int phase) {
  (void)k;
  return LogicalImage{std::move(a), std::move(b), phase};
}

bool decompose_logical(const CodeSpace &space, const PauliWord &image, LogicalImage &out) {
  int k = static_cast<int>(space.logical_x.size());
  out.a.assign(k, 0);
  out.b.assign(k, 0);
  PauliWord L(space.n, space.d);
  for (int i = 0; i < k; ++i) {
    out.a[i] = commutator_exponent(space.logical_z[i], image);
    out.b[i] = commutator_exponent(image, space.logical_x[i]);
  }
  for (int i = 0; i < k; ++i) L *= space.logical_x[i].pow(out.a[i]);
  for (int i = 0; i < k; ++i) L *= space.logical_z[i].pow(out.b[i]);
  PauliWord residual = L.adjoint() * image;
  auto span = pauli_span(space.generators);
  auto coef = span.solve(symplectic(residual));
  if (!coef) return false;
  PauliWord s = product_of(space.generators, *coef);
  // image = w^{p/2} L s
  PauliWord ls = L * s;
  out.phase = mod(image.phase() - ls.phase(), 2 * space.d);
  return true;
}

LogicalAction verify_logical_clifford(const ScheduledCircuit &c, const CodeSpace &space) {
  LogicalAction act;
  if (c.n() != space.n) throw std::invalid_argument("circuit does not match code");
  CliffordMap m = clifford_of_circuit(c);
  auto span = pauli_span(space.generators);
  for (size_t g = 0; g < space.generators.size(); ++g) {
    PauliWord img = m.apply(space.generators[g]);
    auto coef = span.solve(symplectic(img));
    if (!coef || product_of(space.generators, *coef) != img) {
      act.witness_generator = static_cast<int>(g);
      act.message = coef ? "generator image has a wrong phase" : "generator image leaves the stabilizer group";
      return act;
    }
  }
  for (size_t i = 0; i < space.logical_x.size(); ++i) {
    LogicalImage xi, zi;
    if (!decompose_logical(space, m.apply(space.logical_x[i]), xi) ||
        !decompose_logical(space, m.apply(space.logical_z[i]), zi)) {
      act.message = "logical image is not a logical Pauli";
      return act;
    }
    act.x_images.push_back(xi);
    act.z_images.push_back(zi);
  }
  act.valid = true;
  return act;
}

LogicalAction verify_logical_clifford(const ScheduledCircuit &c, const StabilizerCode &code) {
  return verify_logical_clifford(c, CodeSpace::of(code));
}

bool respects_subsystems(const ScheduledCircuit &c, const FoldLayout &layout) {
  for (const auto &l : c.layers) {
    for (const auto &g : l.ops) {
      for (int q : g.targets) {
        if (q != g.targets[0] && q != layout.partner[g.targets[0]]) return false;
      }
    }
  }
  return true;
}

std::vector<GateCheck> verify_code_gates(const StabilizerCode &code) {
  int d = code.d;
  std::vector<GateCheck> out;
  auto check = [&](const std::string &name, const LogicalAction &a,
                   const std::vector<LogicalImage> &x, const std::vector<LogicalImage> &z) {
    GateCheck g{name, true, a.valid && a.x_images == x && a.z_images == z, a};
    out.push_back(g);
  };
  auto one = [](int a, int b, int p) { return LogicalImage{{a}, {b}, p}; };
  if (code.family == "steane") {
    check("H", verify_logical_clifford(steane_H(d), code), {one(0, 1, 0)}, {one(d - 1, 0, 0)});
    check("S", verify_logical_clifford(steane_S(d), code), {one(1, 1, d - 1)}, {one(0, 1, 0)});
    auto space = CodeSpace::stack(code, code);
    check("M", verify_logical_clifford(steane_M(d), space),
          {LogicalImage{{0, 0}, {0, 1}, 0}, LogicalImage{{0, 0}, {1, 0}, 0}},
          {LogicalImage{{0, d - 1}, {0, 0}, 0}, LogicalImage{{d - 1, 0}, {0, 0}, 0}});
    check("CZ", verify_logical_clifford(steane_CZ(d), space),
          {LogicalImage{{1, 0}, {0, 1}, 0}, LogicalImage{{0, 1}, {1, 0}, 0}},
          {LogicalImage{{0, 0}, {1, 0}, 0}, LogicalImage{{0, 0}, {0, 1}, 0}});
    return out;
  }
  FoldLayout layout;
  if (code.family == "square") layout = fold_square(code);
  else if (code.family == "cone-compatible" || code.family == "cone-minimal") layout = fold_cone(code);
  else throw std::invalid_argument("no folded gates for family " + code.family);
  layout = assign_bipartition(code, layout);
  check("H", verify_logical_clifford(logical_H(layout, d), code), {one(0, 1, 0)}, {one(d - 1, 0, 0)});
  // -w^{-1/2} = w^{(d-1)/2}
  check("S", verify_logical_clifford(logical_S(layout, d), code), {one(1, 1, d - 1)}, {one(0, 1, 0)});
  auto naive = verify_logical_clifford(strongly_transversal(GateKind::S, code.n, d), code);
  out.push_back(GateCheck{"naive_S", false, !naive.valid && naive.witness_generator >= 0, naive});
  return out;
}

}  // namespace foldqec
