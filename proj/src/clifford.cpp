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

#include "foldqec/clifford.hpp"

#include <cstdlib>
#include <utility>

namespace foldqec {

namespace {

using Images = std::vector<std::pair<PauliWord, PauliWord>>;

PauliWord word(const std::vector<int> &ld, int p, std::vector<int> x,
               std::vector<int> z) {
  PauliWord w(ld);
  w.set_phase(p);
  for (size_t i = 0; i < ld.size(); ++i) {
    w.set_x(static_cast<int>(i), x[i]);
    w.set_z(static_cast<int>(i), z[i]);
  }
  return w;
}

// Images of the local X_k, Z_k under g (dag = false) or g^dagger.
Images generator_images(GateKind kind, const std::vector<int> &ld, bool dag) {
  int d = ld[0];
  int s = dag ? -1 : 1;
  switch (kind) {
    case GateKind::X:
      return {{word(ld, 0, {1}, {0}), word(ld, -2 * s, {0}, {1})}};
    case GateKind::Z:
      return {{word(ld, 2 * s, {1}, {0}), word(ld, 0, {0}, {1})}};
    case GateKind::H:
      if (!dag) return {{word(ld, 0, {0}, {1}), word(ld, 0, {-1}, {0})}};
      return {{word(ld, 0, {0}, {-1}), word(ld, 0, {1}, {0})}};
    case GateKind::S:
      if (!dag) return {{word(ld, d - 1, {1}, {1}), word(ld, 0, {0}, {1})}};
      return {{word(ld, d + 1, {1}, {-1}), word(ld, 0, {0}, {1})}};
    case GateKind::CX:
      return {{word(ld, 0, {1, s}, {0, 0}), word(ld, 0, {0, 0}, {1, 0})},
              {word(ld, 0, {0, 1}, {0, 0}), word(ld, 0, {0, 0}, {-s, 1})}};
    case GateKind::CZ:
      return {{word(ld, 0, {1, 0}, {0, s}), word(ld, 0, {0, 0}, {1, 0})},
              {word(ld, 0, {0, 1}, {s, 0}), word(ld, 0, {0, 0}, {0, 1})}};
    case GateKind::SWAP:
      return {{word(ld, 0, {0, 1}, {0, 0}), word(ld, 0, {0, 0}, {0, 1})},
              {word(ld, 0, {1, 0}, {0, 0}), word(ld, 0, {0, 0}, {1, 0})}};
    case GateKind::CbXd:
      if (ld != std::vector<int>{2, 4}) {
        throw ShapeError("CbXd needs a qubit control and a d=4 target");
      }
      return {{word(ld, 0, {1, 2 * s}, {0, 0}), word(ld, 0, {0, 0}, {1, 0})},
              {word(ld, 0, {0, 1}, {0, 0}), word(ld, 0, {0, 0}, {1, 1})}};
    case GateKind::CdXb:
      if (ld != std::vector<int>{4, 2}) {
        throw ShapeError("CdXb needs a d=4 control and a qubit target");
      }
      return {{word(ld, 0, {1, s}, {0, 0}), word(ld, 0, {0, 0}, {1, 0})},
              {word(ld, 0, {0, 1}, {0, 0}), word(ld, 0, {0, 0}, {-2 * s, 1})}};
    default:
      throw UnsupportedGate("not a Clifford gate: " + kind_name(kind));
  }
}

PauliWord apply_images(const Images &im, const PauliWord &local) {
  PauliWord r(local.dims());
  for (int k = 0; k < local.n(); ++k) {
    if (local.x(k)) r *= im[k].first.pow(local.x(k));
    if (local.z(k)) r *= im[k].second.pow(local.z(k));
  }
  r.add_phase(local.phase());
  return r;
}

}  // namespace

PauliWord conjugate(const GateApplication &g, const PauliWord &P) {
  if (!is_clifford(g.kind)) {
    throw UnsupportedGate("not a Clifford gate: " + kind_name(g.kind));
  }
  if (static_cast<int>(g.targets.size()) != arity(g.kind)) {
    throw std::invalid_argument("wrong target count for " + g.str());
  }
  for (size_t i = 0; i < g.targets.size(); ++i) {
    int t = g.targets[i];
    if (t < 0 || t >= P.n()) throw std::out_of_range("gate target out of range");
    for (size_t j = 0; j < i; ++j) {
      if (g.targets[j] == t) throw std::invalid_argument("repeated target");
    }
  }
  PauliWord local = P.restrict_to(g.targets);
  if (g.kind != GateKind::CbXd && g.kind != GateKind::CdXb) {
    for (int d : local.dims()) {
      if (d != local.dims()[0]) throw ShapeError("gate on mixed dimensions");
    }
  }
  Images im = generator_images(g.kind, local.dims(), g.power < 0);
  if (local.is_identity_up_to_phase() || g.power == 0) return P;
  for (int k = 0; k < std::abs(g.power); ++k) local = apply_images(im, local);

  PauliWord r(P);
  for (size_t i = 0; i < g.targets.size(); ++i) {
    r.set_x(g.targets[i], local.x(static_cast<int>(i)));
    r.set_z(g.targets[i], local.z(static_cast<int>(i)));
  }
  r.add_phase(1LL * local.phase() * (P.dim() / local.dim()));
  return r;
}

CliffordMap::CliffordMap(std::vector<int> dims) : dims_(std::move(dims)) {
  for (int i = 0; i < n(); ++i) {
    img_x_.push_back(PauliWord::x_at(dims_, i));
    img_z_.push_back(PauliWord::z_at(dims_, i));
  }
}

PauliWord CliffordMap::apply(const PauliWord &P) const {
  if (P.dims() != dims_) throw ShapeError("clifford map shape mismatch");
  PauliWord r(dims_);
  for (int i = 0; i < n(); ++i) {
    if (P.x(i)) r *= img_x_[i].pow(P.x(i));
    if (P.z(i)) r *= img_z_[i].pow(P.z(i));
  }
  r.add_phase(P.phase());
  return r;
}

CliffordMap CliffordMap::after(const CliffordMap &first) const {
  CliffordMap r(*this);
  for (int i = 0; i < n(); ++i) {
    r.img_x_[i] = apply(first.img_x_[i]);
    r.img_z_[i] = apply(first.img_z_[i]);
  }
  return r;
}

void CliffordMap::then(const GateApplication &g) {
  for (int i = 0; i < n(); ++i) {
    img_x_[i] = conjugate(g, img_x_[i]);
    img_z_[i] = conjugate(g, img_z_[i]);
  }
}

bool CliffordMap::is_identity() const {
  return *this == CliffordMap(dims_);
}

CliffordMap clifford_of_circuit(const ScheduledCircuit &c) {
  CliffordMap m(c.dims);
  for (const auto &layer : c.layers) {
    for (const auto &g : layer.ops) {
      if (!is_clifford(g.kind)) {
        throw UnsupportedGate("circuit event is not a Clifford gate: " + g.str());
      }
      m.then(g);
    }
  }
  return m;
}

}  // namespace foldqec
