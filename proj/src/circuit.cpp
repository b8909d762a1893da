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

#include "foldqec/circuit.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace foldqec {

namespace {

const std::map<GateKind, std::string> &names() {
  static const std::map<GateKind, std::string> m = {
      {GateKind::X, "X"},         {GateKind::Z, "Z"},
      {GateKind::H, "H"},         {GateKind::S, "S"},
      {GateKind::CX, "CX"},       {GateKind::CZ, "CZ"},
      {GateKind::SWAP, "SWAP"},   {GateKind::CbXd, "CbXd"},
      {GateKind::CdXb, "CdXb"},   {GateKind::T, "T"},
      {GateKind::CS, "CS"},       {GateKind::CCX, "CCX"},
      {GateKind::F, "F"},         {GateKind::PrepZ, "PrepZ"},
      {GateKind::PrepX, "PrepX"}, {GateKind::MeasZ, "MeasZ"},
      {GateKind::MeasX, "MeasX"},
  };
  return m;
}

}  // namespace

int arity(GateKind k) {
  switch (k) {
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::CbXd:
    case GateKind::CdXb:
    case GateKind::CS:
    case GateKind::F:
      return 2;
    case GateKind::CCX:
      return 3;
    default:
      return 1;
  }
}

bool is_clifford(GateKind k) {
  switch (k) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::H:
    case GateKind::S:
    case GateKind::CX:
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::CbXd:
    case GateKind::CdXb:
      return true;
    default:
      return false;
  }
}

bool is_unitary(GateKind k) {
  return k != GateKind::PrepZ && k != GateKind::PrepX &&
         k != GateKind::MeasZ && k != GateKind::MeasX;
}

std::string kind_name(GateKind k) { return names().at(k); }

GateKind kind_from_name(const std::string &s) {
  for (const auto &[k, v] : names()) {
    if (v == s) return k;
  }
  throw std::invalid_argument("unknown gate kind: " + s);
}

std::string GateApplication::str() const {
  std::ostringstream os;
  os << kind_name(kind);
  if (power != 1) os << "^" << power;
  os << "(";
  for (size_t i = 0; i < targets.size(); ++i) os << (i ? "," : "") << targets[i];
  os << ")";
  return os.str();
}

Layer &ScheduledCircuit::add_layer(int radius) {
  layers.push_back(Layer{{}, radius});
  return layers.back();
}

void ScheduledCircuit::append(const ScheduledCircuit &other) {
  if (other.dims != dims) throw std::invalid_argument("register mismatch");
  layers.insert(layers.end(), other.layers.begin(), other.layers.end());
}

int ScheduledCircuit::gate_count() const {
  int c = 0;
  for (const auto &l : layers) c += static_cast<int>(l.ops.size());
  return c;
}

std::string check_schedule(const ScheduledCircuit &c) {
  for (size_t t = 0; t < c.layers.size(); ++t) {
    std::set<int> used;
    for (const auto &g : c.layers[t].ops) {
      if (static_cast<int>(g.targets.size()) != arity(g.kind)) {
        return "layer " + std::to_string(t) + ": bad arity " + g.str();
      }
      for (int q : g.targets) {
        if (q < 0 || q >= c.n()) {
          return "layer " + std::to_string(t) + ": site out of range";
        }
        if (!used.insert(q).second) {
          return "layer " + std::to_string(t) + ": site " + std::to_string(q) +
                 " used twice";
        }
      }
      int r = c.layers[t].radius;
      if (r >= 0 && !c.coords.empty() && g.targets.size() == 2) {
        std::vector<std::array<int, 2>> pa{c.coords[g.targets[0]]}, pb{c.coords[g.targets[1]]};
        for (const auto &[s, pos] : c.extra_coords) {
          if (s == g.targets[0]) pa.push_back(pos);
          if (s == g.targets[1]) pb.push_back(pos);
        }
        int dist = std::numeric_limits<int>::max();
        for (const auto &a : pa)
          for (const auto &b : pb) dist = std::min(dist, std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]));
        if (dist > r) {
          return "layer " + std::to_string(t) + ": non-local gate " + g.str();
        }
      }
    }
  }
  return "";
}

}  // namespace foldqec
