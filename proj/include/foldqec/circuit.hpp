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

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace foldqec {

enum class GateKind {
  X,
  Z,
  H,
  S,
  CX,
  CZ,
  SWAP,
  CbXd,
  CdXb,
  // Non-Clifford gates known only to the dense oracle.
  T,
  CS,
  CCX,
  F,
  // Non-unitary events.
  PrepZ,
  PrepX,
  MeasZ,
  MeasX,
};

int arity(GateKind k);
bool is_clifford(GateKind k);
bool is_unitary(GateKind k);
std::string kind_name(GateKind k);
GateKind kind_from_name(const std::string &s);

/** A gate (or preparation / measurement) on named sites, raised to a power. */
struct GateApplication {
  GateKind kind = GateKind::X;
  std::vector<int> targets;
  int power = 1;

  GateApplication() = default;
  GateApplication(GateKind k, std::vector<int> t, int p = 1)
      : kind(k), targets(std::move(t)), power(p) {}
  bool operator==(const GateApplication &) const = default;
  std::string str() const;
};

struct Layer {
  std::vector<GateApplication> ops;
  // Maximum planar distance between gate partners; negative marks a
  // non-local layer such as the global pairwise swap.
  int radius = 1;
};

struct ScheduledCircuit {
  std::vector<int> dims;
  // Planar slot coordinates per site; may be empty.
  std::vector<std::array<int, 2>> coords;
  // Further positions of sites drawn more than once (glued cone seam).
  std::vector<std::pair<int, std::array<int, 2>>> extra_coords;
  std::vector<Layer> layers;

  ScheduledCircuit() = default;
  explicit ScheduledCircuit(std::vector<int> d) : dims(std::move(d)) {}
  ScheduledCircuit(int n, int d) : dims(n, d) {}

  int n() const { return static_cast<int>(dims.size()); }
  int depth() const { return static_cast<int>(layers.size()); }
  Layer &add_layer(int radius = 1);
  void append(const ScheduledCircuit &other);
  int gate_count() const;
};

/** Disjointness per layer and, when coordinates exist, locality. */
std::string check_schedule(const ScheduledCircuit &c);

}  // namespace foldqec
