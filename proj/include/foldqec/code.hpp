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
#include <vector>

#include "foldqec/pauli.hpp"

namespace foldqec {

using Vec2 = std::array<int, 2>;

inline int cross(const Vec2 &a, const Vec2 &b) { return a[0] * b[1] - a[1] * b[0]; }
inline Vec2 operator+(const Vec2 &a, const Vec2 &b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2 &a, const Vec2 &b) { return {a[0] - b[0], a[1] - b[1]}; }

/**
 * One drawing of a directed edge. Coordinates are in the lattice frame where
 * qudits sit at even x + y and generators at odd x + y; `dir` points from the
 * midpoint to the head. A qudit glued along a seam is drawn more than once.
 */
struct EdgeDraw {
  int qudit = 0;
  Vec2 mid{};
  Vec2 dir{};
};

struct Cell {
  Vec2 center{};
  std::vector<int> draws;
};

struct DirectedSurfaceGraph {
  int n = 0;
  std::vector<EdgeDraw> draws;
  std::vector<Cell> vertices;
  std::vector<Cell> faces;
};

struct StabilizerCode {
  std::string family;
  int D = 0;
  int d = 2;
  int n = 0;
  std::vector<PauliWord> generators;
  std::vector<char> gen_type;  // 'X' or 'Z'
  std::vector<Vec2> gen_pos;
  PauliWord logical_x;
  PauliWord logical_z;
  std::vector<Vec2> qudit_pos;
  std::vector<Vec2> qudit_dir;
  // Direction in the last drawing; differs from qudit_dir only on glued seams.
  std::vector<Vec2> qudit_dir_glued;
  DirectedSurfaceGraph graph;

  int n_vertices() const;
  int n_faces() const;
  std::vector<PauliWord> x_generators() const;
  std::vector<PauliWord> z_generators() const;
};

enum class Role { Fold, Top, Bottom };
enum class PairType { Untyped, Light, Dark };

struct FoldLayout {
  int n = 0;
  std::vector<Role> role;
  std::vector<int> partner;  // fixed point for fold qudits
  std::vector<PairType> type;
  std::vector<Vec2> cluster;  // planar cell holding the qudit's pair slot
  std::vector<int> gen_mirror;  // generator paired by the reflection
  // Reflection acting on lattice-frame vectors.
  std::array<int, 4> reflect{0, 1, 1, 0};
  // Sign relating the cross product to the light/dark labels; the compatible
  // cone folds along the opposite diagonal of the lattice frame.
  int handedness = 1;
  // Fold qudits whose dagger-side phase gate needs an extra Z^{d-2}.
  std::vector<char> phase_fix;

  int n_fold() const;
  int n_pairs() const;
  Vec2 reflect_vec(const Vec2 &v) const;
};

enum class ConeVariant { Minimal, Compatible };

StabilizerCode code_from_graph(const DirectedSurfaceGraph &g, int d);

/** Empty string if the code satisfies every structural invariant. */
std::string validate_code(const StabilizerCode &code);

StabilizerCode build_square(int D, int d);
StabilizerCode build_diamond(int D, int d);
StabilizerCode build_cone(int D, int d, ConeVariant v);
FoldLayout fold_cone(const StabilizerCode &cone);
FoldLayout fold_square(const StabilizerCode &code);
StabilizerCode build_steane(int d);

/** Types each pair and fold qudit by the sign of the overlapping cross product. */
FoldLayout assign_bipartition(const StabilizerCode &code, FoldLayout layout);

/** Star bipartition of the Steane code: true for the X-dagger set. */
std::vector<bool> steane_star_set();

/**
 * X-type (or Z-type) string on `support` commuting with all opposite-type
 * generators, with exponents fixed by propagation from the first site.
 */
PauliWord string_operator(const StabilizerCode &code, const std::vector<int> &support,
                          char type);

int code_distance(const StabilizerCode &code);
int brute_force_distance(const StabilizerCode &code);

/** The logical-qudit stabilizer membership helpers. */
bool in_stabilizer_group(const StabilizerCode &code, const PauliWord &P,
                         bool with_phase = true);

/** Relabel qudits: new index of old qudit q is perm[q]. */
StabilizerCode relabel(const StabilizerCode &code, const std::vector<int> &perm);

std::string cone_variant_name(ConeVariant v);

}  // namespace foldqec
