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

#include <optional>
#include <vector>

#include "foldqec/pauli.hpp"

namespace foldqec {

/**
 * Span of integer vectors over Z_N kept in Howell form, so that greedy
 * reduction decides membership. Each row remembers its combination of the
 * input vectors.
 */
class ZnSpan {
 public:
  ZnSpan(int N, int length, const std::vector<std::vector<int>> &vectors);

  int modulus() const { return N_; }
  int generators() const { return m_; }
  // Coefficients a with v = sum_j a_j vectors[j], if v is in the span.
  std::optional<std::vector<int>> solve(const std::vector<int> &v) const;
  bool contains(const std::vector<int> &v) const { return solve(v).has_value(); }
  // The group order as prod N / pivot.
  std::vector<int> pivot_orders() const;
  // True if the span has exactly N^k elements.
  bool order_is_power(int k) const;
  // Reduced rows whose leading entry sits at column >= col.
  std::vector<std::vector<int>> rows_from(int col) const;

 private:
  struct Row {
    std::vector<int> v;
    std::vector<int> coef;
    int col;
  };
  int N_;
  int len_;
  int m_;
  std::vector<Row> rows_;
};

std::vector<int> symplectic(const PauliWord &P);
PauliWord from_symplectic(const std::vector<int> &v, int d);

/** Span of the generators' symplectic vectors. */
ZnSpan pauli_span(const std::vector<PauliWord> &gens);

/** Product prod_j gens[j]^{a_j} in index order, with exact phase. */
PauliWord product_of(const std::vector<PauliWord> &gens, const std::vector<int> &a);

/** Generators of {c : sum_j c_j vectors[j] = 0} over Z_N. */
std::vector<std::vector<int>> kernel(int N, int length, const std::vector<std::vector<int>> &vectors);

/** Generators of the symplectic complement of the span of `vectors`. */
std::vector<std::vector<int>> symplectic_complement(int N, int n,
                                                    const std::vector<std::vector<int>> &vectors);

/** Solve A x = b over Z_N for a dense matrix A given by rows. */
std::optional<std::vector<int>> solve_linear(int N, const std::vector<std::vector<int>> &A,
                                             const std::vector<int> &b);

}  // namespace foldqec
