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

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace foldqec {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int mod(long long a, int n);
int lcm_of(const std::vector<int> &dims);

/**
 * Phased tensor product of X and Z powers.
 *
 * The word is w^{p/2} * prod_i X_i^{x_i} Z_i^{z_i} with w = exp(2 pi i / L),
 * where L is the lcm of the site dimensions. For a uniform register L = d.
 */
class PauliWord {
 public:
  PauliWord() = default;
  PauliWord(int n, int d);
  explicit PauliWord(std::vector<int> dims);

  static PauliWord identity(int n, int d) { return PauliWord(n, d); }
  static PauliWord x_at(const std::vector<int> &dims, int site, int power = 1);
  static PauliWord z_at(const std::vector<int> &dims, int site, int power = 1);
  static PauliWord x_at(int n, int d, int site, int power = 1);
  static PauliWord z_at(int n, int d, int site, int power = 1);

  int n() const { return static_cast<int>(dims_.size()); }
  // Uniform dimension, or the lcm for mixed registers.
  int dim() const { return L_; }
  const std::vector<int> &dims() const { return dims_; }
  bool uniform() const;

  int phase() const { return p_; }
  int x(int i) const { return x_[i]; }
  int z(int i) const { return z_[i]; }
  const std::vector<int> &xs() const { return x_; }
  const std::vector<int> &zs() const { return z_; }

  void set_phase(long long p) { p_ = mod(p, 2 * L_); }
  void add_phase(long long p) { p_ = mod(p_ + p, 2 * L_); }
  void set_x(int i, long long v) { x_[i] = mod(v, dims_[i]); }
  void set_z(int i, long long v) { z_[i] = mod(v, dims_[i]); }

  bool is_identity() const;
  bool is_identity_up_to_phase() const;
  int weight() const;
  std::vector<int> support() const;

  PauliWord operator*(const PauliWord &o) const;
  PauliWord &operator*=(const PauliWord &o);
  bool operator==(const PauliWord &o) const = default;
  bool operator<(const PauliWord &o) const;

  PauliWord adjoint() const;
  PauliWord pow(long long k) const;
  PauliWord without_phase() const;

  // Sub-word on the given sites (phase dropped) and its inverse splice.
  PauliWord restrict_to(const std::vector<int> &sites) const;

  std::string str() const;
  static PauliWord parse(const std::string &text, int d);
  static PauliWord parse(const std::string &text, const std::vector<int> &dims);

 private:
  std::vector<int> dims_;
  int L_ = 2;
  int p_ = 0;
  std::vector<int> x_;
  std::vector<int> z_;
};

/** c with P Q = w^c Q P, in Z_L. */
int commutator_exponent(const PauliWord &P, const PauliWord &Q);

PauliWord pauli_mul(const PauliWord &P, const PauliWord &Q);

}  // namespace foldqec
