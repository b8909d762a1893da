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

#include "foldqec/pauli.hpp"

#include <numeric>
#include <sstream>

namespace foldqec {

int mod(long long a, int n) {
  long long r = a % n;
  return static_cast<int>(r < 0 ? r + n : r);
}

int lcm_of(const std::vector<int> &dims) {
  int L = 1;
  for (int d : dims) L = std::lcm(L, d);
  return L;
}

PauliWord::PauliWord(int n, int d) : PauliWord(std::vector<int>(n, d)) {}

PauliWord::PauliWord(std::vector<int> dims)
    : dims_(std::move(dims)), x_(dims_.size(), 0), z_(dims_.size(), 0) {
  for (int d : dims_) {
    if (d < 2) throw ShapeError("qudit dimension must be at least 2");
  }
  L_ = dims_.empty() ? 2 : lcm_of(dims_);
}

PauliWord PauliWord::x_at(const std::vector<int> &dims, int site, int power) {
  PauliWord w(dims);
  w.set_x(site, power);
  return w;
}

PauliWord PauliWord::z_at(const std::vector<int> &dims, int site, int power) {
  PauliWord w(dims);
  w.set_z(site, power);
  return w;
}

PauliWord PauliWord::x_at(int n, int d, int site, int power) {
  return x_at(std::vector<int>(n, d), site, power);
}

PauliWord PauliWord::z_at(int n, int d, int site, int power) {
  return z_at(std::vector<int>(n, d), site, power);
}

bool PauliWord::uniform() const {
  for (int d : dims_) {
    if (d != dims_[0]) return false;
  }
  return true;
}

bool PauliWord::is_identity() const {
  return p_ == 0 && is_identity_up_to_phase();
}

bool PauliWord::is_identity_up_to_phase() const {
  for (int i = 0; i < n(); ++i) {
    if (x_[i] || z_[i]) return false;
  }
  return true;
}

int PauliWord::weight() const {
  int w = 0;
  for (int i = 0; i < n(); ++i) w += (x_[i] || z_[i]) ? 1 : 0;
  return w;
}

std::vector<int> PauliWord::support() const {
  std::vector<int> s;
  for (int i = 0; i < n(); ++i) {
    if (x_[i] || z_[i]) s.push_back(i);
  }
  return s;
}

static void check_shape(const PauliWord &P, const PauliWord &Q) {
  if (P.dims() != Q.dims()) throw ShapeError("pauli shape mismatch");
}

PauliWord PauliWord::operator*(const PauliWord &o) const {
  PauliWord r(*this);
  r *= o;
  return r;
}

PauliWord &PauliWord::operator*=(const PauliWord &o) {
  check_shape(*this, o);
  long long ph = p_ + o.p_;
  for (int i = 0; i < n(); ++i) {
    // Z^b X^c = w^{bc} X^c Z^b
    ph += 2LL * z_[i] * o.x_[i] * (L_ / dims_[i]);
    x_[i] = mod(x_[i] + o.x_[i], dims_[i]);
    z_[i] = mod(z_[i] + o.z_[i], dims_[i]);
  }
  p_ = mod(ph, 2 * L_);
  return *this;
}

bool PauliWord::operator<(const PauliWord &o) const {
  if (x_ != o.x_) return x_ < o.x_;
  if (z_ != o.z_) return z_ < o.z_;
  return p_ < o.p_;
}

PauliWord PauliWord::adjoint() const {
  PauliWord r(dims_);
  long long ph = -p_;
  for (int i = 0; i < n(); ++i) {
    ph += 2LL * x_[i] * z_[i] * (L_ / dims_[i]);
    r.x_[i] = mod(-x_[i], dims_[i]);
    r.z_[i] = mod(-z_[i], dims_[i]);
  }
  r.p_ = mod(ph, 2 * L_);
  return r;
}

PauliWord PauliWord::pow(long long k) const {
  PauliWord base = k < 0 ? adjoint() : *this;
  if (k < 0) k = -k;
  PauliWord r(dims_);
  while (k > 0) {
    if (k & 1) r *= base;
    base *= base;
    k >>= 1;
  }
  return r;
}

PauliWord PauliWord::without_phase() const {
  PauliWord r(*this);
  r.p_ = 0;
  return r;
}

PauliWord PauliWord::restrict_to(const std::vector<int> &sites) const {
  std::vector<int> d;
  for (int s : sites) d.push_back(dims_.at(s));
  PauliWord r(d);
  for (size_t k = 0; k < sites.size(); ++k) {
    r.x_[k] = x_[sites[k]];
    r.z_[k] = z_[sites[k]];
  }
  return r;
}

std::string PauliWord::str() const {
  std::ostringstream os;
  os << "w^{" << p_ << "}/2 *";
  for (int i = 0; i < n(); ++i) {
    os << (i ? " ⊗ " : " ") << "X^{" << x_[i] << "}Z^{" << z_[i] << "}";
  }
  return os.str();
}

PauliWord PauliWord::parse(const std::string &text, int d) {
  int n = 0;
  for (size_t pos = text.find("X^{"); pos != std::string::npos;
       pos = text.find("X^{", pos + 1)) {
    ++n;
  }
  return parse(text, std::vector<int>(n, d));
}

static long long read_braced(const std::string &s, size_t &pos,
                             const std::string &tag) {
  size_t at = s.find(tag, pos);
  if (at == std::string::npos) throw std::invalid_argument("bad pauli text");
  at += tag.size();
  size_t end = s.find('}', at);
  if (end == std::string::npos) throw std::invalid_argument("bad pauli text");
  pos = end + 1;
  return std::stoll(s.substr(at, end - at));
}

PauliWord PauliWord::parse(const std::string &text,
                           const std::vector<int> &dims) {
  PauliWord r(dims);
  size_t pos = 0;
  r.set_phase(read_braced(text, pos, "w^{"));
  for (int i = 0; i < r.n(); ++i) {
    r.set_x(i, read_braced(text, pos, "X^{"));
    r.set_z(i, read_braced(text, pos, "Z^{"));
  }
  if (text.find("X^{", pos) != std::string::npos) {
    throw ShapeError("pauli text longer than register");
  }
  return r;
}

int commutator_exponent(const PauliWord &P, const PauliWord &Q) {
  check_shape(P, Q);
  long long c = 0;
  int L = P.dim();
  for (int i = 0; i < P.n(); ++i) {
    c += (1LL * P.z(i) * Q.x(i) - 1LL * P.x(i) * Q.z(i)) * (L / P.dims()[i]);
  }
  return mod(c, L);
}

PauliWord pauli_mul(const PauliWord &P, const PauliWord &Q) { return P * Q; }

}  // namespace foldqec
