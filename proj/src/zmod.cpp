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

#include "foldqec/zmod.hpp"

#include <map>
#include <numeric>
#include <stdexcept>

namespace foldqec {

namespace {

// g = gcd(a, b) = s a + t b
long long ext_gcd(long long a, long long b, long long &s, long long &t) {
  if (b == 0) {
    s = 1;
    t = 0;
    return a;
  }
  long long s1, t1;
  long long g = ext_gcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

// A unit u with u p = gcd(p, N) mod N.
int normalizing_unit(int p, int N) {
  int g = std::gcd(p, N);
  for (int u = 1; u < N; ++u) {
    if (std::gcd(u, N) == 1 && mod(1LL * u * p, N) == g) return u;
  }
  return 1;
}

void combine(std::vector<int> &dst, const std::vector<int> &src, long long k, int N) {
  for (size_t i = 0; i < dst.size(); ++i) dst[i] = mod(dst[i] + k * src[i], N);
}

}  // namespace

ZnSpan::ZnSpan(int N, int length, const std::vector<std::vector<int>> &vectors)
    : N_(N), len_(length), m_(static_cast<int>(vectors.size())) {
  std::vector<Row> work;
  for (int j = 0; j < m_; ++j) {
    if (static_cast<int>(vectors[j].size()) != len_) throw ShapeError("vector length");
    Row r{std::vector<int>(len_), std::vector<int>(m_, 0), -1};
    for (int i = 0; i < len_; ++i) r.v[i] = mod(vectors[j][i], N_);
    r.coef[j] = 1;
    work.push_back(std::move(r));
  }
  for (int c = 0; c < len_ && !work.empty(); ++c) {
    // Fold every row's entry in column c into work[0] by unimodular steps.
    size_t piv = 0;
    for (size_t i = 0; i < work.size(); ++i) {
      if (work[i].v[c]) {
        piv = i;
        break;
      }
    }
    if (!work[piv].v[c]) continue;
    std::swap(work[0], work[piv]);
    for (size_t i = 1; i < work.size(); ++i) {
      long long a = work[0].v[c], b = work[i].v[c];
      if (!b) continue;
      long long s, t;
      long long g = ext_gcd(a, b, s, t);
      Row r0 = work[0], ri = work[i];
      // new0 = s r0 + t ri ; newi = (b/g) r0 - (a/g) ri
      for (int k = 0; k < len_; ++k) {
        work[0].v[k] = mod(s * r0.v[k] + t * ri.v[k], N_);
        work[i].v[k] = mod((b / g) * r0.v[k] - (a / g) * ri.v[k], N_);
      }
      for (int k = 0; k < m_; ++k) {
        work[0].coef[k] = mod(s * r0.coef[k] + t * ri.coef[k], N_);
        work[i].coef[k] = mod((b / g) * r0.coef[k] - (a / g) * ri.coef[k], N_);
      }
    }
    Row p = work[0];
    work.erase(work.begin());
    int u = normalizing_unit(p.v[c], N_);
    for (auto &x : p.v) x = mod(1LL * x * u, N_);
    for (auto &x : p.coef) x = mod(1LL * x * u, N_);
    p.col = c;
    int g = p.v[c];
    if (g != 1) {
      Row ann = p;
      for (auto &x : ann.v) x = mod(1LL * x * (N_ / g), N_);
      for (auto &x : ann.coef) x = mod(1LL * x * (N_ / g), N_);
      bool nonzero = false;
      for (int x : ann.v) nonzero = nonzero || x;
      if (nonzero) work.push_back(std::move(ann));
    }
    rows_.push_back(std::move(p));
    std::erase_if(work, [](const Row &r) {
      for (int x : r.v) {
        if (x) return false;
      }
      return true;
    });
  }
}

std::optional<std::vector<int>> ZnSpan::solve(const std::vector<int> &v) const {
  if (static_cast<int>(v.size()) != len_) throw ShapeError("vector length");
  std::vector<int> rem(len_);
  for (int i = 0; i < len_; ++i) rem[i] = mod(v[i], N_);
  std::vector<int> coef(m_, 0);
  size_t ri = 0;
  for (int c = 0; c < len_; ++c) {
    if (ri < rows_.size() && rows_[ri].col == c) {
      const Row &r = rows_[ri++];
      int g = r.v[c];
      if (rem[c] % g) return std::nullopt;
      long long k = rem[c] / g;
      combine(rem, r.v, -k, N_);
      combine(coef, r.coef, k, N_);
    }
    if (rem[c]) return std::nullopt;
  }
  return coef;
}

std::vector<int> ZnSpan::pivot_orders() const {
  std::vector<int> o;
  for (const auto &r : rows_) o.push_back(N_ / r.v[r.col]);
  return o;
}

bool ZnSpan::order_is_power(int k) const {
  // Compare prime exponents of prod N / g against those of N^k.
  auto factor = [](int x, std::map<int, long long> &acc, long long mult) {
    for (int p = 2; p * p <= x; ++p) {
      while (x % p == 0) {
        acc[p] += mult;
        x /= p;
      }
    }
    if (x > 1) acc[x] += mult;
  };
  std::map<int, long long> have, want;
  for (int o : pivot_orders()) factor(o, have, 1);
  factor(N_, want, k);
  std::erase_if(have, [](const auto &kv) { return kv.second == 0; });
  std::erase_if(want, [](const auto &kv) { return kv.second == 0; });
  return have == want;
}

std::vector<std::vector<int>> ZnSpan::rows_from(int col) const {
  std::vector<std::vector<int>> out;
  for (const auto &r : rows_)
    if (r.col >= col) out.push_back(r.v);
  return out;
}

std::vector<std::vector<int>> kernel(int N, int length, const std::vector<std::vector<int>> &vectors) {
  // In Howell form the rows vanishing on the first `length` columns span
  // every combination with that prefix zero.
  const int m = static_cast<int>(vectors.size());
  std::vector<std::vector<int>> aug;
  for (int j = 0; j < m; ++j) {
    std::vector<int> v(vectors[j]);
    v.resize(length + m, 0);
    v[length + j] = 1;
    aug.push_back(std::move(v));
  }
  std::vector<std::vector<int>> out;
  for (auto &r : ZnSpan(N, length + m, aug).rows_from(length)) out.emplace_back(r.begin() + length, r.end());
  return out;
}

std::vector<std::vector<int>> symplectic_complement(int N, int n,
                                                    const std::vector<std::vector<int>> &vectors) {
  // Column i of the form matrix: w(e_i, s) for every s.
  const int m = static_cast<int>(vectors.size());
  std::vector<std::vector<int>> cols(2 * n, std::vector<int>(m));
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      cols[i][j] = vectors[j][n + i];
      cols[n + i][j] = mod(-vectors[j][i], N);
    }
  }
  return kernel(N, m, cols);
}

std::vector<int> symplectic(const PauliWord &P) {
  std::vector<int> v(2 * P.n());
  for (int i = 0; i < P.n(); ++i) {
    v[i] = P.x(i);
    v[P.n() + i] = P.z(i);
  }
  return v;
}

PauliWord from_symplectic(const std::vector<int> &v, int d) {
  int n = static_cast<int>(v.size()) / 2;
  PauliWord P(n, d);
  for (int i = 0; i < n; ++i) {
    P.set_x(i, v[i]);
    P.set_z(i, v[n + i]);
  }
  return P;
}

ZnSpan pauli_span(const std::vector<PauliWord> &gens) {
  if (gens.empty()) throw std::invalid_argument("empty generator list");
  if (!gens[0].uniform()) throw ShapeError("span needs a uniform register");
  std::vector<std::vector<int>> vs;
  for (const auto &g : gens) vs.push_back(symplectic(g));
  return ZnSpan(gens[0].dim(), 2 * gens[0].n(), vs);
}

PauliWord product_of(const std::vector<PauliWord> &gens, const std::vector<int> &a) {
  PauliWord r(gens.at(0).dims());
  for (size_t j = 0; j < gens.size(); ++j) {
    if (a[j]) r *= gens[j].pow(a[j]);
  }
  return r;
}

std::optional<std::vector<int>> solve_linear(int N, const std::vector<std::vector<int>> &A,
                                             const std::vector<int> &b) {
  if (A.empty()) return std::nullopt;
  int rows = static_cast<int>(A.size());
  int cols = static_cast<int>(A[0].size());
  std::vector<std::vector<int>> columns(cols, std::vector<int>(rows));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) columns[j][i] = A[i][j];
  ZnSpan span(N, rows, columns);
  return span.solve(b);
}

}  // namespace foldqec
