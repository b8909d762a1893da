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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "foldqec/zmod.hpp"

using namespace foldqec;

namespace {

std::set<std::vector<int>> closure(int N, int len, const std::vector<std::vector<int>> &gens) {
  std::set<std::vector<int>> seen{std::vector<int>(len, 0)};
  std::vector<std::vector<int>> frontier{std::vector<int>(len, 0)};
  while (!frontier.empty()) {
    auto v = frontier.back();
    frontier.pop_back();
    for (const auto &g : gens) {
      std::vector<int> w(len);
      for (int i = 0; i < len; ++i) w[i] = (v[i] + g[i]) % N;
      if (seen.insert(w).second) frontier.push_back(w);
    }
  }
  return seen;
}

}  // namespace

TEST(ZnSpan, MembershipMatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int N : {2, 3, 4, 6, 8}) {
    for (int rep = 0; rep < 30; ++rep) {
      int len = 3, m = 1 + rng() % 3;
      std::vector<std::vector<int>> gens(m, std::vector<int>(len));
      for (auto &g : gens)
        for (auto &x : g) x = rng() % N;
      auto full = closure(N, len, gens);
      ZnSpan span(N, len, gens);
      long long order = 1;
      for (int o : span.pivot_orders()) order *= o;
      EXPECT_EQ(order, static_cast<long long>(full.size()));
      for (int t = 0; t < 20; ++t) {
        std::vector<int> v(len);
        for (auto &x : v) x = rng() % N;
        auto sol = span.solve(v);
        EXPECT_EQ(sol.has_value(), full.count(v) == 1);
        if (sol) {
          std::vector<int> w(len, 0);
          for (int j = 0; j < m; ++j)
            for (int i = 0; i < len; ++i) w[i] = (w[i] + (*sol)[j] * gens[j][i]) % N;
          EXPECT_EQ(w, v);
        }
      }
    }
  }
}

TEST(ZnSpan, OrderPower) {
  ZnSpan s(4, 2, {{2, 0}, {0, 2}});
  EXPECT_TRUE(s.order_is_power(1));
  EXPECT_FALSE(s.order_is_power(2));
  ZnSpan t(4, 2, {{1, 0}, {0, 1}});
  EXPECT_TRUE(t.order_is_power(2));
}

TEST(ZnSpan, SolveLinear) {
  // 2 x = 2 mod 4 has x = 1.
  auto x = solve_linear(4, {{2}}, {2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0] * 2 % 4, 2);
  EXPECT_FALSE(solve_linear(4, {{2}}, {1}).has_value());
}
