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

#include <climits>
#include <cmath>
#include <functional>
#include <map>
#include <set>

#include "foldqec/noise.hpp"

using namespace foldqec;

namespace {

// Exhaustive minimum-cost pairing with boundary, for small defect counts.
long brute_cost(const std::vector<std::vector<long>> &pc, const std::vector<long> &bc) {
  const int k = static_cast<int>(bc.size());
  std::vector<long> memo(1u << k, -1);
  std::function<long(unsigned)> go = [&](unsigned used) -> long {
    if (used == (1u << k) - 1) return 0;
    if (memo[used] >= 0) return memo[used];
    int i = 0;
    while (used >> i & 1) ++i;
    long best = bc[i] + go(used | 1u << i);
    for (int j = i + 1; j < k; ++j)
      if (!(used >> j & 1)) best = std::min(best, pc[i][j] + go(used | 1u << i | 1u << j));
    return memo[used] = best;
  };
  return go(0);
}

long pairing_cost(const std::vector<int> &p, const std::vector<std::vector<long>> &pc,
                  const std::vector<long> &bc) {
  long c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0)
      c += bc[i];
    else if (p[i] > static_cast<int>(i))
      c += pc[i][p[i]];
    if (p[i] >= 0) EXPECT_EQ(p[p[i]], static_cast<int>(i));
  }
  return c;
}

PauliWord x_error(const StabilizerCode &c, int q, int p = 1) { return PauliWord::x_at(c.n, c.d, q, p); }
PauliWord z_error(const StabilizerCode &c, int q, int p = 1) { return PauliWord::z_at(c.n, c.d, q, p); }

SyndromeHistory capacity_history(const PauliWord &e, const StabilizerCode &c) {
  ErrorRecord rec;
  rec.data = {e};
  return extract_history(rec, c);
}

bool decodes_exactly(const PauliWord &e, const StabilizerCode &c) {
  PauliWord corr = decode(capacity_history(e, c), c);
  PauliWord res = (e * corr).without_phase();
  return in_stabilizer_group(c, res, false);
}

}  // namespace

TEST(Matching, AgreesWithBruteForce) {
  Rng rng(7);
  for (int trial = 0; trial < 400; ++trial) {
    int k = 1 + trial % 11;
    std::vector<std::vector<long>> pc(k, std::vector<long>(k, 0));
    std::vector<long> bc(k);
    for (int i = 0; i < k; ++i) {
      bc[i] = 1 + rng() % 6;
      for (int j = i + 1; j < k; ++j) pc[i][j] = pc[j][i] = 1 + rng() % 9;
    }
    auto p = match_defects(pc, bc);
    EXPECT_EQ(pairing_cost(p, pc, bc), brute_cost(pc, bc)) << "k=" << k << " trial=" << trial;
  }
}

TEST(Matching, MetricInstancesAgreeWithBruteForce) {
  // Defects on a line segment with both ends as boundary.
  Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    int k = 1 + trial % 12;
    std::vector<int> pos(k), lay(k);
    for (int i = 0; i < k; ++i) {
      pos[i] = rng() % 9;
      lay[i] = rng() % 4;
    }
    std::vector<std::vector<long>> pc(k, std::vector<long>(k, 0));
    std::vector<long> bc(k);
    for (int i = 0; i < k; ++i) {
      bc[i] = std::min(pos[i] + 1, 9 - pos[i]);
      for (int j = 0; j < k; ++j) pc[i][j] = std::abs(pos[i] - pos[j]) + std::abs(lay[i] - lay[j]);
    }
    auto p = match_defects(pc, bc);
    EXPECT_EQ(pairing_cost(p, pc, bc), brute_cost(pc, bc));
  }
}

TEST(Matching, EmptyInput) { EXPECT_TRUE(match_defects({}, {}).empty()); }

TEST(ErrorModel, StandardChannels) {
  EXPECT_EQ(ErrorModel::standard(2, 0.1).channels.size(), 2u);
  EXPECT_EQ(ErrorModel::standard(4, 0.1).channels.size(), 4u);
  EXPECT_EQ(ErrorModel::standard(4, 0.1).validate(4, true), "");
  ErrorModel m = ErrorModel::standard(4, 0.1);
  m.channels = {{'X', 1}};
  EXPECT_EQ(m.validate(4), "");
  EXPECT_NE(m.validate(4, true), "");
  EXPECT_NE(ErrorModel::standard(2, 1.5).validate(2), "");
  EXPECT_NE(ErrorModel::standard(3, 0.1).validate(3, true), "");
}

TEST(Sampling, ZeroRateIsClean) {
  auto c = build_square(3, 2);
  Rng rng = trial_rng(1, 0);
  auto rec = sample_errors(ErrorModel::standard(2, 0.0, NoiseMode::Phenomenological), c, 3, rng);
  EXPECT_TRUE(rec.frame().is_identity());
  auto h = extract_history(rec, c);
  EXPECT_EQ(h.rounds(), 4);
  for (const auto &row : h.outcomes)
    for (int v : row) EXPECT_EQ(v, 0);
}

TEST(Sampling, CertainChannelHitsEveryQuditEachRound) {
  auto c = build_square(3, 4);
  ErrorModel m = ErrorModel::standard(4, 1.0);
  m.channels = {{'X', 1}};
  Rng rng = trial_rng(3, 0);
  auto rec = sample_errors(m, c, 3, rng);
  ASSERT_EQ(rec.data.size(), 3u);
  for (const auto &e : rec.data)
    for (int q = 0; q < c.n; ++q) {
      EXPECT_EQ(e.x(q), 1);
      EXPECT_EQ(e.z(q), 0);
    }
  for (int q = 0; q < c.n; ++q) EXPECT_EQ(rec.frame().x(q), 3);
}

TEST(Sampling, FourChannelErrorProbability) {
  auto c = build_square(5, 4);
  const double eps = 0.05;
  const double p = 1 - std::pow(1 - eps, 4);
  EXPECT_NEAR(p, 0.185, 5e-4);
  long hit = 0, total = 0;
  for (int t = 0; t < 2000; ++t) {
    Rng rng = trial_rng(5, t);
    auto e = sample_errors(ErrorModel::standard(4, eps), c, 1, rng).frame();
    hit += e.weight();
    total += c.n;
  }
  double mean = static_cast<double>(hit) / total;
  double sigma = std::sqrt(p * (1 - p) / total);
  EXPECT_LT(std::abs(mean - p), 3 * sigma);
}

TEST(Sampling, PerQuditRateRatioSmallEps) {
  // Four channels give about twice the single-qudit error rate of two.
  const double eps = 1e-3;
  double p4 = 1 - std::pow(1 - eps, 4), p2 = 1 - std::pow(1 - eps, 2);
  EXPECT_NEAR(p4 / eps, 4.0, 0.01);
  EXPECT_NEAR(p2 / eps, 2.0, 0.01);
}

TEST(Sampling, ReproducibleFromSeedAndTrial) {
  auto c = build_square(3, 2);
  auto m = ErrorModel::standard(2, 0.3, NoiseMode::Phenomenological);
  Rng a = trial_rng(42, 17), b = trial_rng(42, 17), other = trial_rng(42, 18);
  auto ra = sample_errors(m, c, 3, a), rb = sample_errors(m, c, 3, b), rc = sample_errors(m, c, 3, other);
  EXPECT_EQ(ra.frame(), rb.frame());
  EXPECT_EQ(ra.shifts, rb.shifts);
  EXPECT_FALSE(ra.frame() == rc.frame() && ra.shifts == rc.shifts);
}

TEST(Syndrome, SingleErrorLightsItsChecks) {
  for (int D : {3, 5}) {
    auto c = build_square(D, 2);
    for (int q = 0; q < c.n; ++q) {
      auto s = extract_syndrome(z_error(c, q), c);
      int lit = 0;
      for (std::size_t g = 0; g < s.size(); ++g) {
        bool touches = c.generators[g].x(q) != 0;
        EXPECT_EQ(s[g] != 0, touches);
        if (s[g]) {
          ++lit;
          EXPECT_EQ(c.gen_type[g], 'X');
        }
      }
      EXPECT_GE(lit, 1);
      EXPECT_LE(lit, 2);
    }
  }
}

TEST(Syndrome, InteriorZErrorHasTwoDefects) {
  auto c = build_square(5, 2);
  int interior = 0;
  for (int q = 0; q < c.n; ++q) {
    auto s = extract_syndrome(z_error(c, q), c);
    if (std::count_if(s.begin(), s.end(), [](int v) { return v != 0; }) == 2) ++interior;
  }
  EXPECT_GT(interior, c.n / 2);
}

TEST(Syndrome, SquaredErrorGivesEvenOutcomes) {
  auto c = build_square(4, 4);
  for (int q = 0; q < c.n; ++q)
    for (auto e : {x_error(c, q, 2), z_error(c, q, 2)})
      for (int v : extract_syndrome(e, c)) EXPECT_TRUE(v == 0 || v == 2);
}

TEST(Syndrome, RegisterMismatchThrows) {
  auto c = build_square(3, 2);
  EXPECT_THROW(extract_syndrome(PauliWord(c.n + 1, 2), c), ShapeError);
  EXPECT_THROW(extract_syndrome(PauliWord(c.n, 4), c), ShapeError);
}

TEST(Syndrome, EventsTelescopeToFinalRound) {
  auto c = build_square(3, 4);
  auto m = ErrorModel::standard(4, 0.1, NoiseMode::Phenomenological);
  for (int t = 0; t < 20; ++t) {
    Rng rng = trial_rng(9, t);
    auto h = extract_history(sample_errors(m, c, 3, rng), c);
    auto ev = h.events();
    for (std::size_t g = 0; g < c.generators.size(); ++g) {
      int sum = 0;
      for (const auto &row : ev) sum += row[g];
      EXPECT_EQ(mod(sum, 4), h.outcomes.back()[g]);
    }
  }
}

TEST(Decoder, ZeroSyndromeGivesIdentity) {
  for (int d : {2, 4}) {
    auto c = build_square(3, d);
    EXPECT_TRUE(decode(capacity_history(PauliWord(c.n, d), c), c).is_identity());
  }
}

TEST(Decoder, UnsupportedDimension) {
  auto c = build_square(3, 3);
  EXPECT_THROW(decode(capacity_history(PauliWord(c.n, 3), c), c), std::invalid_argument);
}

TEST(Decoder, SingleErrorsRecoveredExactly) {
  for (const char *fam : {"square", "diamond", "cone"})
    for (int d : {2, 4})
      for (int D : {3, 5}) {
        auto c = build_family(fam, D, d);
        for (int q = 0; q < c.n; ++q)
          for (int p = 1; p < d; ++p) {
            EXPECT_TRUE(decodes_exactly(x_error(c, q, p), c)) << fam << " d=" << d << " q=" << q;
            EXPECT_TRUE(decodes_exactly(z_error(c, q, p), c)) << fam << " d=" << d << " q=" << q;
          }
      }
}

TEST(Decoder, SquaredErrorOnlyReachesSecondStage) {
  auto c = build_square(5, 4);
  Decoder dec(c);
  for (int q = 0; q < c.n; ++q) {
    auto h = capacity_history(x_error(c, q, 2), c);
    // Parity stage sees no defects, so its residual is the raw syndrome.
    auto r = dec.parity_stage_residual(h, 'X');
    auto ev = h.events();
    int nonzero = 0;
    for (int v : r[0]) {
      EXPECT_TRUE(v == 0 || v == 2);
      nonzero += v != 0;
    }
    EXPECT_GE(nonzero, 1);
    EXPECT_TRUE(decodes_exactly(x_error(c, q, 2), c));
  }
}

TEST(Decoder, ParityStageLeavesEvenResidual) {
  auto c = build_square(5, 4);
  Decoder dec(c);
  for (auto mode : {NoiseMode::CodeCapacity, NoiseMode::Phenomenological}) {
    auto m = ErrorModel::standard(4, 0.08, mode);
    for (int t = 0; t < 200; ++t) {
      Rng rng = trial_rng(13, t);
      auto h = extract_history(sample_errors(m, c, mode == NoiseMode::CodeCapacity ? 1 : 5, rng), c);
      for (char type : {'X', 'Z'})
        for (const auto &row : dec.parity_stage_residual(h, type))
          for (int v : row) EXPECT_TRUE(v == 0 || v == 2);
    }
  }
}

TEST(Decoder, CorrectionClearsSyndromeUnderNoise) {
  for (int d : {2, 4})
    for (auto mode : {NoiseMode::CodeCapacity, NoiseMode::Phenomenological}) {
      auto c = build_square(5, d);
      Decoder dec(c);
      auto m = ErrorModel::standard(d, 0.12, mode);
      for (int t = 0; t < 100; ++t) {
        Rng rng = trial_rng(17, t);
        auto rec = sample_errors(m, c, mode == NoiseMode::CodeCapacity ? 1 : 5, rng);
        auto res = (rec.frame() * dec.decode(extract_history(rec, c))).without_phase();
        for (int v : extract_syndrome(res, c)) EXPECT_EQ(v, 0);
      }
    }
}

TEST(Decoder, IsolatedMeasurementErrorNeedsNoDataCorrection) {
  auto c = build_square(5, 2);
  ErrorRecord rec;
  rec.data.assign(5, PauliWord(c.n, 2));
  rec.shifts.assign(5, std::vector<int>(c.generators.size(), 0));
  rec.shifts[2][7] = 1;
  EXPECT_TRUE(decode(extract_history(rec, c), c).is_identity());
}

// Minimum-weight X-type corrections per syndrome, with their logical classes.
// The oracle succeeds on an error when every minimum-weight correction lies in
// the error's class.
TEST(Decoder, SmallInstanceOracle) {
  auto c = build_square(3, 2);
  const int n = c.n;
  ASSERT_EQ(n, 13);
  auto key = [](const std::vector<int> &s) {
    std::uint64_t k = 0;
    for (int v : s) k = k << 1 | static_cast<std::uint64_t>(v);
    return k;
  };
  struct Best {
    int weight = INT_MAX;
    std::set<int> classes;
  };
  // Per type: syndrome key -> best weight and its logical classes.
  std::map<char, std::map<std::uint64_t, Best>> table;
  for (char type : {'X', 'Z'})
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      PauliWord e(n, 2);
      for (int q = 0; q < n; ++q)
        if (mask >> q & 1) (type == 'X' ? e.set_x(q, 1) : e.set_z(q, 1));
      auto s = extract_syndrome(e, c);
      int cls = type == 'X' ? mod(commutator_exponent(c.logical_z, e), 2) : mod(commutator_exponent(c.logical_x, e), 2);
      auto &b = table[type][key(s)];
      int w = __builtin_popcount(mask);
      if (w < b.weight) b = {w, {cls}};
      else if (w == b.weight) b.classes.insert(cls);
    }
  auto oracle_ok = [&](const PauliWord &e) {
    for (char type : {'X', 'Z'}) {
      PauliWord part(n, 2);
      for (int q = 0; q < n; ++q) (type == 'X' ? part.set_x(q, e.x(q)) : part.set_z(q, e.z(q)));
      int cls = type == 'X' ? mod(commutator_exponent(c.logical_z, part), 2) : mod(commutator_exponent(c.logical_x, part), 2);
      const auto &b = table[type][key(extract_syndrome(part, c))];
      if (b.classes != std::set<int>{cls}) return false;
    }
    return true;
  };
  int patterns = 0, oracle_success = 0, decoder_fail_where_oracle_ok = 0;
  const int ops[3][2] = {{1, 0}, {0, 1}, {1, 1}};
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b)
      for (int pa = 0; pa < 3; ++pa)
        for (int pb = 0; pb < 3; ++pb) {
          if (a == b && pb > 0) continue;
          PauliWord e(n, 2);
          e.set_x(a, ops[pa][0]);
          e.set_z(a, ops[pa][1]);
          if (b != a) {
            e.set_x(b, ops[pb][0]);
            e.set_z(b, ops[pb][1]);
          }
          ++patterns;
          bool ok = oracle_ok(e);
          oracle_success += ok;
          if (ok && !decodes_exactly(e, c)) ++decoder_fail_where_oracle_ok;
        }
  EXPECT_EQ(patterns, 13 * 3 + 78 * 9);
  EXPECT_EQ(decoder_fail_where_oracle_ok, 0);
  EXPECT_GT(oracle_success, 13 * 3);
}

TEST(LogicalRate, ZeroNoiseNeverFails) {
  auto c = build_square(3, 2);
  auto est = logical_error_rate(c, ErrorModel::standard(2, 0.0), 200, 1);
  EXPECT_EQ(est.failures, 0);
  EXPECT_EQ(est.rate, 0.0);
}

TEST(LogicalRate, ZeroTrialsRejected) {
  auto c = build_square(3, 2);
  EXPECT_THROW(logical_error_rate(c, ErrorModel::standard(2, 0.1), 0, 1), std::invalid_argument);
}

TEST(LogicalRate, SuppressionBelowThreshold) {
  auto c3 = build_square(3, 2), c5 = build_square(5, 2);
  auto m = ErrorModel::standard(2, 0.05);
  auto r3 = logical_error_rate(c3, m, 10000, 21);
  auto r5 = logical_error_rate(c5, m, 10000, 22);
  // Below the chance that a single qudit carries any error.
  EXPECT_LT(r3.ci_hi, 1 - (1 - 0.05) * (1 - 0.05));
  EXPECT_LT(r5.ci_hi, r3.ci_lo);
}

TEST(LogicalRate, OrderingFlipsAboveThreshold) {
  auto m = ErrorModel::standard(2, 0.20);
  auto r3 = logical_error_rate(build_square(3, 2), m, 4000, 23);
  auto r5 = logical_error_rate(build_square(5, 2), m, 4000, 24);
  EXPECT_GT(r5.rate, r3.rate);
}

TEST(LogicalRate, IndependentOfWorkerCount) {
  auto c = build_square(3, 4);
  auto m = ErrorModel::standard(4, 0.06, NoiseMode::Phenomenological);
  auto a = logical_error_rate(c, m, 600, 99, 1);
  auto b = logical_error_rate(c, m, 600, 99, 3);
  EXPECT_EQ(a.failures, b.failures);
}

TEST(LogicalRate, LogicalOperatorIsFailure) {
  auto c = build_square(3, 2);
  EXPECT_TRUE(is_logical_failure(c.logical_x, c));
  EXPECT_TRUE(is_logical_failure(c.logical_z, c));
  EXPECT_FALSE(is_logical_failure(c.generators[0], c));
}

TEST(Statistics, WilsonInterval) {
  auto [lo, hi] = wilson_interval(0, 100);
  EXPECT_EQ(lo, 0.0);
  EXPECT_NEAR(hi, 0.0370, 1e-4);
  auto [lo2, hi2] = wilson_interval(50, 100);
  EXPECT_NEAR(lo2, 0.4038, 1e-4);
  EXPECT_NEAR(hi2, 0.5962, 1e-4);
}

TEST(Statistics, CurveCrossing) {
  std::vector<double> eps{0.1, 0.2};
  // log gap goes from ln 2 to -ln 2, crossing halfway.
  auto x = curve_crossing(eps, {0.2, 0.4}, {0.1, 0.8}, 1000);
  ASSERT_TRUE(x.has_value());
  EXPECT_NEAR(*x, 0.15, 1e-12);
  EXPECT_FALSE(curve_crossing(eps, {0.2, 0.4}, {0.1, 0.2}, 1000).has_value());
}

TEST(ThresholdScan, RejectsDegenerateInput) {
  EXPECT_THROW(threshold_scan("square", 2, {3}, {0.1, 0.2}, 10, NoiseMode::CodeCapacity, 1), std::invalid_argument);
  EXPECT_THROW(threshold_scan("square", 2, {3, 5}, {0.1}, 10, NoiseMode::CodeCapacity, 1), std::invalid_argument);
  EXPECT_THROW(threshold_scan("square", 2, {3, 5}, {0.1, 0.2}, 0, NoiseMode::CodeCapacity, 1), std::invalid_argument);
}

TEST(ThresholdScan, CsvLayout) {
  auto s = threshold_scan("square", 2, {3, 5}, {0.05, 0.2}, 50, NoiseMode::CodeCapacity, 3);
  auto csv = s.csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "family,d,D,mode,eps_P,trials,failures,rate,ci_lo,ci_hi,seed");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(s.crossings.size(), 1u);
}

TEST(Resources, ScalingEstimate) {
  EXPECT_DOUBLE_EQ(scaling_estimate(0.3, 0.01, 0.01, 7), 0.3);
  EXPECT_NEAR(scaling_estimate(1, 0.1, 0.01, 5), 1e-3, 1e-15);
  EXPECT_NEAR(scaling_estimate(1, 0.1, 0.01, 6), 1e-3, 1e-15);
  EXPECT_THROW(scaling_estimate(0, 0.1, 0.01, 5), std::invalid_argument);
}

TEST(Resources, DistanceTradeoff) {
  EXPECT_NEAR(distance_tradeoff(0.01, 0.001, 1e-6), 1 + std::log(10.0) / std::log(1e-6), 1e-12);
  EXPECT_NEAR(distance_tradeoff(0.01, 0.001, 1e-6), 0.8333333333, 1e-9);
  EXPECT_DOUBLE_EQ(distance_tradeoff(0.01, 0.01, 1e-3), 1.0);
  EXPECT_THROW(distance_tradeoff(-1, 0.01, 1e-3), std::invalid_argument);
}
