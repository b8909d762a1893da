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

#include <cmath>

#include "foldqec/dense.hpp"

using namespace foldqec;

namespace {

const cplx I(0, 1);

Eigen::MatrixXcd local(GateKind k, std::vector<int> dims, std::vector<int> t, int p = 1) {
  return gate_matrix(GateApplication(k, std::move(t), p), dims).matrix;
}

}  // namespace

TEST(GateMatrix, HadamardQubit) {
  Eigen::MatrixXcd H = local(GateKind::H, {2}, {0});
  double r = 1 / std::sqrt(2.0);
  EXPECT_LT(std::abs(H(0, 0) - r) + std::abs(H(0, 1) - r) + std::abs(H(1, 0) - r) +
                std::abs(H(1, 1) + r),
            1e-15);
}

TEST(GateMatrix, PhaseQubitIsDiagOneI) {
  Eigen::MatrixXcd S = local(GateKind::S, {2}, {0});
  EXPECT_LT(std::abs(S(0, 0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(S(1, 1) - I), 1e-15);
  EXPECT_LT(std::abs(S(0, 1)) + std::abs(S(1, 0)), 1e-15);
}

TEST(GateMatrix, FusionSendsElevenToThree) {
  Eigen::MatrixXcd F = local(GateKind::F, {2, 2}, {0, 1});
  Eigen::VectorXcd in = StateVector::basis({2, 2}, {1, 1}).amps;
  Eigen::VectorXcd out = F * in;
  EXPECT_LT((out - StateVector::basis({4}, {3}).amps).norm(), 1e-15);
}

TEST(GateMatrix, AllGatesUnitary) {
  for (int d = 2; d <= 5; ++d) {
    for (auto k : {GateKind::X, GateKind::Z, GateKind::H, GateKind::S})
      for (int p : {1, -1, 3}) EXPECT_TRUE(gate_matrix({k, {0}, p}, d).is_unitary());
    for (auto k : {GateKind::CX, GateKind::CZ, GateKind::SWAP})
      EXPECT_TRUE(gate_matrix({k, {0, 1}}, d).is_unitary());
  }
  EXPECT_TRUE(gate_matrix({GateKind::T, {0}}, 2).is_unitary());
  EXPECT_TRUE(gate_matrix({GateKind::CS, {0, 1}}, 2).is_unitary());
  EXPECT_TRUE(gate_matrix({GateKind::CCX, {0, 1, 2}}, 2).is_unitary());
  EXPECT_THROW(gate_matrix({GateKind::T, {0}}, 3), std::invalid_argument);
  EXPECT_THROW(gate_matrix({GateKind::PrepZ, {0}}, 2), std::invalid_argument);
}

TEST(GateMatrix, NonCliffordQubitGates) {
  Eigen::MatrixXcd T = local(GateKind::T, {2}, {0});
  EXPECT_LT(std::abs(T(1, 1) - cplx(1, 1) / std::sqrt(2.0)), 1e-15);
  Eigen::MatrixXcd CS = local(GateKind::CS, {2, 2}, {0, 1});
  EXPECT_LT(std::abs(CS(3, 3) - I), 1e-15);
  EXPECT_LT(std::abs(CS(1, 1) - 1.0) + std::abs(CS(2, 2) - 1.0), 1e-15);
  Eigen::MatrixXcd CCX = local(GateKind::CCX, {2, 2, 2}, {0, 1, 2});
  EXPECT_EQ(CCX(7, 3), cplx(1));
  EXPECT_EQ(CCX(3, 7), cplx(1));
  EXPECT_EQ(CCX(5, 5), cplx(1));
}

TEST(ApplyCircuit, EmptyAndIncrement) {
  Rng rng(1);
  ScheduledCircuit empty(1, 4);
  StateVector s = StateVector::basis({4}, {2});
  EXPECT_EQ(apply_circuit(empty, s, rng).state.amps, s.amps);
  ScheduledCircuit c(1, 4);
  c.layers.push_back(Layer{{GateApplication(GateKind::X, {0})}});
  auto run = apply_circuit(c, StateVector::zero({4}), rng);
  EXPECT_NEAR(std::abs(run.state.amps(1)), 1.0, 1e-15);
  EXPECT_NEAR(run.state.norm(), 1.0, 1e-12);
}

TEST(ApplyCircuit, SiteMismatchAndCap) {
  Rng rng(1);
  ScheduledCircuit c(2, 2);
  c.layers.push_back(Layer{{GateApplication(GateKind::X, {0})}});
  EXPECT_ANY_THROW(apply_circuit(c, StateVector::zero({2}), rng));
  EXPECT_THROW(StateVector::zero(std::vector<int>(17, 2)), SizeCapExceeded);
}

TEST(FusionSandwich, QuditXFromQubits) {
  // X_4 = F (X_low CX_{low->high}) F-dagger; F is the identity here.
  Eigen::MatrixXcd U = embed(local(GateKind::X, {2}, {0}), {0}, {2, 2}) *
                       local(GateKind::CX, {2, 2}, {0, 1});
  EXPECT_TRUE(equal_up_to_global_phase(U, local(GateKind::X, {4}, {0}), 1e-12));
  for (int v = 0; v < 4; ++v) EXPECT_EQ(U((v + 1) % 4, v), cplx(1));
}

TEST(FusionSandwich, QuditZFromQubits) {
  Eigen::MatrixXcd U = embed(local(GateKind::S, {2}, {0}), {0}, {2, 2}) *
                       embed(local(GateKind::Z, {2}, {0}), {1}, {2, 2});
  EXPECT_LT((U - local(GateKind::Z, {4}, {0})).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Measure, ZOnZeroIsDeterministic) {
  Rng rng(2);
  StateVector s = StateVector::zero({3});
  auto m = measure_pauli(PauliWord::z_at(1, 3, 0), s, rng);
  EXPECT_EQ(m.outcome, 0);
  EXPECT_LT((m.state.amps - s.amps).norm(), 1e-12);
}

TEST(Measure, XOnZeroIsFair) {
  auto p = outcome_probabilities(PauliWord::x_at(1, 2, 0), StateVector::zero({2}));
  ASSERT_EQ(p.size(), 2u);
  EXPECT_NEAR(p[0], 0.5, 1e-12);
  EXPECT_NEAR(p[1], 0.5, 1e-12);
  Rng rng(3);
  int ones = 0;
  for (int t = 0; t < 400; ++t) {
    auto m = measure_pauli(PauliWord::x_at(1, 2, 0), StateVector::zero({2}), rng);
    ones += m.outcome;
    auto again = measure_pauli(PauliWord::x_at(1, 2, 0), m.state, rng);
    EXPECT_EQ(again.outcome, m.outcome);
  }
  EXPECT_GT(ones, 140);
  EXPECT_LT(ones, 260);
}

TEST(LogicalZero, SquareDistanceTwo) {
  StabilizerCode code = build_square(2, 2);
  ASSERT_EQ(code.n, 5);
  StateVector zero = StateVector::zero(std::vector<int>(5, 2));
  for (size_t g = 0; g < code.generators.size(); ++g) {
    auto p = outcome_probabilities(code.generators[g], zero);
    if (code.gen_type[g] == 'X') {
      EXPECT_NEAR(p[0], 0.5, 1e-12);
    } else {
      EXPECT_NEAR(p[0], 1.0, 1e-12);
    }
  }
  Rng rng(4);
  for (int rep = 0; rep < 5; ++rep) {
    StateVector s = prepare_logical_zero(code, rng);
    for (const auto &G : code.generators) {
      StateVector t = s;
      apply_pauli(t, G);
      EXPECT_LT((t.amps - s.amps).norm(), 1e-10);
    }
    StateVector t = s;
    apply_pauli(t, code.logical_z);
    EXPECT_LT((t.amps - s.amps).norm(), 1e-10);
    // Idempotent under re-measurement.
    for (const auto &G : code.generators) {
      auto m = measure_pauli(G, s, rng);
      EXPECT_EQ(m.outcome, 0);
    }
    // Destructive readout: per-qudit Z outcomes reconstruct the logical Z.
    StateVector r = s;
    int acc = 0;
    for (int q = 0; q < code.n; ++q) {
      auto m = measure_pauli(PauliWord::z_at(code.n, 2, q), r, rng);
      r = m.state;
      acc += code.logical_z.z(q) * m.outcome;
    }
    EXPECT_EQ(acc % 2, 0);
  }
}

TEST(GlobalPhase, Examples) {
  Eigen::MatrixXcd H = local(GateKind::H, {2}, {0});
  EXPECT_TRUE(equal_up_to_global_phase(H, H));
  EXPECT_TRUE(equal_up_to_global_phase(H, Eigen::MatrixXcd(-H)));
  Eigen::MatrixXcd S = local(GateKind::S, {3}, {0});
  Eigen::MatrixXcd Z = local(GateKind::Z, {3}, {0});
  EXPECT_FALSE(equal_up_to_global_phase(S, Eigen::MatrixXcd(Z * S)));
  EXPECT_THROW(equal_up_to_global_phase(H, S), ShapeError);
}
