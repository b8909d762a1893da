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

#include "foldqec/clifford.hpp"
#include "foldqec/dense.hpp"

using namespace foldqec;

namespace {

PauliWord random_word(const std::vector<int> &dims, std::mt19937_64 &rng) {
  PauliWord w(dims);
  w.set_phase(rng() % (2 * w.dim()));
  for (int i = 0; i < w.n(); ++i) {
    w.set_x(i, rng() % dims[i]);
    w.set_z(i, rng() % dims[i]);
  }
  return w;
}

Eigen::MatrixXcd conj_dense(const GateApplication &g, const PauliWord &P) {
  Eigen::MatrixXcd U = embed(gate_matrix(g, P.dims()).matrix, g.targets, P.dims());
  return U * pauli_matrix(P).matrix * U.adjoint();
}

double diff(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B) {
  return (A - B).cwiseAbs().maxCoeff();
}

}  // namespace

TEST(PauliWord, ProductExamples) {
  auto X = PauliWord::x_at(1, 2, 0), Z = PauliWord::z_at(1, 2, 0);
  auto xz = X * Z;
  EXPECT_EQ(xz.phase(), 0);
  auto zx = Z * X;
  EXPECT_EQ(zx.phase(), 2);
  EXPECT_EQ(zx.x(0), 1);
  EXPECT_EQ(zx.z(0), 1);
  auto z2x = PauliWord::z_at(1, 3, 0, 2) * PauliWord::x_at(1, 3, 0);
  EXPECT_EQ(z2x.phase(), 4);
  EXPECT_EQ(z2x.z(0), 2);
}

TEST(PauliWord, ProductMatchesDense) {
  std::mt19937_64 rng(11);
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> dims(n, d);
      for (int rep = 0; rep < 10; ++rep) {
        auto P = random_word(dims, rng), Q = random_word(dims, rng);
        EXPECT_LT(diff(pauli_matrix(P * Q).matrix,
                       pauli_matrix(P).matrix * pauli_matrix(Q).matrix),
                  1e-10);
      }
    }
  }
}

TEST(PauliWord, CommutatorExamples) {
  auto X = PauliWord::x_at(1, 2, 0), Z = PauliWord::z_at(1, 2, 0);
  EXPECT_EQ(commutator_exponent(Z, X), 1);
  EXPECT_EQ(commutator_exponent(X, PauliWord(1, 2)), 0);
  EXPECT_EQ(commutator_exponent(PauliWord::x_at(1, 4, 0, 2), PauliWord::z_at(1, 4, 0)), 2);
}

TEST(PauliWord, CommutatorMatchesDense) {
  std::mt19937_64 rng(5);
  for (int d = 2; d <= 5; ++d) {
    std::vector<int> dims(2, d);
    for (int rep = 0; rep < 20; ++rep) {
      auto P = random_word(dims, rng), Q = random_word(dims, rng);
      int c = commutator_exponent(P, Q);
      EXPECT_EQ(c, (d - commutator_exponent(Q, P)) % d);
      Eigen::MatrixXcd lhs = pauli_matrix(P).matrix * pauli_matrix(Q).matrix;
      PauliWord QPc = Q * P;
      QPc.add_phase(2 * c);
      EXPECT_LT(diff(lhs, pauli_matrix(QPc).matrix), 1e-10);
    }
  }
}

TEST(PauliWord, YConvention) {
  for (int d = 2; d <= 5; ++d) {
    PauliWord Y(1, d);
    Y.set_phase(d - 1);
    Y.set_x(0, 1);
    Y.set_z(0, 1);
    // -w^{-1/2} X Z
    Eigen::MatrixXcd XZ = pauli_matrix(PauliWord::x_at(1, d, 0) * PauliWord::z_at(1, d, 0)).matrix;
    double a = -M_PI / d;
    EXPECT_LT(diff(pauli_matrix(Y).matrix, -std::complex<double>(std::cos(a), std::sin(a)) * XZ), 1e-12);
  }
}

TEST(PauliWord, InverseAndTextRoundTrip) {
  std::mt19937_64 rng(3);
  for (int d = 2; d <= 5; ++d) {
    std::vector<int> dims(3, d);
    for (int rep = 0; rep < 10; ++rep) {
      auto P = random_word(dims, rng);
      EXPECT_TRUE((P * P.adjoint()).is_identity());
      EXPECT_EQ(PauliWord::parse(P.str(), d), P);
      auto Q = random_word(dims, rng), R = random_word(dims, rng);
      EXPECT_EQ((P * Q) * R, P * (Q * R));
    }
  }
  std::vector<int> mixed{2, 4, 2};
  auto M = random_word(mixed, rng);
  EXPECT_EQ(PauliWord::parse(M.str(), mixed), M);
  EXPECT_THROW(PauliWord(1, 2) * PauliWord(2, 2), ShapeError);
}

TEST(Conjugation, WorkedExamples) {
  for (int d = 2; d <= 5; ++d) {
    auto X = PauliWord::x_at(1, d, 0);
    EXPECT_EQ(conjugate({GateKind::H, {0}}, X), PauliWord::z_at(1, d, 0));
    auto sx = conjugate({GateKind::S, {0}}, X);
    EXPECT_EQ(sx.phase(), d - 1);
    EXPECT_EQ(sx.x(0), 1);
    EXPECT_EQ(sx.z(0), 1);
    auto zb = conjugate({GateKind::CX, {0, 1}}, PauliWord::z_at(2, d, 1));
    EXPECT_EQ(zb.z(0), d - 1);
    EXPECT_EQ(zb.z(1), 1);
    EXPECT_EQ(zb.phase(), 0);
  }
}

TEST(Conjugation, MatchesDenseForAllGates) {
  std::mt19937_64 rng(7);
  std::vector<GateKind> one = {GateKind::X, GateKind::Z, GateKind::H, GateKind::S};
  std::vector<GateKind> two = {GateKind::CX, GateKind::CZ, GateKind::SWAP};
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> dims(n, d);
      for (int pw : {1, -1, 2}) {
        for (auto k : one) {
          for (int t = 0; t < n; ++t) {
            GateApplication g(k, {t}, pw);
            for (int rep = 0; rep < 4; ++rep) {
              auto P = random_word(dims, rng);
              EXPECT_LT(diff(conj_dense(g, P), pauli_matrix(conjugate(g, P)).matrix), 1e-10)
                  << g.str() << " d=" << d << " " << P.str();
            }
          }
        }
        if (n < 2) continue;
        for (auto k : two) {
          for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
              if (a == b) continue;
              GateApplication g(k, {a, b}, pw);
              for (int rep = 0; rep < 3; ++rep) {
                auto P = random_word(dims, rng);
                EXPECT_LT(diff(conj_dense(g, P), pauli_matrix(conjugate(g, P)).matrix), 1e-10)
                    << g.str() << " d=" << d << " " << P.str();
              }
            }
          }
        }
      }
    }
  }
}

TEST(Conjugation, HybridGatesMatchDense) {
  std::mt19937_64 rng(9);
  for (int pw : {1, -1, 3}) {
    std::vector<int> dims{2, 4};
    GateApplication g(GateKind::CbXd, {0, 1}, pw);
    GateApplication h(GateKind::CdXb, {1, 0}, pw);
    for (int rep = 0; rep < 20; ++rep) {
      auto P = random_word(dims, rng);
      EXPECT_LT(diff(conj_dense(g, P), pauli_matrix(conjugate(g, P)).matrix), 1e-10);
      EXPECT_LT(diff(conj_dense(h, P), pauli_matrix(conjugate(h, P)).matrix), 1e-10);
    }
  }
  EXPECT_THROW(conjugate({GateKind::CbXd, {0, 1}}, PauliWord(2, 2)), ShapeError);
}

TEST(Conjugation, RejectsBadInput) {
  EXPECT_THROW(conjugate({GateKind::H, {3}}, PauliWord(2, 3)), std::out_of_range);
  EXPECT_THROW(conjugate({GateKind::T, {0}}, PauliWord(1, 2)), UnsupportedGate);
}

TEST(Conjugation, PreservesCommutators) {
  std::mt19937_64 rng(21);
  for (int d = 2; d <= 5; ++d) {
    std::vector<int> dims(3, d);
    ScheduledCircuit c(dims);
    for (int t = 0; t < 12; ++t) {
      auto &l = c.add_layer();
      int k = rng() % 6;
      int a = rng() % 3, b = (a + 1 + rng() % 2) % 3;
      GateKind kinds[] = {GateKind::H, GateKind::S, GateKind::CX, GateKind::CZ, GateKind::X, GateKind::Z};
      if (k < 2 || k > 3) l.ops.push_back({kinds[k], {a}, (int)(rng() % 3) - 1});
      else l.ops.push_back({kinds[k], {a, b}, 1});
    }
    auto m = clifford_of_circuit(c);
    Eigen::MatrixXcd U = circuit_unitary(c).matrix;
    for (int rep = 0; rep < 10; ++rep) {
      auto P = random_word(dims, rng), Q = random_word(dims, rng);
      EXPECT_EQ(commutator_exponent(m.apply(P), m.apply(Q)), commutator_exponent(P, Q));
      EXPECT_LT(diff(U * pauli_matrix(P).matrix * U.adjoint(), pauli_matrix(m.apply(P)).matrix), 1e-9);
    }
  }
}

TEST(CliffordMap, CircuitExamples) {
  for (int d = 2; d <= 5; ++d) {
    ScheduledCircuit empty(1, d);
    EXPECT_TRUE(clifford_of_circuit(empty).is_identity());
    ScheduledCircuit h4(1, d);
    for (int i = 0; i < 4; ++i) h4.add_layer().ops.push_back({GateKind::H, {0}});
    EXPECT_TRUE(clifford_of_circuit(h4).is_identity());
    ScheduledCircuit cx(2, d);
    cx.add_layer().ops.push_back({GateKind::CX, {0, 1}});
    auto m = clifford_of_circuit(cx);
    auto xx = PauliWord::x_at(2, d, 0) * PauliWord::x_at(2, d, 1);
    EXPECT_EQ(m.image_x(0), xx);
  }
  ScheduledCircuit bad(1, 2);
  bad.add_layer().ops.push_back({GateKind::T, {0}});
  EXPECT_THROW(clifford_of_circuit(bad), UnsupportedGate);
}

TEST(CliffordMap, StandardSRelation) {
  // For even d the standard S equals Z^{1+d/2} S up to phase.
  for (int d : {2, 4}) {
    ScheduledCircuit a(1, d);
    a.add_layer().ops.push_back({GateKind::S, {0}});
    a.add_layer().ops.push_back({GateKind::Z, {0}, 1 + d / 2});
    auto m = clifford_of_circuit(a);
    // Standard S: X -> w^{1/2} X Z.
    auto img = m.image_x(0);
    EXPECT_EQ(img.x(0), 1);
    EXPECT_EQ(img.z(0), 1);
    EXPECT_EQ(img.phase(), 1);
    Eigen::MatrixXcd Sstd(d, d);
    Sstd.setZero();
    for (int x = 0; x < d; ++x) {
      double ang = M_PI * x * x / d;
      Sstd(x, x) = {std::cos(ang), std::sin(ang)};
    }
    EXPECT_TRUE(equal_up_to_global_phase(circuit_unitary(a).matrix, Sstd));
  }
}
