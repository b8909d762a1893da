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

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "foldqec/circuit.hpp"
#include "foldqec/code.hpp"
#include "foldqec/pauli.hpp"

namespace foldqec {

using Rng = std::mt19937_64;
using cplx = std::complex<double>;

class SizeCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Mixed-dimension register. Site 0 is the least significant digit of the
 * basis index, so a qubit pair (low, high) indexes as low + 2 * high.
 */
struct Register {
  std::vector<int> dims;
  static inline long long cap = 1LL << 16;

  long long total() const;
  std::vector<long long> strides() const;
  void check_cap() const;
};

struct StateVector {
  Register reg;
  Eigen::VectorXcd amps;

  static StateVector basis(const std::vector<int> &dims,
                           const std::vector<int> &digits);
  static StateVector zero(const std::vector<int> &dims);
  double norm() const { return amps.norm(); }
};

struct DenseUnitary {
  Register reg;
  Eigen::MatrixXcd matrix;

  bool is_unitary(double tol = 1e-10) const;
};

/** Local matrix of a gate; target 0 is the least significant local digit. */
DenseUnitary gate_matrix(const GateApplication &g, const std::vector<int> &dims);
DenseUnitary gate_matrix(const GateApplication &g, int d);

DenseUnitary pauli_matrix(const PauliWord &P);

/** Embed a local operator acting on `targets` into the full register. */
Eigen::MatrixXcd embed(const Eigen::MatrixXcd &local,
                       const std::vector<int> &targets,
                       const std::vector<int> &dims);

void apply_local(StateVector &s, const Eigen::MatrixXcd &local,
                 const std::vector<int> &targets);
void apply_pauli(StateVector &s, const PauliWord &P);

/** Unitary of a circuit of unitary gates (F excluded). */
DenseUnitary circuit_unitary(const ScheduledCircuit &c);

struct MeasureResult {
  int outcome = 0;
  StateVector state;
};

MeasureResult measure_pauli(const PauliWord &P, const StateVector &s, Rng &rng);

/** Probability of each outcome k (eigenvalue w^k) without collapsing. */
std::vector<double> outcome_probabilities(const PauliWord &P,
                                          const StateVector &s);

struct CircuitRun {
  StateVector state;
  // (site, outcome) per measurement event in time order.
  std::vector<std::pair<int, int>> outcomes;
};

CircuitRun apply_circuit(const ScheduledCircuit &c, const StateVector &s,
                         Rng &rng);

bool equal_up_to_global_phase(const Eigen::MatrixXcd &U,
                              const Eigen::MatrixXcd &V, double tol = 1e-9);
bool equal_up_to_global_phase(const DenseUnitary &U, const DenseUnitary &V,
                              double tol = 1e-9);

/**
 * Encoded |0> of a code: projects |0...0> onto the +1 space of every X-type
 * generator, correcting random outcomes with a Z-type word.
 */
StateVector prepare_logical_zero(const StabilizerCode &code, Rng &rng);

/** Fidelity |<a|b>|^2 of two normalized states. */
double fidelity(const StateVector &a, const StateVector &b);

}  // namespace foldqec
