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

#include "foldqec/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "foldqec/zmod.hpp"

namespace foldqec {

namespace {

cplx root(double num, double den) {
  double a = 2.0 * std::numbers::pi * num / den;
  return {std::cos(a), std::sin(a)};
}

Eigen::MatrixXcd local_matrix(GateKind k, const std::vector<int> &ld) {
  long long D = 1;
  for (int d : ld) D *= d;
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(D, D);
  int d = ld[0];
  switch (k) {
    case GateKind::X:
      for (int x = 0; x < d; ++x) M((x + 1) % d, x) = 1;
      break;
    case GateKind::Z:
      for (int x = 0; x < d; ++x) M(x, x) = root(x, d);
      break;
    case GateKind::H:
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) M(x, y) = root(x * y, d) / std::sqrt(d);
      break;
    case GateKind::S:
      // w^{(x-d-2)x/2}
      for (int x = 0; x < d; ++x) M(x, x) = root((x - d - 2) * x, 2.0 * d);
      break;
    case GateKind::T:
      if (d != 2) throw std::invalid_argument("T is a qubit gate");
      M(0, 0) = 1;
      M(1, 1) = cplx(1, 1) / std::sqrt(2.0);
      break;
    case GateKind::CX:
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) M(x + d * ((x + y) % d), x + d * y) = 1;
      break;
    case GateKind::CZ:
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) M(x + d * y, x + d * y) = root(x * y, d);
      break;
    case GateKind::SWAP:
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) M(y + d * x, x + d * y) = 1;
      break;
    case GateKind::CS:
      if (d != 2) throw std::invalid_argument("CS is a qubit gate");
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) M(x + 2 * y, x + 2 * y) = root(x * y, 4);
      break;
    case GateKind::CCX:
      if (d != 2) throw std::invalid_argument("CCX is a qubit gate");
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
          for (int z = 0; z < 2; ++z)
            M(x + 2 * y + 4 * (z ^ (x & y)), x + 2 * y + 4 * z) = 1;
      break;
    case GateKind::CbXd:
      if (ld != std::vector<int>{2, 4}) throw ShapeError("CbXd dims");
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 4; ++y) M(x + 2 * ((y + 2 * x) % 4), x + 2 * y) = 1;
      break;
    case GateKind::CdXb:
      if (ld != std::vector<int>{4, 2}) throw ShapeError("CdXb dims");
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 2; ++y) M(x + 4 * ((y + x) % 2), x + 4 * y) = 1;
      break;
    case GateKind::F:
      // |x + 2y><x, y| is the identity in low-digit-first indexing.
      if (ld != std::vector<int>{2, 2}) throw ShapeError("F fuses two qubits");
      M = Eigen::MatrixXcd::Identity(4, 4);
      break;
    default:
      throw std::invalid_argument("no matrix for " + kind_name(k));
  }
  return M;
}

Eigen::MatrixXcd matrix_power(const Eigen::MatrixXcd &M, int k) {
  Eigen::MatrixXcd base = k < 0 ? Eigen::MatrixXcd(M.adjoint()) : M;
  Eigen::MatrixXcd r = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  for (int i = 0; i < std::abs(k); ++i) r = base * r;
  return r;
}

}  // namespace

long long Register::total() const {
  long long t = 1;
  for (int d : dims) t *= d;
  return t;
}

std::vector<long long> Register::strides() const {
  std::vector<long long> s(dims.size());
  long long acc = 1;
  for (size_t i = 0; i < dims.size(); ++i) {
    s[i] = acc;
    acc *= dims[i];
  }
  return s;
}

void Register::check_cap() const {
  long long t = 1;
  for (int d : dims) {
    t *= d;
    if (t > cap) throw SizeCapExceeded("register exceeds the oracle size cap");
  }
}

StateVector StateVector::basis(const std::vector<int> &dims,
                               const std::vector<int> &digits) {
  StateVector s{Register{dims}, {}};
  s.reg.check_cap();
  s.amps = Eigen::VectorXcd::Zero(s.reg.total());
  auto st = s.reg.strides();
  long long idx = 0;
  for (size_t i = 0; i < dims.size(); ++i) idx += st[i] * digits.at(i);
  s.amps(idx) = 1;
  return s;
}

StateVector StateVector::zero(const std::vector<int> &dims) {
  return basis(dims, std::vector<int>(dims.size(), 0));
}

bool DenseUnitary::is_unitary(double tol) const {
  Eigen::MatrixXcd P = matrix * matrix.adjoint();
  return (P - Eigen::MatrixXcd::Identity(P.rows(), P.cols())).cwiseAbs().maxCoeff() <=
         tol;
}

DenseUnitary gate_matrix(const GateApplication &g, const std::vector<int> &dims) {
  std::vector<int> ld;
  for (int t : g.targets) ld.push_back(dims.at(t));
  if (static_cast<int>(ld.size()) != arity(g.kind)) {
    throw std::invalid_argument("wrong target count for " + g.str());
  }
  return DenseUnitary{Register{ld}, matrix_power(local_matrix(g.kind, ld), g.power)};
}

DenseUnitary gate_matrix(const GateApplication &g, int d) {
  int n = 0;
  for (int t : g.targets) n = std::max(n, t + 1);
  std::vector<int> dims(n, d);
  return gate_matrix(g, dims);
}

DenseUnitary pauli_matrix(const PauliWord &P) {
  Register reg{P.dims()};
  reg.check_cap();
  long long N = reg.total();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(N, N);
  StateVector s{reg, {}};
  for (long long j = 0; j < N; ++j) {
    s.amps = M.col(j);
    apply_pauli(s, P);
    M.col(j) = s.amps;
  }
  return DenseUnitary{reg, M};
}

Eigen::MatrixXcd embed(const Eigen::MatrixXcd &local,
                       const std::vector<int> &targets,
                       const std::vector<int> &dims) {
  Register reg{dims};
  reg.check_cap();
  long long N = reg.total();
  Eigen::MatrixXcd M(N, N);
  StateVector s{reg, {}};
  for (long long j = 0; j < N; ++j) {
    s.amps = Eigen::VectorXcd::Zero(N);
    s.amps(j) = 1;
    apply_local(s, local, targets);
    M.col(j) = s.amps;
  }
  return M;
}

void apply_local(StateVector &s, const Eigen::MatrixXcd &local,
                 const std::vector<int> &targets) {
  const auto &dims = s.reg.dims;
  auto st = s.reg.strides();
  long long N = s.reg.total();
  long long D = local.rows();
  // Offsets of each local basis index.
  std::vector<long long> off(D, 0);
  for (long long a = 0; a < D; ++a) {
    long long r = a;
    for (int t : targets) {
      off[a] += (r % dims[t]) * st[t];
      r /= dims[t];
    }
  }
  std::vector<char> is_target(dims.size(), 0);
  for (int t : targets) is_target[t] = 1;
  Eigen::VectorXcd buf(D), out(D);
  for (long long base = 0; base < N; ++base) {
    bool zero_on_targets = true;
    for (int t : targets) {
      if ((base / st[t]) % dims[t] != 0) {
        zero_on_targets = false;
        break;
      }
    }
    if (!zero_on_targets) continue;
    for (long long a = 0; a < D; ++a) buf(a) = s.amps(base + off[a]);
    out = local * buf;
    for (long long a = 0; a < D; ++a) s.amps(base + off[a]) = out(a);
  }
}

void apply_pauli(StateVector &s, const PauliWord &P) {
  const auto &dims = s.reg.dims;
  if (dims != P.dims()) throw ShapeError("pauli does not match register");
  auto st = s.reg.strides();
  long long N = s.reg.total();
  int L = P.dim();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(N);
  for (long long j = 0; j < N; ++j) {
    long long k = 0;
    long long ph = P.phase();  // units of w_L^{1/2}
    for (int i = 0; i < P.n(); ++i) {
      int v = static_cast<int>((j / st[i]) % dims[i]);
      // X^x Z^z |v> = w^{z v} |v + x>
      ph += 2LL * P.z(i) * v * (L / dims[i]);
      k += ((v + P.x(i)) % dims[i]) * st[i];
    }
    out(k) += s.amps(j) * root(static_cast<double>(ph % (2 * L)), 2.0 * L);
  }
  s.amps = out;
}

DenseUnitary circuit_unitary(const ScheduledCircuit &c) {
  Register reg{c.dims};
  reg.check_cap();
  long long N = reg.total();
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Identity(N, N);
  StateVector s{reg, {}};
  for (long long j = 0; j < N; ++j) {
    s.amps = U.col(j);
    for (const auto &layer : c.layers) {
      for (const auto &g : layer.ops) {
        if (!is_unitary(g.kind) || g.kind == GateKind::F) {
          throw std::invalid_argument("circuit_unitary needs unitary gates");
        }
        apply_local(s, gate_matrix(g, c.dims).matrix, g.targets);
      }
    }
    U.col(j) = s.amps;
  }
  return DenseUnitary{reg, U};
}

std::vector<double> outcome_probabilities(const PauliWord &P,
                                          const StateVector &s) {
  int d = P.dim();
  // Powers P^j |psi>.
  std::vector<Eigen::VectorXcd> pw;
  StateVector cur = s;
  for (int j = 0; j < d; ++j) {
    pw.push_back(cur.amps);
    apply_pauli(cur, P);
  }
  std::vector<double> probs(d);
  for (int k = 0; k < d; ++k) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(s.amps.size());
    for (int j = 0; j < d; ++j) v += root(-1.0 * j * k, d) * pw[j];
    v /= d;
    probs[k] = v.squaredNorm();
  }
  return probs;
}

MeasureResult measure_pauli(const PauliWord &P, const StateVector &s, Rng &rng) {
  int d = P.dim();
  std::vector<Eigen::VectorXcd> pw;
  StateVector cur = s;
  for (int j = 0; j < d; ++j) {
    pw.push_back(cur.amps);
    apply_pauli(cur, P);
  }
  std::vector<Eigen::VectorXcd> proj(d);
  std::vector<double> probs(d);
  for (int k = 0; k < d; ++k) {
    proj[k] = Eigen::VectorXcd::Zero(s.amps.size());
    for (int j = 0; j < d; ++j) proj[k] += root(-1.0 * j * k, d) * pw[j];
    proj[k] /= d;
    probs[k] = proj[k].squaredNorm();
  }
  double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  int k = 0;
  double acc = 0;
  for (; k < d; ++k) {
    acc += probs[k];
    if (r < acc && probs[k] > 1e-14) break;
  }
  if (k == d) {
    k = 0;
    for (int j = 1; j < d; ++j) {
      if (probs[j] > probs[k]) k = j;
    }
  }
  if (probs[k] < 1e-14) throw std::logic_error("zero-norm projection");
  MeasureResult res{k, StateVector{s.reg, proj[k] / std::sqrt(probs[k])}};
  return res;
}

CircuitRun apply_circuit(const ScheduledCircuit &c, const StateVector &s,
                         Rng &rng) {
  if (s.reg.dims != c.dims) throw ShapeError("circuit does not match register");
  Register{c.dims}.check_cap();
  CircuitRun run{s, {}};
  for (const auto &layer : c.layers) {
    for (const auto &g : layer.ops) {
      switch (g.kind) {
        case GateKind::PrepZ:
        case GateKind::PrepX: {
          int q = g.targets.at(0);
          auto m = measure_pauli(PauliWord::z_at(c.dims, q), run.state, rng);
          run.state = m.state;
          if (m.outcome) {
            apply_pauli(run.state, PauliWord::x_at(c.dims, q, -m.outcome));
          }
          if (g.kind == GateKind::PrepX) {
            GateApplication h(GateKind::H, {q});
            apply_local(run.state, gate_matrix(h, c.dims).matrix, {q});
          }
          break;
        }
        case GateKind::MeasZ:
        case GateKind::MeasX: {
          int q = g.targets.at(0);
          PauliWord P = g.kind == GateKind::MeasZ ? PauliWord::z_at(c.dims, q)
                                                  : PauliWord::x_at(c.dims, q);
          auto m = measure_pauli(P, run.state, rng);
          run.state = m.state;
          run.outcomes.emplace_back(q, m.outcome);
          break;
        }
        case GateKind::F:
          throw std::invalid_argument("F changes the register; use fusion helpers");
        default:
          apply_local(run.state, gate_matrix(g, c.dims).matrix, g.targets);
      }
    }
  }
  return run;
}

bool equal_up_to_global_phase(const Eigen::MatrixXcd &U,
                              const Eigen::MatrixXcd &V, double tol) {
  if (U.rows() != V.rows() || U.cols() != V.cols()) {
    throw ShapeError("matrix shape mismatch");
  }
  Eigen::Index bi = 0, bj = 0;
  V.cwiseAbs().maxCoeff(&bi, &bj);
  if (std::abs(V(bi, bj)) < tol) return U.cwiseAbs().maxCoeff() <= tol;
  cplx ph = U(bi, bj) / V(bi, bj);
  if (std::abs(std::abs(ph) - 1.0) > tol) return false;
  return (U - ph * V).cwiseAbs().maxCoeff() <= tol;
}

bool equal_up_to_global_phase(const DenseUnitary &U, const DenseUnitary &V,
                              double tol) {
  return equal_up_to_global_phase(U.matrix, V.matrix, tol);
}

StateVector prepare_logical_zero(const StabilizerCode &code, Rng &rng) {
  std::vector<int> dims(code.n, code.d);
  StateVector s = StateVector::zero(dims);
  std::vector<std::vector<int>> A;
  std::vector<int> k;
  for (size_t g = 0; g < code.generators.size(); ++g) {
    if (code.gen_type[g] != 'X') continue;
    auto m = measure_pauli(code.generators[g], s, rng);
    s = m.state;
    std::vector<int> row(code.n);
    for (int q = 0; q < code.n; ++q) row[q] = code.generators[g].x(q);
    A.push_back(row);
    k.push_back(m.outcome);
  }
  if (std::any_of(k.begin(), k.end(), [](int v) { return v != 0; })) {
    auto e = solve_linear(code.d, A, k);
    if (!e) throw std::logic_error("no syndrome correction");
    PauliWord E(dims);
    for (int q = 0; q < code.n; ++q) E.set_z(q, (*e)[q]);
    apply_pauli(s, E);
  }
  return s;
}

double fidelity(const StateVector &a, const StateVector &b) {
  return std::norm(a.amps.dot(b.amps));
}

}  // namespace foldqec
