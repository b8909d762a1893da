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

#include "foldqec/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "foldqec/clifford.hpp"
#include "foldqec/pauli.hpp"
#include "foldqec/scheduler.hpp"

namespace foldqec {

namespace {

long long total_of(const std::vector<int> &dims) {
  long long t = 1;
  for (int d : dims) t *= d;
  return t;
}

std::vector<int> digits_of(long long idx, const std::vector<int> &dims) {
  std::vector<int> out(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) {
    out[i] = static_cast<int>(idx % dims[i]);
    idx /= dims[i];
  }
  return out;
}

long long index_of(const std::vector<int> &digits, const std::vector<int> &dims) {
  long long idx = 0, stride = 1;
  for (size_t i = 0; i < dims.size(); ++i) {
    idx += stride * digits[i];
    stride *= dims[i];
  }
  return idx;
}

void apply_unitary(StateVector &s, const ScheduledCircuit &c) {
  for (const auto &layer : c.layers)
    for (const auto &g : layer.ops) {
      if (!is_unitary(g.kind)) throw std::invalid_argument("non-unitary " + g.str());
      apply_local(s, gate_matrix(g, c.dims).matrix, g.targets);
    }
}

}  // namespace

HybridRegister HybridRegister::pairwise(int n_qudits) {
  HybridRegister h;
  h.qubit_dims.assign(2 * n_qudits, 2);
  h.qudit_dims.assign(n_qudits, 4);
  for (int q = 0; q < n_qudits; ++q) h.pairs.push_back({2 * q, 2 * q + 1, q});
  return h;
}

void HybridRegister::validate() const {
  std::vector<char> used_b(qubit_dims.size(), 0), used_d(qudit_dims.size(), 0);
  for (int d : qubit_dims)
    if (d != 2 && d != 4) throw ShapeError("hybrid sites have dimension 2 or 4");
  for (const auto &p : pairs) {
    for (int s : {p.low, p.high}) {
      if (s < 0 || s >= static_cast<int>(qubit_dims.size()) || qubit_dims[s] != 2 || used_b[s])
        throw ShapeError("fusion pair needs two distinct qubit sites");
      used_b[s] = 1;
    }
    if (p.qudit < 0 || p.qudit >= static_cast<int>(qudit_dims.size()) ||
        qudit_dims[p.qudit] != 4 || used_d[p.qudit])
      throw ShapeError("fusion pair needs a free d=4 site");
    used_d[p.qudit] = 1;
  }
  size_t j = 0;
  for (size_t i = 0; i < qubit_dims.size(); ++i) {
    if (used_b[i]) continue;
    while (j < used_d.size() && used_d[j]) ++j;
    if (j == used_d.size() || qudit_dims[j] != qubit_dims[i])
      throw ShapeError("unpaired sites do not line up");
    ++j;
  }
  while (j < used_d.size() && used_d[j]) ++j;
  if (j != used_d.size()) throw ShapeError("unpaired sites do not line up");
}

long long HybridRegister::fuse_index(long long qubit_index) const {
  auto b = digits_of(qubit_index, qubit_dims);
  std::vector<int> v(qudit_dims.size(), 0);
  std::vector<char> used_b(qubit_dims.size(), 0), used_d(qudit_dims.size(), 0);
  for (const auto &p : pairs) {
    v[p.qudit] = b[p.low] + 2 * b[p.high];
    used_b[p.low] = used_b[p.high] = 1;
    used_d[p.qudit] = 1;
  }
  size_t j = 0;
  for (size_t i = 0; i < qubit_dims.size(); ++i) {
    if (used_b[i]) continue;
    while (used_d[j]) ++j;
    v[j++] = b[i];
  }
  return index_of(v, qudit_dims);
}

StateVector fuse_state(const StateVector &s, const HybridRegister &h) {
  h.validate();
  if (s.reg.dims != h.qubit_dims) throw ShapeError("state does not match the qubit side");
  StateVector out{Register{h.qudit_dims}, Eigen::VectorXcd::Zero(s.amps.size())};
  for (long long i = 0; i < s.amps.size(); ++i) out.amps(h.fuse_index(i)) = s.amps(i);
  return out;
}

StateVector fission_state(const StateVector &s, const HybridRegister &h) {
  h.validate();
  if (s.reg.dims != h.qudit_dims) throw ShapeError("state does not match the qudit side");
  StateVector out{Register{h.qubit_dims}, Eigen::VectorXcd::Zero(s.amps.size())};
  for (long long i = 0; i < s.amps.size(); ++i) out.amps(i) = s.amps(h.fuse_index(i));
  return out;
}

StateVector resource_state() {
  StateVector s = StateVector::zero({4});
  s.amps(0) = s.amps(1) = 1.0 / std::sqrt(2.0);
  return s;
}

bool is_qubit_clifford(const Eigen::MatrixXcd &U, int n, double tol) {
  if (U.rows() != (1LL << n) || U.cols() != U.rows()) throw ShapeError("not an n-qubit matrix");
  std::vector<Eigen::MatrixXcd> paulis;
  for (long long code = 0; code < (1LL << (2 * n)); ++code) {
    PauliWord P(n, 2);
    for (int q = 0; q < n; ++q) {
      P.set_x(q, (code >> (2 * q)) & 1);
      P.set_z(q, (code >> (2 * q + 1)) & 1);
    }
    paulis.push_back(pauli_matrix(P).matrix);
  }
  double N = static_cast<double>(U.rows());
  for (int q = 0; q < n; ++q) {
    for (int z = 0; z < 2; ++z) {
      PauliWord G = z ? PauliWord::z_at(n, 2, q) : PauliWord::x_at(n, 2, q);
      Eigen::MatrixXcd M = U * pauli_matrix(G).matrix * U.adjoint();
      bool found = false;
      for (const auto &P : paulis) {
        if (std::abs((P.adjoint() * M).trace()) / N > 1.0 - tol) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Gate translation

int EmbeddedCircuit::low_site(int q) const {
  return orientation.at(q) == Orientation::LowFirst ? 2 * q : 2 * q + 1;
}

int EmbeddedCircuit::high_site(int q) const { return low_site(q) ^ 1; }

HybridRegister EmbeddedCircuit::fusion_map() const {
  int n = static_cast<int>(orientation.size());
  HybridRegister h = HybridRegister::pairwise(n);
  for (int q = 0; q < n; ++q) h.pairs[q] = {low_site(q), high_site(q), q};
  return h;
}

namespace {

class Translator {
 public:
  explicit Translator(const ScheduledCircuit &c) : src_(c) {
    int n = c.n();
    for (int d : c.dims)
      if (d != 4) throw ShapeError("qubit embedding needs d=4 sites");
    slot_.resize(n);
    for (int q = 0; q < n; ++q)
      slot_[q] = c.coords.empty() ? std::array<int, 2>{q, 0} : c.coords.at(q);
    out_.circuit = ScheduledCircuit(2 * n, 2);
    for (int q = 0; q < n; ++q) {
      out_.circuit.coords.push_back({slot_[q][0], 2 * slot_[q][1]});
      out_.circuit.coords.push_back({slot_[q][0], 2 * slot_[q][1] + 1});
    }
    out_.orientation.assign(n, Orientation::LowFirst);
  }

  EmbeddedCircuit run() {
    for (const auto &layer : src_.layers) {
      std::vector<std::vector<GateApplication>> seqs;
      for (const auto &g : layer.ops) {
        seq_.clear();
        translate(g);
        seqs.push_back(seq_);
      }
      size_t depth = 0;
      for (const auto &s : seqs) depth = std::max(depth, s.size());
      for (size_t k = 0; k < depth; ++k) {
        Layer L;
        for (const auto &s : seqs)
          if (k < s.size()) L.ops.push_back(s[k]);
        out_.circuit.layers.push_back(L);
      }
    }
    return out_;
  }

 private:
  int lo(int q) const { return out_.low_site(q); }
  int hi(int q) const { return out_.high_site(q); }

  std::array<int, 2> cell(int site) const { return out_.circuit.coords[site]; }

  bool adjacent(int s, int t) const {
    auto a = cell(s), b = cell(t);
    return std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) == 1;
  }

  void emit(GateKind k, std::vector<int> t, int p = 1) { seq_.emplace_back(k, std::move(t), p); }

  void flip(int q) {
    emit(GateKind::SWAP, {2 * q, 2 * q + 1});
    ++out_.routing_swaps;
    toggle(q);
  }

  void toggle(int q) {
    auto &o = out_.orientation[q];
    o = o == Orientation::LowFirst ? Orientation::HighFirst : Orientation::LowFirst;
  }

  // Brings qubit `ra` of qudit a (0 low, 1 high) next to qubit `rb` of qudit b.
  void route(int a, int ra, int b, int rb) {
    auto site = [&](int q, int r) { return r ? hi(q) : lo(q); };
    if (adjacent(site(a, ra), site(b, rb))) return;
    if (adjacent(site(a, ra) ^ 1, site(b, rb))) return flip(a);
    if (adjacent(site(a, ra), site(b, rb) ^ 1)) return flip(b);
    if (adjacent(site(a, ra) ^ 1, site(b, rb) ^ 1)) {
      flip(a);
      return flip(b);
    }
    throw std::invalid_argument("qudits " + std::to_string(a) + " and " + std::to_string(b) +
                                " are not neighbours");
  }

  void pauli_x(int q, int p) {
    p = ((p % 4) + 4) % 4;
    if (p == 1) {
      emit(GateKind::CX, {lo(q), hi(q)});
      emit(GateKind::X, {lo(q)});
    } else if (p == 2) {
      emit(GateKind::X, {hi(q)});
    } else if (p == 3) {
      emit(GateKind::X, {lo(q)});
      emit(GateKind::CX, {lo(q), hi(q)});
    }
  }

  void pauli_z(int q, int p) {
    p = ((p % 4) + 4) % 4;
    if (p == 0) return;
    emit(GateKind::S, {lo(q)}, p);
    if (p % 2) emit(GateKind::Z, {hi(q)});
  }

  void hadamard(int q, int p) {
    p = ((p % 4) + 4) % 4;
    for (int i = 0; i < p; ++i) {
      emit(GateKind::H, {hi(q)});
      emit(GateKind::CS, {lo(q), hi(q)});
      emit(GateKind::H, {lo(q)});
      // The trailing swap of the pair is absorbed into the orientation.
      toggle(q);
    }
  }

  void phase(int q, int p) {
    p = ((p % 8) + 8) % 8;
    if (p == 0) return;
    emit(GateKind::T, {lo(q)}, (3 * p) % 8);
    if (p % 2) emit(GateKind::CZ, {lo(q), hi(q)});
  }

  void cz(int c, int t, int p) {
    p = ((p % 4) + 4) % 4;
    if (p == 0) return;
    route(c, 0, t, 0);
    emit(GateKind::CS, {lo(c), lo(t)}, p);
    if (p % 2 == 0) return;
    route(c, 0, t, 1);
    emit(GateKind::CZ, {lo(c), hi(t)});
    route(c, 1, t, 0);
    emit(GateKind::CZ, {hi(c), lo(t)});
  }

  void swap(int a, int b) {
    // Tokens 0,1 are a's low/high, 2,3 are b's; positions are the four sites.
    std::array<int, 4> sites{2 * a, 2 * a + 1, 2 * b, 2 * b + 1};
    std::array<int, 4> start{};
    start[0] = lo(a) == 2 * a ? 0 : 1;
    start[1] = 1 - start[0];
    start[2] = lo(b) == 2 * b ? 2 : 3;
    start[3] = 5 - start[2];
    // pos -> token
    std::array<int, 4> occ{};
    for (int t = 0; t < 4; ++t) occ[start[t]] = t;
    std::vector<std::pair<int, int>> moves;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (adjacent(sites[i], sites[j])) moves.push_back({i, j});
    std::map<std::array<int, 4>, std::pair<std::array<int, 4>, int>> prev;
    std::queue<std::array<int, 4>> bfs;
    bfs.push(occ);
    prev[occ] = {occ, -1};
    std::array<int, 4> goal{};
    bool found = false;
    while (!bfs.empty()) {
      auto cur = bfs.front();
      bfs.pop();
      if (cur[0] >= 2 && cur[1] >= 2 && cur[2] < 2 && cur[3] < 2) {
        goal = cur;
        found = true;
        break;
      }
      for (size_t m = 0; m < moves.size(); ++m) {
        auto nxt = cur;
        std::swap(nxt[moves[m].first], nxt[moves[m].second]);
        if (prev.count(nxt)) continue;
        prev[nxt] = {cur, static_cast<int>(m)};
        bfs.push(nxt);
      }
    }
    if (!found)
      throw std::invalid_argument("qudits " + std::to_string(a) + " and " + std::to_string(b) +
                                  " are not neighbours");
    std::vector<int> path;
    for (auto cur = goal; prev[cur].second >= 0; cur = prev[cur].first)
      path.push_back(prev[cur].second);
    std::reverse(path.begin(), path.end());
    for (int m : path) emit(GateKind::SWAP, {sites[moves[m].first], sites[moves[m].second]});
    // Site b now carries a's tokens 0/1 and site a carries b's tokens 2/3.
    out_.orientation[b] = goal[2] == 0 ? Orientation::LowFirst : Orientation::HighFirst;
    out_.orientation[a] = goal[0] == 2 ? Orientation::LowFirst : Orientation::HighFirst;
  }

  void translate(const GateApplication &g) {
    const auto &t = g.targets;
    switch (g.kind) {
      case GateKind::X:
        return pauli_x(t[0], g.power);
      case GateKind::Z:
        return pauli_z(t[0], g.power);
      case GateKind::H:
        return hadamard(t[0], g.power);
      case GateKind::S:
        return phase(t[0], g.power);
      case GateKind::CZ:
        return cz(t[0], t[1], g.power);
      case GateKind::CX:
        hadamard(t[1], 1);
        cz(t[0], t[1], g.power);
        return hadamard(t[1], 3);
      case GateKind::SWAP:
        return swap(t[0], t[1]);
      case GateKind::PrepZ:
      case GateKind::PrepX:
        emit(g.kind, {lo(t[0])});
        emit(g.kind, {hi(t[0])});
        return;
      case GateKind::MeasZ:
      case GateKind::MeasX:
        // An X readout is H followed by a Z readout of the pair.
        if (g.kind == GateKind::MeasX) hadamard(t[0], 1);
        emit(GateKind::MeasZ, {lo(t[0])});
        emit(GateKind::MeasZ, {hi(t[0])});
        out_.measurement_bits.push_back({lo(t[0]), hi(t[0])});
        return;
      default:
        throw std::invalid_argument("no qubit translation for " + g.str());
    }
  }

  const ScheduledCircuit &src_;
  std::vector<std::array<int, 2>> slot_;
  EmbeddedCircuit out_;
  std::vector<GateApplication> seq_;
};

}  // namespace

EmbeddedCircuit embed_circuit_in_qubits(const ScheduledCircuit &c) { return Translator(c).run(); }

QubitLayout embed_code_in_qubits(const StabilizerCode &code, const FoldLayout &layout) {
  if (code.d != 4) throw ShapeError("qubit embedding needs d=4");
  if (layout.n != code.n) throw ShapeError("layout does not match code");
  QubitLayout out;
  out.n_qudits = code.n;
  // Slots are those of the folded syndrome circuit at the start of a round.
  auto sc = syndrome_circuit_folded(code, layout);
  for (int q = 0; q < code.n; ++q) {
    auto s = sc.circuit.coords.at(sc.data_site.at(q));
    out.cells.push_back({s[0], 2 * s[1]});
    out.cells.push_back({s[0], 2 * s[1] + 1});
  }
  out.orientation.assign(code.n, Orientation::LowFirst);
  return out;
}

Eigen::MatrixXcd fused_unitary(const EmbeddedCircuit &e) {
  Eigen::MatrixXcd U = circuit_unitary(e.circuit).matrix;
  HybridRegister fin = e.fusion_map();
  Eigen::MatrixXcd out(U.rows(), U.cols());
  for (long long i = 0; i < U.rows(); ++i) out.row(fin.fuse_index(i)) = U.row(i);
  return out;
}

// ---------------------------------------------------------------------------
// Branch-resolved protocols

namespace {

// Linear map from the protocol input to the current register, per outcome record.
class BranchTracker {
 public:
  struct Branch {
    std::vector<int> outcomes;
    Eigen::MatrixXcd K;
  };

  explicit BranchTracker(std::vector<int> dims) : dims_(std::move(dims)) {
    long long N = total_of(dims_);
    branches_.push_back({{}, Eigen::MatrixXcd::Identity(N, N)});
  }

  const std::vector<int> &dims() const { return dims_; }
  std::vector<Branch> &branches() { return branches_; }

  void gate(const GateApplication &g) {
    Eigen::MatrixXcd U = embed(gate_matrix(g, dims_).matrix, g.targets, dims_);
    for (auto &b : branches_) b.K = U * b.K;
  }

  // Appends a site in state v as the last site.
  void prep(const Eigen::VectorXcd &v) {
    long long N = total_of(dims_);
    for (auto &b : branches_) {
      Eigen::MatrixXcd K(N * v.size(), b.K.cols());
      for (Eigen::Index j = 0; j < v.size(); ++j) K.middleRows(j * N, N) = v(j) * b.K;
      b.K = K;
    }
    dims_.push_back(static_cast<int>(v.size()));
  }

  void prep_zero(int d) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d);
    v(0) = 1;
    prep(v);
  }

  void prep_plus(int d) { prep(Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(double(d)))); }

  // X readouts apply H and read Z; outcome k is the X eigenvalue w^k.
  void measure(int site, bool x_basis) {
    int d = dims_.at(site);
    if (x_basis) gate(GateApplication(GateKind::H, {site}));
    std::vector<int> rest = dims_;
    rest.erase(rest.begin() + site);
    long long N = total_of(rest);
    std::vector<Branch> next;
    for (const auto &b : branches_) {
      for (int o = 0; o < d; ++o) {
        Eigen::MatrixXcd K(N, b.K.cols());
        for (long long r = 0; r < N; ++r) {
          auto dig = digits_of(r, rest);
          dig.insert(dig.begin() + site, o);
          K.row(r) = b.K.row(index_of(dig, dims_));
        }
        if (K.norm() < 1e-12) continue;
        auto out = b.outcomes;
        out.push_back(o);
        next.push_back({out, K});
      }
    }
    branches_ = next;
    dims_ = rest;
  }

 private:
  std::vector<int> dims_;
  std::vector<Branch> branches_;
};

struct Candidate {
  std::string label;
  Eigen::MatrixXcd U;
};

std::vector<Candidate> qudit_words() {
  std::vector<Candidate> out;
  for (int e = 0; e < 2; ++e)
    for (int c = 0; c < 8; ++c)
      for (int z = 0; z < 4; ++z)
        for (int x = 0; x < 4; ++x) {
          ScheduledCircuit sc(1, 4);
          std::string label;
          auto add = [&](GateKind k, int p, const char *name) {
            if (!p) return;
            sc.layers.push_back(Layer{{GateApplication(k, {0}, p)}});
            label += (label.empty() ? "" : " ") + std::string(name) + "^" + std::to_string(p);
          };
          add(GateKind::H, 2 * e, "H");
          add(GateKind::S, c, "S");
          add(GateKind::Z, z, "Z");
          add(GateKind::X, x, "X");
          out.push_back({label.empty() ? "I" : label, circuit_unitary(sc).matrix});
        }
  return out;
}

std::vector<Candidate> qubit_paulis(int n) {
  std::vector<Candidate> out;
  for (int code = 0; code < (1 << (2 * n)); ++code) {
    PauliWord P(n, 2);
    std::string label;
    for (int q = 0; q < n; ++q) {
      int x = (code >> (2 * q)) & 1, z = (code >> (2 * q + 1)) & 1;
      P.set_x(q, x);
      P.set_z(q, z);
      if (x) label += (label.empty() ? "" : " ") + std::string("X") + std::to_string(q);
      if (z) label += (label.empty() ? "" : " ") + std::string("Z") + std::to_string(q);
    }
    out.push_back({label.empty() ? "I" : label, pauli_matrix(P).matrix});
  }
  return out;
}

// Qudit Paulis (and the negation H^2) translated onto a (low, high) qubit
// pair, composed with a qubit Pauli in either order.
std::vector<Candidate> translated_qudit_paulis() {
  std::vector<Candidate> out;
  auto tail = qubit_paulis(2);
  for (int e = 0; e < 2; ++e)
    for (int z = 0; z < 4; ++z)
      for (int x = 0; x < 4; ++x) {
        ScheduledCircuit sc(1, 4);
        if (e) sc.layers.push_back(Layer{{GateApplication(GateKind::H, {0}, 2)}});
        if (z) sc.layers.push_back(Layer{{GateApplication(GateKind::Z, {0}, z)}});
        if (x) sc.layers.push_back(Layer{{GateApplication(GateKind::X, {0}, x)}});
        auto emb = embed_circuit_in_qubits(sc);
        if (emb.orientation[0] != Orientation::LowFirst) throw std::logic_error("orientation");
        Eigen::MatrixXcd U = circuit_unitary(emb.circuit).matrix;
        std::string label = "fused(H^" + std::to_string(2 * e) + " Z^" + std::to_string(z) +
                            " X^" + std::to_string(x) + ")";
        for (const auto &t : tail) {
          out.push_back({label + " then " + t.label, t.U * U});
          out.push_back({t.label + " then " + label, U * t.U});
        }
      }
  return out;
}

Eigen::MatrixXcd with_resource(const Eigen::MatrixXcd &K, long long n_in,
                               const std::vector<int> &res_dims) {
  if (res_dims.empty()) return K;
  Eigen::VectorXcd r = resource_state().amps;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(K.rows(), n_in);
  for (Eigen::Index j = 0; j < r.size(); ++j) out += r(j) * K.middleCols(j * n_in, n_in);
  return out;
}

// Picks, per branch, the first candidate C with C K = lambda T.
HybridProtocol solve_corrections(
    HybridProtocol p, BranchTracker &tr, const std::vector<Candidate> &cands,
    const std::function<Eigen::MatrixXcd(const std::vector<int> &)> &target) {
  p.output_dims = tr.dims();
  long long n_in = total_of(p.input_dims);
  for (auto &b : tr.branches()) {
    Eigen::MatrixXcd K = with_resource(b.K, n_in, p.resource_dims);
    Eigen::MatrixXcd T = target(b.outcomes);
    Eigen::MatrixXcd Tn = T / T.norm();
    bool ok = false;
    for (const auto &c : cands) {
      Eigen::MatrixXcd M = c.U * K;
      if (!equal_up_to_global_phase(Eigen::MatrixXcd(M / M.norm()), Tn, 1e-9)) continue;
      p.branches.push_back({b.outcomes, c.U * b.K, T, c.label});
      ok = true;
      break;
    }
    if (!ok) throw std::logic_error(p.name + ": no correction for a branch");
  }
  return p;
}

Eigen::MatrixXcd fusion_matrix() { return Eigen::MatrixXcd::Identity(4, 4); }

}  // namespace

StateVector HybridProtocol::run(const StateVector &input, std::optional<StateVector> &resource,
                                Rng &rng, std::vector<int> *outcomes) const {
  if (input.reg.dims != input_dims) throw ShapeError(name + ": input register mismatch");
  Eigen::VectorXcd joint = input.amps;
  if (!resource_dims.empty()) {
    if (!resource) throw MissingResource(name + " consumes a resource state");
    if (resource->reg.dims != resource_dims) throw ShapeError(name + ": resource mismatch");
    Eigen::VectorXcd r = resource->amps;
    joint = Eigen::VectorXcd(input.amps.size() * r.size());
    for (Eigen::Index j = 0; j < r.size(); ++j)
      joint.segment(j * input.amps.size(), input.amps.size()) = r(j) * input.amps;
    resource.reset();
  }
  std::vector<Eigen::VectorXcd> outs;
  std::vector<double> w;
  for (const auto &b : branches) {
    outs.push_back(b.map * joint);
    w.push_back(outs.back().squaredNorm());
  }
  std::discrete_distribution<size_t> pick(w.begin(), w.end());
  size_t k = pick(rng);
  if (outcomes) *outcomes = branches[k].outcomes;
  return StateVector{Register{output_dims}, outs[k] / std::sqrt(w[k])};
}

double HybridProtocol::worst_branch_fidelity(const StateVector &input) const {
  long long n_in = input.amps.size();
  double worst = 1.0;
  for (const auto &b : branches) {
    Eigen::VectorXcd out = with_resource(b.map, n_in, resource_dims) * input.amps;
    Eigen::VectorXcd want = b.target * input.amps;
    if (out.squaredNorm() < 1e-14 && want.squaredNorm() < 1e-14) continue;
    if (out.squaredNorm() < 1e-14 || want.squaredNorm() < 1e-14) return 0.0;
    double f = std::norm(want.dot(out)) / (want.squaredNorm() * out.squaredNorm());
    worst = std::min(worst, f);
  }
  return worst;
}

HybridProtocol teleport_fusion_protocol() {
  HybridProtocol p;
  p.name = "teleport_fusion";
  p.input_dims = {2, 2};
  p.resource_dims = {4};
  // Sites: low qubit 0, high qubit 1, resource 2.
  BranchTracker tr({2, 2, 4});
  tr.gate({GateKind::CdXb, {2, 0}});
  tr.measure(0, false);
  tr.gate({GateKind::CbXd, {0, 1}});
  tr.measure(0, true);
  p.steps = {"CdXb resource -> low", "measure low in Z", "CbXd high -> resource",
             "measure high in X", "correct resource from table"};
  return solve_corrections(p, tr, qudit_words(),
                           [](const std::vector<int> &) { return fusion_matrix(); });
}

HybridProtocol teleport_fission_protocol() {
  HybridProtocol p;
  p.name = "teleport_fission";
  p.input_dims = {4};
  p.resource_dims = {4};
  // Sites: qudit 0, resource 1, then Bell pairs (a, a') and (b, b').
  BranchTracker tr({4, 4});
  for (int i = 0; i < 4; ++i) tr.prep_zero(2);
  tr.gate({GateKind::H, {2}});
  tr.gate({GateKind::CX, {2, 3}});
  tr.gate({GateKind::H, {4}});
  tr.gate({GateKind::CX, {4, 5}});
  // Fuse (a', b') into the resource site.
  tr.gate({GateKind::CdXb, {1, 3}});
  tr.measure(3, false);
  tr.gate({GateKind::CbXd, {4, 1}});
  tr.measure(4, true);
  // Teleport the qudit through the fused pair.
  tr.gate({GateKind::CX, {0, 1}});
  tr.measure(1, false);
  tr.measure(0, true);
  p.steps = {"Bell pairs (a, a') and (b, b')", "CdXb resource -> a'", "measure a' in Z",
             "CbXd b' -> resource", "measure b' in X", "CX qudit -> resource",
             "measure resource in Z", "measure qudit in X", "correct (a, b) from table"};
  return solve_corrections(p, tr, translated_qudit_paulis(),
                           [](const std::vector<int> &) -> Eigen::MatrixXcd {
                             return fusion_matrix().adjoint();
                           });
}

HybridProtocol partial_fusion_protocol(int low) {
  if (low != 0 && low != 1) throw std::invalid_argument("classical low digit is 0 or 1");
  HybridProtocol p;
  p.name = "partial_fusion_" + std::to_string(low);
  p.input_dims = {2};
  BranchTracker tr({2});
  tr.prep_zero(4);
  if (low) tr.gate({GateKind::X, {1}});
  tr.gate({GateKind::CbXd, {0, 1}});
  tr.measure(0, true);
  p.steps = {"prepare qudit in |low>", "CbXd high -> qudit", "measure high in X",
             "correct qudit from table"};
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(4, 2);
  for (int y = 0; y < 2; ++y) T(low + 2 * y, y) = 1;
  return solve_corrections(p, tr, qudit_words(), [T](const std::vector<int> &) { return T; });
}

HybridProtocol partial_fission_protocol() {
  HybridProtocol p;
  p.name = "partial_fission";
  p.input_dims = {4};
  BranchTracker tr({4});
  tr.prep_zero(2);
  tr.gate({GateKind::CdXb, {0, 1}});
  tr.measure(1, false);
  tr.prep_plus(2);
  tr.gate({GateKind::CbXd, {1, 0}});
  tr.measure(0, false);
  p.steps = {"CdXb qudit -> fresh qubit", "measure it in Z (low digit)",
             "CbXd fresh |+> -> qudit", "measure qudit in Z", "correct qubit from table"};
  return solve_corrections(p, tr, qubit_paulis(1), [](const std::vector<int> &o) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2, 4);
    for (int y = 0; y < 2; ++y) T(y, o.at(0) + 2 * y) = 1;
    return T;
  });
}

StateVector teleport_fusion(const StateVector &in, std::optional<StateVector> &resource,
                            Rng &rng) {
  static const HybridProtocol p = teleport_fusion_protocol();
  return p.run(in, resource, rng);
}

StateVector teleport_fission(const StateVector &in, std::optional<StateVector> &resource,
                             Rng &rng) {
  static const HybridProtocol p = teleport_fission_protocol();
  return p.run(in, resource, rng);
}

// ---------------------------------------------------------------------------
// Identity suite

namespace {

double phase_error(const Eigen::MatrixXcd &U, const Eigen::MatrixXcd &V) {
  Eigen::Index bi = 0, bj = 0;
  V.cwiseAbs().maxCoeff(&bi, &bj);
  cplx ph = U(bi, bj) / V(bi, bj);
  ph /= std::abs(ph);
  return (U - ph * V).cwiseAbs().maxCoeff();
}

bool has_non_clifford(const ScheduledCircuit &c) {
  for (const auto &L : c.layers)
    for (const auto &g : L.ops)
      if (g.kind == GateKind::T ? g.power % 2 != 0 : !is_clifford(g.kind)) return true;
  return false;
}

bool all_clifford(const ScheduledCircuit &c) {
  for (const auto &L : c.layers)
    for (const auto &g : L.ops)
      if (!is_clifford(g.kind) && !(g.kind == GateKind::T && g.power % 2 == 0)) return false;
  return true;
}

StateVector random_state(const std::vector<int> &dims, Rng &rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  StateVector s = StateVector::zero(dims);
  for (Eigen::Index i = 0; i < s.amps.size(); ++i) s.amps(i) = cplx(n(rng), n(rng));
  s.amps.normalize();
  return s;
}

ScheduledCircuit single_gate(GateKind k, int n, std::vector<int> t, int p = 1) {
  ScheduledCircuit c(n, 4);
  c.layers.push_back(Layer{{GateApplication(k, std::move(t), p)}});
  return c;
}

IdentityCheck check_protocol(const HybridProtocol &p, Rng &rng) {
  IdentityCheck r{p.name, true, 0.0, ""};
  double worst = 1.0, weight_err = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    StateVector in = random_state(p.input_dims, rng);
    worst = std::min(worst, p.worst_branch_fidelity(in));
    Eigen::VectorXcd joint = in.amps;
    if (!p.resource_dims.empty()) {
      Eigen::VectorXcd res = resource_state().amps;
      joint.resize(in.amps.size() * res.size());
      for (Eigen::Index j = 0; j < res.size(); ++j)
        joint.segment(j * in.amps.size(), in.amps.size()) = res(j) * in.amps;
    }
    double w = 0.0;
    for (const auto &b : p.branches) w += (b.map * joint).squaredNorm();
    weight_err = std::max(weight_err, std::abs(w - 1.0));
  }
  r.error = std::max(1.0 - worst, weight_err);
  r.passed = r.error <= 1e-9;
  r.detail = std::to_string(p.branches.size()) + " branches, 20 random inputs";
  return r;
}

}  // namespace

std::vector<IdentityCheck> fusion_identity_suite(unsigned seed) {
  Rng rng(seed);
  std::vector<IdentityCheck> out;

  {
    IdentityCheck r{"fused_pauli_sandwiches", true, 0.0, "X^a Z^b, a,b in Z_4"};
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        ScheduledCircuit c(1, 4);
        if (b) c.layers.push_back(Layer{{GateApplication(GateKind::Z, {0}, b)}});
        if (a) c.layers.push_back(Layer{{GateApplication(GateKind::X, {0}, a)}});
        auto e = embed_circuit_in_qubits(c);
        PauliWord P(1, 4);
        P.set_x(0, a);
        P.set_z(0, b);
        r.error = std::max(r.error, phase_error(fused_unitary(e), pauli_matrix(P).matrix));
        if (!all_clifford(e.circuit)) r.passed = false;
      }
    r.passed = r.passed && r.error <= 1e-9;
    out.push_back(r);
  }

  struct Gen {
    const char *name;
    ScheduledCircuit c;
  };
  std::vector<Gen> gens = {{"H", single_gate(GateKind::H, 1, {0})},
                           {"S", single_gate(GateKind::S, 1, {0})},
                           {"CZ", single_gate(GateKind::CZ, 2, {0, 1})},
                           {"CX", single_gate(GateKind::CX, 2, {0, 1})}};
  for (const auto &g : gens) {
    IdentityCheck r{std::string("clifford_generator_") + g.name, true, 0.0, ""};
    auto e = embed_circuit_in_qubits(g.c);
    Eigen::MatrixXcd U = circuit_unitary(g.c).matrix;
    r.error = phase_error(fused_unitary(e), U);
    bool non_cliff = has_non_clifford(e.circuit);
    // F is the identity in low-first indexing, so U is also F U F-dagger.
    bool qubit_cliff = is_qubit_clifford(U, 2 * g.c.n());
    r.passed = r.error <= 1e-9 && non_cliff && !qubit_cliff;
    r.detail = std::string(non_cliff ? "contains" : "lacks") + " a non-Clifford qubit gate; " +
               (qubit_cliff ? "is" : "is not") + " a qubit Clifford";
    out.push_back(r);
  }

  {
    IdentityCheck r{"resource_state", true, 0.0, "|F> = F(|+> (x) |0>)"};
    StateVector plus0 = StateVector::zero({2, 2});
    plus0.amps(0) = plus0.amps(1) = 1.0 / std::sqrt(2.0);
    StateVector f = fuse_state(plus0, HybridRegister{{2, 2}, {4}, {{0, 1, 0}}});
    r.error = (f.amps - resource_state().amps).cwiseAbs().maxCoeff();
    r.passed = r.error <= 1e-12;
    out.push_back(r);
  }

  {
    IdentityCheck r{"hybrid_gate_forms", true, 0.0, "matrix forms and Pauli conjugation"};
    Eigen::MatrixXcd A = gate_matrix(GateApplication(GateKind::CbXd, {0, 1}), {2, 4}).matrix;
    Eigen::MatrixXcd B = gate_matrix(GateApplication(GateKind::CdXb, {1, 0}), {2, 4}).matrix;
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 4; ++y) {
        // CbXd: |x, y> -> |x, y + 2x>; CdXb (qudit digit first): |y, x> -> |y, x + y mod 2>.
        r.error = std::max(r.error, std::abs(A(x + 2 * ((y + 2 * x) % 4), x + 2 * y) - 1.0));
        r.error = std::max(r.error, std::abs(B(y + 4 * ((x + y) % 2), y + 4 * x) - 1.0));
      }
    for (auto g : {GateApplication(GateKind::CbXd, {0, 1}), GateApplication(GateKind::CdXb, {1, 0})}) {
      Eigen::MatrixXcd U = embed(gate_matrix(g, {2, 4}).matrix, g.targets, {2, 4});
      for (int s = 0; s < 2; ++s)
        for (int z = 0; z < 2; ++z) {
          PauliWord P = z ? PauliWord::z_at({2, 4}, s) : PauliWord::x_at({2, 4}, s);
          Eigen::MatrixXcd lhs = U * pauli_matrix(P).matrix * U.adjoint();
          r.error = std::max(r.error, (lhs - pauli_matrix(conjugate(g, P)).matrix).cwiseAbs().maxCoeff());
        }
    }
    r.passed = r.error <= 1e-10;
    out.push_back(r);
  }

  {
    IdentityCheck r{"fusion_examples", true, 0.0, "|00> -> |0>, |+0> -> |F>"};
    auto p = teleport_fusion_protocol();
    StateVector plus0 = StateVector::zero({2, 2});
    plus0.amps(0) = plus0.amps(1) = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < 8; ++k) {
      std::optional<StateVector> res = resource_state();
      StateVector a = p.run(StateVector::zero({2, 2}), res, rng);
      r.error = std::max(r.error, 1.0 - fidelity(a, StateVector::zero({4})));
      res = resource_state();
      StateVector b = p.run(plus0, res, rng);
      r.error = std::max(r.error, 1.0 - fidelity(b, resource_state()));
      if (res) r.passed = false;
    }
    std::optional<StateVector> none;
    try {
      p.run(plus0, none, rng);
      r.passed = false;
    } catch (const MissingResource &) {
    }
    r.passed = r.passed && r.error <= 1e-9;
    out.push_back(r);
  }

  for (const auto &p : {teleport_fusion_protocol(), teleport_fission_protocol(),
                        partial_fusion_protocol(0), partial_fusion_protocol(1),
                        partial_fission_protocol()})
    out.push_back(check_protocol(p, rng));

  {
    IdentityCheck r{"embedded_syndrome_D2", true, 0.0, ""};
    StabilizerCode code = build_square(2, 4);
    FoldLayout layout = assign_bipartition(code, fold_square(code));
    ScheduledCircuit sc = syndrome_circuit_folded(code, layout).circuit;
    EmbeddedCircuit e = embed_circuit_in_qubits(sc);
    // Reference: preparations dropped, X readouts replaced by the H they translate to.
    ScheduledCircuit ref(sc.dims), emb(e.circuit.dims);
    for (const auto &L : sc.layers) {
      Layer M;
      for (const auto &g : L.ops) {
        if (g.kind == GateKind::MeasX) M.ops.emplace_back(GateKind::H, g.targets);
        else if (is_unitary(g.kind)) M.ops.push_back(g);
      }
      ref.layers.push_back(M);
    }
    int far = 0;
    for (const auto &L : e.circuit.layers) {
      Layer M;
      for (const auto &g : L.ops) {
        if (!is_unitary(g.kind)) continue;
        if (g.targets.size() == 2) {
          auto a = e.circuit.coords[g.targets[0]], b = e.circuit.coords[g.targets[1]];
          if (std::abs(a[0] - b[0]) + std::abs(a[1] - b[1]) != 1) ++far;
        }
        M.ops.push_back(g);
      }
      emb.layers.push_back(M);
    }
    long long saved = Register::cap;
    Register::cap = std::max(saved, 1LL << 18);
    try {
      StateVector psi = random_state(sc.dims, rng);
      StateVector a = psi;
      apply_unitary(a, ref);
      StateVector b = fission_state(psi, HybridRegister::pairwise(sc.n()));
      apply_unitary(b, emb);
      StateVector bf = fuse_state(b, e.fusion_map());
      r.error = 1.0 - fidelity(a, bf);
    } catch (...) {
      Register::cap = saved;
      throw;
    }
    Register::cap = saved;
    r.passed = r.error <= 1e-9 && far == 0;
    r.detail = std::to_string(e.circuit.layers.size()) + " qubit layers, " +
               std::to_string(e.routing_swaps) + " routing swaps, " + std::to_string(far) +
               " non-adjacent gates";
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Generator overlap

OverlapReport generator_overlap_report(int D, unsigned seed) {
  StabilizerCode c4 = build_square(D, 4);
  StabilizerCode c2 = build_square(D, 2);
  if (c4.n != c2.n) throw std::logic_error("square codes differ in size");
  int n = c4.n;
  std::vector<int> qdims(2 * n, 2);
  Register{qdims}.check_cap();
  Rng rng(seed);
  std::vector<StateVector> probes;
  for (int i = 0; i < 3; ++i) probes.push_back(random_state(qdims, rng));

  // Qudit generators and their powers as translated qubit circuits.
  struct Image {
    std::string label;
    ScheduledCircuit c;
  };
  std::vector<Image> images;
  for (size_t g = 0; g < c4.generators.size(); ++g)
    for (int k = 1; k < 4; ++k) {
      ScheduledCircuit sc(n, 4);
      const auto &G = c4.generators[g];
      for (int q = 0; q < n; ++q) {
        if (G.z(q)) sc.layers.push_back(Layer{{GateApplication(GateKind::Z, {q}, k * G.z(q))}});
        if (G.x(q)) sc.layers.push_back(Layer{{GateApplication(GateKind::X, {q}, k * G.x(q))}});
      }
      images.push_back({std::string(1, c4.gen_type[g]) + std::to_string(g) + "^" +
                            std::to_string(k),
                        embed_circuit_in_qubits(sc).circuit});
    }

  OverlapReport rep;
  rep.D = D;
  for (int layer = 0; layer < 2; ++layer) {
    for (size_t g = 0; g < c2.generators.size(); ++g) {
      const auto &G = c2.generators[g];
      PauliWord S(2 * n, 2);
      for (int q = 0; q < n; ++q) {
        S.set_x(2 * q + layer, G.x(q));
        S.set_z(2 * q + layer, G.z(q));
      }
      ++rep.stacked;
      std::string shared_with;
      bool commutes = true;
      for (const auto &im : images) {
        std::optional<cplx> ratio;
        bool equal = true;
        for (const auto &psi : probes) {
          StateVector a = psi, b = psi;
          apply_pauli(a, S);
          apply_unitary(b, im.c);
          cplx ov = b.amps.dot(a.amps);
          if (std::abs(std::abs(ov) - 1.0) > 1e-9 || (ratio && std::abs(*ratio - ov) > 1e-9)) {
            equal = false;
          }
          ratio = ov;
          if (im.label.back() == '1') {
            StateVector sa = psi, sb = psi;
            apply_unitary(sa, im.c);
            apply_pauli(sa, S);
            apply_pauli(sb, S);
            apply_unitary(sb, im.c);
            if ((sa.amps - sb.amps).cwiseAbs().maxCoeff() > 1e-9) commutes = false;
          }
        }
        if (equal && shared_with.empty()) shared_with = im.label;
      }
      if (!shared_with.empty()) ++rep.shared;
      if (commutes) ++rep.commuting;
      rep.rows.push_back(std::string(layer ? "high " : "low ") + c2.gen_type[g] +
                         std::to_string(g) + ": " +
                         (shared_with.empty() ? "not shared" : "shared with " + shared_with) +
                         (commutes ? ", commutes" : ", does not commute"));
    }
  }
  return rep;
}

}  // namespace foldqec
