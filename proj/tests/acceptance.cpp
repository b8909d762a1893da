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

// Acceptance run: one PASS/FAIL line per criterion. Arguments select criteria
// by number; no arguments runs all of them.

#include <algorithm>
#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "foldqec/clifford.hpp"
#include "foldqec/code.hpp"
#include "foldqec/dense.hpp"
#include "foldqec/fusion.hpp"
#include "foldqec/noise.hpp"
#include "foldqec/scheduler.hpp"
#include "foldqec/transversal.hpp"
#include "foldqec/zmod.hpp"

using namespace foldqec;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(double v, int prec = 4) {
  std::ostringstream o;
  o.precision(prec);
  o << v;
  return o.str();
}

std::string opt(const std::optional<double> &v) { return v ? fmt(*v) : std::string("none"); }

Eigen::MatrixXcd full(const GateApplication &g, const std::vector<int> &dims) {
  return embed(gate_matrix(g, dims).matrix, g.targets, dims);
}

// 1. Conjugation tables and composed maps against the dense oracle.
Outcome algebra_oracle() {
  Outcome r;
  double worst = 0;
  long entries = 0, maps = 0;
  auto check = [&](const Eigen::MatrixXcd &U, const PauliWord &P, const PauliWord &img) {
    Eigen::MatrixXcd lhs = U * pauli_matrix(P).matrix * U.adjoint();
    worst = std::max(worst, (lhs - pauli_matrix(img).matrix).cwiseAbs().maxCoeff());
  };
  std::vector<std::pair<GateKind, int>> kinds1 = {
      {GateKind::X, 1}, {GateKind::Z, 1}, {GateKind::H, 1}, {GateKind::S, 1}};
  std::vector<GateKind> kinds2 = {GateKind::CX, GateKind::CZ, GateKind::SWAP};
  for (int d = 2; d <= 5; ++d) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<int> dims(n, d);
      std::vector<GateApplication> gates;
      for (auto [k, unused] : kinds1)
        for (int p : {1, -1, 2, 3})
          for (int a = 0; a < n; ++a) gates.emplace_back(k, std::vector<int>{a}, p);
      for (auto k : kinds2)
        for (int p : {1, -1, 2})
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
              if (a != b) gates.emplace_back(k, std::vector<int>{a, b}, p);
      for (const auto &g : gates) {
        Eigen::MatrixXcd U = full(g, dims);
        for (int q = 0; q < n; ++q) {
          for (auto P : {PauliWord::x_at(dims, q), PauliWord::z_at(dims, q)}) {
            check(U, P, conjugate(g, P));
            ++entries;
          }
        }
      }
      // Composed maps from random Clifford circuits.
      Rng rng(1000 + 10 * d + n);
      std::uniform_int_distribution<size_t> pick(0, gates.size() - 1);
      for (int rep = 0; rep < 40; ++rep) {
        ScheduledCircuit c(dims);
        for (int k = 0; k < 12; ++k) c.layers.push_back(Layer{{gates[pick(rng)]}});
        CliffordMap M = clifford_of_circuit(c);
        Eigen::MatrixXcd U = circuit_unitary(c).matrix;
        for (int q = 0; q < n; ++q) {
          check(U, PauliWord::x_at(dims, q), M.image_x(q));
          check(U, PauliWord::z_at(dims, q), M.image_z(q));
        }
        ++maps;
      }
    }
  }
  // Hybrid gates on mixed registers.
  for (const auto &dims : {std::vector<int>{2, 4}, std::vector<int>{4, 2, 2}, std::vector<int>{2, 4, 4}}) {
    int n = static_cast<int>(dims.size());
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (a == b) continue;
        for (int p : {1, -1, 3}) {
          GateKind k;
          if (dims[a] == 2 && dims[b] == 4) k = GateKind::CbXd;
          else if (dims[a] == 4 && dims[b] == 2) k = GateKind::CdXb;
          else continue;
          GateApplication g(k, {a, b}, p);
          Eigen::MatrixXcd U = full(g, dims);
          for (int q = 0; q < n; ++q)
            for (auto P : {PauliWord::x_at(dims, q), PauliWord::z_at(dims, q)}) {
              check(U, P, conjugate(g, P));
              ++entries;
            }
        }
      }
  }
  r.pass = worst <= 1e-10;
  r.detail = std::to_string(entries) + " table entries, " + std::to_string(maps) +
             " composed maps, max deviation " + fmt(worst, 3);
  return r;
}

// 2. Qudit and generator counts.
Outcome code_counts() {
  Outcome r;
  int checked = 0;
  for (int D = 2; D <= 9; ++D) {
    auto sq = build_square(D, 2);
    auto di = build_diamond(D, 2);
    auto cm = build_cone(D, 2, ConeVariant::Minimal);
    auto cc = build_cone(D, 2, ConeVariant::Compatible);
    bool ok = sq.n == 2 * D * D - 2 * D + 1 && sq.n_vertices() == D * D - D &&
              sq.n_faces() == D * D - D && di.n == D * D &&
              di.n_vertices() + di.n_faces() == D * D - 1 &&
              di.n_faces() == (D % 2 ? (D * D - 1) / 2 : D * D / 2) &&
              cm.n == 2 * D * D - 2 * D + 1 && cc.n == 2 * D * D - 1 &&
              static_cast<int>(cc.generators.size()) == cc.n - 1 &&
              static_cast<int>(cm.generators.size()) == cm.n - 1;
    if (!ok) {
      r.pass = false;
      r.detail += "D=" + std::to_string(D) + " mismatch; ";
    }
    checked += 4;
  }
  if (r.pass) r.detail = std::to_string(checked) + " codes, D=2..9";
  return r;
}

// 3. Structural validity.
Outcome structure() {
  Outcome r;
  int checked = 0;
  for (int d = 2; d <= 5; ++d) {
    std::vector<StabilizerCode> codes;
    for (int D = 2; D <= 7; ++D) {
      codes.push_back(build_square(D, d));
      codes.push_back(build_diamond(D, d));
      codes.push_back(build_cone(D, d, ConeVariant::Minimal));
      codes.push_back(build_cone(D, d, ConeVariant::Compatible));
    }
    codes.push_back(build_steane(d));
    for (const auto &c : codes) {
      std::string msg = validate_code(c);
      bool ok = msg.empty() && commutator_exponent(c.logical_z, c.logical_x) == 1 &&
                pauli_span(c.generators).order_is_power(c.n - 1) && code_distance(c) == c.D;
      for (const auto &a : c.generators) {
        ok = ok && commutator_exponent(a, c.logical_x) == 0 && commutator_exponent(a, c.logical_z) == 0;
        for (const auto &b : c.generators) ok = ok && commutator_exponent(a, b) == 0;
      }
      if (!ok) {
        r.pass = false;
        r.detail += c.family + " D=" + std::to_string(c.D) + " d=" + std::to_string(d) + " " + msg + "; ";
      }
      ++checked;
    }
  }
  if (r.pass) r.detail = std::to_string(checked) + " codes (four families D=2..7 and Steane, d=2..5)";
  return r;
}

// 4. Transversal gates.
Outcome transversal_gates() {
  Outcome r;
  int checked = 0;
  for (int d = 2; d <= 5; ++d) {
    std::vector<StabilizerCode> codes{build_steane(d)};
    for (int D = 2; D <= 7; ++D) {
      codes.push_back(build_square(D, d));
      codes.push_back(build_cone(D, d, ConeVariant::Minimal));
      codes.push_back(build_cone(D, d, ConeVariant::Compatible));
    }
    for (const auto &c : codes)
      for (const auto &g : verify_code_gates(c)) {
        ++checked;
        if (!g.passed) {
          r.pass = false;
          r.detail += c.family + " D=" + std::to_string(c.D) + " d=" + std::to_string(d) + " " + g.gate + "; ";
        }
      }
  }
  if (r.pass) r.detail = std::to_string(checked) + " gate checks incl. naive-S controls failing with witnesses";
  return r;
}

// 5. Folding depth.
Outcome folding_depth() {
  Outcome r;
  for (int D = 2; D <= 9; ++D) {
    auto s = fold_schedule(D);
    std::string err = check_fold_schedule(s);
    bool ok = s.depth() == 6 * D - 5 && err.empty();
    auto code = build_square(D, 2);
    for (int t = 0; ok && t <= s.depth(); ++t) {
      auto at = s.placement(t);
      std::vector<int> order(code.n);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return at[a] < at[b]; });
      std::vector<int> perm(code.n);
      for (int k = 0; k < code.n; ++k) perm[order[k]] = k;
      ok = std::set<int>(at.begin(), at.end()).size() == static_cast<size_t>(code.n) &&
           validate_code(relabel(code, perm)).empty();
    }
    r.detail += "D" + std::to_string(D) + ":" + std::to_string(s.depth()) + " ";
    if (!ok) {
      r.pass = false;
      r.detail += "(fail " + err + ") ";
    }
  }
  return r;
}

// 6. Folded syndrome circuits.
Outcome syndrome_circuits() {
  Outcome r;
  int checked = 0;
  for (int d = 2; d <= 5; ++d)
    for (int D = 2; D <= 7; ++D)
      for (const auto &code : {build_square(D, d), build_cone(D, d, ConeVariant::Minimal),
                               build_cone(D, d, ConeVariant::Compatible)}) {
        FoldLayout layout = assign_bipartition(
            code, code.family == "square" ? fold_square(code) : fold_cone(code));
        for (auto p : {Parity::Forward, Parity::Reversed}) {
          std::string m = check_measured_operators(syndrome_circuit_folded(code, layout, p), code);
          ++checked;
          if (!m.empty()) {
            r.pass = false;
            r.detail += code.family + " D=" + std::to_string(D) + " d=" + std::to_string(d) + ": " + m + "; ";
          }
        }
      }
  int detected = 0, controls = 0;
  for (int d = 2; d <= 5; ++d)
    for (const auto &code : {build_square(3, d), build_cone(3, d, ConeVariant::Compatible)}) {
      FoldLayout layout = assign_bipartition(
          code, code.family == "square" ? fold_square(code) : fold_cone(code));
      ++controls;
      auto s = syndrome_circuit_folded(code, layout, Parity::Forward, false);
      if (!check_measured_operators(s, code).empty()) ++detected;
    }
  if (detected != controls) r.pass = false;
  r.detail += std::to_string(checked) + " folded circuits match; correction removed: " +
              std::to_string(detected) + "/" + std::to_string(controls) + " mismatches detected";
  return r;
}

// 7. Hook errors on the diamond.
Outcome hooks() {
  Outcome r;
  for (int D : {3, 5, 7}) {
    auto code = build_diamond(D, 2);
    auto good = hook_error_analysis(syndrome_circuit_unfolded(code), code);
    auto bad = hook_error_analysis(syndrome_circuit_unfolded(code, adversarial_orders()), code);
    r.detail += "D" + std::to_string(D) + ": standard " + std::to_string(good.parallel_hooks) +
                ", reversed " + std::to_string(bad.parallel_hooks) + "; ";
    if (good.parallel_hooks != 0 || bad.parallel_hooks == 0 || good.ancillas_checked == 0) r.pass = false;
  }
  return r;
}

std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> g;
  long n = std::lround((hi - lo) / step);
  for (long i = 0; i <= n; ++i) g.push_back(lo + static_cast<double>(i) * step);
  return g;
}

std::optional<ThresholdScan> cc_scan_d2;

ThresholdScan capacity_scan(int d) {
  return threshold_scan("square", d, {3, 5, 7}, grid(0.08, 0.12, 0.005), 10000,
                        NoiseMode::CodeCapacity, 7);
}

std::string crossings(const ThresholdScan &s) {
  std::string out;
  std::vector<std::string> pairs{"3/5", "5/7"};
  for (size_t i = 0; i < s.crossings.size(); ++i)
    out += "D" + pairs.at(i) + " " + opt(s.crossings[i]) + ", ";
  return out + "estimate " + opt(s.threshold);
}

// 8. Thresholds at d=2.
Outcome thresholds_d2() {
  Outcome r;
  cc_scan_d2 = capacity_scan(2);
  bool cc = cc_scan_d2->threshold && *cc_scan_d2->threshold >= 0.09 && *cc_scan_d2->threshold <= 0.11;
  auto ph = threshold_scan("square", 2, {3, 5}, grid(0.02, 0.045, 0.0025), 10000,
                           NoiseMode::Phenomenological, 7);
  bool pm = ph.threshold && *ph.threshold >= 0.02 && *ph.threshold <= 0.045;
  r.pass = cc && pm;
  r.detail = "code capacity [" + crossings(*cc_scan_d2) + "] in [0.09,0.11]; phenomenological D3/5 " +
             opt(ph.threshold) + " in [0.02,0.045]";
  return r;
}

// 9. d=4 against d=2.
Outcome thresholds_d4() {
  Outcome r;
  if (!cc_scan_d2) cc_scan_d2 = capacity_scan(2);
  auto s4 = capacity_scan(4);
  r.pass = s4.threshold && cc_scan_d2->threshold &&
           std::abs(*s4.threshold - *cc_scan_d2->threshold) <= 0.01;
  r.detail = "d=4 [" + crossings(s4) + "] vs d=2 [" + crossings(*cc_scan_d2) + "], tolerance 0.01";
  if (s4.threshold && cc_scan_d2->threshold)
    r.detail += ", difference " + fmt(std::abs(*s4.threshold - *cc_scan_d2->threshold), 3);
  return r;
}

// 10. Small-instance decoder oracle.
Outcome decoder_oracle() {
  Outcome r;
  auto c = build_square(3, 2);
  const int n = c.n;
  auto key = [](const std::vector<int> &s) {
    std::uint64_t k = 0;
    for (int v : s) k = k << 1 | static_cast<std::uint64_t>(v);
    return k;
  };
  auto cls_of = [&](char type, const PauliWord &e) {
    return type == 'X' ? mod(commutator_exponent(c.logical_z, e), 2)
                       : mod(commutator_exponent(c.logical_x, e), 2);
  };
  struct Best {
    int weight = INT_MAX;
    std::set<int> classes;
  };
  // Minimum-weight classes over all single-type patterns, per syndrome.
  std::map<char, std::map<std::uint64_t, Best>> table;
  for (char type : {'X', 'Z'})
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      PauliWord e(n, 2);
      for (int q = 0; q < n; ++q)
        if (mask >> q & 1) (type == 'X' ? e.set_x(q, 1) : e.set_z(q, 1));
      auto &b = table[type][key(extract_syndrome(e, c))];
      int w = __builtin_popcount(mask);
      if (w < b.weight) b = {w, {cls_of(type, e)}};
      else if (w == b.weight) b.classes.insert(cls_of(type, e));
    }
  auto oracle_ok = [&](const PauliWord &e) {
    for (char type : {'X', 'Z'}) {
      PauliWord part(n, 2);
      for (int q = 0; q < n; ++q) (type == 'X' ? part.set_x(q, e.x(q)) : part.set_z(q, e.z(q)));
      if (table[type][key(extract_syndrome(part, c))].classes != std::set<int>{cls_of(type, part)})
        return false;
    }
    return true;
  };
  int patterns = 0, oracle_success = 0, bad = 0;
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
          if (!oracle_ok(e)) continue;
          ++oracle_success;
          ErrorRecord rec;
          rec.data = {e};
          PauliWord corr = decode(extract_history(rec, c), c);
          if (!in_stabilizer_group(c, (e * corr).without_phase(), false)) ++bad;
        }
  r.pass = bad == 0 && oracle_success > 0;
  r.detail = std::to_string(patterns) + " patterns of weight <= 2, oracle succeeds on " +
             std::to_string(oracle_success) + ", decoder fails on " + std::to_string(bad) + " of those";
  return r;
}

// 11. Fusion identities.
Outcome fusion() {
  Outcome r;
  int passed = 0;
  auto checks = fusion_identity_suite(1);
  for (const auto &c : checks) {
    if (c.passed) ++passed;
    else r.detail += c.name + " failed (" + fmt(c.error, 3) + "); ";
  }
  r.pass = passed == static_cast<int>(checks.size());
  r.detail += std::to_string(passed) + "/" + std::to_string(checks.size()) + " identities within 1e-9";
  return r;
}

// 12. Resource formulas.
Outcome formulas() {
  Outcome r;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  double e1 = rel(scaling_estimate(0.3, 0.02, 0.02, 7), 0.3);
  double e2 = rel(scaling_estimate(1.0, 0.1, 0.01, 5), 1e-3);
  double e3 = rel(distance_tradeoff(0.01, 0.001, 1e-6), 1.0 + std::log(10.0) / std::log(1e-6));
  double e4 = rel(distance_tradeoff(0.01, 0.001, 1e-6), 5.0 / 6.0);
  double worst = std::max({e1, e2, e3, e4});
  r.pass = worst <= 1e-12;
  r.detail = "max relative error " + fmt(worst, 3) + " (epsL=1e-3 at D=5, ratio 5/6)";
  return r;
}

}  // namespace

int main(int argc, char **argv) {
  std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
      {"algebra oracle equivalence", algebra_oracle},
      {"code counts", code_counts},
      {"structural validity", structure},
      {"transversal gates", transversal_gates},
      {"folding depth 6D-5", folding_depth},
      {"folded syndrome circuits", syndrome_circuits},
      {"hook errors", hooks},
      {"d=2 thresholds", thresholds_d2},
      {"d=4 threshold equality", thresholds_d4},
      {"decoder small-instance oracle", decoder_oracle},
      {"fusion identities", fusion},
      {"resource formulas", formulas}};
  std::set<int> want;
  for (int i = 1; i < argc; ++i) want.insert(std::atoi(argv[i]));
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    int id = static_cast<int>(i) + 1;
    if (!want.empty() && !want.count(id)) continue;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d %s  %s: %s [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed ? 1 : 0;
}
