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

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "foldqec/code.hpp"
#include "foldqec/pauli.hpp"

namespace foldqec {

enum class NoiseMode { CodeCapacity, Phenomenological };

std::string noise_mode_name(NoiseMode m);
NoiseMode parse_noise_mode(const std::string &s);

/** Single-qudit channel applying X^power or Z^power. */
struct Channel {
  char type = 'X';
  int power = 1;
};

struct ErrorModel {
  double eps_P = 0.0;
  NoiseMode mode = NoiseMode::CodeCapacity;
  std::vector<Channel> channels;
  // Measurement shift rate; negative means eps_P.
  double eps_M = -1.0;

  /** X and Z for qudits, plus X^2 and Z^2 when d = 4. */
  static ErrorModel standard(int d, double eps, NoiseMode mode = NoiseMode::CodeCapacity);

  double measurement_rate() const { return eps_M < 0 ? eps_P : eps_M; }
  // Empty if the model is usable for sampling; `decoding` adds the channel-set check.
  std::string validate(int d, bool decoding = false) const;
};

using Rng = std::mt19937_64;

/** Independent stream for one trial of a run. */
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

struct ErrorRecord {
  // Data error added before each round.
  std::vector<PauliWord> data;
  // rounds x generators outcome shifts; empty in code-capacity mode.
  std::vector<std::vector<int>> shifts;

  PauliWord frame() const;
};

ErrorRecord sample_errors(const ErrorModel &model, const StabilizerCode &code, int rounds,
                          Rng &rng);

/** Outcome of each generator against a frame. */
std::vector<int> extract_syndrome(const PauliWord &frame, const StabilizerCode &code);

struct SyndromeHistory {
  int d = 2;
  // Rows are rounds; the last row is noiseless.
  std::vector<std::vector<int>> outcomes;

  int rounds() const { return static_cast<int>(outcomes.size()); }
  /** Difference of consecutive rows, the first against all-zero. */
  std::vector<std::vector<int>> events() const;
};

SyndromeHistory extract_history(const ErrorRecord &rec, const StabilizerCode &code);

/**
 * Check graph of one generator type: nodes are the generators plus one
 * boundary node, edges are qudits. Shortest paths are precomputed.
 */
class MatchingGraph {
 public:
  MatchingGraph(const StabilizerCode &code, char check_type);

  int nodes() const { return static_cast<int>(gens_.size()); }
  int boundary() const { return nodes(); }
  const std::vector<int> &generators() const { return gens_; }
  int dist(int a, int b) const { return dist_[a][b]; }
  /** Qudits along a shortest path from a to b, with the nodes they join. */
  std::vector<std::pair<int, int>> path(int a, int b) const;
  // Exponent a check generator picks up from the opposite-type error on qudit q.
  int coefficient(int node, int q) const;
  const std::vector<std::vector<int>> &checks_of() const { return checks_; }
  // (neighbour node, qudit) pairs; the boundary node is nodes().
  const std::vector<std::pair<int, int>> &neighbours(int node) const { return adj_[node]; }

 private:
  std::vector<int> gens_;
  std::vector<std::vector<int>> checks_;  // per qudit, nodes touching it
  std::vector<std::vector<int>> coef_;    // per qudit, matching checks_
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<std::vector<int>> dist_;
  std::vector<std::vector<int>> prev_node_;
  std::vector<std::vector<int>> prev_qudit_;
};

/**
 * Minimum-cost pairing of defects where each defect may instead go to the
 * boundary. Returns the partner of each defect, or -1 for the boundary.
 */
std::vector<int> match_defects(const std::vector<std::vector<long>> &pair_cost,
                               const std::vector<long> &boundary_cost);

class Decoder {
 public:
  explicit Decoder(const StabilizerCode &code);

  static constexpr long kUnitWeight = 2;
  static constexpr long kUsedWeight = 1;

  // Second-stage edges touched by the parity stage get kUsedWeight (d = 4).
  void set_reweight(bool on) { reweight_ = on; }

  /** Correction frame; throws std::logic_error if it leaves a syndrome. */
  PauliWord decode(const SyndromeHistory &h) const;

  // Residual events after the parity stage of a d = 4 decode, for inspection.
  std::vector<std::vector<int>> parity_stage_residual(const SyndromeHistory &h, char error_type) const;

 private:
  struct Work;
  void stage(Work &w, int unit) const;
  void reweight(Work &w) const;
  Work make_work(const SyndromeHistory &h, char error_type) const;

  const StabilizerCode *code_;
  MatchingGraph zgraph_;  // Z checks find X errors
  MatchingGraph xgraph_;
  bool reweight_ = true;
};

PauliWord decode(const SyndromeHistory &h, const StabilizerCode &code);

/** True if the residual frame acts as a nontrivial logical. */
bool is_logical_failure(const PauliWord &residual, const StabilizerCode &code);

struct RateEstimate {
  std::int64_t trials = 0;
  std::int64_t failures = 0;
  double rate = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
};

/** Wilson score interval at z standard deviations. */
std::pair<double, double> wilson_interval(std::int64_t failures, std::int64_t trials,
                                          double z = 1.96);

/** Worker count from FOLDQEC_THREADS, else the hardware concurrency. */
int worker_count();

RateEstimate logical_error_rate(const StabilizerCode &code, const ErrorModel &model,
                                std::int64_t trials, std::uint64_t seed, int workers = 0);

struct ScanRow {
  std::string family;
  int d = 2;
  int D = 0;
  NoiseMode mode = NoiseMode::CodeCapacity;
  double eps_P = 0.0;
  RateEstimate est;
  std::uint64_t seed = 0;
};

struct ThresholdScan {
  std::vector<ScanRow> rows;
  // One entry per adjacent distance pair; empty optional if the curves never cross.
  std::vector<std::optional<double>> crossings;
  std::optional<double> threshold;

  std::string csv() const;
};

/** Crossing of two rate curves by linear interpolation of the log-rate gap in eps. */
std::optional<double> curve_crossing(const std::vector<double> &eps,
                                     const std::vector<double> &rate_small,
                                     const std::vector<double> &rate_large,
                                     std::int64_t trials);

ThresholdScan threshold_scan(const std::string &family, int d, const std::vector<int> &Ds,
                             const std::vector<double> &eps, std::int64_t trials,
                             NoiseMode mode, std::uint64_t seed, int workers = 0);

StabilizerCode build_family(const std::string &family, int D, int d);

double scaling_estimate(double eps0, double epsT, double epsP, int D);
// Leading term only; O(1/D) and O((ln epsT / ln epsP)^2) corrections dropped.
double distance_tradeoff(double epsT, double epsT2, double epsP);

}  // namespace foldqec
