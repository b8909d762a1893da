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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <mutex>
#include <thread>

#include "foldqec/noise.hpp"

namespace foldqec {

std::string noise_mode_name(NoiseMode m) {
  return m == NoiseMode::CodeCapacity ? "code_capacity" : "phenomenological";
}

NoiseMode parse_noise_mode(const std::string &s) {
  if (s == "code_capacity" || s == "capacity") return NoiseMode::CodeCapacity;
  if (s == "phenomenological" || s == "phenom") return NoiseMode::Phenomenological;
  throw std::invalid_argument("unknown noise mode: " + s);
}

ErrorModel ErrorModel::standard(int d, double eps, NoiseMode mode) {
  ErrorModel m;
  m.eps_P = eps;
  m.mode = mode;
  m.channels = {{'X', 1}, {'Z', 1}};
  if (d == 4) m.channels = {{'X', 1}, {'X', 2}, {'Z', 1}, {'Z', 2}};
  return m;
}

std::string ErrorModel::validate(int d, bool decoding) const {
  if (!(eps_P >= 0.0 && eps_P <= 1.0)) return "eps_P outside [0, 1]";
  if (measurement_rate() > 1.0) return "measurement rate above 1";
  for (const auto &c : channels)
    if ((c.type != 'X' && c.type != 'Z') || mod(c.power, d) == 0) return "invalid channel";
  if (decoding) {
    if (d != 2 && d != 4) return "decoding supports d = 2 and d = 4 only";
    auto key = [](const std::vector<Channel> &cs) {
      std::vector<std::pair<char, int>> k;
      for (const auto &c : cs) k.push_back({c.type, c.power});
      std::sort(k.begin(), k.end());
      return k;
    };
    if (key(channels) != key(standard(d, eps_P).channels)) return "decoding needs the standard channel set";
  }
  return "";
}

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

PauliWord ErrorRecord::frame() const {
  if (data.empty()) return PauliWord();
  PauliWord f(data[0].n(), data[0].dim());
  for (const auto &e : data) f *= e;
  return f.without_phase();
}

namespace {

bool fires(Rng &rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return std::generate_canonical<double, 53>(rng) < p;
}

}  // namespace

ErrorRecord sample_errors(const ErrorModel &model, const StabilizerCode &code, int rounds,
                          Rng &rng) {
  if (rounds < 1) throw std::invalid_argument("rounds must be positive");
  const int d = code.d;
  ErrorRecord rec;
  for (int r = 0; r < rounds; ++r) {
    PauliWord e(code.n, d);
    for (int q = 0; q < code.n; ++q)
      for (const auto &c : model.channels)
        if (fires(rng, model.eps_P)) {
          if (c.type == 'X')
            e.set_x(q, e.x(q) + c.power);
          else
            e.set_z(q, e.z(q) + c.power);
        }
    rec.data.push_back(e);
  }
  if (model.mode == NoiseMode::Phenomenological) {
    // Shifts mirror the data channels: +1, and +2 as well when d = 4.
    const double pm = model.measurement_rate();
    const int m = static_cast<int>(code.generators.size());
    for (int r = 0; r < rounds; ++r) {
      std::vector<int> row(m, 0);
      for (int g = 0; g < m; ++g) {
        if (fires(rng, pm)) row[g] += 1;
        if (d == 4 && fires(rng, pm)) row[g] += 2;
        row[g] = mod(row[g], d);
      }
      rec.shifts.push_back(std::move(row));
    }
  }
  return rec;
}

std::vector<int> extract_syndrome(const PauliWord &frame, const StabilizerCode &code) {
  if (frame.n() != code.n || frame.dim() != code.d) throw ShapeError("frame register does not match the code");
  std::vector<int> s;
  s.reserve(code.generators.size());
  for (const auto &g : code.generators) s.push_back(mod(commutator_exponent(g, frame), code.d));
  return s;
}

std::vector<std::vector<int>> SyndromeHistory::events() const {
  std::vector<std::vector<int>> ev = outcomes;
  for (std::size_t t = 1; t < outcomes.size(); ++t)
    for (std::size_t g = 0; g < outcomes[t].size(); ++g) ev[t][g] = mod(outcomes[t][g] - outcomes[t - 1][g], d);
  return ev;
}

SyndromeHistory extract_history(const ErrorRecord &rec, const StabilizerCode &code) {
  SyndromeHistory h;
  h.d = code.d;
  if (rec.shifts.empty()) {
    h.outcomes.push_back(extract_syndrome(rec.frame(), code));
    return h;
  }
  if (rec.shifts.size() != rec.data.size()) throw ShapeError("shift rows do not match data rounds");
  PauliWord f(code.n, code.d);
  for (std::size_t r = 0; r < rec.data.size(); ++r) {
    f *= rec.data[r];
    auto s = extract_syndrome(f.without_phase(), code);
    for (std::size_t g = 0; g < s.size(); ++g) s[g] = mod(s[g] + rec.shifts[r][g], code.d);
    h.outcomes.push_back(std::move(s));
  }
  h.outcomes.push_back(extract_syndrome(f.without_phase(), code));
  return h;
}

bool is_logical_failure(const PauliWord &residual, const StabilizerCode &code) {
  return mod(commutator_exponent(code.logical_x, residual), code.d) != 0 ||
         mod(commutator_exponent(code.logical_z, residual), code.d) != 0;
}

std::pair<double, double> wilson_interval(std::int64_t failures, std::int64_t trials, double z) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = failures / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2 * n)) / (1 + z2 / n);
  const double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / (1 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

int worker_count() {
  if (const char *env = std::getenv("FOLDQEC_THREADS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RateEstimate logical_error_rate(const StabilizerCode &code, const ErrorModel &model,
                                std::int64_t trials, std::uint64_t seed, int workers) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (auto err = model.validate(code.d, true); !err.empty()) throw std::invalid_argument(err);
  if (workers <= 0) workers = worker_count();
  workers = static_cast<int>(std::min<std::int64_t>(workers, trials));
  const Decoder dec(code);
  const int rounds = model.mode == NoiseMode::Phenomenological ? code.D : 1;
  std::atomic<std::int64_t> next{0}, failures{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto work = [&] {
    try {
      std::int64_t local = 0;
      for (std::int64_t t; (t = next.fetch_add(1)) < trials;) {
        Rng rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        auto rec = sample_errors(model, code, rounds, rng);
        auto hist = extract_history(rec, code);
        PauliWord residual = (rec.frame() * dec.decode(hist)).without_phase();
        for (int s : extract_syndrome(residual, code))
          if (s != 0) throw std::logic_error("corrected frame has a nonzero syndrome");
        if (is_logical_failure(residual, code)) ++local;
      }
      failures += local;
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      next = trials;
    }
  };
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto &th : pool) th.join();
  if (error) std::rethrow_exception(error);
  RateEstimate est;
  est.trials = trials;
  est.failures = failures;
  est.rate = static_cast<double>(est.failures) / trials;
  std::tie(est.ci_lo, est.ci_hi) = wilson_interval(est.failures, trials);
  return est;
}

std::string ThresholdScan::csv() const {
  std::ostringstream out;
  out << "family,d,D,mode,eps_P,trials,failures,rate,ci_lo,ci_hi,seed\n";
  out.precision(10);
  for (const auto &r : rows)
    out << r.family << ',' << r.d << ',' << r.D << ',' << noise_mode_name(r.mode) << ',' << r.eps_P << ','
        << r.est.trials << ',' << r.est.failures << ',' << r.est.rate << ',' << r.est.ci_lo << ','
        << r.est.ci_hi << ',' << r.seed << '\n';
  return out.str();
}

std::optional<double> curve_crossing(const std::vector<double> &eps,
                                     const std::vector<double> &rate_small,
                                     const std::vector<double> &rate_large,
                                     std::int64_t trials) {
  if (eps.size() != rate_small.size() || eps.size() != rate_large.size())
    throw std::invalid_argument("curve lengths differ");
  // Zero counts are floored at half a failure so the logarithm stays finite.
  const double floor = trials > 0 ? 0.5 / static_cast<double>(trials) : 1e-300;
  auto gap = [&](std::size_t i) {
    return std::log(std::max(rate_small[i], floor)) - std::log(std::max(rate_large[i], floor));
  };
  for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
    double a = gap(i), b = gap(i + 1);
    if (a == 0.0) return eps[i];
    if ((a > 0) != (b > 0) || b == 0.0) return eps[i] + (eps[i + 1] - eps[i]) * a / (a - b);
  }
  return std::nullopt;
}

StabilizerCode build_family(const std::string &family, int D, int d) {
  if (family == "square") return build_square(D, d);
  if (family == "diamond") return build_diamond(D, d);
  if (family == "cone" || family == "cone-compatible") return build_cone(D, d, ConeVariant::Compatible);
  if (family == "cone-minimal") return build_cone(D, d, ConeVariant::Minimal);
  throw std::invalid_argument("unknown code family: " + family);
}

ThresholdScan threshold_scan(const std::string &family, int d, const std::vector<int> &Ds,
                             const std::vector<double> &eps, std::int64_t trials,
                             NoiseMode mode, std::uint64_t seed, int workers) {
  if (Ds.size() < 2) throw std::invalid_argument("threshold scan needs at least two distances");
  if (eps.size() < 2) throw std::invalid_argument("threshold scan needs at least two error rates");
  if (!std::is_sorted(eps.begin(), eps.end())) throw std::invalid_argument("error rates must be increasing");
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  ThresholdScan scan;
  std::vector<std::vector<double>> rates;
  for (int D : Ds) {
    auto code = build_family(family, D, d);
    std::vector<double> curve;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      ScanRow row;
      row.family = family;
      row.d = d;
      row.D = D;
      row.mode = mode;
      row.eps_P = eps[i];
      // Each point gets its own stream so rows can be rerun individually.
      row.seed = seed + 1000003ULL * static_cast<std::uint64_t>(D) + i;
      row.est = logical_error_rate(code, ErrorModel::standard(d, eps[i], mode), trials, row.seed, workers);
      curve.push_back(row.est.rate);
      scan.rows.push_back(row);
    }
    rates.push_back(std::move(curve));
  }
  double sum = 0;
  int count = 0;
  for (std::size_t k = 0; k + 1 < Ds.size(); ++k) {
    auto c = curve_crossing(eps, rates[k], rates[k + 1], trials);
    scan.crossings.push_back(c);
    if (c) {
      sum += *c;
      ++count;
    }
  }
  if (count > 0) scan.threshold = sum / count;
  return scan;
}

double scaling_estimate(double eps0, double epsT, double epsP, int D) {
  if (eps0 <= 0 || epsT <= 0 || epsP <= 0) throw std::invalid_argument("rates must be positive");
  if (D < 1) throw std::invalid_argument("distance must be positive");
  return eps0 * std::pow(epsP / epsT, (D + 1) / 2);
}

double distance_tradeoff(double epsT, double epsT2, double epsP) {
  if (epsT <= 0 || epsT2 <= 0 || epsP <= 0) throw std::invalid_argument("rates must be positive");
  if (epsP == 1.0) throw std::invalid_argument("eps_P = 1 has no tradeoff");
  return 1.0 + (std::log(epsT) - std::log(epsT2)) / std::log(epsP);
}

}  // namespace foldqec
