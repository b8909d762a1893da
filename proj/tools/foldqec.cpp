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

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "foldqec/code.hpp"
#include "foldqec/fusion.hpp"
#include "foldqec/noise.hpp"
#include "foldqec/scheduler.hpp"
#include "foldqec/transversal.hpp"

using json = nlohmann::ordered_json;
using namespace foldqec;

namespace {

constexpr const char *kVersion = "0.1.0";

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "square";
  int d = 2;
  std::string D = "3";
  std::string eps = "0.1";
  std::int64_t trials = 1000;
  std::string mode = "code_capacity";
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  // Verb-specific knobs.
  bool folded = false;
  std::string parity = "forward";
  bool no_fold_correction = false;
  std::string orders = "standard";
  std::string variant = "compatible";
  std::string basis;
  double eps0 = 0.1, epsT = 0.1, epsP = 0.01, epsT2 = -1.0;
};

std::vector<int> parse_int_list(const std::string &s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception &) {
      throw UsageError("bad integer list: " + s);
    }
  }
  if (out.empty()) throw UsageError("empty integer list");
  return out;
}

double parse_double(const std::string &s) {
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw UsageError("bad number: " + s);
  }
  if (pos != s.size()) throw UsageError("bad number: " + s);
  return v;
}

// "a,b,c" or "lo:hi:step" (inclusive of hi up to rounding).
std::vector<double> parse_eps(const std::string &s) {
  std::vector<double> out;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 3) throw UsageError("eps range is lo:hi:step");
    double lo = parse_double(parts[0]), hi = parse_double(parts[1]), step = parse_double(parts[2]);
    if (step <= 0 || hi < lo) throw UsageError("bad eps range " + s);
    long long n = std::llround(std::floor((hi - lo) / step + 1e-9));
    for (long long i = 0; i <= n; ++i) out.push_back(lo + static_cast<double>(i) * step);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_double(tok));
  if (out.empty()) throw UsageError("empty eps list");
  return out;
}

int single_D(const RunConfig &c) {
  auto v = parse_int_list(c.D);
  if (v.size() != 1) throw UsageError("this verb takes a single --D");
  return v[0];
}

StabilizerCode make_code(const RunConfig &c, int D) {
  if (c.family == "steane") return build_steane(c.d);
  static const std::set<std::string> known{"square", "diamond", "cone", "cone-minimal",
                                           "cone-compatible"};
  if (!known.count(c.family)) throw UsageError("unknown family: " + c.family);
  if (D < 2) throw UsageError("--D must be at least 2");
  if (c.d < 2) throw UsageError("--d must be at least 2");
  return build_family(c.family, D, c.d);
}

FoldLayout make_layout(const StabilizerCode &code) {
  if (code.family == "square") return assign_bipartition(code, fold_square(code));
  if (code.family == "cone-compatible" || code.family == "cone-minimal")
    return assign_bipartition(code, fold_cone(code));
  throw UsageError("family " + code.family + " has no fold layout");
}

std::string fingerprint(const StabilizerCode &code) {
  // FNV-1a over the generator and logical strings.
  std::uint64_t h = 1469598103934665603ULL;
  auto feed = [&](const std::string &s) {
    for (unsigned char ch : s) {
      h ^= ch;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
  };
  feed(code.family);
  for (const auto &g : code.generators) feed(g.str());
  feed(code.logical_x.str());
  feed(code.logical_z.str());
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

json config_json(const RunConfig &c) {
  return json{{"command", c.command}, {"family", c.family}, {"d", c.d},       {"D", c.D},
              {"eps", c.eps},         {"trials", c.trials}, {"mode", c.mode}, {"seed", c.seed}};
}

json images_json(const std::vector<LogicalImage> &v) {
  json a = json::array();
  for (const auto &im : v) a.push_back({{"x", im.a}, {"z", im.b}, {"phase", im.phase}});
  return a;
}

json circuit_json(const ScheduledCircuit &c) {
  json layers = json::array();
  for (const auto &L : c.layers) {
    json ops = json::array();
    for (const auto &g : L.ops) ops.push_back(g.str());
    layers.push_back(ops);
  }
  return json{{"sites", c.n()}, {"depth", c.depth()}, {"layers", layers}};
}

struct Result {
  json body;
  bool ok = true;
  std::string csv;  // verb-specific CSV body; generic flattening if empty
};

// ---------------------------------------------------------------------------

Result cmd_build(const RunConfig &c) {
  auto code = make_code(c, single_D(c));
  json gens = json::array();
  for (size_t g = 0; g < code.generators.size(); ++g)
    gens.push_back({{"type", std::string(1, code.gen_type[g])}, {"operator", code.generators[g].str()}});
  json pos = json::array();
  for (const auto &p : code.qudit_pos) pos.push_back(p);
  Result r;
  r.body = {{"family", code.family},
            {"D", code.D},
            {"d", code.d},
            {"n", code.n},
            {"generators", code.generators.size()},
            {"vertices", code.n_vertices()},
            {"faces", code.n_faces()},
            {"logical_x", code.logical_x.str()},
            {"logical_z", code.logical_z.str()},
            {"stabilizers", gens},
            {"qudit_positions", pos}};
  std::ostringstream csv;
  csv << "index,type,operator\n";
  for (size_t g = 0; g < code.generators.size(); ++g)
    csv << g << ',' << code.gen_type[g] << ',' << code.generators[g].str() << '\n';
  r.csv = csv.str();
  return r;
}

Result cmd_validate(const RunConfig &c) {
  auto code = make_code(c, single_D(c));
  Result r;
  std::string msg = validate_code(code);
  int dist = code_distance(code);
  r.ok = msg.empty() && dist == code.D;
  if (msg.empty() && dist != code.D) msg = "distance " + std::to_string(dist) + " != D";
  r.body = {{"valid", r.ok}, {"n", code.n}, {"distance", dist}, {"message", msg}};
  return r;
}

Result cmd_verify_gates(const RunConfig &c) {
  auto code = make_code(c, c.family == "steane" ? 3 : single_D(c));
  std::vector<GateCheck> checks;
  try {
    checks = verify_code_gates(code);
  } catch (const std::invalid_argument &e) {
    throw UsageError(e.what());
  }
  Result r;
  json arr = json::array();
  std::ostringstream csv;
  csv << "gate,expect_valid,valid,passed,witness_generator\n";
  for (const auto &g : checks) {
    r.ok = r.ok && g.passed;
    arr.push_back({{"gate", g.gate},
                   {"expect_valid", g.expect_valid},
                   {"valid", g.action.valid},
                   {"passed", g.passed},
                   {"x_images", images_json(g.action.x_images)},
                   {"z_images", images_json(g.action.z_images)},
                   {"witness_generator", g.action.witness_generator},
                   {"message", g.action.message}});
    csv << g.gate << ',' << g.expect_valid << ',' << g.action.valid << ',' << g.passed << ','
        << g.action.witness_generator << '\n';
  }
  r.body = {{"family", code.family}, {"n", code.n}, {"checks", arr}, {"passed", r.ok}};
  r.csv = csv.str();
  return r;
}

SyndromeOrders make_orders(const RunConfig &c) {
  if (c.orders == "standard") return standard_orders();
  if (c.orders == "adversarial") return adversarial_orders();
  throw UsageError("--orders is standard or adversarial");
}

Result cmd_schedule_syndrome(const RunConfig &c) {
  auto code = make_code(c, single_D(c));
  SyndromeCircuit s;
  if (c.folded) {
    Parity p;
    if (c.parity == "forward") p = Parity::Forward;
    else if (c.parity == "reversed") p = Parity::Reversed;
    else throw UsageError("--parity is forward or reversed");
    s = syndrome_circuit_folded(code, make_layout(code), p, !c.no_fold_correction, make_orders(c));
  } else {
    s = syndrome_circuit_unfolded(code, make_orders(c));
  }
  std::string mismatch = check_measured_operators(s, code);
  Result r;
  r.ok = mismatch.empty();
  r.body = {{"family", code.family},
            {"folded", c.folded},
            {"depth", s.circuit.depth()},
            {"swap_layer", s.swap_layer},
            {"correction_layers", s.correction_layers},
            {"measured_operators_match", r.ok},
            {"witness", mismatch},
            {"circuit", circuit_json(s.circuit)}};
  return r;
}

Result cmd_fold_schedule(const RunConfig &c) {
  int D = single_D(c);
  if (D < 2) throw UsageError("--D must be at least 2");
  auto s = fold_schedule(D);
  std::string err = check_fold_schedule(s);
  Result r;
  r.ok = err.empty() && s.depth() == 6 * D - 5;
  json steps = json::array();
  std::ostringstream csv;
  csv << "step,a,b\n";
  for (size_t t = 0; t < s.steps.size(); ++t) {
    steps.push_back(s.steps[t]);
    for (auto [a, b] : s.steps[t]) csv << t << ',' << a << ',' << b << '\n';
  }
  r.body = {{"D", D},          {"depth", s.depth()}, {"expected_depth", 6 * D - 5},
            {"valid", r.ok},   {"witness", err},     {"steps", steps}};
  r.csv = csv.str();
  return r;
}

Result cmd_hook_report(const RunConfig &c) {
  auto code = make_code(c, single_D(c));
  auto s = syndrome_circuit_unfolded(code, make_orders(c));
  auto h = hook_error_analysis(s, code);
  Result r;
  r.ok = h.parallel_hooks == 0;
  json ev = json::array();
  std::ostringstream csv;
  csv << "generator,fault,support,parallel\n";
  for (const auto &e : h.events) {
    ev.push_back({{"generator", e.generator}, {"fault", e.fault}, {"support", e.support},
                  {"parallel", e.parallel}});
    std::string sup;
    for (int q : e.support) sup += (sup.empty() ? "" : " ") + std::to_string(q);
    csv << e.generator << ',' << e.fault << ',' << sup << ',' << e.parallel << '\n';
  }
  r.body = {{"family", code.family},
            {"orders", c.orders},
            {"ancillas_checked", h.ancillas_checked},
            {"parallel_hooks", h.parallel_hooks},
            {"max_weight", h.max_weight},
            {"events", ev}};
  r.csv = csv.str();
  return r;
}

Result cmd_convert(const RunConfig &c) {
  int D = single_D(c);
  if (c.variant != "compatible") throw UsageError("conversion targets the compatible cone");
  Conversion conv = c.basis.empty() ? conversion_diamond_to_cone(D, c.d)
                                    : conversion_diamond_to_cone(D, c.d, c.basis);
  int det = 0;
  for (char x : conv.deterministic) det += x != 0;
  Result r;
  r.body = {{"D", D},
            {"d", c.d},
            {"diamond_n", conv.diamond.n},
            {"cone_n", conv.cone.n},
            {"fresh", conv.fresh},
            {"fresh_basis", conv.fresh_basis},
            {"deterministic_generators", det},
            {"effective_distance", conversion_effective_distance(conv)},
            {"prep", circuit_json(conv.prep)}};
  return r;
}

Result cmd_simulate(const RunConfig &c) {
  auto code = make_code(c, single_D(c));
  auto eps = parse_eps(c.eps);
  if (c.trials <= 0) throw UsageError("--trials must be positive");
  NoiseMode mode = parse_noise_mode(c.mode);
  Result r;
  json rows = json::array();
  std::ostringstream csv;
  csv.precision(10);
  csv << "family,d,D,mode,eps_P,trials,failures,rate,ci_lo,ci_hi\n";
  for (double e : eps) {
    auto est = logical_error_rate(code, ErrorModel::standard(c.d, e, mode), c.trials, c.seed);
    rows.push_back({{"eps_P", e}, {"trials", est.trials}, {"failures", est.failures},
                    {"rate", est.rate}, {"ci_lo", est.ci_lo}, {"ci_hi", est.ci_hi}});
    csv << code.family << ',' << c.d << ',' << code.D << ',' << noise_mode_name(mode) << ',' << e << ','
        << est.trials << ',' << est.failures << ',' << est.rate << ',' << est.ci_lo << ','
        << est.ci_hi << '\n';
  }
  r.body = {{"family", code.family}, {"fingerprint", fingerprint(code)}, {"rows", rows}};
  r.csv = csv.str();
  return r;
}

Result cmd_threshold(const RunConfig &c) {
  auto Ds = parse_int_list(c.D);
  auto eps = parse_eps(c.eps);
  if (Ds.size() < 2) throw UsageError("--D needs at least two distances");
  if (eps.size() < 2) throw UsageError("--eps needs at least two rates");
  if (c.trials <= 0) throw UsageError("--trials must be positive");
  make_code(c, Ds[0]);
  auto scan = threshold_scan(c.family, c.d, Ds, eps, c.trials, parse_noise_mode(c.mode), c.seed);
  Result r;
  json cross = json::array();
  std::ostringstream tail;
  tail.precision(10);
  for (size_t i = 0; i < scan.crossings.size(); ++i) {
    std::string pair = "D" + std::to_string(Ds[i]) + "/D" + std::to_string(Ds[i + 1]);
    cross.push_back({{"pair", pair},
                     {"crossing", scan.crossings[i] ? json(*scan.crossings[i]) : json(nullptr)}});
    tail << "# crossing " << pair << ": "
         << (scan.crossings[i] ? std::to_string(*scan.crossings[i]) : "none") << '\n';
  }
  tail << "# threshold: " << (scan.threshold ? std::to_string(*scan.threshold) : "none") << '\n';
  json rows = json::array();
  for (const auto &row : scan.rows)
    rows.push_back({{"D", row.D}, {"eps_P", row.eps_P}, {"failures", row.est.failures},
                    {"rate", row.est.rate}, {"ci_lo", row.est.ci_lo}, {"ci_hi", row.est.ci_hi},
                    {"seed", row.seed}});
  r.body = {{"crossings", cross},
            {"threshold", scan.threshold ? json(*scan.threshold) : json(nullptr)},
            {"rows", rows}};
  r.csv = scan.csv() + tail.str();
  r.ok = scan.threshold.has_value();
  return r;
}

Result cmd_estimate(const RunConfig &c) {
  int D = single_D(c);
  Result r;
  r.body = {{"eps0", c.eps0}, {"epsT", c.epsT}, {"epsP", c.epsP}, {"D", D},
            {"logical_error", scaling_estimate(c.eps0, c.epsT, c.epsP, D)}};
  if (c.epsT2 > 0) r.body["distance_ratio"] = distance_tradeoff(c.epsT, c.epsT2, c.epsP);
  return r;
}

Result cmd_fusion_check(const RunConfig &c) {
  Result r;
  json arr = json::array();
  std::ostringstream csv;
  csv << "check,passed,error,detail\n";
  for (const auto &k : fusion_identity_suite(static_cast<unsigned>(c.seed))) {
    r.ok = r.ok && k.passed;
    arr.push_back({{"name", k.name}, {"passed", k.passed}, {"error", k.error}, {"detail", k.detail}});
    csv << k.name << ',' << k.passed << ',' << k.error << ",\"" << k.detail << "\"\n";
  }
  auto ov = generator_overlap_report(2, static_cast<unsigned>(c.seed));
  r.body = {{"passed", r.ok},
            {"checks", arr},
            {"generator_overlap",
             {{"D", ov.D}, {"stacked", ov.stacked}, {"shared", ov.shared},
              {"commuting", ov.commuting}, {"rows", ov.rows}}}};
  r.csv = csv.str();
  return r;
}

std::string generic_csv(const json &body) {
  std::ostringstream o;
  o << "key,value\n";
  for (auto it = body.begin(); it != body.end(); ++it)
    if (!it->is_structured()) o << it.key() << ',' << (it->is_string() ? it->get<std::string>() : it->dump()) << '\n';
  return o.str();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Folded qudit surface-code toolkit", "foldqec"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  RunConfig cfg;
  std::string config_file;

  using Handler = Result (*)(const RunConfig &);
  const std::vector<std::tuple<std::string, std::string, Handler>> verbs = {
      {"build", "emit a code as JSON", cmd_build},
      {"validate", "check stabilizer structure and distance", cmd_validate},
      {"verify-gates", "verify transversal logical gates", cmd_verify_gates},
      {"schedule-syndrome", "syndrome circuit and measured-operator check", cmd_schedule_syndrome},
      {"fold-schedule", "swap schedule folding a square code", cmd_fold_schedule},
      {"hook-report", "mid-circuit ancilla fault analysis", cmd_hook_report},
      {"convert", "diamond to cone conversion", cmd_convert},
      {"simulate", "logical error rate at fixed eps", cmd_simulate},
      {"threshold", "threshold scan", cmd_threshold},
      {"estimate", "resource formulas", cmd_estimate},
      {"fusion-check", "qubit fusion identity suite", cmd_fusion_check}};

  std::map<CLI::App *, Handler> handlers;
  for (const auto &[name, help, fn] : verbs) {
    CLI::App *s = app.add_subcommand(name, help);
    handlers[s] = fn;
    s->add_option("--config", config_file, "JSON file with option values");
    s->add_option("--family", cfg.family);
    s->add_option("--d", cfg.d);
    s->add_option("--D", cfg.D, "distance or comma list");
    s->add_option("--eps", cfg.eps, "comma list or lo:hi:step");
    s->add_option("--trials", cfg.trials);
    s->add_option("--mode", cfg.mode, "code_capacity or phenomenological");
    s->add_option("--seed", cfg.seed);
    s->add_option("--out", cfg.out, "output path (default stdout)");
    s->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
    if (name == "schedule-syndrome") {
      s->add_flag("--folded", cfg.folded);
      s->add_option("--parity", cfg.parity);
      s->add_flag("--no-fold-correction", cfg.no_fold_correction);
    }
    if (name == "schedule-syndrome" || name == "hook-report") s->add_option("--orders", cfg.orders);
    if (name == "convert") {
      s->add_option("--variant", cfg.variant);
      s->add_option("--basis", cfg.basis, "X/Z per fresh qudit");
    }
    if (name == "estimate") {
      s->add_option("--eps0", cfg.eps0);
      s->add_option("--epsT", cfg.epsT);
      s->add_option("--epsP", cfg.epsP);
      s->add_option("--epsT2", cfg.epsT2);
    }
  }

  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  // Values from --config go in front of the command-line flags so the flags win.
  for (size_t i = 0; i + 1 < args.size(); ++i) {
    if (args[i] != "--config") continue;
    std::ifstream in(args[i + 1]);
    json j;
    try {
      if (!in) throw std::runtime_error("cannot read " + args[i + 1]);
      j = json::parse(in);
    } catch (const std::exception &e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::vector<std::string> extra;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it->is_boolean()) {
        if (it->get<bool>()) extra.push_back("--" + it.key());
        continue;
      }
      extra.push_back("--" + it.key());
      extra.push_back(it->is_string() ? it->get<std::string>() : it->dump());
    }
    args.insert(args.begin() + 1, extra.begin(), extra.end());
    break;
  }
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e);
    return 0;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }

  CLI::App *sub = app.get_subcommands().front();
  cfg.command = sub->get_name();
  Result res;
  try {
    res = handlers.at(sub)(cfg);
  } catch (const UsageError &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument &e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::string format = cfg.format.empty() ? (cfg.command == "threshold" ? "csv" : "json") : cfg.format;
  std::string text;
  if (format == "json") {
    json doc;
    doc["tool"] = "foldqec";
    doc["version"] = kVersion;
    doc["config"] = config_json(cfg);
    if (cfg.command != "fold-schedule" && cfg.command != "estimate" &&
        cfg.command != "fusion-check" && cfg.command != "convert") {
      auto Ds = parse_int_list(cfg.D);
      doc["fingerprint"] = fingerprint(make_code(cfg, cfg.family == "steane" ? 3 : Ds[0]));
    }
    doc["ok"] = res.ok;
    doc["result"] = res.body;
    text = doc.dump(2) + "\n";
  } else {
    std::ostringstream o;
    o << "# tool: foldqec " << kVersion << "\n# config: " << config_json(cfg).dump() << "\n";
    o << (res.csv.empty() ? generic_csv(res.body) : res.csv);
    text = o.str();
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return 2;
    }
    f << text;
  }
  return res.ok ? 0 : 1;
}
