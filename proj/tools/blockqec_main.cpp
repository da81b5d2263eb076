#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "blockqec/bch.hpp"
#include "blockqec/channel.hpp"
#include "blockqec/css.hpp"
#include "blockqec/gf2poly.hpp"
#include "blockqec/golay.hpp"
#include "blockqec/hard_decoder.hpp"
#include "blockqec/linear_code.hpp"
#include "blockqec/montecarlo.hpp"
#include "blockqec/protocols.hpp"
#include "blockqec/rm15.hpp"
#include "blockqec/soft_decoder.hpp"
#include "blockqec/tableau.hpp"

using namespace blockqec;

namespace {

constexpr const char* kVersion = "blockqec 0.1.0";

// Config and usage problems exit with 1, failed verification with 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
  return buf;
}

BitVec bits(size_t k, std::initializer_list<size_t> ones) {
  BitVec v(k);
  for (size_t i : ones) v.set(i, true);
  return v;
}

// ---------------------------------------------------------------------------
// Code catalogue

const std::vector<std::string> kBuildNames = {"golay23", "bch89",   "bch127",  "bch255",
                                              "steane7", "rm15",    "rm15x2",  "rm15x3",
                                              "mem2047", "mem2921", "mem5865"};

bool is_stack_name(const std::string& name) {
  return name == "rm15x2" || name == "rm15x3" || name.rfind("mem", 0) == 0;
}

CssCode single_code(const std::string& name) {
  if (name == "golay23") return css_from_selfdual(golay_code(), "golay23");
  if (name == "bch89") return css_from_selfdual(bch89_code(), "bch89");
  if (name == "bch127") return css_from_selfdual(bch127_code(), "bch127");
  if (name == "bch255") return css_from_selfdual(bch255_code(), "bch255");
  if (name == "steane7")
    return css_from_selfdual(cyclic_code(Gf2Poly::from_exponents({3, 1, 0}), 7, "hamming7"),
                             "steane7");
  if (name == "rm15") {
    CssCode c = build_rm15().css;
    c.name = "rm15";
    return c;
  }
  throw ConfigError("unknown code name: " + name);
}

ConcatCode stack_code(const std::string& name) {
  if (name == "rm15x2") return uniform_concat(single_code("rm15"), 2);
  if (name == "rm15x3") return uniform_concat(single_code("rm15"), 3);
  ConcatCode cc;
  if (name == "mem2047")
    cc.levels = {css_from_selfdual(bch89_code(), "bch89"), single_code("golay23")};
  else if (name == "mem2921")
    cc.levels = {css_from_selfdual(bch127_code(), "bch127"), single_code("golay23")};
  else if (name == "mem5865")
    cc.levels = {css_from_selfdual(bch255_code(), "bch255"), single_code("golay23")};
  else
    throw ConfigError("unknown code name: " + name);
  return cc;
}

// ---------------------------------------------------------------------------
// build

bool check_block(const CssCode& code, std::ostream& os) {
  bool ok = true;
  auto report = [&](const char* what, bool pass) {
    os << "  " << what << ": " << (pass ? "ok" : "FAIL") << "\n";
    ok = ok && pass;
  };

  report("symplectic basis", is_symplectic(build_encoding_matrix(code)));

  bool logicals_clean = true;
  for (size_t i = 0; i < code.k; ++i) {
    if (css_syndrome(code, code.logical_x_op(i)).any()) logicals_clean = false;
    if (css_syndrome(code, code.logical_z_op(i)).any()) logicals_clean = false;
  }
  report("logical operators commute with stabilizers", logicals_clean);

  std::mt19937_64 rng(1);
  bool partners_clean = true;
  for (int t = 0; t < 25; ++t) {
    BitVec s(code.num_stabilizers());
    for (size_t i = 0; i < s.size(); ++i) s.set(i, rng() & 1);
    if (css_syndrome(code, pure_error(code, s)) != s) partners_clean = false;
  }
  report("pure errors reproduce syndromes", partners_clean);

  report("serialization round trip", css_to_text(css_from_text(css_to_text(code))) ==
                                         css_to_text(code));
  return ok;
}

int cmd_build(const std::string& name, const std::string& out) {
  std::vector<CssCode> blocks;
  if (is_stack_name(name)) {
    ConcatCode cc = stack_code(name);
    const ConcatSpec spec = cc.spec();
    std::cout << "[[" << spec.n << "," << spec.k << "," << spec.d << "]] " << name;
    if (spec.dx && spec.dx != spec.d) std::cout << " (X distance " << spec.dx << ")";
    std::cout << "\n";
    blocks = cc.levels;
  } else {
    CssCode c = single_code(name);
    std::cout << "[[" << c.n << "," << c.k << "," << c.d << "]] " << name << "\n";
    blocks.push_back(std::move(c));
  }

  bool ok = true;
  for (size_t i = 0; i < blocks.size(); ++i) {
    if (blocks.size() > 1) std::cout << " level " << i << " [[" << blocks[i].n << ","
                                     << blocks[i].k << "," << blocks[i].d << "]]\n";
    ok = check_block(blocks[i], std::cout) && ok;
  }

  const std::string path = out.empty() ? name + ".code" : out;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path);
  for (const CssCode& c : blocks) f << css_to_text(c);
  std::cout << "wrote " << path << "\n";
  return ok ? 0 : 2;
}

// ---------------------------------------------------------------------------
// channel

int cmd_channel(const std::optional<double>& p, NoiseParams params) {
  if (p) {
    if (!(*p >= 0.0 && *p <= 5.0 / 71.0))
      throw ConfigError("channel: --p must lie in [0, 5/71]");
    params = NoiseParams{*p, *p, *p, 0.0, *p};
  }
  const PauliChannel ch = effective_channel(params);
  std::cout << "eps = " << fmt(params.eps) << "\nr = " << fmt(params.r)
            << "\np_m = " << fmt(params.p_m) << "\np_g2 = " << fmt(params.p_g2) << "\n";
  std::cout << "p_x = " << fmt(ch.px) << "\np_y = " << fmt(ch.py) << "\np_z = " << fmt(ch.pz)
            << "\nerror rate = " << fmt(ch.error_rate()) << "\n";
  if (p) std::cout << "p_eff = " << fmt(p_eff(*p)) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// bound

// Flat key = value files, `#` comments. Returns (line number, key, value).
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& path,
                                                          std::vector<size_t>* lines = nullptr) {
  std::ifstream f(path);
  if (!f) throw ConfigError(path + ": cannot open");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  size_t lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const size_t a = s.find_first_not_of(ws);
    if (a == std::string::npos) return std::string();
    const size_t b = s.find_last_not_of(ws);
    return s.substr(a, b - a + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    out.emplace_back(key, value);
    if (lines) lines->push_back(lineno);
  }
  return out;
}

double parse_double_at(const std::string& path, size_t lineno, const std::string& value) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(path + ":" + std::to_string(lineno) + ": bad number '" + value + "'");
  }
}

int cmd_bound(const std::string& name, std::optional<double> p, std::optional<double> peff,
              const std::string& rates_path) {
  if (p.has_value() == peff.has_value())
    throw ConfigError("bound: give exactly one of --p and --peff");
  double q = 0.0;
  if (p) {
    if (!(*p >= 0.0 && *p <= 5.0 / 71.0)) throw ConfigError("bound: --p must lie in [0, 5/71]");
    q = p_eff(*p);
    std::cout << "p = " << fmt(*p) << "\np_eff = " << fmt(q) << "\n";
  } else {
    if (!(*peff >= 0.0 && *peff <= 1.0)) throw ConfigError("bound: --peff must lie in [0, 1]");
    q = *peff;
    std::cout << "p_eff = " << fmt(q) << "\n";
  }

  if (name == "golay23") {
    std::cout << "P_23(p_eff) = " << fmt(analytic_bound(23, 7, q)) << "\n";
    return 0;
  }
  if (name == "bch89" || name == "bch127" || name == "bch255") {
    const CssCode c = single_code(name);
    std::cout << "P_" << c.n << "(p_eff) = " << fmt(analytic_bound(c.n, c.d, q)) << "\n";
    return 0;
  }
  if (name.rfind("mem", 0) == 0) {
    const ConcatCode cc = stack_code(name);
    const CssCode& outer = cc.levels[0];
    const double inner = analytic_bound(23, 7, q);
    const double total = analytic_bound(outer.n, outer.d, inner);
    std::cout << "P_23(p_eff) = " << fmt(inner) << "\n";
    std::cout << "P_" << outer.n << "(P_23(p_eff)) = " << fmt(total) << "\n";
    return 0;
  }
  if (name == "rm15x3") {
    if (rates_path.empty())
      throw ConfigError(
          "bound rm15x3 needs --rates FILE with measured p_z34 / p_z50 conditional rates");
    RmBoundInputs rates;
    bool saw34 = false, saw50 = false;
    std::vector<size_t> lines;
    const auto kv = parse_kv(rates_path, &lines);
    for (size_t i = 0; i < kv.size(); ++i) {
      if (kv[i].first == "p_z34") {
        rates.p_z34 = parse_double_at(rates_path, lines[i], kv[i].second);
        saw34 = true;
      } else if (kv[i].first == "p_z50") {
        rates.p_z50 = parse_double_at(rates_path, lines[i], kv[i].second);
        saw50 = true;
      } else {
        throw ConfigError(rates_path + ":" + std::to_string(lines[i]) + ": unknown key '" +
                          kv[i].first + "'");
      }
    }
    if (!saw34 || !saw50) throw ConfigError(rates_path + ": needs both p_z34 and p_z50");
    if (q <= 0.0 || q >= 1.0) throw ConfigError("bound rm15x3: p_eff must lie in (0, 1)");
    std::cout << "p_z34 = " << fmt(rates.p_z34) << "\np_z50 = " << fmt(rates.p_z50) << "\n";
    std::cout << "stratified bound = " << fmt(rm_upper_bound(q, rates)) << "\n";
    return 0;
  }
  throw ConfigError("bound: unsupported code " + name +
                    " (use golay23, bch89, bch127, bch255, mem*, or rm15x3)");
}

// ---------------------------------------------------------------------------
// simulate

struct SimConfig {
  std::string code;
  std::vector<double> p;     // physical rates; p_eff derived
  std::vector<double> peff;  // direct effective rates
  uint64_t trials = 0;
  uint64_t seed = 0;
  unsigned jobs = 1;
  bool allow_slow = false;
  std::string format = "csv";
  std::string out;
};

std::vector<double> parse_list(const std::string& path, size_t lineno, const std::string& value) {
  std::vector<double> out;
  std::string piece;
  std::istringstream is(value);
  while (std::getline(is, piece, ',')) {
    std::istringstream ws(piece);
    std::string token;
    while (ws >> token) out.push_back(parse_double_at(path, lineno, token));
  }
  return out;
}

SimConfig parse_sim_config(const std::string& path) {
  SimConfig cfg;
  std::vector<size_t> lines;
  const auto kv = parse_kv(path, &lines);
  std::map<std::string, size_t> seen;
  for (size_t i = 0; i < kv.size(); ++i) {
    const auto& [key, value] = kv[i];
    const std::string where = path + ":" + std::to_string(lines[i]);
    if (seen.count(key)) throw ConfigError(where + ": duplicate key '" + key + "'");
    seen[key] = lines[i];
    if (key == "code") {
      cfg.code = value;
    } else if (key == "p") {
      cfg.p = parse_list(path, lines[i], value);
    } else if (key == "peff") {
      cfg.peff = parse_list(path, lines[i], value);
    } else if (key == "trials") {
      cfg.trials = uint64_t(parse_double_at(path, lines[i], value));
      if (double(cfg.trials) != parse_double_at(path, lines[i], value) || cfg.trials == 0)
        throw ConfigError(where + ": trials must be a positive integer");
    } else if (key == "seed") {
      cfg.seed = uint64_t(parse_double_at(path, lines[i], value));
    } else if (key == "jobs") {
      cfg.jobs = unsigned(parse_double_at(path, lines[i], value));
      if (cfg.jobs == 0) throw ConfigError(where + ": jobs must be positive");
    } else if (key == "allow_slow") {
      if (value != "true" && value != "false")
        throw ConfigError(where + ": allow_slow must be true or false");
      cfg.allow_slow = value == "true";
    } else if (key == "format") {
      if (value != "csv" && value != "json")
        throw ConfigError(where + ": format must be csv or json");
      cfg.format = value;
    } else if (key == "out") {
      cfg.out = value;
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  return cfg;
}

void validate_sim_config(const SimConfig& cfg, const std::string& path) {
  if (cfg.code.empty()) throw ConfigError(path + ": missing required key 'code'");
  if (cfg.trials == 0) throw ConfigError(path + ": missing required key 'trials'");
  if (cfg.p.empty() == cfg.peff.empty())
    throw ConfigError(path + ": give exactly one nonempty sweep, 'p' or 'peff'");
  for (double v : cfg.p)
    if (!(v > 0.0 && v <= 5.0 / 71.0))
      throw ConfigError(path + ": p values must lie in (0, 5/71]");
  for (double v : cfg.peff)
    if (!(v >= 0.0 && v < 1.0)) throw ConfigError(path + ": peff values must lie in [0, 1)");
  if (cfg.code == "rm15x3" && !cfg.allow_slow)
    throw ConfigError(path + ": rm15x3 decodes 3375 qubits per trial; set allow_slow = true");
}

std::vector<ResultRow> run_sweep(const SimConfig& cfg) {
  std::vector<std::pair<double, double>> points;  // (p, p_eff)
  for (double v : cfg.p) points.emplace_back(v, p_eff(v));
  for (double v : cfg.peff) points.emplace_back(0.0, v);

  RunOptions opt;
  opt.jobs = cfg.jobs;
  std::vector<ResultRow> rows;
  auto add = [&](double p, double q, const RateEstimate& est) {
    rows.push_back(ResultRow{p, q, cfg.code, est});
  };

  if (cfg.code == "golay23") {
    GolayBlockDecoder dec;
    for (auto [p, q] : points) add(p, q, run_memory_trials(dec, q, cfg.trials, cfg.seed, opt));
  } else if (cfg.code == "bch89" || cfg.code == "bch127" || cfg.code == "bch255") {
    const LinearCode classical = cfg.code == "bch89"    ? bch89_code()
                                 : cfg.code == "bch127" ? bch127_code()
                                                        : bch255_code();
    BchBlockDecoder dec(classical);
    for (auto [p, q] : points) add(p, q, run_memory_trials(dec, q, cfg.trials, cfg.seed, opt));
  } else if (cfg.code.rfind("mem", 0) == 0) {
    const LinearCode outer = cfg.code == "mem2047"   ? bch89_code()
                             : cfg.code == "mem2921" ? bch127_code()
                             : cfg.code == "mem5865"
                                 ? bch255_code()
                                 : throw ConfigError("unknown code name: " + cfg.code);
    const TwoLevelHardDecoder dec = golay_memory_decoder(outer);
    for (auto [p, q] : points) add(p, q, run_memory_trials(dec, q, cfg.trials, cfg.seed, opt));
  } else if (cfg.code == "rm15" || cfg.code == "rm15x2" || cfg.code == "rm15x3") {
    const size_t levels = cfg.code == "rm15" ? 1 : cfg.code == "rm15x2" ? 2 : 3;
    for (auto [p, q] : points)
      add(p, q, run_rm_trials(levels, q, cfg.trials, cfg.seed, opt, nullptr, cfg.allow_slow));
  } else if (cfg.code == "steane7") {
    throw ConfigError("simulate: no decoder is wired for steane7; use verify for protocols");
  } else {
    throw ConfigError("unknown code name: " + cfg.code);
  }
  return rows;
}

// The experiment identity echoed into every output: code, sweep, trials,
// seed. Worker count and output path are execution details and stay out so
// identical experiments produce identical bytes.
std::vector<std::pair<std::string, std::string>> config_echo(const SimConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> echo;
  echo.emplace_back("version", kVersion);
  echo.emplace_back("code", cfg.code);
  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ' ';
      s += fmt(v[i]);
    }
    return s;
  };
  if (!cfg.p.empty()) echo.emplace_back("p", join(cfg.p));
  if (!cfg.peff.empty()) echo.emplace_back("peff", join(cfg.peff));
  echo.emplace_back("trials", std::to_string(cfg.trials));
  echo.emplace_back("seed", std::to_string(cfg.seed));
  if (cfg.allow_slow) echo.emplace_back("allow_slow", "true");
  return echo;
}

std::string render_results(const SimConfig& cfg, const std::vector<ResultRow>& rows) {
  const auto echo = config_echo(cfg);
  if (cfg.format == "json") return to_json(rows, echo);
  std::string out;
  for (const auto& [k, v] : echo) out += "# " + k + " = " + v + "\n";
  out += to_csv(rows);
  return out;
}

int cmd_simulate(const SimConfig& cfg, const std::string& path) {
  validate_sim_config(cfg, path);
  const std::vector<ResultRow> rows = run_sweep(cfg);
  const std::string payload = render_results(cfg, rows);
  std::cout << payload;
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg.out);
    f << payload;
    std::cout << "wrote " << cfg.out << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyReport {
  size_t checked = 0;
  size_t mismatches = 0;
  std::vector<std::string> notes;
};

// The six logical eigenstates of one slot: |0>, |1>, |+>, |->, |+i>, |-i>.
Tableau slot_state(const CodeRegister& reg, const Tableau& zero, size_t slot, int which) {
  Tableau t = zero;
  if (which % 2 == 1) t.apply_pauli(reg.logical_x(slot));
  if (which >= 2) t = apply_logical_clifford(t, reg, LogicalGate::kHadamard, slot);
  if (which >= 4) t = apply_logical_clifford(t, reg, LogicalGate::kPhase, slot);
  return t;
}

void check_state(VerifyReport& rep, const Tableau& got, const Tableau& want,
                 const std::string& what) {
  ++rep.checked;
  if (!got.same_state_as(want)) {
    ++rep.mismatches;
    if (rep.notes.size() < 8) rep.notes.push_back(what);
  }
}

VerifyReport verify_gate(const std::string& protocol, const CssCode& code, uint64_t seed) {
  VerifyReport rep;
  std::mt19937_64 rng(seed);
  const bool two_slot = protocol == "cnot" || protocol == "swap";
  const size_t nblocks = (two_slot || protocol == "teleport") ? 3 : 2;
  const CodeRegister reg(std::vector<CssCode>(nblocks, code));
  const Tableau zero = reg.zero_state();

  const size_t variants = two_slot ? 36 : 6;
  for (size_t v = 0; v < variants; ++v) {
    Tableau in = slot_state(reg, zero, 0, int(v % 6));
    if (two_slot) in = slot_state(reg, in, 1, int(v / 6));

    Tableau state = in;
    PauliFrame frame(reg.num_qubits());
    Tableau want = in;
    if (protocol == "hadamard") {
      logical_hadamard(state, frame, reg, 0, 1, rng);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 1, 0);
      want = apply_logical_clifford(want, reg, LogicalGate::kHadamard, 1);
    } else if (protocol == "phase") {
      logical_phase(state, frame, reg, 0, 1, rng);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 1, 0);
      want = apply_logical_clifford(want, reg, LogicalGate::kPhase, 1);
    } else if (protocol == "cnot") {
      logical_cnot(state, frame, reg, 0, 1, 2, rng);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 0, 1);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 0, 2);
      want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 1, 2);
    } else if (protocol == "swap") {
      logical_swap(state, frame, reg, 0, 1, 2, rng);
      want = apply_logical_clifford(want, reg, LogicalGate::kSwap, 0, 1);
    } else {  // teleport: payload 0 -> processor 1 and back; (1, 2) end Bell
      logical_teleport(state, frame, reg, 0, 1, 2, rng);
      want = apply_logical_clifford(want, reg, LogicalGate::kHadamard, 1);
      want = apply_logical_clifford(want, reg, LogicalGate::kCnot, 1, 2);
    }
    discharge_frame(state, frame);
    check_state(rep, state, want, protocol + " input " + std::to_string(v));
  }
  return rep;
}

VerifyReport verify_logical_measure(const CssCode& code, uint64_t seed) {
  VerifyReport rep;
  std::mt19937_64 rng(seed);
  const CodeRegister reg({code});
  const Tableau zero = reg.zero_state();
  const size_t k = reg.num_logicals();

  const std::vector<LogicalObservable> forms = {{bits(k, {0}), bits(k, {})},
                                                {bits(k, {}), bits(k, {0})},
                                                {bits(k, {0}), bits(k, {0})}};
  for (const LogicalObservable& obs : forms) {
    for (int which = 0; which < 6; ++which) {
      const Tableau in = slot_state(reg, zero, 0, which);
      Tableau circuit = in;
      ExtractionOutcome out = steane_extraction(circuit, reg, 0, NoiseParams{}, rng, obs);

      bool ok = !out.syndrome_x.any() && !out.syndrome_z.any() &&
                (out.logical_outcome == +1 || out.logical_outcome == -1);
      Tableau direct = in;
      const PauliOperator rep_op = reg.logical_pauli(obs.u, obs.v);
      const int fixed = direct.expectation(rep_op);
      if (fixed != 0)
        ok = ok && out.logical_outcome == fixed;
      else
        direct.measure_forced(rep_op, out.logical_outcome);
      ok = ok && circuit.same_state_as(direct);

      ++rep.checked;
      if (!ok) {
        ++rep.mismatches;
        if (rep.notes.size() < 8)
          rep.notes.push_back("observable form mismatch on input " + std::to_string(which));
      }
    }
  }
  return rep;
}

int cmd_verify(const std::string& protocol, const std::string& code_name, uint64_t seed,
               uint64_t trials, const std::string& out) {
  VerifyReport rep;
  std::string detail;

  if (protocol == "transversal-t") {
    if (code_name != "rm15")
      throw ConfigError("verify: transversal-t runs on rm15, not " + code_name);
    const TransversalTReport t = verify_transversal_t(build_rm15());
    rep.checked = 1;
    rep.mismatches = t.matches_expected ? 0 : 1;
    std::ostringstream os;
    os << "phase on |0>_L = " << fmt(t.phase0.real()) << (t.phase0.imag() < 0 ? " - " : " + ")
       << fmt(std::abs(t.phase0.imag())) << "i\n"
       << "phase on |1>_L = " << fmt(t.phase1.real()) << (t.phase1.imag() < 0 ? " - " : " + ")
       << fmt(std::abs(t.phase1.imag())) << "i\n"
       << "superposition amplitude error = " << fmt(t.superposition_error) << "\n";
    detail = os.str();
  } else if (protocol == "extraction-equivalence") {
    const CssCode code = single_code(code_name);
    if (code.k != 1)
      throw ConfigError("verify: extraction-equivalence expects a one-logical block");
    const EquivalenceReport eq = effective_error_equivalence_check(code, trials, seed);
    rep.checked = eq.checked;
    rep.mismatches = eq.mismatches;
    rep.notes = eq.failures;
  } else if (protocol == "logical-measure") {
    rep = verify_logical_measure(single_code(code_name), seed);
  } else if (protocol == "hadamard" || protocol == "phase" || protocol == "cnot" ||
             protocol == "swap" || protocol == "teleport") {
    const CssCode code = single_code(code_name);
    if (code.k != 1)
      throw ConfigError("verify: gate protocols here use one-logical blocks; " + code_name +
                        " has k = " + std::to_string(code.k));
    rep = verify_gate(protocol, code, seed);
  } else {
    throw ConfigError("verify: unknown protocol " + protocol);
  }

  std::cout << protocol << " on " << code_name << ": " << (rep.checked - rep.mismatches) << "/"
            << rep.checked << " checks passed\n";
  std::cout << detail;
  for (const std::string& note : rep.notes) std::cout << "  mismatch: " << note << "\n";

  if (!out.empty()) {
    nlohmann::ordered_json j;
    j["config"] = {{"version", kVersion},
                   {"protocol", protocol},
                   {"code", code_name},
                   {"seed", seed}};
    j["checked"] = rep.checked;
    j["mismatches"] = rep.mismatches;
    j["notes"] = rep.notes;
    if (!detail.empty()) j["detail"] = detail;
    std::ofstream f(out, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out);
    f << j.dump(2) << "\n";
    std::cout << "wrote " << out << "\n";
  }
  return rep.mismatches == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and verification toolkit for concatenated CSS block codes"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "construct a code, check invariants, serialize it");
  std::string build_name, build_out;
  build->add_option("name", build_name, "code name")->required();
  build->add_option("--out", build_out, "output path (default <name>.code)");

  auto* channel = app.add_subcommand("channel", "print effective channel coefficients");
  std::optional<double> ch_p;
  NoiseParams ch_params;
  channel->add_option("--p", ch_p, "uniform physical rate for eps, r, p_m, p_g2");
  channel->add_option("--eps", ch_params.eps, "memory error rate");
  channel->add_option("--r", ch_params.r, "ancilla preparation error rate");
  channel->add_option("--pm", ch_params.p_m, "measurement error rate");
  channel->add_option("--pg2", ch_params.p_g2, "two-qubit gate error rate");

  auto* bound = app.add_subcommand("bound", "evaluate analytic logical error bounds");
  std::string bound_name, bound_rates;
  std::optional<double> bound_p, bound_peff;
  bound->add_option("name", bound_name, "code name")->required();
  bound->add_option("--p", bound_p, "physical rate; folded into p_eff first");
  bound->add_option("--peff", bound_peff, "effective depolarizing rate");
  bound->add_option("--rates", bound_rates, "file with p_z34 / p_z50 for the stratified bound");

  auto* simulate = app.add_subcommand("simulate", "run Monte Carlo sweeps from a config file");
  std::string sim_path, sim_out;
  std::optional<uint64_t> sim_seed, sim_trials;
  std::optional<unsigned> sim_jobs;
  std::optional<double> sim_peff;
  simulate->add_option("config", sim_path, "key = value config file")->required();
  simulate->add_option("--seed", sim_seed, "override config seed");
  simulate->add_option("--trials", sim_trials, "override config trials");
  simulate->add_option("--peff", sim_peff, "override the sweep with a single p_eff point");
  simulate->add_option("--jobs", sim_jobs, "override worker count");
  simulate->add_option("--out", sim_out, "override output path");

  auto* verify = app.add_subcommand("verify", "run protocol verification suites");
  std::string ver_protocol, ver_code = "steane7", ver_out;
  uint64_t ver_seed = 1, ver_trials = 10000;
  verify->add_option("--protocol", ver_protocol, "protocol name")->required();
  verify->add_option("--code", ver_code, "code name (default steane7)");
  verify->add_option("--seed", ver_seed, "random seed");
  verify->add_option("--trials", ver_trials, "sampled trials where applicable");
  verify->add_option("--out", ver_out, "JSON report path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*build) return cmd_build(build_name, build_out);
    if (*channel) return cmd_channel(ch_p, ch_params);
    if (*bound) return cmd_bound(bound_name, bound_p, bound_peff, bound_rates);
    if (*simulate) {
      SimConfig cfg = parse_sim_config(sim_path);
      if (sim_seed) cfg.seed = *sim_seed;
      if (sim_trials) cfg.trials = *sim_trials;
      if (sim_jobs) cfg.jobs = *sim_jobs;
      if (sim_peff) {
        cfg.p.clear();
        cfg.peff = {*sim_peff};
      }
      if (!sim_out.empty()) cfg.out = sim_out;
      return cmd_simulate(cfg, sim_path);
    }
    if (*verify) return cmd_verify(ver_protocol, ver_code, ver_seed, ver_trials, ver_out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
