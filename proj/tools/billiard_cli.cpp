#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "billiard/balance.hpp"
#include "billiard/brs.hpp"
#include "billiard/dynamics.hpp"
#include "billiard/language.hpp"
#include "billiard/selftest.hpp"

using namespace billiard;
using Json = nlohmann::ordered_json;

namespace {

enum Exit : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kBoundary = 3,
  kChamber = 4,
  kUndetermined = 5,
};

struct RunConfig {
  std::string theta = "1,sqrt(3),sqrt(2)";
  long precision = kDefaultPrecision;
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 42;
  std::size_t n = 1000000;
  std::string checkpoints;
  std::size_t max_factor_len = 2;
  std::string format;
  std::string output;
  // balance only
  std::string series_factor;
  std::size_t stride = 0;
  long box = 10;
};

void add_common(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--theta", cfg.theta, "Direction (1,theta_1,...,theta_d); sqrt, + - * /, t1..td")->capture_default_str();
  cmd->add_option("--precision", cfg.precision, "MPFR precision in bits")->capture_default_str()->check(CLI::Range(53L, 4096L));
  cmd->add_option("--epsilon", cfg.epsilon, "Boundary margin")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Seed for the generic parameter")->capture_default_str();
  cmd->add_option("--n", cfg.n, "Word length N")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--checkpoints", cfg.checkpoints, "Comma-separated increasing checkpoints (default N/100,N/10,N)");
  cmd->add_option("--max-factor-len", cfg.max_factor_len, "Longest factor analysed")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("-o,--output", cfg.output, "Output file (written atomically); stdout if absent");
}

std::vector<std::size_t> parse_checkpoints(const RunConfig& cfg) {
  if (cfg.checkpoints.empty()) return default_checkpoints(cfg.n);
  std::vector<std::size_t> out;
  std::stringstream in(cfg.checkpoints);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size()) throw CLI::ValidationError("--checkpoints", "not an integer: " + item);
    out.push_back(static_cast<std::size_t>(v));
  }
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] <= out[i - 1]) throw CLI::ValidationError("--checkpoints", "must be strictly increasing");
  if (out.empty() || out.back() > cfg.n) throw CLI::ValidationError("--checkpoints", "last checkpoint exceeds N");
  return out;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path target(cfg.output);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string fmt(double v, int digits = 12) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

Json header_json(const RunConfig& cfg, const Direction& dir) {
  Json j;
  j["direction"] = dir.text;
  j["precision"] = cfg.precision;
  j["epsilon"] = cfg.epsilon;
  j["seed"] = cfg.seed;
  j["caveat"] = irrationality_caveat(dir);
  return j;
}

std::string header_csv(const RunConfig& cfg, const Direction& dir) {
  std::ostringstream s;
  s << "# direction=" << dir.text << "\n# precision=" << cfg.precision << "\n# epsilon=" << fmt(cfg.epsilon)
    << "\n# seed=" << cfg.seed << "\n# caveat=" << irrationality_caveat(dir) << "\n";
  return s.str();
}

Direction load_direction(const RunConfig& cfg) {
  Direction dir = parse_direction(cfg.theta, static_cast<mpfr_prec_t>(cfg.precision));
  if (dir.has_rational_component) std::cerr << "note: " << irrationality_caveat(dir) << "\n";
  return dir;
}

int cmd_generate(const RunConfig& cfg) {
  Direction dir = load_direction(cfg);
  if (dir.symbolic) {
    std::cerr << "error: symbolic directions cannot be orbit-sampled; give numeric components\n";
    return kParse;
  }
  auto gen = generate_generic_word(dir, cfg.seed, 0, cfg.n, cfg.epsilon);
  if (gen.seed_used != cfg.seed) std::cerr << "note: parameter taken from seed " << gen.seed_used << "\n";
  std::ostringstream out;
  write_word(out, gen.word);
  emit(cfg, out.str());
  return kOk;
}

Json series_json(const DiscrepancySeries& s) {
  Json j;
  j["factor"] = s.factor;
  j["mu"] = s.mu.to_string(20);
  j["provenance"] = to_string(s.provenance);
  j["max_abs"] = s.max_abs;
  Json cps = Json::array();
  for (const auto& c : s.checkpoints)
    cps.push_back({{"n", c.n}, {"count", c.count}, {"expected", c.expected}, {"D_n", c.d}, {"running_max", c.running_max}});
  j["checkpoints"] = cps;
  if (s.bound) {
    j["bound"] = *s.bound;
    j["violations"] = s.violations;
  }
  return j;
}

int cmd_balance(const RunConfig& cfg) {
  Direction dir = load_direction(cfg);
  dir.require_numeric("balance");
  const auto cps = parse_checkpoints(cfg);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;

  if (!cfg.series_factor.empty()) {
    auto gen = generate_generic_word(dir, cfg.seed, 0, cfg.n, cfg.epsilon);
    const auto table = factor_table(gen.word.letters, cfg.series_factor.size());
    const auto mu = reference_frequency(dir, cfg.series_factor, table, cfg.epsilon);
    const std::size_t stride = cfg.stride ? cfg.stride : std::max<std::size_t>(1, cfg.n / 1000);
    auto s = discrepancy_series(gen.word.letters, cfg.series_factor, mu, cps, stride);
    if (format == "json") {
      Json j = header_json(cfg, dir);
      j["seed_used"] = gen.seed_used;
      j["series"] = series_json(s);
      Json rows = Json::array();
      for (const auto& r : s.samples) rows.push_back({r.n, r.count, r.expected, r.d, r.running_max});
      j["samples"] = {{"columns", {"n", "count", "expected", "D_n", "running_max"}}, {"rows", rows}};
      emit(cfg, j.dump(2) + "\n");
    } else {
      std::ostringstream out;
      out << header_csv(cfg, dir) << "# seed_used=" << gen.seed_used << "\n# factor=" << s.factor
          << "\n# mu=" << s.mu.to_string(20) << " (" << to_string(s.provenance) << ")\n";
      out << "n,count,expected,D_n,running_max\n";
      for (const auto& r : s.samples)
        out << r.n << "," << r.count << "," << fmt(r.expected, 15) << "," << fmt(r.d, 15) << "," << fmt(r.running_max, 15) << "\n";
      emit(cfg, out.str());
    }
    return kOk;
  }

  auto rep = balance_report(dir, cfg.max_factor_len, cfg.n, cfg.seed, cfg.epsilon, cps);
  if (format == "json") {
    Json j = header_json(cfg, dir);
    j["seed_used"] = rep.seed_used;
    j["N"] = rep.n;
    j["checkpoints"] = rep.checkpoints;
    j["parameter"] = rep.parameter;
    Json entries = Json::array();
    for (const auto& e : rep.entries) {
      Json x = series_json(e.series);
      x["verdict"] = to_string(e.verdict.kind);
      if (e.verdict.certified_bound) x["certified_bound"] = *e.verdict.certified_bound;
      x["bound_violated"] = e.verdict.bound_violated;
      entries.push_back(std::move(x));
    }
    j["entries"] = entries;
    j["notes"] = rep.notes;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << header_csv(cfg, dir) << "# seed_used=" << rep.seed_used << "\n";
    for (const auto& n : rep.notes) out << "# note: " << n << "\n";
    out << "factor,provenance,mu,certified_bound,verdict,max_abs";
    for (auto c : rep.checkpoints) out << ",running_max@" << c;
    out << "\n";
    for (const auto& e : rep.entries) {
      out << e.series.factor << "," << to_string(e.series.provenance) << "," << e.series.mu.to_string(15) << ","
          << (e.verdict.certified_bound ? fmt(*e.verdict.certified_bound) : "") << "," << to_string(e.verdict.kind) << ","
          << fmt(e.series.max_abs);
      for (const auto& c : e.series.checkpoints) out << "," << fmt(c.running_max);
      out << "\n";
    }
    emit(cfg, out.str());
  }
  return kOk;
}

int cmd_freqs(const RunConfig& cfg) {
  Direction dir = load_direction(cfg);
  dir.require_numeric("freqs");
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  auto gen = generate_generic_word(dir, cfg.seed, 0, cfg.n, cfg.epsilon);
  auto rows = frequency_table(dir, gen.word.letters, cfg.max_factor_len, cfg.epsilon);
  if (format == "json") {
    Json j = header_json(cfg, dir);
    j["seed_used"] = gen.seed_used;
    j["N"] = cfg.n;
    j["factor_length"] = cfg.max_factor_len;
    Json arr = Json::array();
    for (const auto& r : rows) {
      Json x;
      x["factor"] = r.factor;
      x["closed_form"] = r.closed_form ? Json(r.closed_form->to_string(20)) : Json(nullptr);
      x["closed_form_provenance"] = r.closed_form ? Json(to_string(r.provenance)) : Json(nullptr);
      x["empirical"] = r.empirical;
      x["empirical_provenance"] = "empirical";
      x["abs_error"] = r.abs_error() ? Json(*r.abs_error()) : Json(nullptr);
      x["N"] = r.N;
      arr.push_back(std::move(x));
    }
    j["rows"] = arr;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << header_csv(cfg, dir) << "# seed_used=" << gen.seed_used << "\nfactor,closed_form,empirical,abs_error,N\n";
    for (const auto& r : rows)
      out << r.factor << "," << (r.closed_form ? r.closed_form->to_string(15) : "") << "," << fmt(r.empirical, 15) << ","
          << (r.abs_error() ? fmt(*r.abs_error(), 6) : "") << "," << r.N << "\n";
    emit(cfg, out.str());
  }
  return kOk;
}

std::string point_text(const HybridPoint& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.sym.coords.size(); ++i) s += (i ? ", " : "") + p.sym.coords[i].to_string();
  return s + ")";
}

int cmd_brs(const RunConfig& cfg) {
  Direction dir = load_direction(cfg);
  dir.require_numeric("brs");
  if (dir.d != 2) throw ChamberError("BRS cells are decided for d = 2 only");
  auto rep = brs_report(dir, cfg.epsilon, cfg.box);
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (rep.permuted) std::cerr << "note: " << rep.notes.front() << "\n";
  if (format == "json") {
    Json j = header_json(cfg, dir);
    j["chamber_direction"] = rep.chamber_direction;
    j["permuted"] = rep.permuted;
    j["to_original"] = rep.to_original;
    Json cells = Json::array();
    for (const auto& c : rep.cells) {
      Json x;
      x["label"] = c.cell.label;
      Json verts = Json::array();
      for (const auto& v : c.cell.vertices) {
        Json num = Json::array();
        for (const auto& n : v.num.coords) num.push_back(n.to_double());
        verts.push_back({{"exact", point_text(v)}, {"numeric", num}});
      }
      x["vertices"] = verts;
      x["area_share"] = c.area_share.to_double();
      x["status"] = to_string(c.verdict.status);
      x["reason"] = to_string(c.verdict.reason);
      if (c.verdict.edge_pair) x["edge_pair"] = {c.verdict.edge_pair->first, c.verdict.edge_pair->second};
      Json wit = Json::array();
      for (const auto& w : c.verdict.witnesses) wit.push_back({{"what", w.what}, {"n", w.n}});
      x["witnesses"] = wit;
      x["detail"] = c.verdict.detail;
      cells.push_back(std::move(x));
    }
    j["cells"] = cells;
    j["notes"] = rep.notes;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << header_csv(cfg, dir) << "# chamber_direction=" << rep.chamber_direction << "\n";
    for (const auto& n : rep.notes) out << "# note: " << n << "\n";
    out << "label,vertices,area_share,status,reason,detail\n";
    for (const auto& c : rep.cells)
      out << c.cell.label << "," << c.cell.size() << "," << fmt(c.area_share.to_double(), 15) << ","
          << to_string(c.verdict.status) << "," << to_string(c.verdict.reason) << ",\"" << c.verdict.detail << "\"\n";
    emit(cfg, out.str());
  }
  return rep.any_undetermined() ? kUndetermined : kOk;
}

int cmd_complexity(const RunConfig& cfg) {
  Direction dir = load_direction(cfg);
  dir.require_numeric("complexity");
  auto gen = generate_generic_word(dir, cfg.seed, 0, cfg.n, cfg.epsilon);
  auto profile = complexity_profile(gen.word.letters, cfg.max_factor_len);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  if (format == "json") {
    Json j = header_json(cfg, dir);
    j["seed_used"] = gen.seed_used;
    j["N"] = cfg.n;
    Json rows = Json::array();
    for (std::size_t i = 0; i < profile.size(); ++i) rows.push_back({{"n", i + 1}, {"p", profile[i]}});
    j["complexity"] = rows;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << header_csv(cfg, dir) << "# seed_used=" << gen.seed_used << "\nn,p\n";
    for (std::size_t i = 0; i < profile.size(); ++i) out << i + 1 << "," << profile[i] << "\n";
    emit(cfg, out.str());
  }
  return kOk;
}

int cmd_selftest() {
  auto checks = run_selftest();
  int failed = 0;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "ok   " : "FAIL ") << c.module << ": " << c.name;
    if (!c.passed) std::cout << " (" << c.detail << ")";
    std::cout << "\n";
    failed += c.passed ? 0 : 1;
  }
  std::cout << checks.size() - static_cast<std::size_t>(failed) << "/" << checks.size() << " checks passed\n";
  return failed ? kFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubic billiard words: generation, balance, frequencies and bounded-remainder cells.\n"
               "Exit codes: 0 ok, 1 failure, 2 parse error or symbolic direction for sampling,\n"
               "3 no generic parameter away from piece boundaries, 4 chamber violation, 5 undetermined BRS verdict."};
  app.require_subcommand(1);
  RunConfig cfg;
  auto* gen = app.add_subcommand("generate", "Write a coded word for a sampled generic parameter");
  auto* bal = app.add_subcommand("balance", "Per-factor discrepancy verdicts");
  auto* frq = app.add_subcommand("freqs", "Reference versus empirical factor frequencies");
  auto* brs = app.add_subcommand("brs", "Bounded-remainder verdicts for the length-2 cells (d = 2)");
  auto* cpx = app.add_subcommand("complexity", "Number of distinct factors per length");
  auto* slf = app.add_subcommand("selftest", "Run the invariant suite");
  for (auto* c : {gen, bal, frq, brs, cpx}) add_common(c, cfg);
  bal->add_option("--series", cfg.series_factor, "Emit the D_n series for one factor instead of verdicts");
  bal->add_option("--stride", cfg.stride, "Series sampling stride (default N/1000)");
  brs->add_option("--box", cfg.box, "Lattice scan box for kernels of rank >= 2")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*gen) return cmd_generate(cfg);
    if (*bal) return cmd_balance(cfg);
    if (*frq) return cmd_freqs(cfg);
    if (*brs) return cmd_brs(cfg);
    if (*cpx) return cmd_complexity(cfg);
    if (*slf) return cmd_selftest();
  } catch (const DirectionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const GenericSamplingError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBoundary;
  } catch (const NearBoundaryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBoundary;
  } catch (const ChamberError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kChamber;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
