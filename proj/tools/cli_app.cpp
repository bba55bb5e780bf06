#include "cli_app.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "orlicz/conjugation.hpp"
#include "orlicz/factorization.hpp"
#include "orlicz/funcdsl.hpp"
#include "orlicz/measure.hpp"
#include "orlicz/multipliers.hpp"
#include "orlicz/verify.hpp"
#include "orlicz/young.hpp"

namespace orlicz::cli {
namespace {

using nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ToleranceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt_num(double v) {
  if (is_inf(v)) return "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

ordered_json json_num(double v) {
  if (is_inf(v)) return ordered_json("inf");
  return ordered_json(v);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Expression flags accept either funcdsl text or @path[:k], the k-th
// expression line (1-based, comments and blank lines skipped) of a fixture
// file with one expression per line.
std::string load_expr_text(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return arg;
  std::string body = arg.substr(1);
  std::size_t want = 1;
  auto colon = body.rfind(':');
  if (colon != std::string::npos && colon + 1 < body.size()) {
    bool digits = true;
    for (std::size_t i = colon + 1; i < body.size(); ++i)
      digits = digits && std::isdigit(static_cast<unsigned char>(body[i]));
    if (digits) {
      want = std::stoul(body.substr(colon + 1));
      body = body.substr(0, colon);
    }
  }
  std::istringstream in(read_file(body));
  std::string line;
  std::size_t seen = 0;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    if (++seen == want) return line.substr(first, last - first + 1);
  }
  throw InputError("fixture " + body + " has no expression line " +
                   std::to_string(want));
}

struct ParsedPhi {
  YoungFunction fn;
  std::string text;  // canonical form, echoed in reports
};

ParsedPhi parse_phi(const std::string& arg, const char* flag) {
  std::string text = load_expr_text(arg);
  auto pr = dsl::parse(text);
  if (!pr)
    throw InputError(std::string(flag) + ": " + pr.error->message + "\n" +
                     dsl::render_caret(text, *pr.error));
  try {
    return {dsl::lower(*pr.expr), dsl::format(*pr.expr)};
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string(flag) + ": " + e.what());
  }
}

// --space accepts finite:N, infinite:N, or @path (tabular space file).
MeasureSpace parse_space(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@')
    return parse_table_text(read_file(arg.substr(1))).space;
  auto colon = arg.find(':');
  if (colon == std::string::npos)
    throw InputError("--space: expected finite:N, infinite:N, or @path");
  std::string kind = arg.substr(0, colon);
  std::size_t n = 0;
  try {
    n = std::stoul(arg.substr(colon + 1));
  } catch (const std::exception&) {
    throw InputError("--space: bad cell count in '" + arg + "'");
  }
  if (n == 0) throw InputError("--space: cell count must be positive");
  if (kind == "finite") return make_space(SpaceKind::Finite, n, 1.0);
  if (kind == "infinite")
    return make_space(SpaceKind::SigmaFiniteInfinite, n, 1.0);
  throw InputError("--space: unknown kind '" + kind + "'");
}

const char* convention_name(DomainConvention c) {
  switch (c) {
    case DomainConvention::Unbounded: return "unbounded";
    case DomainConvention::OpenAtB: return "open-at-b";
    case DomainConvention::ClosedAtB: return "closed-at-b";
  }
  return "unbounded";
}

const char* classification_name(Classification c) {
  switch (c) {
    case Classification::Trivial: return "trivial";
    case Classification::InsideLinfty: return "inside-Linfty";
    case Classification::General: return "general";
  }
  return "general";
}

// Recomputes a handful of table rows with the pointwise solver; a
// disagreement beyond tol is an internal tolerance failure (exit 3).
void spot_check(const OminusResult& res, const YoungFunction& phi,
                const YoungFunction& phi1, double trunc, double tol) {
  const auto& f = res.function;
  std::size_t n = f.grid.size();
  if (n < 2) return;
  std::size_t picks[5] = {1, n / 4, n / 2, (3 * n) / 4, n - 1};
  for (std::size_t idx : picks) {
    if (idx == 0 || idx >= n) continue;
    double u = f.grid[idx];
    if (!(u > 0.0)) continue;
    SupPoint p = is_inf(trunc) ? ominus_value_at(phi, phi1, u)
                               : ominus_truncated_value_at(phi, phi1, trunc, u);
    double tv = f.values[idx];
    if (is_inf(tv) != is_inf(p.value))
      throw ToleranceError("table and pointwise solver disagree at u=" +
                           fmt_num(u));
    if (is_inf(tv)) continue;
    double rel = std::fabs(tv - p.value) / std::max(1.0, std::max(tv, p.value));
    if (rel > tol)
      throw ToleranceError("table and pointwise solver differ by " +
                           fmt_num(rel) + " at u=" + fmt_num(u));
  }
}

void emit_rows_table(std::string& out, const OminusResult& res) {
  out += "u value argmax\n";
  const auto& f = res.function;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    out += fmt_num(f.grid[i]);
    out += ' ';
    out += fmt_num(f.values[i]);
    out += ' ';
    out += fmt_num(res.argmax_profile[i].second);
    out += '\n';
  }
}

void emit_rows_csv(std::string& out, const OminusResult& res) {
  out += "u,value,argmax\n";
  const auto& f = res.function;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    out += fmt_num(f.grid[i]);
    out += ',';
    out += fmt_num(f.values[i]);
    out += ',';
    out += fmt_num(res.argmax_profile[i].second);
    out += '\n';
  }
}

ordered_json rows_json(const OminusResult& res) {
  ordered_json rows = ordered_json::array();
  const auto& f = res.function;
  for (std::size_t i = 0; i < f.grid.size(); ++i) {
    ordered_json row;
    row["u"] = json_num(f.grid[i]);
    row["value"] = json_num(f.values[i]);
    row["argmax"] = json_num(res.argmax_profile[i].second);
    rows.push_back(std::move(row));
  }
  return rows;
}

struct OminusCfg {
  std::string phi, phi1;
  double umin = 1e-6, umax = 1e6;
  int n = 4097;
  double trunc = kInf;
  double tol = 1e-6;
  std::string format = "table";
};

std::string cmd_ominus(const OminusCfg& cfg) {
  ParsedPhi phi = parse_phi(cfg.phi, "--phi");
  ParsedPhi phi1 = parse_phi(cfg.phi1, "--phi1");
  GridSpec spec{cfg.umin, cfg.umax, cfg.n};
  OminusResult res = is_inf(cfg.trunc)
                         ? ominus(phi.fn, phi1.fn, spec)
                         : ominus_truncated(phi.fn, phi1.fn, cfg.trunc, spec);
  spot_check(res, phi.fn, phi1.fn, cfg.trunc, cfg.tol);

  std::string out;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "ominus";
    doc["phi"] = phi.text;
    doc["phi1"] = phi1.text;
    doc["truncation"] = json_num(cfg.trunc);
    doc["domain_convention"] = convention_name(res.domain_convention);
    doc["rows"] = rows_json(res);
    out = doc.dump(2);
    out += '\n';
  } else if (cfg.format == "csv") {
    emit_rows_csv(out, res);
  } else {
    out += "# ominus phi=" + phi.text + " phi1=" + phi1.text +
           " trunc=" + fmt_num(cfg.trunc) +
           " convention=" + convention_name(res.domain_convention) + "\n";
    emit_rows_table(out, res);
  }
  return out;
}

struct ResolveCfg {
  std::string phi1, phi;
  double umin = 1e-6, umax = 1e6;
  int n = 4097;
  double tol = 1e-6;
  std::string format = "table";
};

std::string cmd_resolve(const ResolveCfg& cfg) {
  ParsedPhi phi1 = parse_phi(cfg.phi1, "--phi1");
  ParsedPhi phi = parse_phi(cfg.phi, "--phi");
  GridSpec spec{cfg.umin, cfg.umax, cfg.n};
  MultiplierSpace ms = resolve(phi1.fn, phi.fn, spec);
  spot_check(ms.generator, phi.fn, phi1.fn, kInf, cfg.tol);

  std::string out;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "resolve";
    doc["phi1"] = phi1.text;
    doc["phi"] = phi.text;
    doc["classification"] = classification_name(ms.classification);
    doc["embed_const"] = json_num(ms.embed_const);
    doc["reverse_const"] = json_num(ms.reverse_const);
    doc["reverse_const_existential"] = ms.reverse_const_existential;
    ordered_json gen;
    gen["provenance"] = ms.generator.function.provenance;
    gen["domain_convention"] =
        convention_name(ms.generator.domain_convention);
    gen["rows"] = rows_json(ms.generator);
    doc["generator"] = std::move(gen);
    out = doc.dump(2);
    out += '\n';
  } else if (cfg.format == "csv") {
    out += "# classification=" +
           std::string(classification_name(ms.classification)) +
           " embed_const=" + fmt_num(ms.embed_const) +
           " reverse_const=" + fmt_num(ms.reverse_const) +
           " existential=" + (ms.reverse_const_existential ? "1" : "0") + "\n";
    emit_rows_csv(out, ms.generator);
  } else {
    out += "# resolve phi1=" + phi1.text + " phi=" + phi.text + "\n";
    out += "classification " +
           std::string(classification_name(ms.classification)) + "\n";
    out += "embed_const " + fmt_num(ms.embed_const) + "\n";
    out += "reverse_const " + fmt_num(ms.reverse_const);
    if (ms.reverse_const_existential)
      out += " (times an inclusion constant that exists but is not computed)";
    out += "\n";
    emit_rows_table(out, ms.generator);
  }
  return out;
}

struct FactorizeCfg {
  std::string phi, phi1, phi2;
  std::string mode;  // "", "all", "large"
  std::string space = "finite:64";
  double umin = 1e-3, umax = 1e3;
  int n = 257;
  std::string format = "table";
};

std::string cmd_factorize(const FactorizeCfg& cfg) {
  ParsedPhi phi = parse_phi(cfg.phi, "--phi");
  ParsedPhi phi1 = parse_phi(cfg.phi1, "--phi1");
  MeasureSpace sp = parse_space(cfg.space);
  EquivalenceMode mode;
  if (cfg.mode == "all")
    mode = EquivalenceMode::AllArguments;
  else if (cfg.mode == "large")
    mode = EquivalenceMode::LargeArguments;
  else
    mode = sp.kind == SpaceKind::SigmaFiniteInfinite
               ? EquivalenceMode::AllArguments
               : EquivalenceMode::LargeArguments;
  if (cfg.n < 16) throw InputError("--n: need at least 16 trace points");

  EquivalenceReport rep;
  std::string phi2_text = "computed-generator";
  if (!cfg.phi2.empty()) {
    ParsedPhi phi2 = parse_phi(cfg.phi2, "--phi2");
    phi2_text = phi2.text;
    rep = equivalence_check(phi.fn, phi1.fn, YoungOrSampled{phi2.fn}, mode,
                            cfg.umin, cfg.umax,
                            static_cast<std::size_t>(cfg.n));
  } else if (is_finite(phi.fn.finiteness_bound()) &&
             is_inf(phi1.fn.finiteness_bound())) {
    rep.diagnostic =
        "multiplier generator is infinite for every positive argument; "
        "its inverse vanishes identically";
  } else {
    OminusResult gen = ominus(phi.fn, phi1.fn, GridSpec{});
    if (gen.function.all_infinite_above_zero()) {
      rep.diagnostic =
          "multiplier generator is infinite for every positive argument; "
          "its inverse vanishes identically";
    } else {
      rep = equivalence_check(phi.fn, phi1.fn,
                              YoungOrSampled{std::move(gen.function)}, mode,
                              cfg.umin, cfg.umax,
                              static_cast<std::size_t>(cfg.n));
    }
  }
  const char* mode_name =
      mode == EquivalenceMode::AllArguments ? "all" : "large";

  std::string out;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "factorize";
    doc["phi"] = phi.text;
    doc["phi1"] = phi1.text;
    doc["phi2"] = phi2_text;
    doc["mode"] = mode_name;
    doc["verdict"] = rep.verdict;
    doc["c"] = json_num(rep.c);
    doc["C"] = json_num(rep.C);
    doc["u0"] = json_num(rep.u0);
    ordered_json excl = ordered_json::array();
    for (double u : rep.excluded) excl.push_back(json_num(u));
    doc["excluded"] = std::move(excl);
    doc["diagnostic"] = rep.diagnostic;
    ordered_json rows = ordered_json::array();
    for (const auto& pr : rep.ratio_trace) {
      ordered_json row;
      row["u"] = json_num(pr.first);
      row["ratio"] = json_num(pr.second);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    out = doc.dump(2);
    out += '\n';
  } else if (cfg.format == "csv") {
    out += "# verdict=" + std::string(rep.verdict ? "true" : "false") +
           " c=" + fmt_num(rep.c) + " C=" + fmt_num(rep.C) +
           " u0=" + fmt_num(rep.u0) + " mode=" + mode_name + "\n";
    out += "u,ratio\n";
    for (const auto& pr : rep.ratio_trace)
      out += fmt_num(pr.first) + "," + fmt_num(pr.second) + "\n";
  } else {
    out += "# factorize phi=" + phi.text + " phi1=" + phi1.text +
           " phi2=" + phi2_text + " mode=" + mode_name + "\n";
    out += "verdict ";
    out += rep.verdict ? "true" : "false";
    out += "\n";
    out += "c " + fmt_num(rep.c) + "\n";
    out += "C " + fmt_num(rep.C) + "\n";
    out += "u0 " + fmt_num(rep.u0) + "\n";
    out += "excluded " + std::to_string(rep.excluded.size()) + "\n";
    if (!rep.diagnostic.empty()) out += "diagnostic " + rep.diagnostic + "\n";
    out += "u ratio\n";
    for (const auto& pr : rep.ratio_trace)
      out += fmt_num(pr.first) + " " + fmt_num(pr.second) + "\n";
  }
  return out;
}

struct VerifyCfg {
  std::string suite = "all";
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  bool inject_fault = false;
  std::string format = "table";
};

std::string cmd_verify(const VerifyCfg& cfg, int& code) {
  auto names = verify::suite_names();
  std::vector<std::string> to_run;
  if (cfg.suite == "all") {
    to_run = names;
  } else {
    if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
      throw InputError("--suite: unknown suite '" + cfg.suite + "'");
    to_run.push_back(cfg.suite);
  }
  std::vector<verify::SuiteResult> results;
  for (const auto& n : to_run)
    results.push_back(
        verify::run_suite(n, cfg.seed, cfg.trials, cfg.inject_fault));
  bool all_pass = true;
  for (const auto& r : results) all_pass = all_pass && r.passed();
  code = all_pass ? 0 : 3;

  std::string out;
  if (cfg.format == "json") {
    ordered_json doc;
    doc["command"] = "verify";
    doc["seed"] = cfg.seed;
    doc["trials"] = cfg.trials;
    doc["inject_fault"] = cfg.inject_fault;
    ordered_json suites = ordered_json::array();
    for (const auto& r : results) {
      ordered_json s;
      s["name"] = r.name;
      s["trials"] = r.trials;
      s["failures"] = r.failures;
      s["worst"] = json_num(r.worst);
      s["detail"] = r.detail;
      s["passed"] = r.passed();
      suites.push_back(std::move(s));
    }
    doc["suites"] = std::move(suites);
    doc["passed"] = all_pass;
    out = doc.dump(2);
    out += '\n';
  } else if (cfg.format == "csv") {
    out += "suite,trials,failures,worst\n";
    for (const auto& r : results)
      out += r.name + "," + std::to_string(r.trials) + "," +
             std::to_string(r.failures) + "," + fmt_num(r.worst) + "\n";
  } else {
    for (const auto& r : results) {
      out += r.name + ": " + (r.passed() ? "pass" : "FAIL") + " (" +
             std::to_string(r.trials) + " trials, " +
             std::to_string(r.failures) + " failures, worst " +
             fmt_num(r.worst) + ")";
      if (!r.detail.empty()) out += " " + r.detail;
      out += "\n";
    }
    out += std::string("result ") + (all_pass ? "pass" : "fail") + "\n";
  }
  return out;
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  RunResult res;
  CLI::App app{"Orlicz function space toolkit: generalized conjugation, "
               "pointwise multipliers, factorization"};
  app.name("orlicz");
  app.require_subcommand(1);

  OminusCfg ocfg;
  auto* co = app.add_subcommand(
      "ominus", "Sample the generalized conjugate of phi1 with respect to phi");
  co->add_option("--phi", ocfg.phi, "Young function (funcdsl text or @file)")
      ->required();
  co->add_option("--phi1", ocfg.phi1, "Young function (funcdsl text or @file)")
      ->required();
  co->add_option("--trunc", ocfg.trunc, "cap the inner argument: sup over 0 <= s <= a");
  co->add_option("--umin", ocfg.umin, "grid start (default 1e-6)");
  co->add_option("--umax", ocfg.umax, "grid end (default 1e6)");
  co->add_option("--n", ocfg.n, "grid size (default 4097)");
  co->add_option("--tol", ocfg.tol, "self-check tolerance (default 1e-6)");
  co->add_option("--format", ocfg.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  ResolveCfg rcfg;
  auto* cr = app.add_subcommand(
      "resolve", "Classify the pointwise multiplier space from L^phi1 to L^phi");
  cr->add_option("--phi1", rcfg.phi1, "source Young function")->required();
  cr->add_option("--phi", rcfg.phi, "target Young function")->required();
  cr->add_option("--umin", rcfg.umin, "grid start (default 1e-6)");
  cr->add_option("--umax", rcfg.umax, "grid end (default 1e6)");
  cr->add_option("--n", rcfg.n, "grid size (default 4097)");
  cr->add_option("--tol", rcfg.tol, "self-check tolerance (default 1e-6)");
  cr->add_option("--format", rcfg.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  FactorizeCfg fcfg;
  auto* cf = app.add_subcommand(
      "factorize", "Test whether L^phi1 times the multiplier space gives L^phi");
  cf->add_option("--phi", fcfg.phi, "target Young function")->required();
  cf->add_option("--phi1", fcfg.phi1, "factor Young function")->required();
  cf->add_option("--phi2", fcfg.phi2,
                 "explicit second factor (default: computed generator)");
  cf->add_option("--mode", fcfg.mode, "all|large (default from --space kind)")
      ->check(CLI::IsMember({"all", "large"}));
  cf->add_option("--space", fcfg.space,
                 "finite:N | infinite:N | @file (default finite:64)");
  cf->add_option("--umin", fcfg.umin, "trace start (default 1e-3)");
  cf->add_option("--umax", fcfg.umax, "trace end (default 1e3)");
  cf->add_option("--n", fcfg.n, "trace points (default 257)");
  cf->add_option("--format", fcfg.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  VerifyCfg vcfg;
  auto* cv = app.add_subcommand("verify", "Run the numerical property suites");
  cv->add_option("--suite", vcfg.suite,
                 "suite name or 'all' (young-inequality, dilation, "
                 "truncation, holder, drill, norm-modular)");
  cv->add_option("--trials", vcfg.trials, "trial count (0 = suite default)");
  cv->add_option("--seed", vcfg.seed, "random seed (default 0)");
  cv->add_flag("--inject-fault", vcfg.inject_fault,
               "break the checked property on purpose (harness self-test)");
  cv->add_option("--format", vcfg.format, "table|csv|json")
      ->check(CLI::IsMember({"table", "csv", "json"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    std::ostringstream help;
    app.exit(e, help, help);
    res.out = help.str();
    res.code = 0;
    return res;
  } catch (const CLI::ParseError& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.code = 2;
    return res;
  }

  try {
    if (co->parsed()) {
      res.out = cmd_ominus(ocfg);
    } else if (cr->parsed()) {
      res.out = cmd_resolve(rcfg);
    } else if (cf->parsed()) {
      res.out = cmd_factorize(fcfg);
    } else if (cv->parsed()) {
      res.out = cmd_verify(vcfg, res.code);
    }
  } catch (const InputError& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.code = 2;
  } catch (const std::invalid_argument& e) {
    res.err = std::string("error: ") + e.what() + "\n";
    res.code = 2;
  } catch (const ToleranceError& e) {
    res.err = std::string("internal tolerance failure: ") + e.what() + "\n";
    res.code = 3;
  } catch (const std::exception& e) {
    res.err = std::string("internal error: ") + e.what() + "\n";
    res.code = 3;
  }
  return res;
}

}  // namespace orlicz::cli
