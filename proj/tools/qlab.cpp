// Command-line front end: measure, verify, scan, construct, bounds.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qlab/cache.hpp"
#include "qlab/constructions.hpp"
#include "qlab/family.hpp"
#include "qlab/measures.hpp"
#include "qlab/parallel.hpp"
#include "qlab/report.hpp"
#include "qlab/theorems.hpp"
#include "qlab/transforms.hpp"

namespace {

using namespace qlab;
using json = nlohmann::ordered_json;

enum ExitCode { kOk = 0, kCheckFailed = 1, kBadInput = 2, kLimit = 3, kUnwritable = 4, kInternal = 5 };

struct Unwritable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  std::string eps;
  int jobs = 1;
  std::string cache_dir;
  int limit_arity = 4;
  std::size_t limit_domain = 1024;
  bool seedless = false;  // accepted for scripts; nothing here is random
};

void add_common(CLI::App* cmd, Common& c, const std::vector<std::string>& formats) {
  cmd->add_option("--format", c.format, "Output format")->check(CLI::IsMember(formats));
  cmd->add_option("--jobs", c.jobs, "Worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--cache-dir", c.cache_dir, "Result cache directory (default: $QLAB_CACHE_DIR)");
  cmd->add_option("--limit-arity", c.limit_arity, "Largest arity for enumeration and D/C/bs/RC");
  cmd->add_option("--limit-domain", c.limit_domain, "Largest domain a game may run on");
  cmd->add_flag("--seedless", c.seedless, "No-op: every engine is deterministic");
}

Limits limits_of(const Common& c) {
  Limits l;
  if (c.limit_arity != l.max_arity) {
    std::cerr << "warning: arity limit changed to " << c.limit_arity << "\n";
    l.max_arity = c.limit_arity;
  }
  if (c.limit_domain != l.max_game_domain) {
    std::cerr << "warning: game domain limit changed to " << c.limit_domain << "\n";
    l.max_game_domain = c.limit_domain;
  }
  return l;
}

std::shared_ptr<ResultCache> cache_of(const Common& c) {
  std::string dir = c.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("QLAB_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return nullptr;
  try {
    return std::make_shared<ResultCache>(dir);
  } catch (const std::filesystem::filesystem_error& e) {
    throw Unwritable(std::string("cache directory: ") + e.what());
  }
}

Rational default_eps(const Common& c) { return c.eps.empty() ? Rational(1, 3) : parse_rational(c.eps); }

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  if (out.empty()) throw ParseError("empty value list");
  return out;
}

void print_report(const MeasureReport& r, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << report_json(r).dump() << "\n";
  } else if (format == "csv") {
    out << csv_row(r) << "\n";
  } else {
    out << report_text(r);
  }
}

int cmd_measure(const std::string& literal, const std::string& measures, const Common& c) {
  QueryFunction f = parse_function(literal);
  auto specs = parse_measure_list(measures, default_eps(c));
  MeasureEngine engine(limits_of(c), cache_of(c));
  MeasureReport r = make_report(engine, f, specs);
  if (c.format == "csv") std::cout << csv_header(specs) << "\n";
  print_report(r, c.format, std::cout);
  return kOk;
}

int cmd_verify(const std::string& theorems, const std::string& family_text, const Common& c) {
  std::vector<const TheoremCheck*> checks;
  std::stringstream ss(theorems);
  std::string id;
  while (std::getline(ss, id, ',')) checks.push_back(&find_theorem(id));
  if (checks.empty()) throw ParseError("no theorem ids given");
  Family family = Family::parse(family_text, c.limit_arity);
  std::optional<std::vector<Rational>> eps;
  if (!c.eps.empty()) eps = parse_rational_list(c.eps);
  MeasureEngine engine(limits_of(c), cache_of(c), false);

  bool all = true;
  json results = json::array();
  for (const TheoremCheck* check : checks) {
    TheoremVerdict v = run_check(*check, family, engine, c.jobs, eps);
    all = all && v.pass();
    if (c.format == "json") {
      json fails = json::array();
      for (const auto& f : v.failures) fails.push_back({{"function", f.function}, {"detail", f.detail}});
      results.push_back({{"id", v.id},
                         {"statement", check->statement},
                         {"checked", v.checked},
                         {"passed", v.passed},
                         {"failures", fails}});
    } else {
      std::cout << v.id << ": " << v.passed << "/" << v.checked << " " << (v.pass() ? "pass" : "FAIL")
                << "  [" << check->statement << "]\n";
      for (const auto& f : v.failures) std::cout << "  counterexample " << f.function << "  " << f.detail << "\n";
    }
  }
  if (c.format == "json") {
    std::cout << json{{"family", family.descriptor()}, {"results", results}, {"all_pass", all}}.dump()
              << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int cmd_scan(const std::string& family_text, const std::string& measures, const std::string& output,
             const Common& c) {
  Family family = Family::parse(family_text, c.limit_arity);
  if (family.is_pairs()) throw ParseError("scan takes a family of single functions");
  auto specs = parse_measure_list(measures, default_eps(c));
  auto cache = cache_of(c);

  std::ofstream file;
  if (!output.empty()) {
    file.open(output);
    if (!file) throw Unwritable("cannot write " + output);
  }
  std::ostream& out = output.empty() ? std::cout : file;
  if (c.format == "csv") out << csv_header(specs) << "\n";
  // Rows are computed in blocks and written in family order.
  constexpr std::size_t kBlock = 256;
  for (std::size_t start = 0; start < family.size(); start += kBlock) {
    std::size_t n = std::min(kBlock, family.size() - start);
    // A fresh engine per block bounds the memo while keeping certificates.
    MeasureEngine engine(limits_of(c), cache);
    std::vector<MeasureReport> rows(n);
    parallel_for(n, c.jobs, [&](std::size_t i) { rows[i] = make_report(engine, family.function(start + i), specs); });
    for (const auto& r : rows) print_report(r, c.format, out);
  }
  out.flush();
  if (!out) throw Unwritable("write failed for " + (output.empty() ? std::string("stdout") : output));
  return kOk;
}

int cmd_construct(const std::string& kind, const std::vector<std::string>& args, const Common& c) {
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw ParseError("construct " + kind + " takes " + std::to_string(n) + " argument(s)");
    }
  };
  auto integer = [](const std::string& s) {
    try {
      std::size_t used = 0;
      int v = std::stoi(s, &used);
      if (used != s.size()) throw ParseError("bad integer '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + s + "'");
    }
  };
  std::optional<QueryFunction> result;
  if (kind == "sab") {
    need(1);
    result = sabotage(parse_function(args[0])).function;
  } else if (kind == "usab") {
    need(1);
    result = unique_sabotage(parse_function(args[0])).function;
  } else if (kind == "compose") {
    need(2);
    result = compose(parse_function(args[0]), parse_function(args[1]));
  } else if (kind == "sum") {
    need(2);
    result = direct_sum(parse_function(args[0]), integer(args[1]));
  } else if (kind == "index") {
    need(1);
    result = index_function(integer(args[0]));
  } else if (kind == "index-sum") {
    need(2);
    result = indexed_direct_sum(parse_function(args[0]), integer(args[1]));
  } else {
    throw ParseError("unknown construction '" + kind + "'");
  }
  if (result->domain_size() == 0) {
    // An empty domain has no literal; report it explicitly.
    if (c.format == "json") std::cout << json{{"function", nullptr}, {"domain_size", 0}}.dump() << "\n";
    else std::cout << "(empty domain)\n";
    return kOk;
  }
  std::string lit = canonical_encoding(*result);
  if (c.format == "json") {
    std::cout << json{{"function", lit}, {"domain_size", result->domain_size()}}.dump() << "\n";
  } else {
    std::cout << lit << "\n";
  }
  return kOk;
}

struct BoundsArgs {
  std::string kind;
  std::string eps;
  std::string target;
  std::string delta;
  std::string expected;
  int k = 1;
};

int cmd_bounds(const BoundsArgs& a, const Common& c) {
  auto req = [](const std::string& v, const char* flag) {
    if (v.empty()) throw ParseError(std::string("missing ") + flag);
    return parse_rational(v);
  };
  json out = json::object();
  if (a.kind == "majority") {
    Rational eps = req(a.eps, "--eps");
    out["majority_error"] = to_fraction_string(majority_error(eps, a.k));
    out["closed_form_bound"] = to_fraction_string(majority_error_bound(eps, a.k));
  } else if (a.kind == "amplify") {
    Amplification amp = amplification_repetitions(req(a.eps, "--eps"), req(a.target, "--target"));
    out["exact_count"] = amp.exact_count;
    out["bound_count"] = amp.bound_count;
    out["bound_count_advisory"] = true;
  } else if (a.kind == "truncate") {
    Truncation t = markov_truncation(req(a.expected, "--expected"), req(a.delta, "--delta"));
    out["query_cap"] = t.query_cap;
    out["success_lower_bound"] = to_fraction_string(t.success_lower_bound);
  } else if (a.kind == "repeat") {
    out["expected_cost"] = to_fraction_string(repeat_cost(req(a.expected, "--expected"), req(a.eps, "--eps")));
  } else if (a.kind == "worstcase") {
    out["factor"] = expected_to_worstcase_factor(req(a.eps, "--eps"));
    out["factor_advisory"] = true;
  } else if (a.kind == "truncation-factor") {
    out["factor"] = to_fraction_string(truncation_factor(req(a.eps, "--eps"), req(a.delta, "--delta")));
  } else {
    throw ParseError("unknown bound '" + a.kind + "'");
  }
  if (c.format == "json") {
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& [key, value] : out.items()) {
      std::cout << key << " = " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact query-complexity measures and small-case theorem checks"};
  app.require_subcommand(1);

  Common c;
  std::string literal, measures = "D", theorems, family, output, kind;
  std::vector<std::string> construct_args;
  BoundsArgs bounds;

  auto* measure = app.add_subcommand("measure", "Compute measures of one function");
  measure->add_option("function", literal, "Function literal (tt:... or ext:...)")->required();
  measure->add_option("--measures", measures, "Comma-separated measure ids");
  measure->add_option("--eps", c.eps, "Default error for Rbar/Rwc (default 1/3)");
  add_common(measure, c, {"json", "csv", "text"});

  auto* verify = app.add_subcommand("verify", "Check theorems over a family");
  verify->add_option("--theorems", theorems, "Comma-separated theorem ids")->required();
  verify->add_option("--family", family, "Family descriptor")->required();
  verify->add_option("--eps", c.eps, "Comma-separated error levels overriding each check's own");
  add_common(verify, c, {"json", "text"});
  std::string checks = "\nChecks:\n";
  for (const auto& t : theorem_registry()) {
    checks += "  " + t.id + std::string(t.id.size() < 10 ? 10 - t.id.size() : 1, ' ') + t.statement +
              (t.on_pairs ? "  (pair families)" : "") + "\n";
  }
  verify->footer(checks);

  auto* scan = app.add_subcommand("scan", "Tabulate measures over a family");
  scan->add_option("--family", family, "Family descriptor")->required();
  scan->add_option("--measures", measures, "Comma-separated measure ids");
  scan->add_option("--output", output, "Output file (default: stdout)");
  scan->add_option("--eps", c.eps, "Default error for Rbar/Rwc (default 1/3)");
  add_common(scan, c, {"json", "csv", "text"});

  auto* construct = app.add_subcommand("construct", "Emit the literal of a derived function");
  construct->add_option("kind", kind, "sab | usab | compose | sum | index | index-sum")->required();
  construct->add_option("args", construct_args, "Function literals and integers");
  add_common(construct, c, {"json", "text"});

  auto* bnd = app.add_subcommand("bounds", "Randomized-algorithm transformation calculators");
  bnd->add_option("kind", bounds.kind, "majority | amplify | truncate | repeat | worstcase | truncation-factor")
      ->required();
  bnd->add_option("--eps", bounds.eps, "Error level");
  bnd->add_option("--target", bounds.target, "Target error");
  bnd->add_option("--delta", bounds.delta, "Truncation probability");
  bnd->add_option("--expected", bounds.expected, "Expected query count T");
  bnd->add_option("--k", bounds.k, "Number of runs (odd)");
  add_common(bnd, c, {"json", "text"});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*measure) return cmd_measure(literal, measures, c);
    if (*verify) return cmd_verify(theorems, family, c);
    if (*scan) return cmd_scan(family, measures, output, c);
    if (*construct) return cmd_construct(kind, construct_args, c);
    if (*bnd) return cmd_bounds(bounds, c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const UndefinedInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const LimitExceeded& e) {
    std::cerr << "limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const Unwritable& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnwritable;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
