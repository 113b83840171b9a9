// End-to-end acceptance run: one PASS/FAIL line per criterion, exit status 0
// only when every criterion passes.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "oracles.hpp"
#include "qlab/constructions.hpp"
#include "qlab/enumerate.hpp"
#include "qlab/family.hpp"
#include "qlab/game_engine.hpp"
#include "qlab/measures.hpp"
#include "qlab/parallel.hpp"
#include "qlab/report.hpp"
#include "qlab/theorems.hpp"
#include "qlab/transforms.hpp"

using namespace qlab;

namespace {

int jobs() { return static_cast<int>(std::max(1U, std::thread::hardware_concurrency())); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::string note;  // printed but not compared between runs

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += "FAILED " + what + "; ";
    }
  }
};

// Runs registry checks over families and records "id@family passed/checked".
void verify(Outcome& out, MeasureEngine& engine, const std::string& id, const std::string& family,
            std::optional<std::vector<Rational>> eps = std::nullopt) {
  TheoremVerdict v = run_check(find_theorem(id), Family::parse(family), engine, jobs(), eps);
  out.detail += id + "@" + family + " " + std::to_string(v.passed) + "/" + std::to_string(v.checked) + "; ";
  if (!v.pass()) {
    out.pass = false;
    for (std::size_t k = 0; k < v.failures.size() && k < 3; ++k) {
      out.detail += "counterexample " + v.failures[k].function + " (" + v.failures[k].detail + "); ";
    }
  }
}

Outcome thm_ds_equals_d(MeasureEngine& e) {
  Outcome o;
  verify(o, e, "T8.1", "all-total:2");
  verify(o, e, "T8.1", "all-total:3");
  return o;
}

Outcome thm_unique_sabotage(MeasureEngine& e) {
  Outcome o;
  for (int n = 1; n <= 3; ++n) verify(o, e, "T3.5", "all-total:" + std::to_string(n));
  return o;
}

Outcome landmarks(MeasureEngine& e) {
  Outcome o;
  QueryFunction orf = or_function(2);
  QueryFunction sab = sabotage(orf).function;
  const Rational third(1, 3);
  // Oracle first: exhaustive trees at n = 2 must reproduce the stated values.
  Rational rs_oracle = oracle::r0(sab);
  Rational r0_oracle = oracle::r0(orf);
  Rational rc_oracle = oracle::fractional_block_sensitivity(orf);
  int rwc_oracle = oracle::rwc(orf, third);
  int ds_oracle = oracle::det(sab);
  o.require(rs_oracle == Rational(3, 2), "oracle RS(OR2) = 3/2");
  o.require(r0_oracle == 2, "oracle R0(OR2) = 2");
  o.require(rc_oracle == 2, "oracle RC(OR2) = 2");
  o.require(rwc_oracle == 1, "oracle R_1/3(OR2) = 1");
  o.require(ds_oracle == 2, "oracle DS(OR2) = 2");
  o.require(e.value(orf, measure_RS()) == rs_oracle, "engine RS(OR2)");
  o.require(e.value(orf, measure_R0()) == r0_oracle, "engine R0(OR2)");
  o.require(e.value(orf, measure_RC()) == rc_oracle, "engine RC(OR2)");
  o.require(e.value(orf, measure_Rwc(third)) == rwc_oracle, "engine R_1/3(OR2)");
  o.require(e.value(orf, measure_DS()) == ds_oracle, "engine DS(OR2)");
  o.detail += "RS=" + to_string(rs_oracle) + " R0=" + to_string(r0_oracle) + " RC=" + to_string(rc_oracle) +
              " R_1/3=" + std::to_string(rwc_oracle) + " DS=" + std::to_string(ds_oracle) +
              " (oracle and engine agree)";
  return o;
}

Outcome thm_direct_sum(MeasureEngine& e) {
  Outcome o;
  verify(o, e, "T4.2", "all-total:2");
  verify(o, e, "T4.2-PROD", "all-total:2");
  return o;
}

Outcome thm_composition_sandwich(MeasureEngine& e) {
  Outcome o;
  QueryFunction orf = or_function(2);
  Rational rs = e.value(compose(orf, orf), measure_RS());
  o.require(Rational(9, 4) <= rs && rs <= 3, "9/4 <= RS(OR2 o OR2) <= 3");
  o.detail += "RS(OR2 o OR2)=" + to_string(rs) + "; ";
  verify(o, e, "T4.4", "compose-pairs:<=4");
  verify(o, e, "T4.6", "compose-pairs:<=4");
  return o;
}

Outcome thm_composition_error(MeasureEngine& e) {
  Outcome o;
  verify(o, e, "T4.5", "compose-pairs:<=4", std::vector<Rational>{0, Rational(1, 4)});
  return o;
}

Outcome thm_chain(MeasureEngine& e) {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    verify(o, e, "T7.2", "all-total:" + std::to_string(n));
    verify(o, e, "CHAIN", "all-total:" + std::to_string(n));
  }
  return o;
}

Outcome thm_sabotage_error(MeasureEngine& e) {
  Outcome o;
  for (int n = 1; n <= 2; ++n) verify(o, e, "T3.2", "all-total:" + std::to_string(n), std::vector<Rational>{Rational(1, 4)});
  for (int n = 1; n <= 3; ++n) verify(o, e, "T3.4", "all-total:" + std::to_string(n), std::vector<Rational>{0});
  return o;
}

Outcome duality_audit(MeasureEngine& e) {
  Outcome o;
  for (int n = 1; n <= 3; ++n) verify(o, e, "YAO-DUAL", "all-total:" + std::to_string(n));
  AuditCounts a = e.audit();
  o.require(a.game_solves > 0 && a.verified == a.game_solves, "every game solve verified");
  o.note = std::to_string(a.verified) + "/" + std::to_string(a.game_solves) +
              " game solves in criteria 1-9 closed with primal = dual";
  return o;
}

Outcome appendix_transforms(MeasureEngine& e) {
  Outcome o;
  o.require(majority_error(Rational(1, 3), 3) == Rational(7, 27), "majority_error(1/3, 3) = 7/27");
  for (Rational target : {Rational(7, 27), Rational(1, 10), Rational(1, 100)}) {
    Amplification a = amplification_repetitions(Rational(1, 3), target);
    o.require(a.exact_count <= a.bound_count, "exact count within bound at " + to_string(target));
    o.detail += "amplify(1/3," + to_string(target) + ")=" + std::to_string(a.exact_count) + "<=" +
                std::to_string(a.bound_count) + "; ";
  }
  verify(o, e, "L2.3", "all-total:2");
  verify(o, e, "L2.4", "all-total:2");
  return o;
}

// Every report field except timing, for a fixed set of functions.
std::string report_bundle(int job_count) {
  MeasureEngine engine;
  std::vector<QueryFunction> fs;
  for (int n = 1; n <= 3; ++n) {
    for (auto& f : collect(FunctionFamily::all_total(n))) fs.push_back(std::move(f));
  }
  Family pairs = Family::parse("compose-pairs:2x2");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [f, g] = pairs.pair(i);
    fs.push_back(compose(f, g));
  }
  auto specs = parse_measure_list("D,DS,C,bs,RC,R0,RS,RSu,Rbar(1/4),Rwc(1/3)", Rational(1, 3));
  std::vector<std::string> lines(fs.size());
  parallel_for(fs.size(), job_count, [&](std::size_t i) {
    auto j = report_json(make_report(engine, fs[i], specs));
    j.erase("elapsed_ms");
    lines[i] = j.dump();
  });
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

Outcome determinism(const std::vector<std::string>& first_verdicts, const std::vector<std::string>& second) {
  Outcome o;
  o.require(first_verdicts == second, "criteria 1-10 verdict lines identical across two runs");
  std::string a = report_bundle(1);
  std::string b = report_bundle(jobs() + 1);
  o.require(a == b, "report bundle identical across runs and thread counts");
  o.detail += "verdict lines for criteria 1-10 identical across two full runs; " +
              std::to_string(std::count(a.begin(), a.end(), '\n')) +
              " reports with certificates byte-identical (1 vs " + std::to_string(jobs() + 1) + " threads)";
  return o;
}

struct Criterion {
  int number;
  std::string name;
  double limit_seconds;  // 0 for none
  std::function<Outcome(MeasureEngine&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  bool quick_repeat = argc > 1 && std::string(argv[1]) == "--single-pass";
  std::vector<Criterion> criteria{
      {1, "DS = D on all total functions, n = 2, 3", 120, thm_ds_equals_d},
      {2, "RSu = RS on all total functions, n <= 3", 600, thm_unique_sabotage},
      {3, "OR2 landmarks against exhaustive trees", 0, landmarks},
      {4, "R0 of the two-fold direct sum doubles; product of hard distributions stays hard", 0, thm_direct_sum},
      {5, "RS(f)RS(g) <= RS(f o g) <= RS(f)R0(g), composed arity <= 4", 900, thm_composition_sandwich},
      {6, "Rbar_eps(f o g) >= Rbar_eps(f)RS(g), eps in {0, 1/4}", 0, thm_composition_error},
      {7, "RS >= RC/4 and bs <= RC <= C <= R0 <= D, n <= 3", 0, thm_chain},
      {8, "R0(f_sab) >= Rbar_1/4(f_sab) >= R0(f_sab)/2 (n <= 2); R0 >= RS (n <= 3)", 0, thm_sabotage_error},
      {9, "every game solve has primal value = dual value", 0, duality_audit},
      {10, "majority error, amplification counts, expected to worst-case conversions", 0, appendix_transforms},
  };

  // Two complete passes with fresh engines; the second feeds criterion 11.
  auto pass = [&](bool print) {
    MeasureEngine engine(Limits{}, nullptr, false);
    std::vector<std::string> verdicts;
    bool all = true;
    for (const auto& c : criteria) {
      auto start = std::chrono::steady_clock::now();
      Outcome o = c.run(engine);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (c.limit_seconds > 0 && secs > c.limit_seconds) {
        o.pass = false;
        o.detail += "over the time limit of " + std::to_string(static_cast<int>(c.limit_seconds)) + " s; ";
      }
      all = all && o.pass;
      verdicts.push_back(std::to_string(c.number) + " " + (o.pass ? "PASS" : "FAIL") + " " + o.detail);
      if (print) {
        char t[32];
        std::snprintf(t, sizeof t, "%.1f s", secs);
        std::cout << "criterion " << c.number << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  ["
                  << t << "]  " << o.detail << o.note << std::endl;
      }
    }
    return std::make_pair(all, verdicts);
  };

  auto [first_ok, first] = pass(true);
  auto start = std::chrono::steady_clock::now();
  std::vector<std::string> second = quick_repeat ? first : pass(false).second;
  Outcome det = determinism(first, second);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  char t[32];
  std::snprintf(t, sizeof t, "%.1f s", secs);
  std::cout << "criterion 11: " << (det.pass ? "PASS" : "FAIL") << "  repeated runs give identical reports  [" << t
            << "]  " << det.detail << std::endl;
  return first_ok && det.pass ? 0 : 1;
}
