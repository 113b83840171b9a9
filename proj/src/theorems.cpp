#include "qlab/theorems.hpp"

#include <algorithm>
#include <mutex>

#include "qlab/constructions.hpp"
#include "qlab/parallel.hpp"
#include "qlab/transforms.hpp"

namespace qlab {

namespace {

std::string kv(const std::string& name, const Rational& v) { return name + "=" + to_string(v); }

Rational value(CheckContext& ctx, const QueryFunction& f, const MeasureSpec& m) {
  return ctx.engine.value(f, m);
}

// R̄_0 is R0; share its memo entry.
Rational rbar(CheckContext& ctx, const QueryFunction& f, const Rational& eps) {
  return value(ctx, f, sgn(eps) == 0 ? measure_R0() : measure_Rbar(eps));
}

Rational rwc(CheckContext& ctx, const QueryFunction& f, const Rational& eps) {
  return value(ctx, f, measure_Rwc(eps));
}

void trim(std::string& s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
}

std::string eps_tag(const Rational& eps) { return "[eps=" + to_string(eps) + "] "; }

CheckOutcome ds_equals_d(CheckContext& ctx, const QueryFunction& f) {
  Rational ds = value(ctx, f, measure_DS());
  Rational d = value(ctx, f, measure_D());
  return {ds == d, kv("DS", ds) + " " + kv("D", d)};
}

CheckOutcome unique_sabotage_equal(CheckContext& ctx, const QueryFunction& f) {
  Rational rs = value(ctx, f, measure_RS());
  Rational rsu = value(ctx, f, measure_RSu());
  return {rs == rsu, kv("RS", rs) + " " + kv("RSu", rsu)};
}

CheckOutcome sabotage_error_sandwich(CheckContext& ctx, const QueryFunction& f) {
  QueryFunction s = sabotage(f).function;
  if (s.domain_size() == 0) return {true, "empty sabotage domain"};
  CheckOutcome out;
  Rational r0 = value(ctx, s, measure_R0());
  for (const auto& eps : ctx.epsilons) {
    Rational rb = rbar(ctx, s, eps);
    bool ok = r0 >= rb && rb >= (1 - 2 * eps) * r0;
    out.pass = out.pass && ok;
    out.detail += eps_tag(eps) + "R0(f_sab)=" + to_string(r0) + " Rbar(f_sab)=" + to_string(rb) + " ";
  }
  return out;
}

CheckOutcome expected_cost_vs_sabotage(CheckContext& ctx, const QueryFunction& f) {
  CheckOutcome out;
  Rational rs = value(ctx, f, measure_RS());
  for (const auto& eps : ctx.epsilons) {
    Rational rb = rbar(ctx, f, eps);
    out.pass = out.pass && rb >= (1 - 2 * eps) * rs;
    out.detail += eps_tag(eps) + kv("Rbar", rb) + " " + kv("RS", rs) + " ";
  }
  return out;
}

CheckOutcome direct_sum_doubles(CheckContext& ctx, const QueryFunction& f) {
  Rational r = value(ctx, f, measure_R0());
  Rational r2 = value(ctx, direct_sum(f, 2), measure_R0());
  return {r2 == 2 * r, kv("R0", r) + " " + kv("R0(sum2)", r2)};
}

CheckOutcome product_distribution_hard(CheckContext& ctx, const QueryFunction& f) {
  auto game = ctx.engine.game(f, 0);
  QueryFunction f2 = direct_sum(f, 2);
  InputDistribution mu2 = InputDistribution::product(game->hard_distribution, game->hard_distribution);
  if (mu2.size() != f2.domain_size()) throw std::logic_error("product distribution size mismatch");
  BestResponse br = best_response(f2, mu2.weights(), forbid_errors(f2.domain_size()));
  return {br.objective == 2 * game->value,
          kv("R0", game->value) + " best_response(mu x mu)=" + to_string(br.objective)};
}

CheckOutcome rs_vs_rc(CheckContext& ctx, const QueryFunction& f) {
  Rational rs = value(ctx, f, measure_RS());
  Rational rc = value(ctx, f, measure_RC());
  return {4 * rs >= rc, kv("RS", rs) + " " + kv("RC", rc)};
}

CheckOutcome measure_chain(CheckContext& ctx, const QueryFunction& f) {
  Rational bs = value(ctx, f, measure_bs());
  Rational rc = value(ctx, f, measure_RC());
  Rational c = value(ctx, f, measure_C());
  Rational r0 = value(ctx, f, measure_R0());
  Rational d = value(ctx, f, measure_D());
  return {bs <= rc && rc <= c && c <= r0 && r0 <= d,
          kv("bs", bs) + " " + kv("RC", rc) + " " + kv("C", c) + " " + kv("R0", r0) + " " + kv("D", d)};
}

CheckOutcome audit_game(const GameSolution& g, const std::string& what) {
  bool ok = g.duality_verified && g.primal_value == g.dual_value && g.value == g.primal_value;
  return {ok, what + ": primal=" + to_string(g.primal_value) + " dual=" + to_string(g.dual_value) + " "};
}

CheckOutcome yao_duality(CheckContext& ctx, const QueryFunction& f) {
  CheckOutcome out = audit_game(*ctx.engine.game(f, 0), "R0");
  QueryFunction s = sabotage(f).function;
  if (s.domain_size() > 0) {
    CheckOutcome sab = audit_game(*ctx.engine.game(s, 0), "RS");
    out.pass = out.pass && sab.pass;
    out.detail += sab.detail;
  }
  return out;
}

CheckOutcome truncation_consistency(CheckContext& ctx, const QueryFunction& f) {
  if (ctx.epsilons.size() != 2) throw PreconditionError("L2.3 takes two values: eps and delta");
  const Rational& eps = ctx.epsilons[0];
  const Rational& delta = ctx.epsilons[1];
  Rational worst = rwc(ctx, f, eps + delta);
  Rational expected = rbar(ctx, f, eps);
  Rational factor = truncation_factor(eps, delta);
  return {worst <= factor * expected,
          kv("Rwc", worst) + " " + kv("Rbar", expected) + " " + kv("factor", factor)};
}

CheckOutcome expected_to_worstcase(CheckContext& ctx, const QueryFunction& f) {
  CheckOutcome out;
  for (const auto& eps : ctx.epsilons) {
    if (eps != Rational(1, 3)) throw PreconditionError("L2.4 has an exact factor only at eps = 1/3");
    Rational worst = rwc(ctx, f, eps);
    Rational expected = rbar(ctx, f, eps);
    Rational factor(static_cast<long>(expected_to_worstcase_factor(eps)));
    out.pass = out.pass && worst <= factor * expected;
    out.detail += eps_tag(eps) + kv("Rwc", worst) + " " + kv("Rbar", expected) + " ";
  }
  return out;
}

CheckOutcome monotone_in_error(CheckContext& ctx, const QueryFunction& f) {
  std::vector<Rational> eps = ctx.epsilons;
  std::sort(eps.begin(), eps.end());
  CheckOutcome out;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    Rational rb = rbar(ctx, f, eps[i]);
    Rational rw = rwc(ctx, f, eps[i]);
    out.detail += eps_tag(eps[i]) + kv("Rbar", rb) + " " + kv("Rwc", rw) + " ";
    if (i == 0) continue;
    if (rbar(ctx, f, eps[i - 1]) < rb || rwc(ctx, f, eps[i - 1]) < rw) out.pass = false;
  }
  return out;
}

CheckOutcome composition_lower(CheckContext& ctx, const QueryFunction& f, const QueryFunction& g) {
  Rational rf = value(ctx, f, measure_RS());
  Rational rg = value(ctx, g, measure_RS());
  Rational rfg = value(ctx, compose(f, g), measure_RS());
  return {rf * rg <= rfg, kv("RS(f)", rf) + " " + kv("RS(g)", rg) + " " + kv("RS(fog)", rfg)};
}

CheckOutcome composition_upper(CheckContext& ctx, const QueryFunction& f, const QueryFunction& g) {
  Rational rf = value(ctx, f, measure_RS());
  Rational r0g = value(ctx, g, measure_R0());
  Rational rfg = value(ctx, compose(f, g), measure_RS());
  return {rfg <= rf * r0g, kv("RS(fog)", rfg) + " " + kv("RS(f)", rf) + " " + kv("R0(g)", r0g)};
}

CheckOutcome composition_error(CheckContext& ctx, const QueryFunction& f, const QueryFunction& g) {
  CheckOutcome out;
  QueryFunction fg = compose(f, g);
  Rational rsg = value(ctx, g, measure_RS());
  for (const auto& eps : ctx.epsilons) {
    Rational rfg = rbar(ctx, fg, eps);
    Rational rf = rbar(ctx, f, eps);
    out.pass = out.pass && rfg >= rf * rsg;
    out.detail += eps_tag(eps) + kv("Rbar(fog)", rfg) + " " + kv("Rbar(f)", rf) + " " + kv("RS(g)", rsg) + " ";
  }
  return out;
}

std::vector<TheoremCheck> build_registry() {
  using R = Rational;
  std::vector<TheoremCheck> r;
  auto single = [&](std::string id, std::string statement, std::vector<Rational> eps, auto fn) {
    TheoremCheck c{std::move(id), std::move(statement), false, std::move(eps), fn, nullptr};
    r.push_back(std::move(c));
  };
  auto pair = [&](std::string id, std::string statement, std::vector<Rational> eps, auto fn) {
    TheoremCheck c{std::move(id), std::move(statement), true, std::move(eps), nullptr, fn};
    r.push_back(std::move(c));
  };
  single("T8.1", "DS(f) = D(f)", {}, ds_equals_d);
  single("T3.5", "RSu(f) = RS(f)", {}, unique_sabotage_equal);
  single("T3.2", "R0(f_sab) >= Rbar_eps(f_sab) >= (1-2eps) R0(f_sab)", {R(1, 4)}, sabotage_error_sandwich);
  single("T3.4", "Rbar_eps(f) >= (1-2eps) RS(f)", {R(0)}, expected_cost_vs_sabotage);
  single("T4.2", "R0(f^2) = 2 R0(f) for the 2-fold direct sum", {}, direct_sum_doubles);
  single("T4.2-PROD", "best response to mu x mu costs 2 R0(f), mu the hard distribution", {},
         product_distribution_hard);
  single("T7.2", "RS(f) >= RC(f)/4", {}, rs_vs_rc);
  single("CHAIN", "bs(f) <= RC(f) <= C(f) <= R0(f) <= D(f)", {}, measure_chain);
  single("YAO-DUAL", "game solutions for R0(f) and RS(f) have equal primal and dual values", {},
         yao_duality);
  single("L2.3", "Rwc_{eps+delta}(f) <= (1-2eps)/(2delta) Rbar_eps(f), values eps,delta", {R(0), R(1, 3)},
         truncation_consistency);
  single("L2.4", "Rwc_{1/3}(f) <= 10 Rbar_{1/3}(f)", {R(1, 3)}, expected_to_worstcase);
  single("MONO", "Rbar_eps(f) and Rwc_eps(f) are nonincreasing in eps", {R(0), R(1, 4), R(1, 3)},
         monotone_in_error);
  pair("T4.4", "RS(f) RS(g) <= RS(f o g)", {}, composition_lower);
  pair("T4.6", "RS(f o g) <= RS(f) R0(g)", {}, composition_upper);
  pair("T4.5", "Rbar_eps(f o g) >= Rbar_eps(f) RS(g)", {R(0), R(1, 4)}, composition_error);
  return r;
}

}  // namespace

const std::vector<TheoremCheck>& theorem_registry() {
  static const std::vector<TheoremCheck> registry = build_registry();
  return registry;
}

const TheoremCheck& find_theorem(std::string_view id) {
  for (const auto& c : theorem_registry()) {
    if (c.id == id) return c;
  }
  throw ParseError("unknown theorem id '" + std::string(id) + "'");
}

TheoremVerdict run_check(const TheoremCheck& check, const Family& family, MeasureEngine& engine,
                         int jobs, std::optional<std::vector<Rational>> epsilons) {
  if (check.on_pairs != family.is_pairs()) {
    throw PreconditionError(check.id + (check.on_pairs ? " needs a compose-pairs family"
                                                        : " needs a family of single functions"));
  }
  std::vector<Rational> eps = epsilons ? *epsilons : check.default_epsilons;
  std::vector<std::optional<CheckFailure>> failures(family.size());
  parallel_for(family.size(), jobs, [&](std::size_t i) {
    CheckContext ctx{engine, eps};
    if (check.on_pairs) {
      auto [f, g] = family.pair(i);
      CheckOutcome o = check.pair(ctx, f, g);
      trim(o.detail);
      if (!o.pass) failures[i] = CheckFailure{canonical_encoding(f) + " o " + canonical_encoding(g), o.detail};
    } else {
      QueryFunction f = family.function(i);
      CheckOutcome o = check.single(ctx, f);
      trim(o.detail);
      if (!o.pass) failures[i] = CheckFailure{canonical_encoding(f), o.detail};
    }
  });
  TheoremVerdict v;
  v.id = check.id;
  v.checked = family.size();
  for (auto& f : failures) {
    if (f) v.failures.push_back(std::move(*f));
  }
  v.passed = v.checked - v.failures.size();
  return v;
}

}  // namespace qlab
