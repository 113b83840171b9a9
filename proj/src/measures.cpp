#include "qlab/measures.hpp"

#include <algorithm>
#include <functional>

#include "qlab/cache.hpp"
#include "qlab/constructions.hpp"
#include "qlab/det_engine.hpp"

namespace qlab {

namespace {

using json = nlohmann::ordered_json;
using GameHook = std::function<void(const GameSolution&)>;

struct KindName {
  MeasureKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {MeasureKind::D, "D"},       {MeasureKind::DS, "DS"},     {MeasureKind::C, "C"},
    {MeasureKind::bs, "bs"},     {MeasureKind::RC, "RC"},     {MeasureKind::R0, "R0"},
    {MeasureKind::RS, "RS"},     {MeasureKind::RSu, "RSu"},   {MeasureKind::Rbar, "Rbar"},
    {MeasureKind::Rwc, "Rwc"},
};

const char* kind_name(MeasureKind k) {
  for (const auto& kn : kKindNames) {
    if (kn.kind == k) return kn.name;
  }
  return "?";
}

void check_arity(const QueryFunction& f, const MeasureSpec& m, const Limits& limits) {
  if (f.arity() > limits.max_arity) {
    throw LimitExceeded(m.name() + ": arity " + std::to_string(f.arity()) + " exceeds the limit of " +
                        std::to_string(limits.max_arity));
  }
}

void check_domain(const QueryFunction& g, const MeasureSpec& m, const Limits& limits) {
  if (g.domain_size() > limits.max_game_domain) {
    throw LimitExceeded(m.name() + ": game domain of " + std::to_string(g.domain_size()) +
                        " inputs exceeds the limit of " + std::to_string(limits.max_game_domain));
  }
}

std::size_t argmax(const std::vector<int>& v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

json mixture_json(const std::vector<DecisionTree>& trees, const std::vector<Rational>& weights) {
  json out = json::array();
  for (std::size_t k = 0; k < trees.size(); ++k) {
    out.push_back({{"weight", to_fraction_string(weights[k])}, {"tree", trees[k].to_string()}});
  }
  return out;
}

json game_json(const QueryFunction& g, const GameSolution& s) {
  json dist = json::object();
  for (std::size_t i = 0; i < g.domain_size(); ++i) {
    const Rational& w = s.hard_distribution[i];
    if (sgn(w) != 0) dist[word_to_string(g.input(i))] = to_fraction_string(w);
  }
  return {{"hard_distribution", dist},
          {"mixture", mixture_json(s.trees, s.mixture)},
          {"max_error", to_fraction_string(s.max_error)},
          {"iterations", s.log.size()}};
}

MeasureResult game_measure(const QueryFunction& g, const Rational& eps, const MeasureSpec& m,
                           const Limits& limits, const GameHook& hook) {
  if (g.domain_size() == 0) return {Rational(0), json{{"empty_domain", true}}};
  check_domain(g, m, limits);
  GameSolution s = solve_expected_game(g, eps);
  if (hook) hook(s);
  return {s.value, game_json(g, s)};
}

MeasureResult compute(const QueryFunction& f, const MeasureSpec& m, const Limits& limits,
                      const GameHook& hook) {
  switch (m.kind) {
    case MeasureKind::D: {
      check_arity(f, m, limits);
      DetResult r = det_complexity(f);
      return {Rational(r.value), json{{"tree", r.tree.to_string()}}};
    }
    case MeasureKind::DS: {
      check_arity(f, m, limits);
      SabotagedFunction sab = sabotage(f);
      if (sab.function.domain_size() == 0) return {Rational(0), json{{"empty_domain", true}}};
      DetResult r = det_complexity(sab.function);
      return {Rational(r.value), json{{"tree", r.tree.to_string()}}};
    }
    case MeasureKind::C: {
      check_arity(f, m, limits);
      PerInputMeasure c = certificate_complexity(f);
      return {Rational(c.value), json{{"input", word_to_string(f.input(argmax(c.per_input)))}}};
    }
    case MeasureKind::bs: {
      check_arity(f, m, limits);
      PerInputMeasure b = block_sensitivity(f);
      return {Rational(b.value), json{{"input", word_to_string(f.input(argmax(b.per_input)))}}};
    }
    case MeasureKind::RC: {
      check_arity(f, m, limits);
      FractionalResult r = fractional_block_sensitivity(f);
      json blocks = json::array();
      for (std::size_t k = 0; k < r.weights.size(); ++k) {
        if (sgn(r.weights[k]) == 0) continue;
        json positions = json::array();
        Block b = r.blocks.blocks[k];
        for (int p = 0; p < f.arity(); ++p) {
          if ((b >> p) & 1U) positions.push_back(p + 1);
        }
        blocks.push_back({{"positions", positions}, {"weight", to_fraction_string(r.weights[k])}});
      }
      return {r.value, json{{"input", word_to_string(f.input(r.argmax))}, {"blocks", blocks}}};
    }
    case MeasureKind::R0:
      return game_measure(f, 0, m, limits, hook);
    case MeasureKind::Rbar:
      return game_measure(f, m.epsilon, m, limits, hook);
    case MeasureKind::RS:
      return game_measure(sabotage(f).function, 0, m, limits, hook);
    case MeasureKind::RSu:
      return game_measure(unique_sabotage(f).function, 0, m, limits, hook);
    case MeasureKind::Rwc: {
      check_domain(f, m, limits);
      WorstCaseResult r = solve_worstcase_depth(f, m.epsilon);
      return {Rational(r.depth), json{{"depth", r.depth},
                                      {"mixture", mixture_json(r.trees, r.mixture)},
                                      {"max_error", to_fraction_string(r.max_error)}}};
    }
  }
  throw std::logic_error("unknown measure kind");
}

}  // namespace

std::string MeasureSpec::name() const {
  std::string n = kind_name(kind);
  if (uses_epsilon()) n += "(" + to_string(epsilon) + ")";
  return n;
}

MeasureSpec parse_measure(std::string_view text, const Rational& default_epsilon) {
  std::string_view head = text;
  std::optional<Rational> eps;
  if (auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') throw ParseError("malformed measure '" + std::string(text) + "'");
    head = text.substr(0, open);
    eps = parse_rational(text.substr(open + 1, text.size() - open - 2));
  }
  for (const auto& kn : kKindNames) {
    if (head != kn.name) continue;
    MeasureSpec m{kn.kind, 0};
    if (m.uses_epsilon()) {
      m.epsilon = eps ? *eps : default_epsilon;
      if (sgn(m.epsilon) < 0 || m.epsilon >= Rational(1, 2)) {
        throw ParseError("epsilon for " + std::string(head) + " must lie in [0, 1/2)");
      }
    } else if (eps) {
      throw ParseError("measure " + std::string(head) + " takes no epsilon");
    }
    return m;
  }
  throw ParseError("unknown measure '" + std::string(text) + "'");
}

std::vector<MeasureSpec> parse_measure_list(std::string_view text, const Rational& default_epsilon) {
  std::vector<MeasureSpec> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = text.substr(start, comma - start);
    if (item.empty()) throw ParseError("empty entry in measure list");
    out.push_back(parse_measure(item, default_epsilon));
    start = comma + 1;
  }
  return out;
}

MeasureResult compute_measure(const QueryFunction& f, const MeasureSpec& m, const Limits& limits) {
  return compute(f, m, limits, nullptr);
}

MeasureEngine::MeasureEngine(Limits limits, std::shared_ptr<ResultCache> cache,
                             bool keep_certificates)
    : limits_(limits), cache_(std::move(cache)), keep_certificates_(keep_certificates) {}

MeasureResult MeasureEngine::measure(const QueryFunction& f, const MeasureSpec& m) {
  const std::string encoding = canonical_encoding(f);
  const std::string key = encoding + "|" + m.name();
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  std::optional<MeasureResult> r;
  if (cache_) r = cache_->load(encoding, m);
  if (!r) {
    if (m.kind == MeasureKind::RS || m.kind == MeasureKind::RSu) {
      // f and its negation share one sabotage problem; route through R0 of
      // that problem so the memo serves both.
      QueryFunction g = (m.kind == MeasureKind::RS ? sabotage(f) : unique_sabotage(f)).function;
      if (g.domain_size() == 0) {
        r = MeasureResult{Rational(0), nlohmann::ordered_json{{"empty_domain", true}}};
      } else {
        check_domain(g, m, limits_);
        r = measure(g, measure_R0());
      }
    } else {
      r = compute(f, m, limits_, [this](const GameSolution& g) { record_game(g); });
    }
    // A memo hit on a value-only engine has no certificate to store.
    if (cache_ && !r->certificate.is_null()) cache_->store(encoding, m, *r);
  }
  // Without certificates kept, every result is value-only, so the output does
  // not depend on which of f and its negation reached the shared memo first.
  if (!keep_certificates_) r->certificate = nullptr;
  std::lock_guard lock(mutex_);
  memo_.emplace(key, *r);
  return std::move(*r);
}

std::shared_ptr<const GameSolution> MeasureEngine::game(const QueryFunction& f, const Rational& epsilon) {
  const std::string key = canonical_encoding(f) + "|" + to_string(epsilon);
  {
    std::lock_guard lock(mutex_);
    if (auto it = games_.find(key); it != games_.end()) return it->second;
  }
  check_domain(f, measure_Rbar(epsilon), limits_);
  auto g = std::make_shared<const GameSolution>(solve_expected_game(f, epsilon));
  record_game(*g);
  std::lock_guard lock(mutex_);
  return games_.emplace(key, std::move(g)).first->second;
}

void MeasureEngine::record_game(const GameSolution& g) {
  ++solves_;
  if (g.duality_verified && g.primal_value == g.dual_value) ++verified_;
}

AuditCounts MeasureEngine::audit() const { return {solves_.load(), verified_.load()}; }

}  // namespace qlab
