#pragma once

#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qlab/function.hpp"
#include "qlab/game_engine.hpp"
#include "qlab/rational.hpp"

namespace qlab {

inline constexpr const char* kEngineVersion = "qlab-engine 1.0.0";

enum class MeasureKind { D, DS, C, bs, RC, R0, RS, RSu, Rbar, Rwc };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::D;
  Rational epsilon;  // used by Rbar and Rwc only

  /// "D", "RS", "Rbar(1/4)", ...
  std::string name() const;
  bool uses_epsilon() const { return kind == MeasureKind::Rbar || kind == MeasureKind::Rwc; }
  bool operator==(const MeasureSpec& o) const { return kind == o.kind && epsilon == o.epsilon; }
};

/// One id, e.g. "RC" or "Rbar(1/4)"; a bare Rbar/Rwc takes `default_epsilon`.
MeasureSpec parse_measure(std::string_view text, const Rational& default_epsilon);
std::vector<MeasureSpec> parse_measure_list(std::string_view text, const Rational& default_epsilon);

struct Limits {
  int max_arity = 4;                  // D, DS, C, bs, RC
  std::size_t max_game_domain = 1024;  // domain of the function a game runs on
};

struct MeasureResult {
  Rational value;
  nlohmann::ordered_json certificate;
};

/// Computes one measure from scratch. Throws LimitExceeded past `limits`.
MeasureResult compute_measure(const QueryFunction& f, const MeasureSpec& m, const Limits& limits);

class ResultCache;

struct AuditCounts {
  std::size_t game_solves = 0;
  std::size_t verified = 0;
};

// Thread-safe measure evaluation with an in-memory memo and an optional disk
// cache. Game solves performed here are tallied for the duality audit. With
// keep_certificates off, results carry values only, which keeps large family
// sweeps small.
class MeasureEngine {
 public:
  explicit MeasureEngine(Limits limits = {}, std::shared_ptr<ResultCache> cache = nullptr,
                         bool keep_certificates = true);

  MeasureResult measure(const QueryFunction& f, const MeasureSpec& m);
  Rational value(const QueryFunction& f, const MeasureSpec& m) { return measure(f, m).value; }

  /// Full game solution for R̄_ε(f), memoised in memory only.
  std::shared_ptr<const GameSolution> game(const QueryFunction& f, const Rational& epsilon);

  const Limits& limits() const { return limits_; }
  AuditCounts audit() const;
  void record_game(const GameSolution& g);

 private:
  Limits limits_;
  std::shared_ptr<ResultCache> cache_;
  bool keep_certificates_ = true;
  mutable std::mutex mutex_;
  std::map<std::string, MeasureResult> memo_;
  std::map<std::string, std::shared_ptr<const GameSolution>> games_;
  std::atomic<std::size_t> solves_{0};
  std::atomic<std::size_t> verified_{0};
};

// Shorthands used by the theorem registry and tests.
inline MeasureSpec measure_D() { return {MeasureKind::D, 0}; }
inline MeasureSpec measure_DS() { return {MeasureKind::DS, 0}; }
inline MeasureSpec measure_C() { return {MeasureKind::C, 0}; }
inline MeasureSpec measure_bs() { return {MeasureKind::bs, 0}; }
inline MeasureSpec measure_RC() { return {MeasureKind::RC, 0}; }
inline MeasureSpec measure_R0() { return {MeasureKind::R0, 0}; }
inline MeasureSpec measure_RS() { return {MeasureKind::RS, 0}; }
inline MeasureSpec measure_RSu() { return {MeasureKind::RSu, 0}; }
inline MeasureSpec measure_Rbar(Rational eps) { return {MeasureKind::Rbar, std::move(eps)}; }
inline MeasureSpec measure_Rwc(Rational eps) { return {MeasureKind::Rwc, std::move(eps)}; }

}  // namespace qlab
