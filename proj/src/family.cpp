#include "qlab/family.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "qlab/constructions.hpp"
#include "qlab/enumerate.hpp"

namespace qlab {

namespace {

int parse_int(std::string_view text, std::string_view what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t at = text.find(sep, start);
    out.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return out;
}

void check_enumerable(int arity, int arity_limit) {
  if (arity < 1) throw ParseError("family arity must be positive");
  if (arity > arity_limit || arity > 5) {
    throw LimitExceeded("family arity " + std::to_string(arity) + " exceeds the limit of " +
                        std::to_string(std::min(arity_limit, 5)));
  }
}

std::uint64_t total_count(int arity) { return std::uint64_t{1} << (std::uint64_t{1} << arity); }

}  // namespace

QueryFunction named_function(std::string_view name) {
  auto with_arity = [&](std::string_view prefix) -> std::optional<int> {
    if (name.substr(0, prefix.size()) != prefix) return std::nullopt;
    int n = parse_int(name.substr(prefix.size()), "arity in name");
    if (n < 1 || n > 5) throw LimitExceeded("named function arity must lie in [1, 5]");
    return n;
  };
  if (name == "ID") return identity_function();
  if (auto n = with_arity("IND")) return index_function(*n);
  if (auto n = with_arity("OR")) return or_function(*n);
  if (auto n = with_arity("AND")) return and_function(*n);
  if (auto n = with_arity("XOR")) return xor_function(*n);
  if (auto n = with_arity("ZERO")) return constant_function(*n, false);
  if (auto n = with_arity("ONE")) return constant_function(*n, true);
  throw ParseError("unknown function name '" + std::string(name) + "'");
}

Family Family::parse(std::string_view text, int arity_limit) {
  Family fam;
  fam.descriptor_ = std::string(text);
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("family descriptor needs a ':'");
  std::string_view kind = text.substr(0, colon);
  std::string_view arg = text.substr(colon + 1);

  if (kind == "all-total" || kind == "nonconstant-total") {
    Segment s;
    s.arity = parse_int(arg, "arity");
    check_enumerable(s.arity, arity_limit);
    s.count = total_count(s.arity);
    if (kind == "nonconstant-total") {
      s.first = 1;
      s.count -= 2;
    }
    fam.segments_.push_back(s);
  } else if (kind == "named" || kind == "list") {
    Segment s;
    s.is_explicit = true;
    for (std::string_view item : split(arg, kind == "named" ? ',' : ';')) {
      s.explicit_members.push_back(kind == "named" ? named_function(item) : parse_function(item));
    }
    fam.segments_.push_back(std::move(s));
  } else if (kind == "compose-pairs") {
    fam.pairs_ = true;
    auto add = [&](int a, int b) {
      check_enumerable(a, arity_limit);
      check_enumerable(b, arity_limit);
      check_enumerable(a * b, arity_limit);
      Segment s;
      s.arity = a;
      s.inner_arity = b;
      fam.segments_.push_back(s);
    };
    if (arg.substr(0, 2) == "<=") {
      int k = parse_int(arg.substr(2), "arity bound");
      check_enumerable(k, arity_limit);
      for (int a = 1; a <= k; ++a) {
        for (int b = 1; a * b <= k; ++b) add(a, b);
      }
    } else {
      auto x = arg.find('x');
      if (x == std::string_view::npos) throw ParseError("compose-pairs expects <a>x<b> or <=<k>");
      add(parse_int(arg.substr(0, x), "outer arity"), parse_int(arg.substr(x + 1), "inner arity"));
    }
  } else {
    throw ParseError("unknown family kind '" + std::string(kind) + "'");
  }
  for (const auto& s : fam.segments_) fam.size_ += fam.size_of(s);
  return fam;
}

std::size_t Family::size_of(const Segment& s) const {
  if (s.is_explicit) return s.explicit_members.size();
  if (pairs_) return (total_count(s.arity) - 2) * (total_count(s.inner_arity) - 2);
  return s.count;
}

QueryFunction Family::function(std::size_t i) const {
  if (pairs_) throw PreconditionError("family '" + descriptor_ + "' holds pairs");
  for (const auto& s : segments_) {
    std::size_t n = size_of(s);
    if (i < n) return s.is_explicit ? s.explicit_members[i] : total_from_index(s.arity, s.first + i);
    i -= n;
  }
  throw std::out_of_range("family index out of range");
}

std::pair<QueryFunction, QueryFunction> Family::pair(std::size_t i) const {
  if (!pairs_) throw PreconditionError("family '" + descriptor_ + "' holds single functions");
  for (const auto& s : segments_) {
    std::size_t n = size_of(s);
    if (i < n) {
      const std::uint64_t inner = total_count(s.inner_arity) - 2;
      return {total_from_index(s.arity, 1 + i / inner), total_from_index(s.inner_arity, 1 + i % inner)};
    }
    i -= n;
  }
  throw std::out_of_range("family index out of range");
}

}  // namespace qlab
