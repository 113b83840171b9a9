#include "qlab/function.hpp"

#include <algorithm>
#include <charconv>

#include <boost/functional/hash.hpp>

namespace qlab {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::Zero: return '0';
    case Symbol::One: return '1';
    case Symbol::Star: return '*';
    case Symbol::Dagger: return '+';
  }
  return '?';
}

std::optional<Symbol> symbol_from_char(char c) {
  switch (c) {
    case '0': return Symbol::Zero;
    case '1': return Symbol::One;
    case '*': return Symbol::Star;
    case '+': return Symbol::Dagger;
    default: return std::nullopt;
  }
}

std::string word_to_string(const Word& w) {
  std::string out;
  out.reserve(w.size());
  for (Symbol s : w) out.push_back(to_char(s));
  return out;
}

Word word_from_string(std::string_view text) {
  Word w;
  w.reserve(text.size());
  for (char c : text) {
    auto s = symbol_from_char(c);
    if (!s) throw ParseError("illegal symbol '" + std::string(1, c) + "' in input word");
    w.push_back(*s);
  }
  return w;
}

bool Label::as_bool() const {
  if (!is_boolean()) throw PreconditionError("label is not Boolean");
  return parts[0] == 1;
}

std::string label_to_string(const Label& l) {
  if (l.parts.size() == 1) return std::to_string(l.parts[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < l.parts.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(l.parts[i]);
  }
  out += ')';
  return out;
}

namespace {

std::uint8_t parse_label_part(std::string_view text) {
  unsigned v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || v > 255) {
    throw ParseError("bad label component '" + std::string(text) + "'");
  }
  return static_cast<std::uint8_t>(v);
}

int parse_arity(std::string_view text) {
  int n = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("bad arity '" + std::string(text) + "'");
  }
  if (n < 1) throw ParseError("arity must be at least 1");
  return n;
}

}  // namespace

Label label_from_string(std::string_view text) {
  Label l;
  if (!text.empty() && text.front() == '(') {
    if (text.back() != ')' || text.size() < 3) throw ParseError("unterminated tuple label");
    std::string_view body = text.substr(1, text.size() - 2);
    std::size_t start = 0;
    while (true) {
      std::size_t comma = body.find(',', start);
      l.parts.push_back(parse_label_part(body.substr(start, comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (l.parts.size() < 2) throw ParseError("tuple labels need at least two components");
  } else {
    l.parts.push_back(parse_label_part(text));
  }
  return l;
}

QueryFunction::QueryFunction(int arity, Alphabet alphabet,
                             std::vector<std::pair<Word, Label>> entries)
    : arity_(arity), alphabet_(alphabet) {
  if (arity < 1) throw PreconditionError("arity must be at least 1");
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  domain_.reserve(entries.size());
  values_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Word& w = entries[i].first;
    if (static_cast<int>(w.size()) != arity) {
      throw ParseError("input '" + word_to_string(w) + "' has length " +
                       std::to_string(w.size()) + ", expected " + std::to_string(arity));
    }
    for (Symbol s : w) {
      if (alphabet == Alphabet::Boolean && !is_boolean(s)) {
        throw ParseError("input '" + word_to_string(w) + "' is not over {0,1}");
      }
    }
    if (!domain_.empty() && domain_.back() == w) {
      throw ParseError("duplicate domain entry '" + word_to_string(w) + "'");
    }
    domain_.push_back(std::move(entries[i].first));
    values_.push_back(std::move(entries[i].second));
  }
}

std::optional<std::size_t> QueryFunction::index_of(const Word& w) const {
  auto it = std::lower_bound(domain_.begin(), domain_.end(), w);
  if (it == domain_.end() || *it != w) return std::nullopt;
  return static_cast<std::size_t>(it - domain_.begin());
}

const Label& QueryFunction::evaluate(const Word& x) const {
  if (static_cast<int>(x.size()) != arity_) {
    throw PreconditionError("input length " + std::to_string(x.size()) + " != arity " +
                            std::to_string(arity_));
  }
  if (alphabet_ == Alphabet::Boolean) {
    for (Symbol s : x) {
      if (!is_boolean(s)) throw PreconditionError("input is not over the Boolean alphabet");
    }
  }
  auto idx = index_of(x);
  if (!idx) throw UndefinedInput("f is undefined on '" + word_to_string(x) + "'");
  return values_[*idx];
}

bool QueryFunction::boolean_output() const {
  return std::all_of(values_.begin(), values_.end(), [](const Label& l) { return l.is_boolean(); });
}

bool QueryFunction::is_total() const {
  std::size_t full = 1;
  for (int i = 0; i < arity_; ++i) full *= static_cast<std::size_t>(alphabet_size(alphabet_));
  return domain_.size() == full;
}

bool QueryFunction::is_constant() const {
  return std::adjacent_find(values_.begin(), values_.end(), std::not_equal_to<>()) == values_.end();
}

QueryFunction from_truth_table(int arity, const std::vector<std::optional<bool>>& cells) {
  if (arity < 1 || arity > 20) throw PreconditionError("truth-table arity out of range");
  if (cells.size() != (std::size_t{1} << arity)) {
    throw ParseError("truth table has " + std::to_string(cells.size()) + " cells, expected " +
                     std::to_string(std::size_t{1} << arity));
  }
  std::vector<std::pair<Word, Label>> entries;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (!cells[idx]) continue;
    Word w(static_cast<std::size_t>(arity));
    for (int b = 0; b < arity; ++b) {
      bool bit = (idx >> (arity - 1 - b)) & 1U;
      w[static_cast<std::size_t>(b)] = bit ? Symbol::One : Symbol::Zero;
    }
    entries.emplace_back(std::move(w), Label::boolean(*cells[idx]));
  }
  return QueryFunction(arity, Alphabet::Boolean, std::move(entries));
}

namespace {

QueryFunction parse_tt(int arity, std::string_view cells_text) {
  if (arity > 20) throw ParseError("truth-table arity too large");
  std::vector<std::optional<bool>> cells;
  cells.reserve(cells_text.size());
  for (char c : cells_text) {
    switch (c) {
      case '0': cells.emplace_back(false); break;
      case '1': cells.emplace_back(true); break;
      case '-': cells.emplace_back(std::nullopt); break;
      default: throw ParseError("illegal truth-table character '" + std::string(1, c) + "'");
    }
  }
  auto f = from_truth_table(arity, cells);
  if (f.domain_size() == 0) throw ParseError("empty domain");
  return f;
}

QueryFunction parse_ext(int arity, std::string_view body) {
  if (body.size() < 2 || body.front() != '{' || body.back() != '}') {
    throw ParseError("ext literal must be wrapped in braces");
  }
  body = body.substr(1, body.size() - 2);
  if (body.empty()) throw ParseError("empty domain");
  std::vector<std::pair<Word, Label>> entries;
  bool sabotage = false;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    int depth = 0;
    std::size_t end = pos;
    while (end < body.size() && (body[end] != ',' || depth > 0)) {
      if (body[end] == '(') ++depth;
      if (body[end] == ')') --depth;
      ++end;
    }
    std::string_view item = body.substr(pos, end - pos);
    std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw ParseError("entry '" + std::string(item) + "' lacks '='");
    Word w = word_from_string(item.substr(0, eq));
    for (Symbol s : w) sabotage |= !is_boolean(s);
    entries.emplace_back(std::move(w), label_from_string(item.substr(eq + 1)));
    pos = end + 1;
  }
  return QueryFunction(arity, sabotage ? Alphabet::Sabotage : Alphabet::Boolean,
                       std::move(entries));
}

}  // namespace

QueryFunction parse_function(std::string_view text) {
  std::size_t c1 = text.find(':');
  if (c1 == std::string_view::npos) throw ParseError("literal needs a 'tt:' or 'ext:' prefix");
  std::size_t c2 = text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ParseError("literal is missing the arity field");
  std::string_view kind = text.substr(0, c1);
  int arity = parse_arity(text.substr(c1 + 1, c2 - c1 - 1));
  std::string_view rest = text.substr(c2 + 1);
  if (kind == "tt") return parse_tt(arity, rest);
  if (kind == "ext") return parse_ext(arity, rest);
  throw ParseError("unknown literal kind '" + std::string(kind) + "'");
}

std::string canonical_encoding(const QueryFunction& f) {
  std::string out;
  if (f.alphabet() == Alphabet::Boolean && f.boolean_output() && f.arity() <= 20) {
    std::size_t cells = std::size_t{1} << f.arity();
    out = "tt:" + std::to_string(f.arity()) + ":";
    std::string table(cells, '-');
    for (std::size_t i = 0; i < f.domain_size(); ++i) {
      std::size_t idx = 0;
      for (Symbol s : f.input(i)) idx = (idx << 1) | (s == Symbol::One ? 1U : 0U);
      table[idx] = f.value(i).as_bool() ? '1' : '0';
    }
    return out + table;
  }
  out = "ext:" + std::to_string(f.arity()) + ":{";
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    if (i) out += ',';
    out += word_to_string(f.input(i));
    out += '=';
    out += label_to_string(f.value(i));
  }
  out += '}';
  return out;
}

DomainSet::DomainSet(std::size_t size, bool full) : size_(size), words_((size + 63) / 64, 0) {
  if (full) {
    for (auto& w : words_) w = ~std::uint64_t{0};
    if (size % 64 != 0 && !words_.empty()) words_.back() = (std::uint64_t{1} << (size % 64)) - 1;
  }
}

std::size_t DomainSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool DomainSet::empty() const {
  return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

std::vector<std::size_t> DomainSet::members() const {
  std::vector<std::size_t> out;
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

DomainSet DomainSet::operator&(const DomainSet& o) const {
  DomainSet r = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
  return r;
}

bool DomainSet::is_subset_of(const DomainSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & ~o.words_[i]) != 0) return false;
  }
  return true;
}

std::size_t DomainSet::hash() const {
  std::size_t seed = size_;
  boost::hash_range(seed, words_.begin(), words_.end());
  return seed;
}

KnowledgeState KnowledgeState::reveal(int pos, Symbol s) const {
  if (pos < 0 || pos >= arity()) throw PreconditionError("position out of range");
  if (entries_[static_cast<std::size_t>(pos)]) throw PreconditionError("position already revealed");
  KnowledgeState next = *this;
  next.entries_[static_cast<std::size_t>(pos)] = s;
  ++next.queries_;
  return next;
}

KnowledgeState KnowledgeState::from_string(std::string_view pattern) {
  KnowledgeState s(static_cast<int>(pattern.size()));
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '?') continue;
    auto sym = symbol_from_char(pattern[i]);
    if (!sym) throw ParseError("illegal symbol in state pattern");
    s = s.reveal(static_cast<int>(i), *sym);
  }
  return s;
}

DomainSet consistent_inputs(const QueryFunction& f, const KnowledgeState& s) {
  if (s.arity() != f.arity()) throw PreconditionError("state arity does not match function");
  DomainSet out(f.domain_size());
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    const Word& w = f.input(i);
    bool ok = true;
    for (int p = 0; p < s.arity() && ok; ++p) {
      const auto& e = s.at(p);
      ok = !e || *e == w[static_cast<std::size_t>(p)];
    }
    if (ok) out.set(i);
  }
  return out;
}

bool is_consistent(const QueryFunction& f, const KnowledgeState& s) {
  return !consistent_inputs(f, s).empty();
}

bool all_same_label(const QueryFunction& f, const DomainSet& s) {
  const Label* first = nullptr;
  bool same = true;
  s.for_each([&](std::size_t i) {
    if (!first) first = &f.value(i);
    else if (f.value(i) != *first) same = false;
  });
  return same;
}

bool is_certificate(const QueryFunction& f, const KnowledgeState& s) {
  DomainSet c = consistent_inputs(f, s);
  if (c.empty()) throw PreconditionError("state is inconsistent with every domain input");
  return all_same_label(f, c);
}

PositionMasks::PositionMasks(const QueryFunction& f)
    : masks_(static_cast<std::size_t>(f.arity()) * kMaxSymbols, DomainSet(f.domain_size())) {
  for (std::size_t i = 0; i < f.domain_size(); ++i) {
    const Word& w = f.input(i);
    for (int p = 0; p < f.arity(); ++p) {
      masks_[static_cast<std::size_t>(p) * kMaxSymbols +
             static_cast<std::size_t>(w[static_cast<std::size_t>(p)])]
          .set(i);
    }
  }
}

}  // namespace qlab
