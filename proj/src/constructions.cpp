#include "qlab/constructions.hpp"

#include <algorithm>

namespace qlab {

namespace {

void require_boolean_function(const QueryFunction& f, const char* what) {
  if (f.alphabet() != Alphabet::Boolean) {
    throw PreconditionError(std::string(what) + " requires a Boolean input alphabet");
  }
  if (!f.boolean_output()) {
    throw PreconditionError(std::string(what) + " requires Boolean output");
  }
}

// Every word over {0,1,*} of length n, lexicographic.
std::vector<Word> star_patterns(int n) {
  std::vector<Word> out;
  Word w(static_cast<std::size_t>(n), Symbol::Zero);
  while (true) {
    out.push_back(w);
    int i = n - 1;
    while (i >= 0 && w[static_cast<std::size_t>(i)] == Symbol::Star) {
      w[static_cast<std::size_t>(i)] = Symbol::Zero;
      --i;
    }
    if (i < 0) break;
    auto& s = w[static_cast<std::size_t>(i)];
    s = static_cast<Symbol>(static_cast<int>(s) + 1);
  }
  return out;
}

SabotagedFunction build(const QueryFunction& f, bool unique_only) {
  require_boolean_function(f, "sabotage");
  const int n = f.arity();
  std::vector<Word> stars;
  for (const Word& p : star_patterns(n)) {
    int free = non_boolean_count(p);
    if (free == 0 || (unique_only && free != 1)) continue;
    bool seen0 = false;
    bool seen1 = false;
    for (std::size_t i = 0; i < f.domain_size() && !(seen0 && seen1); ++i) {
      const Word& x = f.input(i);
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        Symbol s = p[static_cast<std::size_t>(k)];
        ok = s == Symbol::Star || s == x[static_cast<std::size_t>(k)];
      }
      if (!ok) continue;
      (f.value(i).as_bool() ? seen1 : seen0) = true;
    }
    if (seen0 && seen1) stars.push_back(p);
  }
  std::vector<Word> daggers;
  std::vector<std::pair<Word, Label>> entries;
  for (const Word& p : stars) {
    daggers.push_back(swap_star_dagger(p));
    entries.emplace_back(p, Label::boolean(false));
    entries.emplace_back(daggers.back(), Label::boolean(true));
  }
  std::sort(daggers.begin(), daggers.end());
  return SabotagedFunction{QueryFunction(n, Alphabet::Sabotage, std::move(entries)), f,
                           std::move(stars), std::move(daggers)};
}

}  // namespace

Word swap_star_dagger(const Word& w) {
  Word out = w;
  for (Symbol& s : out) {
    if (s == Symbol::Star) s = Symbol::Dagger;
    else if (s == Symbol::Dagger) s = Symbol::Star;
  }
  return out;
}

int non_boolean_count(const Word& w) {
  return static_cast<int>(std::count_if(w.begin(), w.end(), [](Symbol s) { return !is_boolean(s); }));
}

SabotagedFunction sabotage(const QueryFunction& f) { return build(f, false); }

SabotagedFunction unique_sabotage(const QueryFunction& f) { return build(f, true); }

QueryFunction compose(const QueryFunction& f, const QueryFunction& g) {
  if (f.alphabet() != Alphabet::Boolean || g.alphabet() != Alphabet::Boolean) {
    throw PreconditionError("composition requires Boolean input alphabets");
  }
  if (!g.boolean_output()) {
    throw PreconditionError("inner function output does not match the outer input alphabet");
  }
  const int n = f.arity();
  const std::size_t inner = g.domain_size();
  std::vector<std::pair<Word, Label>> entries;
  if (inner > 0) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(n), 0);
    while (true) {
      Word outer(static_cast<std::size_t>(n));
      Word x;
      x.reserve(static_cast<std::size_t>(n * g.arity()));
      for (int i = 0; i < n; ++i) {
        std::size_t j = pick[static_cast<std::size_t>(i)];
        outer[static_cast<std::size_t>(i)] = g.value(j).as_bool() ? Symbol::One : Symbol::Zero;
        x.insert(x.end(), g.input(j).begin(), g.input(j).end());
      }
      if (auto idx = f.index_of(outer)) entries.emplace_back(std::move(x), f.value(*idx));
      int i = n - 1;
      while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == inner) {
        pick[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return QueryFunction(n * g.arity(), Alphabet::Boolean, std::move(entries));
}

QueryFunction direct_sum(const QueryFunction& f, int m) {
  if (m < 1) throw PreconditionError("direct sum needs m >= 1");
  if (m == 1) return f;
  const std::size_t d = f.domain_size();
  std::vector<std::pair<Word, Label>> entries;
  if (d > 0) {
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
      Word x;
      Label l;
      for (int i = 0; i < m; ++i) {
        std::size_t j = pick[static_cast<std::size_t>(i)];
        x.insert(x.end(), f.input(j).begin(), f.input(j).end());
        l.parts.insert(l.parts.end(), f.value(j).parts.begin(), f.value(j).parts.end());
      }
      entries.emplace_back(std::move(x), std::move(l));
      int i = m - 1;
      while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == d) {
        pick[static_cast<std::size_t>(i)] = 0;
        --i;
      }
      if (i < 0) break;
    }
  }
  return QueryFunction(m * f.arity(), f.alphabet(), std::move(entries));
}

int index_address_bits(int m) {
  if (m < 3) throw PreconditionError("index function needs m >= 3");
  int c = 1;
  while ((c + 1) + (1 << (c + 1)) <= m) ++c;
  return c;
}

QueryFunction index_function(int m) {
  const int c = index_address_bits(m);
  if (m > 20) throw LimitExceeded("index function arity too large to tabulate");
  std::size_t cells = std::size_t{1} << m;
  std::vector<std::optional<bool>> table(cells);
  for (std::size_t idx = 0; idx < cells; ++idx) {
    auto bit = [&](int pos) { return ((idx >> (m - 1 - pos)) & 1U) != 0; };
    int y = 0;
    for (int b = 0; b < c; ++b) y = (y << 1) | (bit(b) ? 1 : 0);
    table[idx] = bit(c + y);
  }
  return from_truth_table(m, table);
}

QueryFunction indexed_direct_sum(const QueryFunction& f, int c) {
  require_boolean_function(f, "indexed direct sum");
  if (c < 1 || c > 4) throw PreconditionError("indexed direct sum needs 1 <= c <= 4");
  const int n = f.arity();
  const int array_bits = 1 << c;
  const int arity = c * n + array_bits;
  if (arity > 20) throw LimitExceeded("indexed direct sum arity too large");
  std::vector<std::pair<Word, Label>> entries;
  const std::size_t d = f.domain_size();
  if (d == 0) return QueryFunction(arity, Alphabet::Boolean, {});
  std::vector<std::size_t> pick(static_cast<std::size_t>(c), 0);
  while (true) {
    Word prefix;
    int y = 0;
    for (int i = 0; i < c; ++i) {
      std::size_t j = pick[static_cast<std::size_t>(i)];
      prefix.insert(prefix.end(), f.input(j).begin(), f.input(j).end());
      y = (y << 1) | (f.value(j).as_bool() ? 1 : 0);
    }
    for (std::size_t z = 0; z < (std::size_t{1} << array_bits); ++z) {
      Word x = prefix;
      for (int b = 0; b < array_bits; ++b) {
        x.push_back(((z >> (array_bits - 1 - b)) & 1U) ? Symbol::One : Symbol::Zero);
      }
      bool out = x[static_cast<std::size_t>(c * n + y)] == Symbol::One;
      entries.emplace_back(std::move(x), Label::boolean(out));
    }
    int i = c - 1;
    while (i >= 0 && ++pick[static_cast<std::size_t>(i)] == d) {
      pick[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
  }
  return QueryFunction(arity, Alphabet::Boolean, std::move(entries));
}

}  // namespace qlab
