#include <algorithm>

#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"
#include "qlab/constructions.hpp"
#include "qlab/enumerate.hpp"

using namespace qlab;
using testing::fn;
using testing::word;

namespace {

std::vector<std::string> words_of(const QueryFunction& f) {
  std::vector<std::string> out;
  for (const auto& w : f.domain()) out.push_back(word_to_string(w));
  return out;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("sabotage of OR") {
    auto sab4 = sabotage(or_function(4));
    CHECK(sab4.function.index_of(word("00*0")).has_value());
    CHECK_FALSE(sab4.function.index_of(word("01*0")).has_value());

    auto sab = sabotage(or_function(2));
    std::vector<std::string> expect{"**", "*0", "++", "+0", "0*", "0+"};
    auto got = words_of(sab.function);
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    CHECK(got == expect);
    CHECK(sab.function.evaluate(word("0*")) == Label::boolean(false));
    CHECK(sab.function.evaluate(word("0+")) == Label::boolean(true));
  }

  TEST_CASE("sabotage of constants is empty") {
    CHECK(sabotage(constant_function(2, false)).function.domain_size() == 0);
    CHECK(unique_sabotage(constant_function(2, true)).function.domain_size() == 0);
  }

  TEST_CASE("unique sabotage") {
    auto u = unique_sabotage(or_function(2));
    auto got = words_of(u.function);
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::string>{"*0", "+0", "0*", "0+"});
    CHECK(unique_sabotage(xor_function(2)).function.domain_size() == 8);
  }

  TEST_CASE("sabotage requires Boolean output") {
    CHECK_THROWS_AS(sabotage(direct_sum(or_function(2), 2)), PreconditionError);
  }

  TEST_CASE("sabotaged inputs agree with the pair construction") {
    for (int n = 1; n <= 3; ++n) {
      for (const auto& f : collect(FunctionFamily::all_total(n))) {
        auto sab = sabotage(f);
        CHECK(sab.star_inputs == oracle::sabotaged_patterns(f));
        CHECK(sab.function.domain_size() == 2 * sab.star_inputs.size());
        for (std::size_t i = 0; i < sab.function.domain_size(); ++i) {
          const Word& w = sab.function.input(i);
          CHECK(non_boolean_count(w) >= 1);
          auto twin = sab.function.index_of(swap_star_dagger(w));
          REQUIRE(twin.has_value());
          CHECK(sab.function.value(*twin) != sab.function.value(i));
        }
      }
    }
  }

  TEST_CASE("composition") {
    QueryFunction h = compose(or_function(2), and_function(2));
    CHECK(h.arity() == 4);
    CHECK(h.evaluate(word("1101")) == Label::boolean(true));
    CHECK(h.evaluate(word("1001")) == Label::boolean(false));
    // Inputs where g is undefined drop out of the domain.
    QueryFunction g = fn("tt:1:0-");
    CHECK(compose(or_function(2), g).domain_size() == 1);
    CHECK_THROWS_AS(compose(or_function(2), sabotage(or_function(2)).function), PreconditionError);
  }

  TEST_CASE("direct sums") {
    QueryFunction s = direct_sum(or_function(2), 2);
    CHECK(s.arity() == 4);
    CHECK(s.evaluate(word("0100")) == Label{{1, 0}});
    QueryFunction one = direct_sum(or_function(2), 1);
    CHECK(one.domain_size() == 4);
    CHECK(one.evaluate(word("10")).parts == std::vector<std::uint8_t>{1});
    CHECK_THROWS_AS(direct_sum(or_function(2), 0), PreconditionError);
  }

  TEST_CASE("index functions") {
    CHECK(index_address_bits(3) == 1);
    CHECK(index_address_bits(6) == 2);
    QueryFunction ind3 = index_function(3);
    CHECK(ind3.evaluate(word("101")) == Label::boolean(true));
    CHECK(ind3.evaluate(word("110")) == Label::boolean(false));
    CHECK_THROWS_AS(index_function(2), PreconditionError);

    QueryFunction via_id = indexed_direct_sum(identity_function(), 1);
    CHECK(via_id.arity() == 3);
    CHECK(via_id == ind3);
    QueryFunction via_or = indexed_direct_sum(or_function(2), 1);
    CHECK(via_or.arity() == 4);
    CHECK(via_or.evaluate(word("0101")) == Label::boolean(true));
    CHECK(via_or.evaluate(word("0110")) == Label::boolean(false));
    CHECK(indexed_direct_sum(or_function(2), 2).arity() == 8);
  }
}
