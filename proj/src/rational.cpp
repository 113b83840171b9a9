#include "qlab/rational.hpp"

#include "qlab/function.hpp"

namespace qlab {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("bad rational '" + std::string(text) + "'");
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || !all_digits(frac)) {
      throw ParseError("bad rational '" + std::string(text) + "'");
    }
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    q = Rational(w * scale + mpz_class(std::string(frac)), scale);
  } else {
    if (!all_digits(body)) throw ParseError("bad rational '" + std::string(text) + "'");
    q = Rational(mpz_class(std::string(body)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

double to_double(const Rational& q) { return q.get_d(); }

}  // namespace qlab
