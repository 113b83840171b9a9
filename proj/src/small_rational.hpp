#pragma once

// Exact rational for the simplex tableau. Values whose numerator and
// denominator fit in int64 stay inline; anything larger moves to GMP.

#include <cstdint>
#include <limits>
#include <memory>
#include <numeric>
#include <utility>
#include <stdexcept>

#include "qlab/rational.hpp"

namespace qlab::detail {

class SmallRational {
 public:
  SmallRational() = default;
  SmallRational(long v) : n_(v) {}  // NOLINT(google-explicit-constructor)
  explicit SmallRational(const Rational& q) { assign(q); }

  SmallRational(const SmallRational& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = std::make_unique<Rational>(*o.big_);
  }
  SmallRational(SmallRational&&) noexcept = default;
  SmallRational& operator=(const SmallRational& o) {
    if (this == &o) return *this;
    n_ = o.n_;
    d_ = o.d_;
    if (o.big_) {
      if (big_) *big_ = *o.big_;
      else big_ = std::make_unique<Rational>(*o.big_);
    } else {
      big_.reset();
    }
    return *this;
  }
  SmallRational& operator=(SmallRational&&) noexcept = default;

  Rational to_rational() const {
    if (big_) return *big_;
    return Rational(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
  }

  int sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
  }
  bool is_zero() const { return !big_ && n_ == 0; }

  friend int sgn(const SmallRational& q) { return q.sign(); }

  SmallRational operator-() const {
    SmallRational r(*this);
    if (r.big_) *r.big_ = -*r.big_;
    else r.n_ = -r.n_;
    return r;
  }

  friend SmallRational operator+(const SmallRational& a, const SmallRational& b) {
    if (a.big_ || b.big_) return from_big(a.to_rational() + b.to_rational());
    return add(a, b.n_, b.d_);
  }
  friend SmallRational operator-(const SmallRational& a, const SmallRational& b) {
    if (a.big_ || b.big_) return from_big(a.to_rational() - b.to_rational());
    return add(a, -b.n_, b.d_);
  }
  friend SmallRational operator*(const SmallRational& a, const SmallRational& b) {
    if (a.big_ || b.big_) return from_big(a.to_rational() * b.to_rational());
    if (a.n_ == 0 || b.n_ == 0) return SmallRational();
    // Cross-cancel first so the product is already in lowest terms.
    std::int64_t an = a.n_, ad = a.d_, bn = b.n_, bd = b.d_;
    if (std::int64_t g = gcd64(an, bd); g != 1) {
      an /= g;
      bd /= g;
    }
    if (std::int64_t g = gcd64(bn, ad); g != 1) {
      bn /= g;
      ad /= g;
    }
    SmallRational r;
    if (!__builtin_mul_overflow(an, bn, &r.n_) && !__builtin_mul_overflow(ad, bd, &r.d_) &&
        r.n_ != std::numeric_limits<std::int64_t>::min()) {
      return r;
    }
    return from_reduced(static_cast<Wide>(an) * bn, static_cast<Wide>(ad) * bd);
  }
  friend SmallRational operator/(const SmallRational& a, const SmallRational& b) {
    return a * b.inverse();
  }

  SmallRational& operator+=(const SmallRational& o) { return *this = *this + o; }
  SmallRational& operator-=(const SmallRational& o) { return *this = *this - o; }
  SmallRational& operator*=(const SmallRational& o) { return *this = *this * o; }

  SmallRational inverse() const {
    if (big_) return from_big(1 / *big_);
    if (n_ == 0) throw std::domain_error("division by zero");
    SmallRational r;
    r.n_ = n_ < 0 ? -d_ : d_;
    r.d_ = n_ < 0 ? -n_ : n_;
    return r;
  }

  friend int compare(const SmallRational& a, const SmallRational& b) {
    if (a.big_ || b.big_) return cmp(a.to_rational(), b.to_rational());
    Wide l = static_cast<Wide>(a.n_) * b.d_;
    Wide r = static_cast<Wide>(b.n_) * a.d_;
    return (l > r) - (l < r);
  }
  friend bool operator<(const SmallRational& a, const SmallRational& b) { return compare(a, b) < 0; }
  friend bool operator==(const SmallRational& a, const SmallRational& b) {
    if (a.big_ || b.big_) return compare(a, b) == 0;
    return a.n_ == b.n_ && a.d_ == b.d_;
  }
  friend bool operator!=(const SmallRational& a, const SmallRational& b) { return !(a == b); }

 private:
  using Wide = __int128;
  using UWide = unsigned __int128;
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static std::uint64_t binary_gcd(std::uint64_t a, std::uint64_t b) {
    if (a == 0) return b;
    if (b == 0) return a;
    const int shift = __builtin_ctzll(a | b);
    a >>= __builtin_ctzll(a);
    do {
      b >>= __builtin_ctzll(b);
      if (a > b) std::swap(a, b);
      b -= a;
    } while (b != 0);
    return a << shift;
  }

  static std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    return static_cast<std::int64_t>(
        binary_gcd(static_cast<std::uint64_t>(a < 0 ? -a : a), static_cast<std::uint64_t>(b)));
  }

  // a + bn/bd for small operands, keeping intermediates small (Henrici).
  static SmallRational add(const SmallRational& a, std::int64_t bn, std::int64_t bd) {
    if (bn == 0) return a;
    if (a.n_ == 0) return from_reduced(bn, bd);
    const std::int64_t g = gcd64(a.d_, bd);
    if (g == 1) {
      return from_wide(static_cast<Wide>(a.n_) * bd + static_cast<Wide>(bn) * a.d_,
                       static_cast<Wide>(a.d_) * bd);
    }
    Wide n = static_cast<Wide>(a.n_) * (bd / g) + static_cast<Wide>(bn) * (a.d_ / g);
    if (n == 0) return SmallRational();
    Wide d = static_cast<Wide>(a.d_ / g) * bd;
    return from_wide(n, d);
  }

  static UWide gcd_wide(UWide a, UWide b) {
    while (b != 0) {
      if ((a >> 64) == 0 && (b >> 64) == 0) {
        return binary_gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
      }
      UWide t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool fits(Wide v) { return v <= kMax && v >= -kMax; }

  static mpz_class to_mpz(Wide v) {
    const bool neg = v < 0;
    UWide u = neg ? -static_cast<UWide>(v) : static_cast<UWide>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64));
    mpz_class r = (hi << 64) + mpz_class(static_cast<unsigned long>(u));
    return neg ? mpz_class(-r) : r;
  }

  // d > 0, gcd(n, d) = 1.
  static SmallRational from_reduced(Wide n, Wide d) {
    SmallRational r;
    if (fits(n) && fits(d)) {
      r.n_ = static_cast<std::int64_t>(n);
      r.d_ = static_cast<std::int64_t>(d);
      return r;
    }
    r.big_ = std::make_unique<Rational>(to_mpz(n), to_mpz(d));
    return r;
  }

  // d > 0.
  static SmallRational from_wide(Wide n, Wide d) {
    if (n == 0) return SmallRational();
    if (fits(n) && fits(d)) {
      std::int64_t sn = static_cast<std::int64_t>(n);
      std::int64_t sd = static_cast<std::int64_t>(d);
      std::int64_t g = gcd64(sn, sd);
      SmallRational r;
      r.n_ = sn / g;
      r.d_ = sd / g;
      return r;
    }
    UWide g = gcd_wide(n < 0 ? -static_cast<UWide>(n) : static_cast<UWide>(n), static_cast<UWide>(d));
    if (g != 1) {
      n /= static_cast<Wide>(g);
      d /= static_cast<Wide>(g);
    }
    return from_reduced(n, d);
  }

  static SmallRational from_big(const Rational& q) {
    SmallRational r;
    r.assign(q);
    return r;
  }

  void assign(const Rational& q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
        q.get_num() != std::numeric_limits<long>::min()) {
      n_ = q.get_num().get_si();
      d_ = q.get_den().get_si();
      big_.reset();
    } else {
      big_ = std::make_unique<Rational>(q);
    }
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::unique_ptr<Rational> big_;
};

}  // namespace qlab::detail
