#pragma once

// Exact rational scalars. Values whose numerator and denominator fit in a
// signed 64-bit word are kept inline; everything else lives in a GMP mpq.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace chtrace {

class Rational {
  struct Small {
    std::int64_t num;
    std::int64_t den;
    friend bool operator==(const Small&, const Small&) = default;
  };

  using i128 = __int128;
  using u128 = unsigned __int128;

 public:
  Rational() : rep_(Small{0, 1}) {}
  Rational(std::int64_t n) : rep_(Small{n, 1}) {  // NOLINT: integer literals convert implicitly
    if (n == std::numeric_limits<std::int64_t>::min()) *this = from_mpq(mpq_class(mpz_from(n)));
  }
  Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }
  // Accepts any mpq_class, canonical or not.
  explicit Rational(const mpq_class& q) {
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
    mpq_class c(q);
    c.canonicalize();
    *this = from_mpq(c);
  }

  // Accepts "a", "-a" or "a/b" in decimal.
  static Rational parse(std::string_view text) {
    mpq_class q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0)
      throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (q.get_den() == 0) throw std::domain_error("zero denominator");
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const {
    auto s = std::get_if<Small>(&rep_);
    return s != nullptr && s->num == 0;
  }
  bool is_one() const {
    auto s = std::get_if<Small>(&rep_);
    return s != nullptr && s->num == 1 && s->den == 1;
  }
  bool is_integer() const {
    if (auto s = std::get_if<Small>(&rep_)) return s->den == 1;
    return std::get<mpq_class>(rep_).get_den() == 1;
  }
  int sign() const {
    if (auto s = std::get_if<Small>(&rep_)) return (s->num > 0) - (s->num < 0);
    return sgn(std::get<mpq_class>(rep_));
  }
  bool is_small() const { return std::holds_alternative<Small>(rep_); }

  mpq_class to_mpq() const {
    if (auto s = std::get_if<Small>(&rep_)) return mpq_class(mpz_from(s->num), mpz_from(s->den));
    return std::get<mpq_class>(rep_);
  }

  std::string str() const {
    if (auto s = std::get_if<Small>(&rep_)) {
      if (s->den == 1) return std::to_string(s->num);
      return std::to_string(s->num) + "/" + std::to_string(s->den);
    }
    return std::get<mpq_class>(rep_).get_str();
  }

  std::size_t hash() const {
    if (auto s = std::get_if<Small>(&rep_))
      return std::hash<std::int64_t>{}(s->num) * 31u + std::hash<std::int64_t>{}(s->den);
    return std::hash<std::string>{}(str());
  }

  Rational operator-() const {
    if (auto s = std::get_if<Small>(&rep_)) {
      Rational r;
      r.rep_ = Small{-s->num, s->den};  // num > INT64_MIN by invariant
      return r;
    }
    return from_mpq(-std::get<mpq_class>(rep_));
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    auto x = std::get_if<Small>(&a.rep_);
    auto y = std::get_if<Small>(&b.rep_);
    if (x && y) {
      if (x->den == 1 && y->den == 1) return make(i128{x->num} + y->num, 1);
      return make(i128{x->num} * y->den + i128{y->num} * x->den, i128{x->den} * y->den);
    }
    return from_mpq(a.to_mpq() + b.to_mpq());
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    auto x = std::get_if<Small>(&a.rep_);
    auto y = std::get_if<Small>(&b.rep_);
    if (x && y) {
      if (x->den == 1 && y->den == 1) return make(i128{x->num} * y->num, 1);
      return make(i128{x->num} * y->num, i128{x->den} * y->den);
    }
    return from_mpq(a.to_mpq() * b.to_mpq());
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("rational division by zero");
    auto x = std::get_if<Small>(&a.rep_);
    auto y = std::get_if<Small>(&b.rep_);
    if (x && y) return make(i128{x->num} * y->den, i128{x->den} * y->num);
    return from_mpq(a.to_mpq() / b.to_mpq());
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  // Canonical form makes representation equality value equality.
  friend bool operator==(const Rational& a, const Rational& b) { return a.rep_ == b.rep_; }

 private:
  std::variant<Small, mpq_class> rep_;

  static mpz_class mpz_from(std::int64_t v) {
    mpz_class z;
    mpz_set_si(z.get_mpz_t(), static_cast<long>(v));
    return z;
  }

  static mpz_class mpz_from(i128 v) {
    bool neg = v < 0;
    u128 mag = neg ? u128(0) - u128(v) : u128(v);
    mpz_class hi, lo;
    mpz_set_ui(hi.get_mpz_t(), static_cast<unsigned long>(mag >> 64));
    mpz_set_ui(lo.get_mpz_t(), static_cast<unsigned long>(mag));
    mpz_class z = (hi << 64) + lo;
    return neg ? mpz_class(-z) : z;
  }

  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static bool fits(i128 v) {
    return v > std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("zero denominator");
    if (n == 0) return Rational();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (d != 1) {
      u128 g = gcd128(n < 0 ? u128(0) - u128(n) : u128(n), u128(d));
      if (g > 1) {
        n /= i128(g);
        d /= i128(g);
      }
    }
    if (fits(n) && fits(d)) {
      Rational r;
      r.rep_ = Small{static_cast<std::int64_t>(n), static_cast<std::int64_t>(d)};
      return r;
    }
    Rational r;
    r.rep_ = mpq_class(mpz_from(n), mpz_from(d));  // already reduced
    return r;
  }

  static Rational from_mpq(const mpq_class& q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p()) {
      long nv = n.get_si();
      if (nv != std::numeric_limits<long>::min()) {
        Rational r;
        r.rep_ = Small{nv, d.get_si()};
        return r;
      }
    }
    Rational r;
    r.rep_ = q;
    return r;
  }
};

}  // namespace chtrace
