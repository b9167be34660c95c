#pragma once

// Sparse multivariate commutative polynomials over Rational.
//
// A Polynomial is a sorted vector of (Monomial, coefficient) terms with no
// zero coefficients, so structural equality is mathematical equality.

#include "chtrace/rational.hpp"

#include <algorithm>
#include <atomic>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chtrace {

struct VarId {
  std::uint32_t index = 0;
  friend auto operator<=>(VarId, VarId) = default;
};

// Hands out consecutive, never reused variable ids. Safe to share between threads.
class VarAllocator {
 public:
  std::vector<VarId> fresh(std::size_t n) {
    auto first = next_.fetch_add(static_cast<std::uint32_t>(n));
    std::vector<VarId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = VarId{first + static_cast<std::uint32_t>(i)};
    return ids;
  }
  VarId fresh_one() { return VarId{next_.fetch_add(1)}; }
  std::uint32_t allocated() const { return next_.load(); }

 private:
  std::atomic<std::uint32_t> next_{0};
};

class Monomial {
 public:
  using Factor = std::pair<std::uint32_t, std::uint32_t>;  // (variable, exponent)

  Monomial() = default;

  static Monomial variable(VarId v, std::uint32_t exponent = 1) {
    Monomial m;
    if (exponent > 0) m.factors_.emplace_back(v.index, exponent);
    return m;
  }

  std::span<const Factor> factors() const { return factors_; }
  bool is_one() const { return factors_.empty(); }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& f : factors_) d += f.second;
    return d;
  }

  std::uint32_t exponent(VarId v) const {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), Factor{v.index, 0});
    return (it != factors_.end() && it->first == v.index) ? it->second : 0;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.factors_.reserve(a.factors_.size() + b.factors_.size());
    auto i = a.factors_.begin();
    auto j = b.factors_.begin();
    while (i != a.factors_.end() && j != b.factors_.end()) {
      if (i->first < j->first) {
        m.factors_.push_back(*i++);
      } else if (j->first < i->first) {
        m.factors_.push_back(*j++);
      } else {
        m.factors_.emplace_back(i->first, i->second + j->second);
        ++i;
        ++j;
      }
    }
    m.factors_.insert(m.factors_.end(), i, a.factors_.end());
    m.factors_.insert(m.factors_.end(), j, b.factors_.end());
    return m;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

  // "t3^2*t7"; the empty monomial renders as "1".
  std::string str() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& [var, exp] : factors_) {
      if (!s.empty()) s += '*';
      s += 't' + std::to_string(var);
      if (exp > 1) s += '^' + std::to_string(exp);
    }
    return s;
  }

 private:
  std::vector<Factor> factors_;
};

class Polynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  Polynomial() = default;
  Polynomial(const Rational& c) {  // NOLINT: constants promote implicitly
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
  }
  Polynomial(std::int64_t c) : Polynomial(Rational(c)) {}  // NOLINT

  static Polynomial variable(VarId v) {
    Polynomial p;
    p.terms_.push_back({Monomial::variable(v), Rational(1)});
    return p;
  }

  // Sorts and merges an arbitrary term list into normal form.
  static Polynomial from_terms(std::vector<Term> raw) {
    Polynomial p;
    if (raw.empty()) return p;
    std::sort(raw.begin(), raw.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    p.terms_.reserve(raw.size());
    for (auto& t : raw) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff += t.coeff;
      } else {
        if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
        p.terms_.push_back(std::move(t));
      }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const {
    for (const auto& t : terms_)
      if (t.mono.is_one()) return t.coeff;
    return Rational();
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() && j != b.terms_.end()) {
      auto c = i->mono <=> j->mono;
      if (c < 0) {
        r.terms_.push_back(*i++);
      } else if (c > 0) {
        r.terms_.push_back(*j++);
      } else {
        Rational s = i->coeff + j->coeff;
        if (!s.is_zero()) r.terms_.push_back({i->mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    r.terms_.insert(r.terms_.end(), i, a.terms_.end());
    r.terms_.insert(r.terms_.end(), j, b.terms_.end());
    return r;
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Rational& c) {
    if (c.is_zero()) return Polynomial();
    Polynomial r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_)
      for (const auto& y : b.terms_) raw.push_back({x.mono * y.mono, x.coeff * y.coeff});
    return from_terms(std::move(raw));
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
  }

  // value_of(VarId) -> Rational for every variable that occurs.
  template <class ValueOf>
  Rational evaluate(ValueOf&& value_of) const {
    Rational total;
    for (const auto& t : terms_) {
      Rational v = t.coeff;
      for (const auto& [var, exp] : t.mono.factors()) {
        Rational x = value_of(VarId{var});
        for (std::uint32_t e = 0; e < exp && !v.is_zero(); ++e) v *= x;
      }
      total += v;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      Rational c = t.coeff;
      if (s.empty()) {
        if (c.sign() < 0) {
          s += '-';
          c = -c;
        }
      } else {
        s += c.sign() < 0 ? " - " : " + ";
        if (c.sign() < 0) c = -c;
      }
      if (t.mono.is_one()) {
        s += c.str();
      } else {
        if (!c.is_one()) s += c.str() + '*';
        s += t.mono.str();
      }
    }
    return s;
  }

 private:
  std::vector<Term> terms_;

  friend class PolynomialAccumulator;
};

// Collects raw terms from many products and normalizes once.
class PolynomialAccumulator {
 public:
  bool empty() const { return raw_.empty(); }

  void add(const Polynomial& p, const Rational& scale) {
    for (const auto& t : p.terms_) raw_.push_back({t.mono, t.coeff * scale});
  }

  void add_product(const Polynomial& p, const Polynomial& q, const Rational& scale) {
    for (const auto& x : p.terms_) {
      Rational xs = x.coeff * scale;
      for (const auto& y : q.terms_) raw_.push_back({x.mono * y.mono, xs * y.coeff});
    }
  }

  Polynomial finish() {
    Polynomial p = Polynomial::from_terms(std::move(raw_));
    raw_.clear();
    return p;
  }

 private:
  std::vector<Polynomial::Term> raw_;
};

}  // namespace chtrace
