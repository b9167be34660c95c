#pragma once

// Finite-dimensional associative unital rings given by structure constants,
// and their elements with Polynomial coordinates.

#include "chtrace/errors.hpp"
#include "chtrace/polynomial.hpp"
#include "chtrace/rational.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chtrace {

struct StructureTerm {
  std::uint32_t index;
  Rational coeff;
};

// Sparse linear combination of basis elements with rational coefficients.
using BasisExpansion = std::vector<StructureTerm>;

enum class RingKind { rat, grassmann, full, u3star };

inline constexpr std::size_t kMaxU3starDim = 64;
inline constexpr unsigned kMaxGrassmannGenerators = 8;

class RingDescriptor;
using Ring = std::shared_ptr<const RingDescriptor>;

class RingDescriptor {
 public:
  RingDescriptor(RingKind kind, std::string name, unsigned parameter, std::vector<std::string> labels,
                 BasisExpansion unit, std::vector<BasisExpansion> table, Ring inner)
      : kind_(kind),
        name_(std::move(name)),
        parameter_(parameter),
        labels_(std::move(labels)),
        unit_(std::move(unit)),
        table_(std::move(table)),
        inner_(std::move(inner)) {}

  RingKind kind() const { return kind_; }
  // Canonical construction expression, e.g. "u3star(grassmann:2)". Two
  // descriptors are the same ring iff their names agree.
  const std::string& name() const { return name_; }
  // Generator count for grassmann, matrix size for full, 0 otherwise.
  unsigned parameter() const { return parameter_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const BasisExpansion& unit() const { return unit_; }
  const BasisExpansion& product(std::size_t i, std::size_t j) const { return table_[i * dim() + j]; }
  // The base ring S of a u3star(S) construction.
  const Ring& inner() const { return inner_; }

  std::optional<std::uint32_t> index_of(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<std::uint32_t>(i);
    return std::nullopt;
  }

  std::size_t nonzero_products() const {
    std::size_t n = 0;
    for (const auto& e : table_) n += !e.empty();
    return n;
  }

 private:
  RingKind kind_;
  std::string name_;
  unsigned parameter_;
  std::vector<std::string> labels_;
  BasisExpansion unit_;
  std::vector<BasisExpansion> table_;
  Ring inner_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && a->name() == b->name()); }

// ---------------------------------------------------------------------------
// Constructors

inline Ring make_rat() {
  return std::make_shared<RingDescriptor>(RingKind::rat, "rat", 0, std::vector<std::string>{"1"},
                                          BasisExpansion{{0, Rational(1)}},
                                          std::vector<BasisExpansion>{{{0, Rational(1)}}}, nullptr);
}

namespace detail {

inline std::string grassmann_label(std::uint32_t mask) {
  if (mask == 0) return "1";
  std::string s = "v{";
  bool first = true;
  for (unsigned g = 0; g < 32; ++g) {
    if (!(mask & (1u << g))) continue;
    if (!first) s += ',';
    s += std::to_string(g + 1);
    first = false;
  }
  return s + "}";
}

// Pairs (s, t) with s in S, t in T and s > t.
inline unsigned grassmann_inversions(std::uint32_t s, std::uint32_t t) {
  unsigned n = 0;
  for (unsigned g = 0; g < 32; ++g)
    if (s & (1u << g)) n += std::popcount(t & ((1u << g) - 1));
  return n;
}

inline std::string prime_label(const std::string& label) {
  static const std::string kSep = "⊗";
  std::string out;
  std::size_t pos = 0;
  while (true) {
    auto next = label.find(kSep, pos);
    out += label.substr(pos, next - pos) + "′";
    if (next == std::string::npos) break;
    out += kSep;
    pos = next + kSep.size();
  }
  return out;
}

}  // namespace detail

inline Ring make_grassmann(unsigned r) {
  if (r < 1 || r > kMaxGrassmannGenerators)
    throw BoundError("grassmann generator count " + std::to_string(r) + " outside [1," +
                     std::to_string(kMaxGrassmannGenerators) + "]");
  const std::uint32_t dim = 1u << r;
  std::vector<std::string> labels;
  for (std::uint32_t m = 0; m < dim; ++m) labels.push_back(detail::grassmann_label(m));
  std::vector<BasisExpansion> table(std::size_t{dim} * dim);
  for (std::uint32_t s = 0; s < dim; ++s)
    for (std::uint32_t t = 0; t < dim; ++t) {
      if (s & t) continue;
      int sign = (detail::grassmann_inversions(s, t) % 2) ? -1 : 1;
      table[std::size_t{s} * dim + t] = {{s | t, Rational(sign)}};
    }
  return std::make_shared<RingDescriptor>(RingKind::grassmann, "grassmann:" + std::to_string(r), r,
                                          std::move(labels), BasisExpansion{{0, Rational(1)}}, std::move(table),
                                          nullptr);
}

inline Ring make_full(unsigned n) {
  if (n < 2 || n > 4) throw BoundError("full matrix size " + std::to_string(n) + " outside [2,4]");
  const std::uint32_t dim = n * n;
  std::vector<std::string> labels;
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  std::vector<BasisExpansion> table(std::size_t{dim} * dim);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      for (unsigned l = 0; l < n; ++l) table[(i * n + j) * dim + (j * n + l)] = {{i * n + l, Rational(1)}};
  BasisExpansion unit;
  for (unsigned i = 0; i < n; ++i) unit.push_back({i * n + i, Rational(1)});
  return std::make_shared<RingDescriptor>(RingKind::full, "full:" + std::to_string(n), n, std::move(labels),
                                          std::move(unit), std::move(table), nullptr);
}

// Slot order of the U3* basis: aI + bE12 + cE13 + dE23.
enum class U3Slot : std::uint32_t { identity = 0, e12 = 1, e13 = 2, e23 = 3 };

inline Ring make_u3star(const Ring& inner) {
  const std::size_t n = inner->dim();
  if (4 * n > kMaxU3starDim)
    throw BoundError("u3star(" + inner->name() + ") has dimension " + std::to_string(4 * n) + " > " +
                     std::to_string(kMaxU3starDim));
  static const std::array<std::string, 4> kSlots = {"I", "E12", "E13", "E23"};
  const std::size_t dim = 4 * n;
  std::vector<std::string> labels;
  for (std::size_t s = 0; s < 4; ++s)
    for (std::size_t i = 0; i < n; ++i)
      labels.push_back(inner->kind() == RingKind::rat ? kSlots[s]
                                                      : kSlots[s] + "⊗" + detail::prime_label(inner->label(i)));

  // (a,b,c,d)(a',b',c',d') = (aa', ab'+ba', ac'+ca'+bd', ad'+da')
  auto slot_of = [](std::uint32_t s, std::uint32_t t) -> int {
    if (s == 0) return static_cast<int>(t);
    if (t == 0) return static_cast<int>(s);
    if (s == 1 && t == 3) return 2;
    return -1;
  };
  std::vector<BasisExpansion> table(dim * dim);
  for (std::uint32_t s = 0; s < 4; ++s)
    for (std::uint32_t t = 0; t < 4; ++t) {
      int target = slot_of(s, t);
      if (target < 0) continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          BasisExpansion& out = table[(s * n + i) * dim + (t * n + j)];
          for (const auto& term : inner->product(i, j))
            out.push_back({static_cast<std::uint32_t>(target * n + term.index), term.coeff});
        }
    }
  BasisExpansion unit;
  for (const auto& term : inner->unit()) unit.push_back(term);  // identity slot occupies indices [0, n)
  return std::make_shared<RingDescriptor>(RingKind::u3star, "u3star(" + inner->name() + ")", 0, std::move(labels),
                                          std::move(unit), std::move(table), inner);
}

// ---------------------------------------------------------------------------
// Elements

class RingElement {
 public:
  using Coord = std::pair<std::uint32_t, Polynomial>;

  explicit RingElement(Ring ring) : ring_(std::move(ring)) {}

  static RingElement basis(const Ring& ring, std::uint32_t index, const Polynomial& coeff = Polynomial(1)) {
    RingElement x(ring);
    if (index >= ring->dim()) throw BoundError("basis index out of range");
    if (!coeff.is_zero()) x.coords_.emplace_back(index, coeff);
    return x;
  }

  static RingElement from_expansion(const Ring& ring, const BasisExpansion& e) {
    RingElement x(ring);
    for (const auto& t : e) x = x + basis(ring, t.index, Polynomial(t.coeff));
    return x;
  }

  static RingElement unit(const Ring& ring) { return from_expansion(ring, ring->unit()); }

  // Coordinates need not be sorted or distinct; zeros are dropped.
  static RingElement from_coords(const Ring& ring, std::vector<Coord> coords) {
    RingElement x(ring);
    for (auto& [i, p] : coords) x = x + basis(ring, i, p);
    return x;
  }

  const Ring& ring() const { return ring_; }
  std::span<const Coord> coords() const { return coords_; }
  bool is_zero() const { return coords_.empty(); }

  const Polynomial& coord(std::uint32_t index) const {
    static const Polynomial kZero;
    for (const auto& [i, p] : coords_)
      if (i == index) return p;
    return kZero;
  }

  friend RingElement operator+(const RingElement& x, const RingElement& y) {
    check_same(x, y);
    RingElement r(x.ring_);
    r.coords_.reserve(x.coords_.size() + y.coords_.size());
    auto i = x.coords_.begin();
    auto j = y.coords_.begin();
    while (i != x.coords_.end() && j != y.coords_.end()) {
      if (i->first < j->first) {
        r.coords_.push_back(*i++);
      } else if (j->first < i->first) {
        r.coords_.push_back(*j++);
      } else {
        Polynomial s = i->second + j->second;
        if (!s.is_zero()) r.coords_.emplace_back(i->first, std::move(s));
        ++i;
        ++j;
      }
    }
    r.coords_.insert(r.coords_.end(), i, x.coords_.end());
    r.coords_.insert(r.coords_.end(), j, y.coords_.end());
    return r;
  }

  RingElement operator-() const {
    RingElement r = *this;
    for (auto& c : r.coords_) c.second = -c.second;
    return r;
  }

  friend RingElement operator-(const RingElement& x, const RingElement& y) { return x + (-y); }

  friend RingElement operator*(const RingElement& x, const Rational& c) {
    if (c.is_zero()) return RingElement(x.ring_);
    RingElement r = x;
    for (auto& co : r.coords_) co.second = co.second * c;
    return r;
  }
  friend RingElement operator*(const Rational& c, const RingElement& x) { return x * c; }

  // Polynomial coefficients are central.
  RingElement scaled(const Polynomial& p) const {
    RingElement r(ring_);
    for (const auto& [i, q] : coords_) {
      Polynomial s = q * p;
      if (!s.is_zero()) r.coords_.emplace_back(i, std::move(s));
    }
    return r;
  }

  friend RingElement operator*(const RingElement& x, const RingElement& y) {
    check_same(x, y);
    const RingDescriptor& d = *x.ring_;
    std::vector<PolynomialAccumulator> acc(d.dim());
    for (const auto& [i, p] : x.coords_)
      for (const auto& [j, q] : y.coords_) {
        const BasisExpansion& e = d.product(i, j);
        if (e.empty()) continue;
        if (e.size() == 1) {
          acc[e[0].index].add_product(p, q, e[0].coeff);
          continue;
        }
        Polynomial pq = p * q;
        for (const auto& t : e) acc[t.index].add(pq, t.coeff);
      }
    RingElement r(x.ring_);
    for (std::uint32_t k = 0; k < acc.size(); ++k) {
      if (acc[k].empty()) continue;
      Polynomial p = acc[k].finish();
      if (!p.is_zero()) r.coords_.emplace_back(k, std::move(p));
    }
    return r;
  }

  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }

  friend bool operator==(const RingElement& x, const RingElement& y) {
    if (!same_ring(x.ring_, y.ring_)) return false;
    if (x.coords_.size() != y.coords_.size()) return false;
    for (std::size_t i = 0; i < x.coords_.size(); ++i)
      if (x.coords_[i].first != y.coords_[i].first || !(x.coords_[i].second == y.coords_[i].second)) return false;
    return true;
  }

  // Replaces every variable by a rational value.
  template <class ValueOf>
  RingElement substitute(ValueOf&& value_of) const {
    RingElement r(ring_);
    for (const auto& [i, p] : coords_) {
      Rational v = p.evaluate(value_of);
      if (!v.is_zero()) r.coords_.emplace_back(i, Polynomial(v));
    }
    return r;
  }

  // "v{1} + 2*v{1,2} + (t0 - t3)*E13".
  std::string str() const {
    if (coords_.empty()) return "0";
    std::string s;
    for (const auto& [i, p] : coords_) {
      std::string term;
      const std::string& label = ring_->label(i);
      if (p.is_constant()) {
        Rational c = p.constant_value();
        if (!s.empty()) {
          s += c.sign() < 0 ? " - " : " + ";
          if (c.sign() < 0) c = -c;
        } else if (c.sign() < 0) {
          s += "-";
          c = -c;
        }
        term = c.is_one() ? label : c.str() + "*" + label;
      } else {
        if (!s.empty()) s += " + ";
        term = (p.size() == 1 && p.terms()[0].coeff.is_one() ? p.str() : "(" + p.str() + ")") + "*" + label;
      }
      s += term;
    }
    return s;
  }

 private:
  Ring ring_;
  std::vector<Coord> coords_;  // ascending index, nonzero polynomials

  static void check_same(const RingElement& x, const RingElement& y) {
    if (!same_ring(x.ring_, y.ring_))
      throw RingMismatch("elements of " + x.ring_->name() + " and " + y.ring_->name() + " cannot be combined");
  }
};

inline RingElement commutator(const RingElement& x, const RingElement& y) { return x * y - y * x; }

// Sum of t_i * b_i over the given basis indices, one fresh variable each.
inline RingElement generic_element_on(const Ring& ring, std::span<const std::uint32_t> indices, VarAllocator& vars) {
  std::vector<RingElement::Coord> coords;
  auto ids = vars.fresh(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) coords.emplace_back(indices[k], Polynomial::variable(ids[k]));
  return RingElement::from_coords(ring, std::move(coords));
}

inline RingElement generic_element(const Ring& ring, VarAllocator& vars) {
  std::vector<std::uint32_t> all(ring->dim());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  return generic_element_on(ring, all, vars);
}

// Generic element supported on the degree-1 part v_1..v_r of a Grassmann ring.
inline RingElement generic_odd_element(const Ring& ring, VarAllocator& vars) {
  if (ring->kind() != RingKind::grassmann) throw PreconditionError("odd elements need a grassmann ring");
  std::vector<std::uint32_t> gens;
  for (unsigned g = 0; g < ring->parameter(); ++g) gens.push_back(1u << g);
  return generic_element_on(ring, gens, vars);
}

// ---------------------------------------------------------------------------
// U3*(S) structure: slot extraction, the 3x3 embedding oracle and the
// commutator decomposition [x,y] = [a,e]I + C + alpha*E13.

namespace detail {
inline void require_u3star(const Ring& r) {
  if (r->kind() != RingKind::u3star) throw PreconditionError(r->name() + " is not a u3star construction");
}
}  // namespace detail

// The S-coordinate of x in one slot.
inline RingElement u3star_part(const RingElement& x, U3Slot slot) {
  detail::require_u3star(x.ring());
  const Ring& inner = x.ring()->inner();
  const std::uint32_t n = static_cast<std::uint32_t>(inner->dim());
  const std::uint32_t s = static_cast<std::uint32_t>(slot);
  std::vector<RingElement::Coord> coords;
  for (const auto& [i, p] : x.coords())
    if (i / n == s) coords.emplace_back(i % n, p);
  return RingElement::from_coords(inner, std::move(coords));
}

// Places an element of S into one slot of U3*(S).
inline RingElement u3star_lift(const Ring& outer, const RingElement& part, U3Slot slot) {
  detail::require_u3star(outer);
  if (!same_ring(outer->inner(), part.ring())) throw RingMismatch("lifted element is not over the base ring");
  const std::uint32_t n = static_cast<std::uint32_t>(part.ring()->dim());
  const std::uint32_t s = static_cast<std::uint32_t>(slot);
  std::vector<RingElement::Coord> coords;
  for (const auto& [i, p] : part.coords()) coords.emplace_back(s * n + i, p);
  return RingElement::from_coords(outer, std::move(coords));
}

// Dense 3x3 matrix over a ring; exists only as an independent check of the
// U3* tuple law.
class Upper3 {
 public:
  explicit Upper3(const Ring& ring) : entries_(9, RingElement(ring)) {}
  RingElement& at(std::size_t r, std::size_t c) { return entries_[r * 3 + c]; }
  const RingElement& at(std::size_t r, std::size_t c) const { return entries_[r * 3 + c]; }

  friend Upper3 operator*(const Upper3& a, const Upper3& b) {
    Upper3 out(a.entries_[0].ring());
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t k = 0; k < 3; ++k) out.at(r, c) += a.at(r, k) * b.at(k, c);
    return out;
  }
  friend Upper3 operator+(const Upper3& a, const Upper3& b) {
    Upper3 out(a.entries_[0].ring());
    for (std::size_t i = 0; i < 9; ++i) out.entries_[i] = a.entries_[i] + b.entries_[i];
    return out;
  }
  friend bool operator==(const Upper3&, const Upper3&) = default;

 private:
  std::vector<RingElement> entries_;
};

inline Upper3 u3star_embed_oracle(const RingElement& x) {
  detail::require_u3star(x.ring());
  Upper3 m(x.ring()->inner());
  RingElement a = u3star_part(x, U3Slot::identity);
  for (std::size_t i = 0; i < 3; ++i) m.at(i, i) = a;
  m.at(0, 1) = u3star_part(x, U3Slot::e12);
  m.at(0, 2) = u3star_part(x, U3Slot::e13);
  m.at(1, 2) = u3star_part(x, U3Slot::e23);
  return m;
}

struct U3CommutatorParts {
  RingElement center;  // [a,e], over S
  RingElement strict;  // C, over U3*(S)
  RingElement alpha;   // bh - fd, over S
};

inline U3CommutatorParts u3star_commutator_parts(const RingElement& x, const RingElement& y) {
  detail::require_u3star(x.ring());
  if (!same_ring(x.ring(), y.ring())) throw RingMismatch("commutator parts need elements of one ring");
  const Ring& outer = x.ring();
  RingElement a = u3star_part(x, U3Slot::identity), b = u3star_part(x, U3Slot::e12);
  RingElement c = u3star_part(x, U3Slot::e13), d = u3star_part(x, U3Slot::e23);
  RingElement e = u3star_part(y, U3Slot::identity), f = u3star_part(y, U3Slot::e12);
  RingElement g = u3star_part(y, U3Slot::e13), h = u3star_part(y, U3Slot::e23);
  RingElement strict = u3star_lift(outer, commutator(a, f) + commutator(b, e), U3Slot::e12) +
                       u3star_lift(outer, commutator(a, g) + commutator(c, e), U3Slot::e13) +
                       u3star_lift(outer, commutator(a, h) + commutator(d, e), U3Slot::e23);
  return {commutator(a, e), std::move(strict), b * h - f * d};
}

inline RingElement u3star_reassemble(const Ring& outer, const U3CommutatorParts& parts) {
  return u3star_lift(outer, parts.center, U3Slot::identity) + parts.strict +
         u3star_lift(outer, parts.alpha, U3Slot::e13);
}

}  // namespace chtrace
