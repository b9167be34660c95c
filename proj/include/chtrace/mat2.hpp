#pragma once

// 2x2 matrices over a noncommutative ring. Traces are ring elements and are
// never moved past other factors: tr(A)A, A tr(A) and A tr(A) A are distinct.

#include "chtrace/ring.hpp"

#include <array>
#include <string>

namespace chtrace {

class Mat2 {
 public:
  Mat2(RingElement a11, RingElement a12, RingElement a21, RingElement a22)
      : e_{std::move(a11), std::move(a12), std::move(a21), std::move(a22)} {
    for (const auto& x : e_)
      if (!same_ring(x.ring(), e_[0].ring())) throw RingMismatch("matrix entries over different rings");
  }

  static Mat2 zero(const Ring& ring) { return diagonal(RingElement(ring)); }
  static Mat2 identity(const Ring& ring) { return diagonal(RingElement::unit(ring)); }
  // r on the diagonal; multiplying by it from the left (right) is scalar_left (scalar_right).
  static Mat2 diagonal(const RingElement& r) {
    RingElement z(r.ring());
    return Mat2(r, z, z, r);
  }

  const Ring& ring() const { return e_[0].ring(); }
  // Zero-based row and column.
  const RingElement& at(std::size_t r, std::size_t c) const { return e_[r * 2 + c]; }
  const std::array<RingElement, 4>& entries() const { return e_; }

  bool is_zero() const {
    for (const auto& x : e_)
      if (!x.is_zero()) return false;
    return true;
  }

  friend Mat2 operator+(const Mat2& m, const Mat2& n) {
    return Mat2(m.e_[0] + n.e_[0], m.e_[1] + n.e_[1], m.e_[2] + n.e_[2], m.e_[3] + n.e_[3]);
  }
  friend Mat2 operator-(const Mat2& m, const Mat2& n) {
    return Mat2(m.e_[0] - n.e_[0], m.e_[1] - n.e_[1], m.e_[2] - n.e_[2], m.e_[3] - n.e_[3]);
  }
  Mat2 operator-() const { return Mat2(-e_[0], -e_[1], -e_[2], -e_[3]); }
  friend Mat2 operator*(const Rational& c, const Mat2& m) {
    return Mat2(c * m.e_[0], c * m.e_[1], c * m.e_[2], c * m.e_[3]);
  }
  friend Mat2 operator*(const Mat2& m, const Mat2& n) {
    return Mat2(m.e_[0] * n.e_[0] + m.e_[1] * n.e_[2], m.e_[0] * n.e_[1] + m.e_[1] * n.e_[3],
                m.e_[2] * n.e_[0] + m.e_[3] * n.e_[2], m.e_[2] * n.e_[1] + m.e_[3] * n.e_[3]);
  }
  Mat2& operator+=(const Mat2& o) { return *this = *this + o; }
  Mat2& operator-=(const Mat2& o) { return *this = *this - o; }

  friend bool operator==(const Mat2& m, const Mat2& n) { return m.e_ == n.e_; }

  std::string str() const {
    return "[[" + e_[0].str() + ", " + e_[1].str() + "], [" + e_[2].str() + ", " + e_[3].str() + "]]";
  }

 private:
  std::array<RingElement, 4> e_;
};

inline RingElement trace(const Mat2& m) { return m.at(0, 0) + m.at(1, 1); }

inline Mat2 scalar_left(const RingElement& r, const Mat2& m) {
  return Mat2(r * m.at(0, 0), r * m.at(0, 1), r * m.at(1, 0), r * m.at(1, 1));
}

inline Mat2 scalar_right(const Mat2& m, const RingElement& r) {
  return Mat2(m.at(0, 0) * r, m.at(0, 1) * r, m.at(1, 0) * r, m.at(1, 1) * r);
}

// Left-associated: M^k = (...(M*M)*M...), M^0 = I.
inline Mat2 mat_pow(const Mat2& m, unsigned k) {
  if (k == 0) return Mat2::identity(m.ring());
  Mat2 out = m;
  for (unsigned i = 1; i < k; ++i) out = out * m;
  return out;
}

}  // namespace chtrace
