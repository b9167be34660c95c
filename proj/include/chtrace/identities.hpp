#pragma once

// Evaluators for the commutator identities and 2x2 trace identities. Every
// evaluator returns a residual; an identity holds iff its residual is zero.

#include "chtrace/errors.hpp"
#include "chtrace/mat2.hpp"
#include "chtrace/ring.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chtrace {

// ---------------------------------------------------------------------------
// Brackets

// [[...[[x1,x2],x3],...],x_{m+1}]
inline RingElement lie_nilpotent_bracket(unsigned m, std::span<const RingElement> xs) {
  if (m < 1 || xs.size() != m + 1)
    throw PreconditionError("nilpotent bracket of index " + std::to_string(m) + " needs " + std::to_string(m + 1) +
                            " arguments, got " + std::to_string(xs.size()));
  RingElement acc = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) acc = commutator(acc, xs[i]);
  return acc;
}

// Balanced bracket: [x1..x_{2^{k}}] = [[first half], [second half]], [x1,x2] at k = 1.
inline RingElement lie_solvable_bracket(unsigned k, std::span<const RingElement> xs) {
  if (k < 1 || k > 16 || xs.size() != (std::size_t{1} << k))
    throw PreconditionError("solvable bracket of index " + std::to_string(k) + " needs 2^" + std::to_string(k) +
                            " arguments, got " + std::to_string(xs.size()));
  if (k == 1) return commutator(xs[0], xs[1]);
  const std::size_t half = xs.size() / 2;
  return commutator(lie_solvable_bracket(k - 1, xs.first(half)), lie_solvable_bracket(k - 1, xs.subspan(half)));
}

// ---------------------------------------------------------------------------
// Shared pieces

namespace detail {

inline const Rational& half() {
  static const Rational h(1, 2);
  return h;
}

// tr(X) as the diagonal matrix diag(tr X, tr X); products with it keep the
// written left/right position of the trace.
inline Mat2 tr_diag(const Mat2& x) { return Mat2::diagonal(trace(x)); }

inline void require_traceless(const Mat2& c, std::string_view who) {
  if (!trace(c).is_zero()) throw PreconditionError(std::string(who) + " needs a traceless matrix");
}

}  // namespace detail

inline Mat2 traceless_matrix(const RingElement& c11, const RingElement& c12, const RingElement& c21) {
  return Mat2(c11, c12, c21, -c11);
}

// ---------------------------------------------------------------------------
// 2x2 Cayley-Hamilton with commutator correction

inline Mat2 prop31_display(const Mat2& a) {
  const auto& a11 = a.at(0, 0);
  const auto& a12 = a.at(0, 1);
  const auto& a21 = a.at(1, 0);
  const auto& a22 = a.at(1, 1);
  RingElement diag = detail::half() * (commutator(a11, a22) + commutator(a12, a21));
  return Mat2(diag, commutator(a12, a22), commutator(a21, a11), -diag);
}

inline Mat2 prop31_lhs(const Mat2& a) {
  Mat2 t = detail::tr_diag(a);
  Mat2 a2 = a * a;
  return a2 - t * a + detail::half() * (t * t - detail::tr_diag(a2));
}

// Zero over every ring.
inline Mat2 prop31_residual(const Mat2& a) { return prop31_lhs(a) - prop31_display(a); }

inline Mat2 cor32_display(const Mat2& b) {
  const auto& b11 = b.at(0, 0);
  const auto& b12 = b.at(0, 1);
  const auto& b21 = b.at(1, 0);
  RingElement d = detail::half() * commutator(b12, b21);
  return Mat2(d, -commutator(b12, b11), commutator(b21, b11), -d);
}

// B^2 - 1/2 tr(B^2) I, the one-step square of a traceless matrix.
inline Mat2 traceless_square_step(const Mat2& b) {
  Mat2 b2 = b * b;
  return b2 - detail::half() * detail::tr_diag(b2);
}

inline Mat2 cor32_residual(const Mat2& b) {
  detail::require_traceless(b, "cor32");
  return traceless_square_step(b) - cor32_display(b);
}

inline Mat2 thm33_residual(const Mat2& c) {
  detail::require_traceless(c, "thm33");
  return traceless_square_step(traceless_square_step(c));
}

// 1/2 [[-[[c12,c11],[c21,c11]], [[c12,c11],[c12,c21]]],
//      [[[c21,c11],[c12,c21]],   [[c12,c11],[c21,c11]]]]
inline Mat2 thm33_display(const Mat2& c) {
  detail::require_traceless(c, "thm33");
  const auto& c11 = c.at(0, 0);
  const auto& c12 = c.at(0, 1);
  const auto& c21 = c.at(1, 0);
  RingElement p = commutator(c12, c11);
  RingElement q = commutator(c21, c11);
  RingElement r = commutator(c12, c21);
  const Rational& h = detail::half();
  RingElement pq = commutator(p, q);
  return Mat2(-(h * pq), h * commutator(p, r), h * commutator(q, r), h * pq);
}

// C^4 - 1/2 tr(C^2)C^2 - 1/2 C^2 tr(C^2) + 1/2 (tr^2(C^2) - tr(C^4)) I
inline Mat2 cor34_residual(const Mat2& c) {
  detail::require_traceless(c, "cor34");
  const Rational& h = detail::half();
  Mat2 c2 = c * c;
  Mat2 c4 = c2 * c2;
  Mat2 s = detail::tr_diag(c2);
  return c4 - h * (s * c2) - h * (c2 * s) + h * (s * s - detail::tr_diag(c4));
}

// Returns C^4 after checking tr(C) = tr(C^2) = tr(C^4) = 0 exactly.
inline Mat2 cor35_check(const Mat2& c) {
  detail::require_traceless(c, "cor35");
  Mat2 c2 = c * c;
  if (!trace(c2).is_zero()) throw PreconditionError("cor35 needs tr(C^2) = 0");
  Mat2 c4 = c2 * c2;
  if (!trace(c4).is_zero()) throw PreconditionError("cor35 needs tr(C^4) = 0");
  return c4;
}

// cor34 at C = A - 1/2 tr(A) I.
inline Mat2 cor36_residual(const Mat2& a) {
  Mat2 c = a - detail::half() * detail::tr_diag(a);
  return cor34_residual(c);
}

// ---------------------------------------------------------------------------
// Trace polynomials written as words in A-powers and trace factors

enum class TraceFactor {
  a1,
  a2,
  a3,
  a4,
  tr_a1,       // tr(A)
  tr_a2,       // tr(A^2)
  tr_a3,       // tr(A^3)
  tr_a4,       // tr(A^4)
  tr_a2_t_a1,  // tr(A^2 tr(A) A)
  tr_a1_t_a2,  // tr(A tr(A) A^2)
  tr_a1_t_a1,  // tr(A tr(A) A)
  tr_a1_tt_a1  // tr(A tr^2(A) A)
};

struct TraceTerm {
  std::int64_t num;
  std::int64_t den;
  std::vector<TraceFactor> word;  // empty word is I
};

inline std::string_view factor_name(TraceFactor f) {
  switch (f) {
    case TraceFactor::a1: return "A";
    case TraceFactor::a2: return "A^2";
    case TraceFactor::a3: return "A^3";
    case TraceFactor::a4: return "A^4";
    case TraceFactor::tr_a1: return "tr(A)";
    case TraceFactor::tr_a2: return "tr(A^2)";
    case TraceFactor::tr_a3: return "tr(A^3)";
    case TraceFactor::tr_a4: return "tr(A^4)";
    case TraceFactor::tr_a2_t_a1: return "tr(A^2tr(A)A)";
    case TraceFactor::tr_a1_t_a2: return "tr(Atr(A)A^2)";
    case TraceFactor::tr_a1_t_a1: return "tr(Atr(A)A)";
    case TraceFactor::tr_a1_tt_a1: return "tr(Atr^2(A)A)";
  }
  return "?";
}

// Degree-4 trace identity for rings satisfying [[x,y],[x,z]] = 0, term by term.
inline const std::vector<TraceTerm>& thm37_terms() {
  using F = TraceFactor;
  static const std::vector<TraceTerm> terms = {
      {1, 1, {F::a4}},
      {-1, 2, {F::a2, F::tr_a1, F::a1}},
      {-1, 2, {F::a1, F::tr_a1, F::a2}},
      {-1, 2, {F::a3, F::tr_a1}},
      {-1, 2, {F::tr_a1, F::a3}},
      {1, 2, {F::a2, F::tr_a1, F::tr_a1}},
      {1, 2, {F::tr_a1, F::tr_a1, F::a2}},
      {-1, 2, {F::a2, F::tr_a2}},
      {-1, 2, {F::tr_a2, F::a2}},
      {1, 4, {F::a1, F::tr_a1, F::a1, F::tr_a1}},
      {1, 4, {F::tr_a1, F::a1, F::tr_a1, F::a1}},
      {1, 4, {F::tr_a1, F::a2, F::tr_a1}},
      {1, 4, {F::a1, F::tr_a1, F::tr_a1, F::a1}},
      {-1, 4, {F::tr_a1, F::a1, F::tr_a1, F::tr_a1}},
      {-1, 4, {F::tr_a1, F::tr_a1, F::a1, F::tr_a1}},
      {1, 4, {F::tr_a1, F::a1, F::tr_a2}},
      {1, 4, {F::tr_a2, F::a1, F::tr_a1}},
      {-1, 4, {F::a1, F::tr_a1, F::tr_a1, F::tr_a1}},
      {-1, 4, {F::tr_a1, F::tr_a1, F::tr_a1, F::a1}},
      {1, 4, {F::a1, F::tr_a1, F::tr_a2}},
      {1, 4, {F::tr_a2, F::tr_a1, F::a1}},
      {-1, 2, {F::tr_a1, F::tr_a1, F::tr_a2}},
      {-1, 2, {F::tr_a2, F::tr_a1, F::tr_a1}},
      {1, 2, {F::tr_a2, F::tr_a2}},
      {1, 4, {F::tr_a2_t_a1}},
      {1, 4, {F::tr_a1_t_a2}},
      {1, 4, {F::tr_a3, F::tr_a1}},
      {1, 4, {F::tr_a1, F::tr_a3}},
      {-1, 8, {F::tr_a1, F::tr_a1_t_a1}},
      {-1, 8, {F::tr_a1_t_a1, F::tr_a1}},
      {-1, 8, {F::tr_a1_tt_a1}},
      {-1, 8, {F::tr_a1, F::tr_a2, F::tr_a1}},
      {1, 2, {F::tr_a1, F::tr_a1, F::tr_a1, F::tr_a1}},
      {-1, 2, {F::tr_a4}},
  };
  return terms;
}

// Degree-4 trace identity for rings that are Lie-nilpotent of index 2.
inline const std::vector<TraceTerm>& domokos_terms() {
  using F = TraceFactor;
  static const std::vector<TraceTerm> terms = {
      {1, 1, {F::a4}},
      {-2, 1, {F::tr_a1, F::a3}},
      {2, 1, {F::tr_a1, F::tr_a1, F::a2}},
      {-1, 1, {F::tr_a2, F::a2}},
      {1, 2, {F::tr_a1, F::tr_a2, F::a1}},
      {1, 2, {F::tr_a2, F::tr_a1, F::a1}},
      {-1, 1, {F::tr_a1, F::tr_a1, F::tr_a1, F::a1}},
      {1, 4, {F::tr_a1, F::tr_a1, F::tr_a1, F::tr_a1}},
      {1, 4, {F::tr_a2, F::tr_a2}},
      {-5, 8, {F::tr_a1, F::tr_a1, F::tr_a2}},
      {1, 8, {F::tr_a2, F::tr_a1, F::tr_a1}},
      {-1, 2, {F::tr_a3, F::tr_a1}},
      {1, 2, {F::tr_a1, F::tr_a3}},
  };
  return terms;
}

// Caches A^k and the trace factors of one matrix.
class TraceFactorTable {
 public:
  explicit TraceFactorTable(const Mat2& a) : a_(a) {}

  const Mat2& get(TraceFactor f) {
    auto& slot = cache_[static_cast<std::size_t>(f)];
    if (!slot) slot = compute(f);
    return *slot;
  }

  Mat2 evaluate(const TraceTerm& term) {
    Mat2 m = term.word.empty() ? Mat2::identity(a_.ring()) : get(term.word[0]);
    for (std::size_t i = 1; i < term.word.size(); ++i) m = m * get(term.word[i]);
    return Rational(term.num, term.den) * m;
  }

  Mat2 evaluate(const std::vector<TraceTerm>& terms) {
    Mat2 sum = Mat2::zero(a_.ring());
    for (const auto& t : terms) sum += evaluate(t);
    return sum;
  }

 private:
  Mat2 a_;
  std::array<std::optional<Mat2>, 12> cache_;

  Mat2 compute(TraceFactor f) {
    using F = TraceFactor;
    switch (f) {
      case F::a1: return a_;
      case F::a2: return get(F::a1) * a_;
      case F::a3: return get(F::a2) * a_;
      case F::a4: return get(F::a3) * a_;
      case F::tr_a1: return detail::tr_diag(a_);
      case F::tr_a2: return detail::tr_diag(get(F::a2));
      case F::tr_a3: return detail::tr_diag(get(F::a3));
      case F::tr_a4: return detail::tr_diag(get(F::a4));
      case F::tr_a2_t_a1: return detail::tr_diag(get(F::a2) * get(F::tr_a1) * a_);
      case F::tr_a1_t_a2: return detail::tr_diag(a_ * get(F::tr_a1) * get(F::a2));
      case F::tr_a1_t_a1: return detail::tr_diag(a_ * get(F::tr_a1) * a_);
      case F::tr_a1_tt_a1: return detail::tr_diag(a_ * get(F::tr_a1) * get(F::tr_a1) * a_);
    }
    throw Error("unknown trace factor");
  }
};

inline std::string render_term(const TraceTerm& t) {
  std::string s = Rational(t.num, t.den).str();
  if (t.word.empty()) return s + "*I";
  for (auto f : t.word) s += "*" + std::string(factor_name(f));
  return s;
}

inline Mat2 thm37_residual(const Mat2& a) { return TraceFactorTable(a).evaluate(thm37_terms()); }

inline Mat2 domokos_residual(const Mat2& a) { return TraceFactorTable(a).evaluate(domokos_terms()); }

// ---------------------------------------------------------------------------
// C_0 = C, C_{k+1} = C_k^2 - 1/2 tr(C_k^2) I

inline constexpr unsigned kMaxCkDepth = 3;

inline std::vector<Mat2> ck_sequence(const Mat2& c, unsigned k) {
  if (k > kMaxCkDepth) throw BoundError("ck depth " + std::to_string(k) + " exceeds " + std::to_string(kMaxCkDepth));
  detail::require_traceless(c, "ck_sequence");
  std::vector<Mat2> seq{c};
  for (unsigned i = 0; i < k; ++i) {
    seq.push_back(traceless_square_step(seq.back()));
    if (!trace(seq.back()).is_zero()) throw Error("ck_sequence lost tracelessness");
  }
  return seq;
}

}  // namespace chtrace
