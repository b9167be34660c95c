#pragma once

// Generic verification, pool-based witness search and the two composite
// checks (the U3* solvability theorem and the [[x,y],[x,z]] probe).
//
// A generic check substitutes elements whose coordinates are independent
// commuting variables. A zero residual is then a polynomial identity in
// those variables, so the identity holds for every element of the ring.

#include "chtrace/registry.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace chtrace {

inline constexpr double kDefaultTermBudget = 1e8;

struct Witness {
  std::vector<std::pair<std::string, RingElement>> assignment;
  std::string residual_coordinate;  // "(1,2)·E13" for matrices, "E13" for elements
  Rational value;                   // the nonzero coordinate at the assignment
};

struct VerifyReport {
  std::string command;
  IdentityId id = IdentityId::prop31;
  IdentityParams params;
  std::string algebra;
  std::size_t dim = 0;
  std::size_t generic_vars = 0;
  bool holds = true;
  std::optional<Witness> witness;
  std::string note;
  std::vector<std::string> diff;  // nonzero residual coordinates of a failed bridge
  double elapsed_ms = 0;

  std::string identity() const { return std::string(identity_name(id)); }
};

struct VerifyOptions {
  IdentityParams params;
  double term_budget = kDefaultTermBudget;
};

// ---------------------------------------------------------------------------
// Budget estimate

// Number of basis words b_{i1}...b_{id} with a nonzero structure path; an
// upper bound on the raw terms of a product of `degree` generic elements.
inline double chain_count(const RingDescriptor& ring, unsigned degree) {
  const std::size_t n = ring.dim();
  std::vector<double> reach(n, 1.0);
  if (degree <= 1) return static_cast<double>(n);
  std::vector<std::vector<std::pair<std::size_t, double>>> step(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<double> row(n, 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& t : ring.product(k, j)) row[t.index] += 1.0;
    for (std::size_t l = 0; l < n; ++l)
      if (row[l] > 0) step[k].emplace_back(l, row[l]);
  }
  for (unsigned d = 1; d < degree; ++d) {
    std::vector<double> next(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      if (reach[k] > 0)
        for (const auto& [l, c] : step[k]) next[l] += reach[k] * c;
    reach = std::move(next);
  }
  double total = 0;
  for (double r : reach) total += r;
  return total;
}

inline double estimate_terms(IdentityId id, const RingDescriptor& ring, const IdentityParams& params) {
  using I = IdentityId;
  const unsigned degree = identity_degree(id, params);
  double words;
  if (identity_info(id).shape == InputShape::elements) {
    words = std::ldexp(1.0, static_cast<int>(degree) - 1);
  } else {
    double terms = 6;
    if (id == I::thm37) terms = 34;
    if (id == I::thm37_bridge) terms = 42;
    if (id == I::domokos) terms = 13;
    words = std::ldexp(terms, static_cast<int>(degree) + 1);
  }
  return words * chain_count(ring, degree);
}

// ---------------------------------------------------------------------------
// Internals

namespace detail {

struct Coordinate {
  std::size_t entry;
  std::uint32_t basis;
};

inline std::optional<Coordinate> first_nonzero(const Residual& r) {
  for (std::size_t e = 0; e < r.entries.size(); ++e)
    if (!r.entries[e].is_zero()) return Coordinate{e, r.entries[e].coords()[0].first};
  return std::nullopt;
}

inline std::string coordinate_name(const Residual& r, const Coordinate& c) {
  const std::string& label = r.entries[c.entry].ring()->label(c.basis);
  return r.names[c.entry].empty() ? label : r.names[c.entry] + "·" + label;
}

inline std::vector<RingElement> generic_inputs(IdentityId id, const Ring& ring, const IdentityParams& params,
                                               VarAllocator& vars) {
  std::vector<RingElement> in;
  const bool odd = id == IdentityId::cor35 && ring->kind() == RingKind::grassmann;
  for (std::size_t i = 0; i < input_names(id, params).size(); ++i)
    in.push_back(odd ? generic_odd_element(ring, vars) : generic_element(ring, vars));
  return in;
}

// Finds rational values for the variables of a nonzero polynomial at which it
// does not vanish. Only the variables of its smallest monomial are kept
// (all others are set to 0); over a grid {0..deg_v} per variable a nonzero
// polynomial with degree deg_v in v always has a nonzero point.
inline std::vector<std::pair<std::uint32_t, Rational>> nonvanishing_point(const Polynomial& p) {
  const Monomial& lead = p.terms()[0].mono;
  std::vector<std::uint32_t> vars;
  for (const auto& f : lead.factors()) vars.push_back(f.first);
  auto kept = [&](const Monomial& m) {
    for (const auto& f : m.factors())
      if (!std::binary_search(vars.begin(), vars.end(), f.first)) return false;
    return true;
  };
  std::vector<std::uint32_t> bound(vars.size(), 0);
  for (const auto& t : p.terms()) {
    if (!kept(t.mono)) continue;
    for (const auto& f : t.mono.factors()) {
      auto k = std::lower_bound(vars.begin(), vars.end(), f.first) - vars.begin();
      bound[k] = std::max(bound[k], f.second);
    }
  }
  std::vector<std::uint32_t> digits(vars.size(), 0);
  while (true) {
    auto value_of = [&](VarId v) -> Rational {
      auto it = std::lower_bound(vars.begin(), vars.end(), v.index);
      if (it == vars.end() || *it != v.index) return Rational();
      return Rational(static_cast<std::int64_t>(digits[it - vars.begin()]));
    };
    if (!p.evaluate(value_of).is_zero()) {
      std::vector<std::pair<std::uint32_t, Rational>> point;
      for (std::size_t k = 0; k < vars.size(); ++k)
        point.emplace_back(vars[k], Rational(static_cast<std::int64_t>(digits[k])));
      return point;
    }
    std::size_t k = vars.size();
    while (k > 0) {
      --k;
      if (digits[k] < bound[k]) {
        ++digits[k];
        break;
      }
      digits[k] = 0;
      if (k == 0) throw Error("no nonvanishing point found for a nonzero polynomial");
    }
    if (vars.empty()) throw Error("constant polynomial evaluated to zero");
  }
}

inline Witness make_witness(IdentityId id, const IdentityParams& params, std::vector<RingElement> inputs,
                            const Residual& residual, const Coordinate& at) {
  Witness w;
  auto names = input_names(id, params);
  for (std::size_t i = 0; i < inputs.size(); ++i) w.assignment.emplace_back(names[i], std::move(inputs[i]));
  w.residual_coordinate = coordinate_name(residual, at);
  const Polynomial& c = residual.entries[at.entry].coord(at.basis);
  if (!c.is_constant()) throw Error("witness coordinate is not a constant");
  w.value = c.constant_value();
  return w;
}

// Turns a failed generic evaluation into a concrete rational witness.
inline Witness concretize(IdentityId id, const IdentityParams& params, const std::vector<RingElement>& generic,
                          const Residual& residual) {
  auto at = *first_nonzero(residual);
  const Polynomial& p = residual.entries[at.entry].coord(at.basis);
  auto point = nonvanishing_point(p);
  auto value_of = [&](VarId v) -> Rational {
    for (const auto& [var, val] : point)
      if (var == v.index) return val;
    return Rational();
  };
  std::vector<RingElement> concrete;
  for (const auto& g : generic) concrete.push_back(g.substitute(value_of));
  Residual replay = evaluate_identity(id, concrete, params);
  Rational expected = p.evaluate(value_of);
  if (!(replay.entries[at.entry].coord(at.basis) == Polynomial(expected)))
    throw Error("specialized residual disagrees with the generic residual");
  return make_witness(id, params, std::move(concrete), replay, at);
}

inline std::vector<std::string> residual_diff(const Residual& r, std::size_t max_terms = 8) {
  std::vector<std::string> lines;
  for (std::size_t e = 0; e < r.entries.size(); ++e)
    for (const auto& [b, p] : r.entries[e].coords()) {
      std::string line = coordinate_name(r, Coordinate{e, b}) + ": ";
      std::size_t shown = 0;
      for (const auto& t : p.terms()) {
        if (shown == max_terms) {
          line += " ... (" + std::to_string(p.size()) + " terms)";
          break;
        }
        line += (shown ? " " : "") + (t.coeff.sign() < 0 ? std::string("") : std::string("+")) + t.coeff.str() +
                "*" + t.mono.str();
        ++shown;
      }
      lines.push_back(std::move(line));
    }
  return lines;
}

inline bool is_bridge(IdentityId id) {
  return id == IdentityId::thm33_bridge || id == IdentityId::cor34_bridge || id == IdentityId::thm37_bridge;
}

inline double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Generic verification

inline VerifyReport verify_generic(IdentityId id, const Ring& ring, const VerifyOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  const double estimate = estimate_terms(id, *ring, opts.params);
  if (estimate > opts.term_budget)
    throw BudgetExceeded(std::string(identity_name(id)) + " over " + ring->name() + ": estimated " +
                         std::to_string(static_cast<long long>(estimate)) + " terms exceeds budget " +
                         std::to_string(static_cast<long long>(opts.term_budget)));

  VerifyReport rep;
  rep.command = "verify";
  rep.id = id;
  rep.params = opts.params;
  rep.algebra = ring->name();
  rep.dim = ring->dim();

  VarAllocator vars;
  auto inputs = detail::generic_inputs(id, ring, opts.params, vars);
  rep.generic_vars = vars.allocated();
  Residual residual = evaluate_identity(id, inputs, opts.params);
  rep.holds = residual.is_zero();
  if (rep.holds) {
    rep.note = "holds for all elements of " + ring->name();
    if (ring->kind() == RingKind::grassmann)
      rep.note += " (Grassmann algebra truncated to " + std::to_string(ring->parameter()) + " generators)";
  } else {
    rep.witness = detail::concretize(id, opts.params, inputs, residual);
    if (detail::is_bridge(id)) {
      rep.diff = detail::residual_diff(residual);
      rep.note = "expansion mismatch: see diff";
    } else {
      rep.note = "violated in " + ring->name();
    }
  }
  if (id == IdentityId::cor35 && ring->kind() == RingKind::grassmann)
    rep.note += "; inputs restricted to the odd part v1..v" + std::to_string(ring->parameter());
  rep.elapsed_ms = detail::elapsed_since(t0);
  return rep;
}

// Re-evaluates a witness and returns the coordinate value it produces.
inline std::optional<Rational> replay_witness(IdentityId id, const Witness& w, const IdentityParams& params = {}) {
  std::vector<RingElement> in;
  for (const auto& [name, x] : w.assignment) in.push_back(x);
  Residual r = evaluate_identity(id, in, params);
  for (std::size_t e = 0; e < r.entries.size(); ++e)
    for (const auto& [b, p] : r.entries[e].coords())
      if (detail::coordinate_name(r, detail::Coordinate{e, b}) == w.residual_coordinate) {
        if (!p.is_constant()) return std::nullopt;
        return p.constant_value();
      }
  return Rational();
}

// ---------------------------------------------------------------------------
// Witness search

struct WitnessPool {
  std::vector<RingElement> elements;

  // All basis monomials in basis order.
  static WitnessPool basis(const Ring& ring) {
    WitnessPool pool;
    for (std::uint32_t i = 0; i < ring->dim(); ++i) pool.elements.push_back(RingElement::basis(ring, i));
    return pool;
  }

  // Basis monomials followed by all sums b_i + b_j, i < j.
  static WitnessPool pair_sums(const Ring& ring) {
    WitnessPool pool = basis(ring);
    for (std::uint32_t i = 0; i < ring->dim(); ++i)
      for (std::uint32_t j = i + 1; j < ring->dim(); ++j)
        pool.elements.push_back(RingElement::basis(ring, i) + RingElement::basis(ring, j));
    return pool;
  }
};

struct SearchOptions {
  IdentityParams params;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  unsigned jobs = 1;
};

namespace detail {

inline std::vector<RingElement> pool_tuple(const WitnessPool& pool, std::size_t arity, std::uint64_t index) {
  const std::uint64_t p = pool.elements.size();
  std::vector<std::size_t> digits(arity);
  for (std::size_t k = arity; k-- > 0;) {
    digits[k] = static_cast<std::size_t>(index % p);
    index /= p;
  }
  std::vector<RingElement> t;
  for (auto d : digits) t.push_back(pool.elements[d]);
  return t;
}

// Residual at one tuple, or nullopt when the tuple violates a precondition.
inline std::optional<Residual> try_evaluate(IdentityId id, const std::vector<RingElement>& in,
                                            const IdentityParams& params) {
  try {
    return evaluate_identity(id, in, params);
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

}  // namespace detail

// Scans pool tuples in lexicographic order (first input most significant) and
// reports the first one with a nonzero value. With several jobs the range is
// split into contiguous blocks and the smallest hit wins.
inline VerifyReport search_witness(IdentityId id, const Ring& ring, const WitnessPool& pool,
                                   const SearchOptions& opts = {}) {
  auto t0 = std::chrono::steady_clock::now();
  if (opts.limit < 1) throw PreconditionError("search limit must be at least 1");
  if (pool.elements.empty()) throw PreconditionError("empty witness pool");
  for (const auto& x : pool.elements)
    if (!same_ring(x.ring(), ring)) throw RingMismatch("pool element outside " + ring->name());

  const std::size_t arity = input_names(id, opts.params).size();
  const std::uint64_t p = pool.elements.size();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < arity; ++k) {
    if (total > std::numeric_limits<std::uint64_t>::max() / p) {
      total = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    total *= p;
  }
  const std::uint64_t n = std::min(total, opts.limit);

  std::atomic<std::uint64_t> best{n};
  auto scan = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t i = begin; i < end && i < best.load(std::memory_order_relaxed); ++i) {
      auto r = detail::try_evaluate(id, detail::pool_tuple(pool, arity, i), opts.params);
      if (r && !r->is_zero()) {
        std::uint64_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || n < jobs) {
    scan(0, n);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      std::uint64_t begin = n / jobs * w + std::min<std::uint64_t>(w, n % jobs);
      std::uint64_t end = begin + n / jobs + (w < n % jobs ? 1 : 0);
      workers.emplace_back(scan, begin, end);
    }
    for (auto& t : workers) t.join();
  }

  VerifyReport rep;
  rep.command = "search";
  rep.id = id;
  rep.params = opts.params;
  rep.algebra = ring->name();
  rep.dim = ring->dim();
  rep.generic_vars = 0;
  const std::uint64_t hit = best.load();
  if (hit < n) {
    auto in = detail::pool_tuple(pool, arity, hit);
    Residual r = evaluate_identity(id, in, opts.params);
    rep.holds = false;
    rep.witness = detail::make_witness(id, opts.params, std::move(in), r, *detail::first_nonzero(r));
    rep.note = "witness at tuple " + std::to_string(hit) + " of " + std::to_string(n);
  } else {
    rep.holds = true;
    rep.note = "no witness within pool of " + std::to_string(p) + " elements (" + std::to_string(n) +
               (n < total ? " of " + std::to_string(total) : std::string()) + " tuples)";
  }
  rep.elapsed_ms = detail::elapsed_since(t0);
  return rep;
}

// ---------------------------------------------------------------------------
// Composite checks

struct ProbeResult {
  VerifyReport hypothesis;            // [[x,y],[x,z]] = 0, generic
  std::optional<VerifyReport> search; // [[x,y],[u,v]] != 0 over the pool, when applicable
  bool counterexample = false;
  std::string verdict;
};

inline constexpr const char* kProbeConsistent = "consistent with implication, not a proof";

inline ProbeResult probe_question(const Ring& ring, const WitnessPool& pool, const SearchOptions& opts = {}) {
  ProbeResult out;
  out.hypothesis = verify_generic(IdentityId::lie_solv2_shared, ring, VerifyOptions{opts.params});
  out.hypothesis.command = "probe-question";
  if (!out.hypothesis.holds) {
    out.verdict = "inapplicable: [[x,y],[x,z]] = 0 fails in " + ring->name();
    return out;
  }
  out.search = search_witness(IdentityId::lie_solv2, ring, pool, opts);
  out.search->command = "probe-question";
  if (!out.search->holds) {
    out.counterexample = true;
    out.verdict = "COUNTEREXAMPLE: " + ring->name() +
                  " satisfies [[x,y],[x,z]] = 0 but not [[x,y],[u,v]] = 0";
  } else {
    out.verdict = kProbeConsistent;
  }
  return out;
}

struct Thm21Result {
  VerifyReport comm_product;   // [x,y][u,v] = 0 on S
  VerifyReport double_comm_z;  // [[x,y],z] = 0 on S
  VerifyReport conclusion;     // [[x,y],[u,v]] = 0 on U3*(S)
  bool hypotheses_hold = false;
  std::string verdict;
};

inline Thm21Result verify_thm21_hypotheses(const Ring& base, const VerifyOptions& opts = {}) {
  Ring outer = make_u3star(base);
  Thm21Result out{verify_generic(IdentityId::comm_product, base, opts),
                  verify_generic(IdentityId::double_comm_z, base, opts),
                  verify_generic(IdentityId::lie_solv2, outer, opts), false, {}};
  for (auto* r : {&out.comm_product, &out.double_comm_z, &out.conclusion}) r->command = "thm21";
  out.hypotheses_hold = out.comm_product.holds && out.double_comm_z.holds;
  if (!out.hypotheses_hold)
    out.verdict = "hypotheses fail on " + base->name() + "; implication vacuously untested";
  else if (out.conclusion.holds)
    out.verdict = "hypotheses hold on " + base->name() + " and the conclusion holds on " + outer->name();
  else
    out.verdict = "IMPLICATION FAILS: hypotheses hold but " + outer->name() + " is not Lie-solvable of index 2";
  return out;
}

}  // namespace chtrace
