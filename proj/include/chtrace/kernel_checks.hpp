#pragma once

// Exhaustive structural checks on a descriptor: associativity over all basis
// triples, two-sided unit, the Grassmann relation, and agreement of the U3*
// tuple law with 3x3 matrix multiplication.

#include "chtrace/ring.hpp"

#include <optional>
#include <string>

namespace chtrace {

struct KernelCheck {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string failure;  // first offending case
};

inline KernelCheck check_associativity(const Ring& ring) {
  KernelCheck c;
  c.name = "associativity";
  const auto n = static_cast<std::uint32_t>(ring->dim());
  std::vector<RingElement> basis;
  for (std::uint32_t i = 0; i < n; ++i) basis.push_back(RingElement::basis(ring, i));
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      RingElement ij = basis[i] * basis[j];
      for (std::uint32_t k = 0; k < n; ++k) {
        if ((ij * basis[k]) == (basis[i] * (basis[j] * basis[k]))) continue;
        c.passed = false;
        c.failure = "(" + ring->label(i) + "*" + ring->label(j) + ")*" + ring->label(k);
        return c;
      }
    }
  return c;
}

inline KernelCheck check_unit_laws(const Ring& ring) {
  KernelCheck c;
  c.name = "unit";
  RingElement one = RingElement::unit(ring);
  for (std::uint32_t i = 0; i < ring->dim(); ++i) {
    RingElement b = RingElement::basis(ring, i);
    if (one * b == b && b * one == b) continue;
    c.passed = false;
    c.failure = ring->label(i);
    return c;
  }
  return c;
}

inline KernelCheck check_grassmann_relation(const Ring& ring) {
  KernelCheck c;
  c.name = "grassmann_relation";
  if (ring->kind() != RingKind::grassmann) {
    c.applicable = false;
    return c;
  }
  for (unsigned i = 0; i < ring->parameter(); ++i)
    for (unsigned j = i; j < ring->parameter(); ++j) {
      RingElement vi = RingElement::basis(ring, 1u << i);
      RingElement vj = RingElement::basis(ring, 1u << j);
      if ((vi * vj + vj * vi).is_zero()) continue;
      c.passed = false;
      c.failure = "v" + std::to_string(i + 1) + ", v" + std::to_string(j + 1);
      return c;
    }
  return c;
}

// embed(b_i b_j) = embed(b_i) embed(b_j) for every basis pair.
inline KernelCheck check_u3star_embedding(const Ring& ring) {
  KernelCheck c;
  c.name = "u3star_embedding";
  if (ring->kind() != RingKind::u3star) {
    c.applicable = false;
    return c;
  }
  for (std::uint32_t i = 0; i < ring->dim(); ++i)
    for (std::uint32_t j = 0; j < ring->dim(); ++j) {
      RingElement x = RingElement::basis(ring, i);
      RingElement y = RingElement::basis(ring, j);
      if (u3star_embed_oracle(x * y) == u3star_embed_oracle(x) * u3star_embed_oracle(y)) continue;
      c.passed = false;
      c.failure = ring->label(i) + " * " + ring->label(j);
      return c;
    }
  return c;
}

inline std::vector<KernelCheck> kernel_checks(const Ring& ring) {
  return {check_associativity(ring), check_unit_laws(ring), check_grassmann_relation(ring),
          check_u3star_embedding(ring)};
}

}  // namespace chtrace
