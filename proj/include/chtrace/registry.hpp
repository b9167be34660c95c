#pragma once

// Named identities: how many inputs each takes, how the inputs are shaped
// into ring elements or matrices, and the residual it produces.

#include "chtrace/identities.hpp"

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace chtrace {

enum class IdentityId {
  comm_product,      // [x,y][u,v]
  double_comm_z,     // [[x,y],z]
  lie_solv2,         // [[x,y],[u,v]]
  lie_solv2_shared,  // [[x,y],[x,z]]
  lie_solv_k,        // [x1..x_{2^k}]_solv
  lie_nilp_m,        // [[..[x1,x2],..],x_{m+1}]
  prop31,
  cor32,
  thm33,
  thm33_bridge,  // thm33 residual minus its commutator display
  cor34,
  cor34_bridge,  // cor34 minus thm33
  cor35,
  cor36,
  thm37,
  thm37_bridge,  // thm37 minus cor36
  domokos,
  ck_vanish,
};

enum class InputShape {
  elements,   // free ring elements
  matrix,     // a11, a12, a21, a22
  traceless,  // c11, c12, c21 forming [[c11,c12],[c21,-c11]]
};

struct IdentityParams {
  unsigned solv_k = 3;    // lie_solv_k
  unsigned nilp_m = 2;    // lie_nilp_m
  unsigned ck_depth = 2;  // ck_vanish
};

struct IdentityInfo {
  IdentityId id;
  std::string_view name;
  InputShape shape;
  std::string_view statement;
};

inline const std::vector<IdentityInfo>& identity_table() {
  using I = IdentityId;
  using S = InputShape;
  static const std::vector<IdentityInfo> table = {
      {I::comm_product, "comm_product", S::elements, "[x,y][u,v] = 0"},
      {I::double_comm_z, "double_comm_z", S::elements, "[[x,y],z] = 0"},
      {I::lie_solv2, "lie_solv2", S::elements, "[[x,y],[u,v]] = 0"},
      {I::lie_solv2_shared, "lie_solv2_shared", S::elements, "[[x,y],[x,z]] = 0"},
      {I::lie_solv_k, "lie_solv_k", S::elements, "[x1,...,x_{2^k}]_solv = 0"},
      {I::lie_nilp_m, "lie_nilp_m", S::elements, "[[...[x1,x2],...],x_{m+1}] = 0"},
      {I::prop31, "prop31", S::matrix, "A^2 - tr(A)A + 1/2(tr^2(A) - tr(A^2))I = commutator display"},
      {I::cor32, "cor32", S::traceless, "B^2 - 1/2 tr(B^2)I = commutator display (tr B = 0)"},
      {I::thm33, "thm33", S::traceless, "(C^2 - 1/2tr(C^2)I)^2 - 1/2tr((C^2 - 1/2tr(C^2)I)^2)I = 0 (tr C = 0)"},
      {I::thm33_bridge, "thm33_bridge", S::traceless, "thm33 residual = double-commutator display"},
      {I::cor34, "cor34", S::traceless, "C^4 - 1/2tr(C^2)C^2 - 1/2C^2tr(C^2) + 1/2(tr^2(C^2) - tr(C^4))I = 0"},
      {I::cor34_bridge, "cor34_bridge", S::traceless, "cor34 residual = thm33 residual"},
      {I::cor35, "cor35", S::traceless, "tr C = tr C^2 = tr C^4 = 0 implies C^4 = 0"},
      {I::cor36, "cor36", S::matrix, "cor34 at C = A - 1/2tr(A)I"},
      {I::thm37, "thm37", S::matrix, "degree-4 trace identity for [[x,y],[x,z]] = 0"},
      {I::thm37_bridge, "thm37_bridge", S::matrix, "thm37 residual = cor36 residual"},
      {I::domokos, "domokos", S::matrix, "degree-4 trace identity for Lie-nilpotent index 2"},
      {I::ck_vanish, "ck_vanish", S::traceless, "C_k = 0"},
  };
  return table;
}

inline const IdentityInfo& identity_info(IdentityId id) {
  for (const auto& info : identity_table())
    if (info.id == id) return info;
  throw Error("unregistered identity");
}

inline std::string_view identity_name(IdentityId id) { return identity_info(id).name; }

inline std::optional<IdentityId> identity_from_name(std::string_view name) {
  for (const auto& info : identity_table())
    if (info.name == name) return info.id;
  return std::nullopt;
}

inline std::vector<std::string> input_names(IdentityId id, const IdentityParams& params = {}) {
  using I = IdentityId;
  switch (identity_info(id).shape) {
    case InputShape::matrix: return {"a11", "a12", "a21", "a22"};
    case InputShape::traceless: return {"c11", "c12", "c21"};
    case InputShape::elements: break;
  }
  auto numbered = [](std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
  };
  switch (id) {
    case I::comm_product:
    case I::lie_solv2: return {"x", "y", "u", "v"};
    case I::double_comm_z: return {"x", "y", "z"};
    case I::lie_solv2_shared: return {"x", "y", "z"};
    case I::lie_solv_k: return numbered(std::size_t{1} << params.solv_k);
    case I::lie_nilp_m: return numbered(params.nilp_m + 1);
    default: throw Error("identity has no element inputs");
  }
}

// Total degree of the residual in the inputs.
inline unsigned identity_degree(IdentityId id, const IdentityParams& params = {}) {
  using I = IdentityId;
  switch (id) {
    case I::double_comm_z: return 3;
    case I::lie_solv_k: return 1u << params.solv_k;
    case I::lie_nilp_m: return params.nilp_m + 1;
    case I::prop31:
    case I::cor32: return 2;
    case I::ck_vanish: return 1u << params.ck_depth;
    default: return 4;
  }
}

struct Residual {
  std::vector<std::string> names;
  std::vector<RingElement> entries;

  bool is_zero() const {
    return std::all_of(entries.begin(), entries.end(), [](const RingElement& e) { return e.is_zero(); });
  }
};

inline Residual residual_of(const Mat2& m) {
  return {{"(1,1)", "(1,2)", "(2,1)", "(2,2)"}, {m.at(0, 0), m.at(0, 1), m.at(1, 0), m.at(1, 1)}};
}

inline Residual residual_of(const RingElement& x) { return {{""}, {x}}; }

// The matrix an identity's inputs describe (matrix and traceless shapes only).
inline Mat2 input_matrix(IdentityId id, std::span<const RingElement> in) {
  switch (identity_info(id).shape) {
    case InputShape::matrix: return Mat2(in[0], in[1], in[2], in[3]);
    case InputShape::traceless: return traceless_matrix(in[0], in[1], in[2]);
    case InputShape::elements: break;
  }
  throw Error("identity takes ring elements, not a matrix");
}

inline Residual evaluate_identity(IdentityId id, std::span<const RingElement> in, const IdentityParams& params = {}) {
  using I = IdentityId;
  const std::size_t expected = input_names(id, params).size();
  if (in.size() != expected)
    throw PreconditionError(std::string(identity_name(id)) + " takes " + std::to_string(expected) + " inputs, got " +
                            std::to_string(in.size()));
  switch (id) {
    case I::comm_product: return residual_of(commutator(in[0], in[1]) * commutator(in[2], in[3]));
    case I::double_comm_z: return residual_of(lie_nilpotent_bracket(2, in));
    case I::lie_solv2: return residual_of(lie_solvable_bracket(2, in));
    case I::lie_solv2_shared: return residual_of(commutator(commutator(in[0], in[1]), commutator(in[0], in[2])));
    case I::lie_solv_k: return residual_of(lie_solvable_bracket(params.solv_k, in));
    case I::lie_nilp_m: return residual_of(lie_nilpotent_bracket(params.nilp_m, in));
    default: break;
  }
  Mat2 m = input_matrix(id, in);
  switch (id) {
    case I::prop31: return residual_of(prop31_residual(m));
    case I::cor32: return residual_of(cor32_residual(m));
    case I::thm33: return residual_of(thm33_residual(m));
    case I::thm33_bridge: return residual_of(thm33_residual(m) - thm33_display(m));
    case I::cor34: return residual_of(cor34_residual(m));
    case I::cor34_bridge: return residual_of(cor34_residual(m) - thm33_residual(m));
    case I::cor35: return residual_of(cor35_check(m));
    case I::cor36: return residual_of(cor36_residual(m));
    case I::thm37: return residual_of(thm37_residual(m));
    case I::thm37_bridge: return residual_of(thm37_residual(m) - cor36_residual(m));
    case I::domokos: return residual_of(domokos_residual(m));
    case I::ck_vanish: return residual_of(ck_sequence(m, params.ck_depth).back());
    default: break;
  }
  throw Error("unhandled identity");
}

}  // namespace chtrace
