#pragma once

// JSON and plain-text rendering of verification results. Both formats carry
// the same facts; JSON key order is fixed so repeated runs are byte-identical
// apart from elapsed_ms.

#include "chtrace/kernel_checks.hpp"
#include "chtrace/verifier.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>
#include <string>

namespace chtrace {

inline constexpr const char* kToolVersion = "1.0.0";

using Json = nlohmann::ordered_json;

inline Json witness_json(const Witness& w) {
  Json assignment = Json::object();
  for (const auto& [name, x] : w.assignment) assignment[name] = x.str();
  return Json{{"assignment", assignment}, {"residual_coordinate", w.residual_coordinate}, {"value", w.value.str()}};
}

inline Json report_json(const VerifyReport& r, bool with_elapsed = true) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = r.command;
  j["identity"] = r.identity();
  if (r.id == IdentityId::lie_solv_k) j["k"] = r.params.solv_k;
  if (r.id == IdentityId::ck_vanish) j["k"] = r.params.ck_depth;
  if (r.id == IdentityId::lie_nilp_m) j["m"] = r.params.nilp_m;
  j["algebra"] = r.algebra;
  j["dim"] = r.dim;
  j["generic_vars"] = r.generic_vars;
  j["holds"] = r.holds;
  j["witness"] = r.witness ? witness_json(*r.witness) : Json(nullptr);
  j["note"] = r.note;
  if (!r.diff.empty()) j["diff"] = r.diff;
  if (with_elapsed) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

inline Json probe_json(const ProbeResult& p, bool with_elapsed = true) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "probe-question";
  j["algebra"] = p.hypothesis.algebra;
  j["counterexample"] = p.counterexample;
  j["verdict"] = p.verdict;
  j["hypothesis"] = report_json(p.hypothesis, with_elapsed);
  j["search"] = p.search ? report_json(*p.search, with_elapsed) : Json(nullptr);
  return j;
}

inline Json thm21_json(const Thm21Result& t, bool with_elapsed = true) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["command"] = "thm21";
  j["algebra"] = t.comm_product.algebra;
  j["hypotheses_hold"] = t.hypotheses_hold;
  j["verdict"] = t.verdict;
  j["comm_product"] = report_json(t.comm_product, with_elapsed);
  j["double_comm_z"] = report_json(t.double_comm_z, with_elapsed);
  j["conclusion"] = report_json(t.conclusion, with_elapsed);
  return j;
}

inline Json kernel_json(const Ring& ring, const std::vector<KernelCheck>& checks) {
  Json list = Json::array();
  for (const auto& c : checks) {
    Json e{{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}};
    if (!c.failure.empty()) e["failure"] = c.failure;
    list.push_back(e);
  }
  return Json{{"algebra", ring->name()}, {"dim", ring->dim()}, {"checks", list}};
}

inline std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", ms);
  return buf;
}

inline std::string report_text(const VerifyReport& r, const std::string& indent = "") {
  std::ostringstream out;
  out << indent << r.command << " " << r.identity();
  if (r.id == IdentityId::lie_solv_k) out << " (k=" << r.params.solv_k << ")";
  if (r.id == IdentityId::ck_vanish) out << " (k=" << r.params.ck_depth << ")";
  if (r.id == IdentityId::lie_nilp_m) out << " (m=" << r.params.nilp_m << ")";
  out << " over " << r.algebra << ": " << (r.holds ? "HOLDS" : "FAILS") << "\n";
  out << indent << "  " << identity_info(r.id).statement << "\n";
  out << indent << "  dim " << r.dim << ", generic variables " << r.generic_vars << "\n";
  if (!r.note.empty()) out << indent << "  " << r.note << "\n";
  if (r.witness) {
    out << indent << "  witness:\n";
    for (const auto& [name, x] : r.witness->assignment) out << indent << "    " << name << " = " << x.str() << "\n";
    out << indent << "  nonzero at " << r.witness->residual_coordinate << " = " << r.witness->value.str() << "\n";
  }
  for (const auto& d : r.diff) out << indent << "  diff " << d << "\n";
  out << indent << "  elapsed " << format_ms(r.elapsed_ms) << " ms\n";
  return out.str();
}

}  // namespace chtrace
