#pragma once

// Command-line front end. Exit codes: 0 identity holds / no witness,
// 1 identity violated / witness found, 2 usage, parse or budget error.

#include "chtrace/algebra_spec.hpp"
#include "chtrace/kernel_checks.hpp"
#include "chtrace/report.hpp"
#include "chtrace/verifier.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace chtrace::cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitUsage = 2;

inline const std::vector<std::string>& default_selftest_algebras() {
  static const std::vector<std::string> list = {"rat",    "grassmann:3", "grassmann:4", "u3star(rat)",
                                                "u3star(u3star(rat))", "full:2", "full:3"};
  return list;
}

inline WitnessPool make_pool(const std::string& kind, const Ring& ring) {
  if (kind == "basis") return WitnessPool::basis(ring);
  if (kind == "sums:2") return WitnessPool::pair_sums(ring);
  throw PreconditionError("unknown pool '" + kind + "' (expected basis or sums:2)");
}

inline IdentityId lookup_identity(const std::string& name) {
  auto id = identity_from_name(name);
  if (!id) {
    std::string known;
    for (const auto& info : identity_table()) known += (known.empty() ? "" : ", ") + std::string(info.name);
    throw PreconditionError("unknown identity '" + name + "' (known: " + known + ")");
  }
  return *id;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of commutator and 2x2 trace identities over finite-dimensional rings", "chtrace"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string algebra;
  std::string format = "text";
  std::string identity;
  std::string pool_kind = "basis";
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
  unsigned jobs = 1;
  unsigned k = 0;
  unsigned m = 2;
  double budget = kDefaultTermBudget;
  std::vector<std::string> selftest_algebras;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto add_algebra = [&](CLI::App* sub) {
    sub->add_option("--algebra", algebra, "Ring expression, e.g. u3star(u3star(rat))")->required();
  };
  auto add_search_opts = [&](CLI::App* sub) {
    sub->add_option("--pool", pool_kind, "Witness pool: basis or sums:2");
    sub->add_option("--limit", limit, "Maximum number of tuples")->check(CLI::PositiveNumber);
    sub->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  };

  auto* verify = app.add_subcommand("verify", "Generic check of an identity over a ring");
  verify->add_option("--identity", identity, "Identity name")->required();
  add_algebra(verify);
  verify->add_option("--k", k, "Index for lie_solv_k (default 3) or depth for ck_vanish (default 2)");
  verify->add_option("--m", m, "Index for lie_nilp_m");
  verify->add_option("--budget", budget, "Estimated term budget");
  add_format(verify);

  auto* search = app.add_subcommand("search", "Pool search for a tuple violating an identity");
  search->add_option("--expr", identity, "Identity name")->required();
  add_algebra(search);
  add_search_opts(search);
  search->add_option("--k", k, "Index for lie_solv_k or ck_vanish");
  search->add_option("--m", m, "Index for lie_nilp_m");
  add_format(search);

  auto* probe = app.add_subcommand("probe-question", "Does [[x,y],[x,z]] = 0 force [[x,y],[u,v]] = 0 here?");
  add_algebra(probe);
  add_search_opts(probe);
  add_format(probe);

  auto* thm21 = app.add_subcommand("thm21", "Check the U3*(S) solvability theorem for a base ring S");
  add_algebra(thm21);
  add_format(thm21);

  auto* ck = app.add_subcommand("ck", "Check C_k = 0 for the traceless recursion");
  add_algebra(ck);
  ck->add_option("--k", k, "Depth 1..3")->check(CLI::Range(1u, kMaxCkDepth));
  add_format(ck);

  auto* selftest = app.add_subcommand("selftest", "Exhaustive kernel checks");
  selftest->add_option("--algebra", selftest_algebras, "Rings to check (repeatable)");
  add_format(selftest);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitHolds;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitHolds;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitHolds;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const bool json = format == "json";
  auto emit = [&](const Json& j, const std::string& text) {
    if (json)
      out << j.dump(2) << "\n";
    else
      out << text;
  };

  try {
    if (verify->parsed()) {
      IdentityId id = lookup_identity(identity);
      VerifyOptions opts;
      opts.term_budget = budget;
      opts.params.nilp_m = m;
      if (k != 0) opts.params.solv_k = opts.params.ck_depth = k;
      if (id == IdentityId::ck_vanish && opts.params.ck_depth > kMaxCkDepth)
        throw BoundError("ck depth must be in [1," + std::to_string(kMaxCkDepth) + "]");
      VerifyReport r = verify_generic(id, parse_ring(algebra), opts);
      emit(report_json(r), report_text(r));
      return r.holds ? kExitHolds : kExitViolated;
    }
    if (search->parsed()) {
      IdentityId id = lookup_identity(identity);
      Ring ring = parse_ring(algebra);
      SearchOptions opts;
      opts.limit = limit;
      opts.jobs = jobs;
      opts.params.nilp_m = m;
      if (k != 0) opts.params.solv_k = opts.params.ck_depth = k;
      VerifyReport r = search_witness(id, ring, make_pool(pool_kind, ring), opts);
      emit(report_json(r), report_text(r));
      return r.holds ? kExitHolds : kExitViolated;
    }
    if (probe->parsed()) {
      Ring ring = parse_ring(algebra);
      SearchOptions opts;
      opts.limit = limit;
      opts.jobs = jobs;
      ProbeResult p = probe_question(ring, make_pool(pool_kind, ring), opts);
      std::string text = "probe-question over " + ring->name() + ": " + p.verdict + "\n" +
                         report_text(p.hypothesis, "  ") + (p.search ? report_text(*p.search, "  ") : "");
      emit(probe_json(p), text);
      return (p.hypothesis.holds && !p.counterexample) ? kExitHolds : kExitViolated;
    }
    if (thm21->parsed()) {
      Thm21Result t = verify_thm21_hypotheses(parse_ring(algebra));
      std::string text = "thm21 over base " + t.comm_product.algebra + ": " + t.verdict + "\n" +
                         report_text(t.comm_product, "  ") + report_text(t.double_comm_z, "  ") +
                         report_text(t.conclusion, "  ");
      emit(thm21_json(t), text);
      return (t.hypotheses_hold && t.conclusion.holds) ? kExitHolds : kExitViolated;
    }
    if (ck->parsed()) {
      VerifyOptions opts;
      opts.params.ck_depth = k == 0 ? 2 : k;
      VerifyReport r = verify_generic(IdentityId::ck_vanish, parse_ring(algebra), opts);
      r.command = "ck";
      r.note += "; tr(C_i) = 0 for i = 0.." + std::to_string(opts.params.ck_depth);
      emit(report_json(r), report_text(r));
      return r.holds ? kExitHolds : kExitViolated;
    }
    if (selftest->parsed()) {
      const auto& names = selftest_algebras.empty() ? default_selftest_algebras() : selftest_algebras;
      Json results = Json::array();
      std::string text;
      bool all = true;
      for (const auto& name : names) {
        Ring ring = parse_ring(name);
        auto checks = kernel_checks(ring);
        results.push_back(kernel_json(ring, checks));
        text += ring->name() + " (dim " + std::to_string(ring->dim()) + "):";
        for (const auto& c : checks) {
          if (!c.applicable) continue;
          all = all && c.passed;
          text += " " + c.name + (c.passed ? "=ok" : "=FAIL[" + c.failure + "]");
        }
        text += "\n";
      }
      Json j{{"tool_version", kToolVersion}, {"command", "selftest"}, {"passed", all}, {"results", results}};
      emit(j, text + (all ? "selftest passed\n" : "selftest FAILED\n"));
      return all ? kExitHolds : kExitViolated;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace chtrace::cli
