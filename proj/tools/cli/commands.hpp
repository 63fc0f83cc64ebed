#pragma once

// Subcommand implementations for the `cuboid` tool. Each command writes to
// the streams in Context and returns the process exit code, so tests can
// drive them without spawning processes.

#include "cuboid/coefficients.hpp"
#include "cuboid/cubic.hpp"
#include "cuboid/identities.hpp"
#include "cuboid/search.hpp"
#include "cuboid/singularity.hpp"
#include "cuboid/verifier.hpp"

#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cuboid::cli {

enum ExitCode : int {
  kOk = 0,
  kHit = 2,
  kUsage = 3,            // malformed arguments, unparsable rationals
  kDomain = 4,           // singular point or pole where a value was requested
  kIdentityFailure = 5,
  kCheckpointMismatch = 6,
  kIo = 7,
  kInternal = 8,
};

enum class Format { Text, Json };

struct Context {
  std::ostream& out;
  std::ostream& err;
  Format format = Format::Text;
  bool quiet = false;

  void note(const std::string& msg) const {
    if (!quiet) err << "note: " << msg << "\n";
  }
};

using Json = nlohmann::ordered_json;

inline Json rationals_json(const std::vector<Rational>& rs) {
  Json a = Json::array();
  for (const auto& r : rs) a.push_back(r.str());
  return a;
}

inline std::string rationals_text(const std::vector<Rational>& rs) {
  std::string s = "[";
  for (std::size_t i = 0; i < rs.size(); ++i) s += (i ? ", " : "") + rs[i].str();
  return s + "]";
}

inline std::vector<Rational> as_vector(const RootTriple& t) { return {t[0], t[1], t[2]}; }

// Parses a command-line rational, reporting auto-reduction.
inline Rational parse_arg(const Context& ctx, const std::string& name, const std::string& text) {
  ParsedRational parsed = parse_rational_detailed(text);
  if (parsed.was_reduced) ctx.note(name + "=" + text + " reduced to " + parsed.value.str());
  return parsed.value;
}

inline int cmd_identities(const Context& ctx, const std::vector<Identity>& identities = standard_identities()) {
  bool all = true;
  for (const auto& id : identities) {
    IdentityResult r = check_identity(id);
    all = all && r.pass;
    if (ctx.format == Format::Json) {
      Json j;
      j["identity"] = r.name;
      j["pass"] = r.pass;
      if (!r.pass) j["difference"] = r.difference.str();
      ctx.out << j.dump() << "\n";
    } else {
      ctx.out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << id.description << "\n";
      if (!r.pass) ctx.out << "  lhs - rhs = " << r.difference.str() << "\n";
    }
  }
  return all ? kOk : kIdentityFailure;
}

inline int cmd_classify(const Context& ctx, const Params& p) {
  SingularityClass cls = classify(p, ClassifyMode::Checked);
  FactorValues fv = factor_values(p);
  if (ctx.format == Format::Json) {
    Json j;
    j["b"] = p.b.str();
    j["c"] = p.c.str();
    j["flags"] = cls.names();
    j["first"] = fv.first.str();
    j["second"] = fv.second.str();
    j["quartic"] = fv.quartic.str();
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << "flags: " << cls.str() << "\n"
            << "bc-1-b = " << fv.first << "\n"
            << "bc-c-2b = " << fv.second << "\n"
            << "quartic = " << fv.quartic << "\n";
  }
  return kOk;
}

inline int cmd_coeffs(const Context& ctx, const Params& p, E21Form form) {
  CoefficientSet cs = eval_coefficients(p, form);
  const std::pair<const char*, const Rational*> rows[] = {
      {"e10", &cs.e10}, {"e20", &cs.e20}, {"e30", &cs.e30}, {"e01", &cs.e01}, {"e02", &cs.e02},
      {"e03", &cs.e03}, {"e21", &cs.e21}, {"e11", &cs.e11}, {"e12", &cs.e12}};
  if (ctx.format == Format::Json) {
    Json j;
    j["b"] = p.b.str();
    j["c"] = p.c.str();
    j["e21_form"] = std::string(to_string(form));
    for (const auto& [k, v] : rows) j[k] = v->str();
    ctx.out << j.dump() << "\n";
  } else {
    for (const auto& [k, v] : rows) ctx.out << k << "=" << *v << "\n";
  }
  return kOk;
}

inline int cmd_solve(const Context& ctx, const Params& p, E21Form form) {
  CoefficientEvaluator ev(p);
  CubicPoly cubics[] = {{-ev.e10(), ev.e20(), -ev.e30()}, {-ev.e01(), ev.e02(), -ev.e03()}};
  const char* names[] = {"edge", "diagonal"};
  const char vars[] = {'x', 'd'};
  Json j;
  if (ctx.format == Format::Json) {
    j["b"] = p.b.str();
    j["c"] = p.c.str();
    j["e21_form"] = std::string(to_string(form));
  }
  for (int i = 0; i < 2; ++i) {
    auto roots = rational_roots(cubics[i]);
    if (ctx.format == Format::Json) {
      Json cj;
      cj["coefficients"] = rationals_json({cubics[i].c2, cubics[i].c1, cubics[i].c0});
      cj["discriminant"] = discriminant(cubics[i]).str();
      cj["roots"] = roots ? rationals_json(as_vector(*roots)) : Json(nullptr);
      j[names[i]] = cj;
    } else {
      ctx.out << names[i] << " cubic: " << cubics[i].str(vars[i]) << "\n  ";
      if (roots) ctx.out << "roots " << rationals_text(as_vector(*roots)) << "\n";
      else ctx.out << "no full rational splitting\n";
    }
  }
  if (ctx.format == Format::Json) ctx.out << j.dump() << "\n";
  return kOk;
}

inline Json verdict_json(const Params& p, const Verdict& v) {
  Json j;
  j["b"] = p.b.str();
  j["c"] = p.c.str();
  j["level"] = v.level;
  j["reason"] = v.reason;
  j["residuals"] = rationals_json(v.residuals);
  j["e21_form"] = std::string(to_string(v.e21_form));
  j["singular"] = v.singular.names();
  j["edges"] = v.edges ? rationals_json(as_vector(*v.edges)) : Json(nullptr);
  j["diagonals"] = v.diagonals ? rationals_json(as_vector(*v.diagonals)) : Json(nullptr);
  j["pairing"] = v.pairing ? Json(permutation_str(*v.pairing)) : Json(nullptr);
  return j;
}

inline int cmd_verify(const Context& ctx, const Params& p, E21Form form) {
  Verdict v = grade(p, form);
  if (ctx.format == Format::Json) {
    ctx.out << verdict_json(p, v).dump() << "\n";
  } else {
    ctx.out << "point: " << p.str() << "\n";
    if (!v.singular.empty()) ctx.out << "singular: " << v.singular.str() << "\n";
    ctx.out << "level: " << v.level << "\n"
            << "reason: " << v.reason << "\n"
            << "e21_form: " << to_string(v.e21_form) << "\n";
    if (v.edges) ctx.out << "edges: " << rationals_text(as_vector(*v.edges)) << "\n";
    if (v.diagonals) ctx.out << "diagonals: " << rationals_text(as_vector(*v.diagonals)) << "\n";
    if (v.pairing) ctx.out << "pairing: " << permutation_str(*v.pairing) << "\n";
    if (!v.residuals.empty()) ctx.out << "residuals: " << rationals_text(v.residuals) << "\n";
    if (v.perfect_cuboid()) ctx.out << "PERFECT CUBOID FOUND at " << p.str() << "\n";
  }
  return kOk;
}

struct SearchArgs {
  SearchSpace space;
  RunOptions run;
  std::optional<std::filesystem::path> audit_against;
};

inline Json summary_json(const SearchSummary& s) {
  Json j;
  j["e21_form"] = std::string(to_string(s.e21_form));
  j["total_points"] = s.total_points;
  j["visited"] = s.visited;
  j["complete"] = s.complete;
  j["resumed"] = s.resumed;
  j["stopped_on_hit"] = s.stopped_on_hit;
  j["singular"] = s.counts.singular;
  Json levels = Json::array();
  for (auto n : s.counts.level) levels.push_back(n);
  j["levels"] = levels;
  j["hits"] = s.hits;
  return j;
}

inline int cmd_search(const Context& ctx, SearchArgs args) {
  if (!ctx.quiet && ctx.format == Format::Text) {
    args.run.on_progress = [&ctx](const Checkpoint& cp) {
      ctx.err << "progress: " << cp.cursor << "/" << cp.total << "\n";
    };
  }
  auto t0 = std::chrono::steady_clock::now();
  SearchSummary s = run(args.space, args.run);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::vector<FormDiscrepancy> disc;
  if (args.audit_against)
    disc = high_level_discrepancies(read_records(args.run.output_path), read_records(*args.audit_against));

  if (ctx.format == Format::Json) {
    Json j = summary_json(s);
    j["seconds"] = secs;
    if (args.audit_against) {
      Json a = Json::array();
      for (const auto& d : disc) a.push_back({{"b", d.params.b.str()}, {"c", d.params.c.str()},
                                              {"level", d.level_a}, {"level_other", d.level_b}});
      j["e21_discrepancies"] = a;
    }
    ctx.out << j.dump() << "\n";
  } else {
    ctx.out << "e21_form: " << to_string(s.e21_form) << "\n"
            << "points: " << s.visited << "/" << s.total_points << (s.complete ? " (complete)" : "")
            << (s.resumed ? " [resumed]" : "") << "\n"
            << "singular: " << s.counts.singular << "\n";
    for (std::size_t i = 0; i < s.counts.level.size(); ++i)
      ctx.out << "level " << i << ": " << s.counts.level[i] << "\n";
    ctx.out << "level-6 hits: " << s.hits << "\n";
    if (args.audit_against) {
      ctx.out << "e21 discrepancies at level >= 5: " << disc.size() << "\n";
      for (const auto& d : disc)
        ctx.out << "  " << d.params.str() << ": " << d.level_a << " vs " << d.level_b << "\n";
    }
    if (s.stopped_on_hit) ctx.out << "PERFECT CUBOID FOUND; stopped (see hit file)\n";
    ctx.out << "elapsed: " << secs << " s\n";
  }
  return s.stopped_on_hit ? kHit : kOk;
}

}  // namespace cuboid::cli
