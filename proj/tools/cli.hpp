#pragma once

// Command-line front end: list, info, build, decimate, count, verify, entropy.

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "decimation_trees/decimation_trees.hpp"

namespace dtrees::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInconsistent = 2;

// Materialize counts below this size; larger ones need --factored or --digits.
inline constexpr double kPrintBits = 1e6;

namespace detail {

/// Integer polynomial proportional to p with positive leading coefficient.
inline RationalPolynomial primitive(const RationalPolynomial& p) {
  std::vector<Rational> c;
  for (const auto& x : dtrees::detail::primitive_integer_coefficients(p)) c.emplace_back(x);
  return RationalPolynomial(std::move(c));
}

/// "2*z*(z - 1)*(16*z^2 - 24*z + 7)" style product of primitive factors,
/// z first, then by degree. The leftover constant goes to `scale`, the
/// number of factors to `count`.
inline std::string factor_string(const RationalPolynomial& p, Rational& scale, int& count) {
  scale = p.leading();
  count = 0;
  if (p.degree() <= 0) return "";
  std::vector<std::pair<int, std::string>> parts;
  for (const auto& cf : split_into_classes(p)) {
    RationalPolynomial prim = primitive(cf.cls.minpoly());
    for (int i = 0; i < cf.multiplicity; ++i) scale /= prim.leading();
    std::string f = to_string(prim);
    bool bare = prim.degree() == 1 && sgn(prim.coeff(0)) == 0 && prim.leading() == 1;
    if (!bare) f = "(" + f + ")";
    if (cf.multiplicity > 1) f += "^" + std::to_string(cf.multiplicity);
    parts.emplace_back(bare ? 0 : prim.degree(), f);
    count += cf.multiplicity;
  }
  std::stable_sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::string out;
  for (const auto& [deg, f] : parts) out += (out.empty() ? "" : "*") + f;
  return out;
}

inline std::string factored(const RationalFunction& r) {
  Rational a, b;
  int na = 0, nb = 0;
  std::string num = factor_string(r.num(), a, na);
  std::string den = factor_string(r.den(), b, nb);
  Rational c = a / b;
  std::string lead;
  if (c == -1 && !num.empty()) lead = "-";
  else if (c != 1 || num.empty()) lead = c.get_str() + (num.empty() ? "" : "*");
  std::string out = lead + num;
  if (!den.empty()) out += "/" + (nb == 1 && den.front() == '(' ? den : "(" + den + ")");
  return out;
}

/// Left-justifies to `width` terminal columns, counting UTF-8 code points.
inline std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char ch : s)
    if ((ch & 0xC0) != 0x80) ++cols;
  return cols >= width ? s + " " : s + std::string(width - cols, ' ');
}

inline json factors_json(const FactoredInteger& f) {
  json j = json::object();
  for (const auto& [p, e] : f.factors()) j[p.get_str()] = e.get_str();
  return j;
}

inline json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string case_flags(const CasePredicates& p) {
  std::string out;
  auto flag = [&](bool on, const char* name) {
    if (on) out += (out.empty() ? "" : ",") + std::string(name);
  };
  flag(p.in_sigma_d, "sigma(D)");
  flag(p.phi_zero, "phi=0");
  flag(p.phi_pole, "phi-pole");
  flag(p.phi_r_pole, "phiR-pole");
  flag(p.r_removable, "R-removable");
  flag(p.r_pole, "R-pole");
  flag(!p.dr_nonzero, "R'=0");
  return out.empty() ? "-" : out;
}

}  // namespace detail

struct Options {
  std::string fractal;
  int level = 1;
  std::string format = "dot";
  bool factored = false;
  bool digits = false;
  bool json = false;
  int precision = 30;
  int max_level = 2;
};

inline int cmd_list(const Options& o, std::ostream& out) {
  if (o.json) {
    json arr = json::array();
    for (const auto& name : builtin_names()) {
      auto s = builtin(name);
      arr.push_back({{"name", name}, {"cells", s.m}, {"boundary_size", s.v0_size}, {"v1_size", s.v1_size}});
    }
    out << json{{"schema", "1"}, {"builtins", arr}}.dump(2) << "\n";
    return kExitOk;
  }
  for (const auto& name : builtin_names()) {
    auto s = builtin(name);
    out << std::left << std::setw(12) << name << " m=" << s.m << " |V0|=" << s.v0_size << " |V1|=" << s.v1_size << "\n";
  }
  return kExitOk;
}

inline int cmd_info(const Options& o, std::ostream& out) {
  auto s = resolve_structure(o.fractal);
  auto rep = validate(s);
  if (o.json) {
    json v = json::array();
    for (const auto& x : rep.violations) v.push_back({{"name", x.name}, {"detail", x.detail}});
    json j{{"schema", "1"}, {"name", s.name}, {"cells", s.m}, {"boundary_size", s.v0_size}, {"v1_size", s.v1_size},
           {"edges", make_graph(s.v1_size, s.edges1).edge_count()}, {"valid", rep.ok()}, {"violations", v}};
    if (rep.ok()) j["cells_form_tree"] = cells_form_tree(s);
    out << j.dump(2) << "\n";
  } else {
    out << "name: " << s.name << "\n"
        << "cells (m): " << s.m << "\n"
        << "|V0|: " << s.v0_size << "\n"
        << "|V1|: " << s.v1_size << "\n"
        << "G1 edges: " << make_graph(s.v1_size, s.edges1).edge_count() << "\n";
    if (rep.ok()) {
      out << "validation: ok\n"
          << "cells form a tree: " << detail::yes_no(cells_form_tree(s)) << "\n";
    } else {
      out << "validation: " << rep.violations.size() << " violation(s)\n";
      for (const auto& x : rep.violations) out << "  " << x.name << ": " << x.detail << "\n";
    }
  }
  return rep.ok() ? kExitOk : kExitInvalid;
}

inline int cmd_build(const Options& o, std::ostream& out) {
  auto s = resolve_structure(o.fractal);
  if (o.level < 0) throw std::invalid_argument("level must be >= 0");
  if (vertex_count(s, o.level) > 2000000) throw std::invalid_argument("G_n too large to build explicitly");
  out << export_graph(build_level(s, o.level), o.format, s.name);
  return kExitOk;
}

inline int cmd_decimate(const Options& o, std::ostream& out) {
  auto s = resolve_structure(o.fractal);
  DecimationData dd = derive(s);
  SpectralPlan plan = spectral_plan(dd);

  if (o.json) {
    json sigma = json::array();
    for (const auto& cf : dd.sigma_d) sigma.push_back({{"class", cf.cls.label()}, {"multiplicity", cf.multiplicity}});
    json exc = json::array();
    for (const auto& e : dd.exceptional) exc.push_back(e.label());
    json cases = json::array();
    for (const auto& t : plan.tracked) {
      json row{{"class", t.cls.label()},
               {"minpoly", to_string(t.cls.minpoly())},
               {"exceptional", t.exceptional},
               {"type", t.a_type ? "A" : "B"}};
      if (t.record) {
        row["case"] = t.record->case_id;
        row["mult_D"] = t.record->mult_d;
        row["flags"] = detail::case_flags(t.record->predicates);
      }
      row["image"] = t.image ? json(plan.tracked[*t.image].cls.label()) : json(nullptr);
      json der = json::array();
      for (const auto& b : t.derived) der.push_back(b.label());
      row["derived"] = der;
      cases.push_back(row);
    }
    out << json{{"schema", "1"},
                {"fractal", s.name},
                {"phi", to_string(dd.phi)},
                {"R", to_string(dd.r)},
                {"R_factored", detail::factored(dd.r)},
                {"d", dd.d},
                {"Q0", dd.q0.get_str()},
                {"Pd", dd.pd.get_str()},
                {"sigma_D", sigma},
                {"exceptional", exc},
                {"classes", cases}}
                .dump(2)
        << "\n";
    return kExitOk;
  }

  out << "fractal: " << s.name << "\n"
      << "phi(z) = " << to_string(dd.phi) << "\n"
      << "R(z) = " << to_string(dd.r) << "\n"
      << "     = " << detail::factored(dd.r) << "\n"
      << "d = " << dd.d << ", Q(0) = " << dd.q0.get_str() << ", P_d = " << dd.pd.get_str() << "\n";
  out << "sigma(D):";
  for (const auto& cf : dd.sigma_d) out << " " << cf.cls.label() << (cf.multiplicity > 1 ? " (x" + std::to_string(cf.multiplicity) + ")" : "");
  out << "\nexceptional set:";
  for (const auto& e : dd.exceptional) out << " " << e.label();
  out << "\n\n";
  out << detail::pad("class", 14) << detail::pad("type", 6) << detail::pad("case", 6) << detail::pad("mult_D", 8)
      << detail::pad("R(class)", 14) << "flags / derived\n";
  for (const auto& t : plan.tracked) {
    out << detail::pad(t.cls.label(), 14) << detail::pad(t.a_type ? "A" : "B", 6);
    if (t.record) out << detail::pad(std::to_string(t.record->case_id), 6) << detail::pad(std::to_string(t.record->mult_d), 8);
    else out << detail::pad("-", 6) << detail::pad("-", 8);
    out << detail::pad(t.image ? plan.tracked[*t.image].cls.label() : std::string("-"), 14);
    out << (t.record ? detail::case_flags(t.record->predicates) : std::string("-"));
    if (!t.derived.empty()) {
      out << "; derived:";
      for (const auto& b : t.derived) out << " " << b.label();
    }
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_count(const Options& o, std::ostream& out) {
  if (o.level < 0) throw std::invalid_argument("level must be >= 0");
  TreeCounter counter(resolve_structure(o.fractal));
  FactoredInteger t = counter.tau(o.level);
  if (o.json) {
    out << json{{"schema", "1"},
                {"fractal", counter.structure().name},
                {"level", o.level},
                {"method", counter.method(o.level)},
                {"factors", detail::factors_json(t)},
                {"digits", detail::integer_json(t.digits())}}
                .dump(2)
        << "\n";
    return kExitOk;
  }
  if (o.factored) out << t.render() << "\n";
  if (o.digits) out << t.digits().get_str() << "\n";
  if (!o.factored && !o.digits) {
    if (t.log2_estimate() > kPrintBits)
      throw std::invalid_argument("tau has " + t.digits().get_str() + " digits; use --factored or --digits");
    out << t.value(kPrintBits).get_str() << "\n";
  }
  return kExitOk;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  if (o.max_level < 0) throw std::invalid_argument("max level must be >= 0");
  auto s = resolve_structure(o.fractal);
  TreeCounter counter(s);
  struct Check {
    std::string name;
    bool ok;
    std::string detail;
  };
  std::vector<Check> checks;
  auto add = [&](std::string name, bool ok, std::string detail = "") { checks.push_back({std::move(name), ok, std::move(detail)}); };
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      add(name, false, e.what());
    }
  };

  for (int n = 0; n <= o.max_level; ++n) {
    const std::string at = " n=" + std::to_string(n);
    if (vertex_count(s, n) > 2000) {
      add("level too large for brute force" + at, true, "skipped");
      continue;
    }
    LevelGraph g = build_level(s, n);
    guarded("tau vs brute force" + at, [&] {
      Integer oracle = tau_bruteforce(g);
      Integer fast = counter.tau(n).value();
      add("tau vs brute force" + at, oracle == fast, "method " + counter.method(n) + ", tau = " + oracle.get_str());
    });
    add("degree recursion" + at, degree_stats(s, n) == degree_stats(g));
    add("vertex count" + at, vertex_count(s, n) == Integer(static_cast<unsigned long>(g.vertex_count)));
    if (g.vertex_count <= 100) {
      guarded("matrix-tree identity" + at, [&] { add("matrix-tree identity" + at, verify_matrix_tree(g).holds); });
    }
  }

  if (counter.decimation_available()) {
    const DecimationData& dd = counter.data();
    add("schur identity", schur_identity_holds(dd));
    guarded("sum rule n<=30", [&] {
      for (int n = 0; n <= 30; ++n) spectrum(dd, counter.plan(), n);
      add("sum rule n<=30", true);
    });
    for (int n = 0; n <= std::min(o.max_level, 2); ++n) {
      const std::string name = "spectrum crosscheck n=" + std::to_string(n);
      if (vertex_count(s, n) > 100) continue;
      guarded(name, [&] {
        auto res = crosscheck_spectrum(dd, spectrum(dd, counter.plan(), n));
        add(name, res.ok, res.ok ? "" : res.report);
      });
    }
  } else {
    add("decimation", true, "unavailable: " + counter.decimation_error());
  }

  bool all = true;
  for (const auto& c : checks) {
    all = all && c.ok;
    if (o.json) continue;
    out << (c.ok ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) out << " (" << c.detail << ")";
    out << "\n";
  }
  if (o.json) {
    json arr = json::array();
    for (const auto& c : checks) arr.push_back({{"check", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    out << json{{"schema", "1"}, {"fractal", s.name}, {"ok", all}, {"checks", arr}}.dump(2) << "\n";
  } else {
    out << (all ? "all checks passed" : "some checks failed") << "\n";
  }
  return all ? kExitOk : kExitInconsistent;
}

inline int cmd_entropy(const Options& o, std::ostream& out) {
  auto s = resolve_structure(o.fractal);
  if (o.precision < 6) throw std::invalid_argument("precision must be at least 6 digits");
  TreeCounter counter(s);
  EntropyReport rep = entropy(counter, o.level, o.precision);
  const auto& b = rep.bounds;
  if (o.json) {
    json vals = json::array();
    for (const auto& [n, c] : rep.values) vals.push_back({{"n", n}, {"c", c.str(o.precision)}});
    json j{{"schema", "1"},
           {"fractal", s.name},
           {"log", "natural"},
           {"values", vals},
           {"extrapolated", rep.extrapolated().str(o.precision)},
           {"bounds_applicable", b.applicable},
           {"lower_bound", b.applicable ? json(b.lower) : json(nullptr)},
           {"upper_bound", b.upper ? json(*b.upper) : json(nullptr)},
           {"converging", rep.converging}};
    if (b.applicable) j["within_bounds"] = rep.within_bounds;
    else j["reason"] = b.reason;
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "fractal: " << s.name << " (natural log)\n";
  out << std::right << std::setw(4) << "n" << "  c_n\n";
  for (const auto& [n, c] : rep.values) out << std::setw(4) << n << "  " << c.str(o.precision) << "\n";
  out << "c_" << rep.values.back().first << " = " << rep.extrapolated().str(o.precision) << "\n";
  if (b.applicable) {
    std::ostringstream lo, hi;
    lo << std::fixed << std::setprecision(6) << b.lower;
    hi << std::fixed << std::setprecision(6) << *b.upper;
    out << "bounds: " << lo.str() << " <= c <= " << hi.str() << " (" << (rep.within_bounds ? "satisfied" : "violated")
        << ")\n";
  } else {
    out << "bounds: not applicable (" << b.reason << ")\n";
  }
  out << "converging: " << detail::yes_no(rep.converging) << "\n";
  return kExitOk;
}

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spanning-tree counts of self-similar fractal graphs via spectral decimation", "decimation-trees"};
  app.require_subcommand(1);
  Options o;

  auto fractal_arg = [&](CLI::App* c) { c->add_option("fractal", o.fractal, "builtin name or JSON definition file")->required(); };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.json, "JSON output"); };

  auto* list = app.add_subcommand("list", "List builtin fractals");
  json_flag(list);
  auto* info = app.add_subcommand("info", "Show structure data and validation");
  fractal_arg(info);
  json_flag(info);
  auto* build = app.add_subcommand("build", "Export G_n");
  fractal_arg(build);
  build->add_option("-n,--level", o.level, "level")->check(CLI::NonNegativeNumber);
  build->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  auto* decimate = app.add_subcommand("decimate", "Derive phi, R and the case table");
  fractal_arg(decimate);
  json_flag(decimate);
  auto* count = app.add_subcommand("count", "Number of spanning trees of G_n");
  fractal_arg(count);
  count->add_option("-n,--level", o.level, "level")->check(CLI::NonNegativeNumber);
  count->add_flag("--factored", o.factored, "print the prime factorization");
  count->add_flag("--digits", o.digits, "print the number of decimal digits");
  json_flag(count);
  auto* verify = app.add_subcommand("verify", "Cross-check the pipeline against brute force");
  fractal_arg(verify);
  verify->add_option("--max-level", o.max_level, "highest brute-force level")->check(CLI::NonNegativeNumber);
  json_flag(verify);
  auto* ent = app.add_subcommand("entropy", "Tree entropy c_n = ln tau(G_n) / |V_n|");
  fractal_arg(ent);
  ent->add_option("-n,--level", o.level, "highest level (>= 2)");
  ent->add_option("--prec", o.precision, "decimal digits")->check(CLI::Range(6, 100000));
  json_flag(ent);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (list->parsed()) return cmd_list(o, out);
    if (info->parsed()) return cmd_info(o, out);
    if (build->parsed()) {
      if (build->count("--level") == 0) o.level = 1;
      return cmd_build(o, out);
    }
    if (decimate->parsed()) return cmd_decimate(o, out);
    if (count->parsed()) return cmd_count(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (ent->parsed()) {
      if (ent->count("--level") == 0) o.level = 30;
      return cmd_entropy(o, out);
    }
  } catch (const InconsistencyError& e) {
    err << "internal inconsistency: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInconsistent;
  }
  err << app.help();
  return kExitInvalid;
}

}  // namespace dtrees::cli
