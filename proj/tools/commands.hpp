#pragma once

// Command implementations for the polyode tool. Each command returns the
// JSON report, a human-readable summary and the exit code; main() only
// parses arguments and prints.

#include <json.hpp>

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "polyode/io.hpp"
#include "polyode/polyode.hpp"

namespace polyode::cli {

using json = nlohmann::json;

inline constexpr int kExitFound = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotFound = 2;

/// Bad command-line usage; reported with exit code 1 like malformed input.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class Method { determinant, aim, both };

inline Method parse_method(const std::string& s) {
  if (s == "determinant") return Method::determinant;
  if (s == "aim") return Method::aim;
  if (s == "both") return Method::both;
  throw UsageError("unknown method '" + s + "' (expected determinant, aim or both)");
}

inline std::string method_name(Method m) {
  switch (m) {
    case Method::determinant: return "determinant";
    case Method::aim: return "aim";
    case Method::both: return "both";
  }
  return "both";
}

struct CheckOptions {
  std::optional<long> n;
  std::optional<long> max_n;
  Method method = Method::both;
  double tolerance = 1e-12;
};

struct Outcome {
  int exit_code = kExitNotFound;
  json report;
  std::string summary;
};

namespace detail {

inline json poly_json(const RPoly& p, const std::string& var) {
  return {{"coefficients", io::to_json(p)}, {"text", to_string(p, var)}};
}

inline std::vector<long> degrees(const CheckOptions& o) {
  if (o.n && o.max_n) throw UsageError("give either --n or --max-n, not both");
  if (!o.n && !o.max_n) throw UsageError("a degree is required: --n N or --max-n N");
  long hi = o.n ? *o.n : *o.max_n;
  if (hi < 0) throw UsageError("degrees must be nonnegative");
  std::vector<long> out;
  for (long d = o.n ? hi : 0; d <= hi; ++d) out.push_back(d);
  return out;
}

struct Analysis {
  json report;
  bool exists = false;
  std::set<long> degrees;  // exact degrees of verified solutions
  std::string line;
};

/// Both criteria at one degree for an equation without unknowns.
inline Analysis analyze_numeric(const EquationSpec& eq, long n, Method method) {
  Analysis a;
  std::ostringstream line;
  line << "n=" << n << ":";
  json& r = a.report;
  r["n"] = n;
  const Rational dc = degree_condition(eq, n)[0];
  const bool holds = dc.is_zero();
  r["degree_condition"] = {{"value", dc.to_string()}, {"holds", holds}};
  line << (holds ? " degree condition holds;" : " degree condition fails (" + dc.to_string() + ");");

  bool det_zero = false;
  if (method != Method::aim) {
    const Rational det = delta_determinant(eq, n)[0];
    det_zero = det.is_zero();
    r["determinant"] = det.to_string();
    line << " determinant " << det << ";";
  }

  bool aim_ok = false;
  if (method != Method::determinant) {
    const long cap = default_aim_cap(n);
    try {
      const AimResult aim = aim_test_polynomial(eq, cap);
      aim_ok = aim.found() && *aim.index <= std::max(n, 1L);
      r["aim"] = {{"index", aim.found() ? json(*aim.index) : json(nullptr)},
                  {"iterations", aim.iterations},
                  {"cap", cap},
                  {"supports_degree", aim_ok}};
      line << (aim.found() ? " AIM terminates at " + std::to_string(*aim.index) + ";"
                           : " AIM does not terminate;");
    } catch (const NotSecondOrder&) {
      r["aim"] = {{"index", nullptr}, {"applicable", false}};
      line << " AIM not applicable;";
    }
  }

  const bool attempt = holds && (method == Method::aim ? aim_ok : det_zero);
  json solutions = json::array();
  if (attempt) {
    try {
      auto result = construct_solutions(eq, n);
      for (const auto& s : result.basis) {
        solutions.push_back(io::to_json(s));
        a.exists = a.exists || s.residual_is_zero;
        if (s.residual_is_zero) a.degrees.insert(s.reported_degree);
        line << " y = " << to_string(s.polynomial()) << (s.residual_is_zero ? " (verified)" : "");
      }
      r["ambiguous"] = result.ambiguous();
    } catch (const NoNullspace&) {
      r["ambiguous"] = false;
      line << " no nullspace;";
    }
  } else {
    line << " no solution of this degree";
  }
  r["solutions"] = solutions;
  if (method == Method::both) r["criteria_agree"] = ((holds && det_zero) == aim_ok);
  r["exists"] = a.exists;
  a.line = line.str();
  return a;
}

/// Degree n with one unknown: constraint polynomial, its real roots and a
/// certified solution at every exact rational root.
inline Analysis analyze_parametric(const EquationSpec& eq, long n, const std::string& var,
                                   Method method, double tolerance) {
  Analysis a;
  std::ostringstream line;
  json& r = a.report;
  r["n"] = n;
  const RPoly dc = degree_condition(eq, n);
  const RPoly det = delta_determinant(eq, n);
  r["degree_condition"] = poly_json(dc, var);
  r["determinant"] = poly_json(det, var);
  line << "n=" << n << ": degree condition " << to_string(dc, var) << " = 0; determinant "
       << to_string(det, var) << " = 0";

  RPoly system;
  if (dc.is_zero()) {
    system = det;
  } else if (dc.is_constant()) {
    system = dc;
  } else {
    system = det.is_zero() ? dc : gcd(dc, det);
  }
  r["constraint"] = poly_json(system, var);
  json candidates = json::array();

  auto try_value = [&](const Rational& value) {
    auto sub = analyze_numeric(eq.substitute(value), n, method);
    sub.report["value"] = value.to_string();
    candidates.push_back(sub.report);
    a.exists = a.exists || sub.exists;
    a.degrees.insert(sub.degrees.begin(), sub.degrees.end());
    line << "\n  " << var << " = " << value << " ->" << sub.line.substr(sub.line.find(':') + 1);
  };

  if (system.is_zero()) {
    r["identically_satisfied"] = true;
    r["roots"] = io::to_json(RootReport{});
    line << "; satisfied for every " << var << ", sampled at 0";
    try_value(Rational(0));
  } else if (system.is_constant()) {
    r["roots"] = io::to_json(RootReport{system, {}, {}, {}, 0});
    line << "; inconsistent, no admissible " << var;
  } else {
    const RootReport roots = find_real_roots(system, tolerance);
    r["roots"] = io::to_json(roots);
    line << "; real roots:";
    for (double v : roots.refined) line << " " << v;
    if (roots.refined.empty()) line << " none";
    for (const auto& v : roots.exact_rational_roots) try_value(v);
  }
  r["candidates"] = candidates;
  r["exists"] = a.exists;
  a.line = line.str();
  return a;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

inline Outcome run_analysis(const std::string& command, const EquationSpec& eq,
                            const std::optional<std::string>& unknown, const CheckOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  json& r = out.report;
  r["command"] = command;
  r["equation"] = io::to_json(eq, unknown.value_or("t"));
  r["method"] = method_name(o.method);
  json analyses = json::array();
  std::set<long> admissible;
  std::ostringstream summary;
  bool exists = false;
  for (long n : degrees(o)) {
    Analysis an = eq.is_numeric() ? analyze_numeric(eq, n, o.method)
                                  : analyze_parametric(eq, n, *unknown, o.method, o.tolerance);
    admissible.insert(an.degrees.begin(), an.degrees.end());
    exists = exists || an.exists;
    analyses.push_back(std::move(an.report));
    summary << an.line << "\n";
  }
  r["analyses"] = analyses;
  // a solution found at degree n may have lower degree; list actual degrees
  r["admissible_degrees"] = admissible;
  r["exists"] = exists;
  r["timing_ms"] = elapsed_ms(start);
  summary << (exists ? "polynomial solution found" : "no polynomial solution") << "\n";
  out.summary = summary.str();
  out.exit_code = exists ? kExitFound : kExitNotFound;
  return out;
}

}  // namespace detail

/// Parses an equation document. A parameterized coefficient without a
/// declared unknown is an input error.
inline io::ParsedEquation read_equation(const std::string& text,
                                        const std::optional<std::string>& unknown) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return io::equation_from_json(doc, unknown);
}

inline Outcome cmd_check(const io::ParsedEquation& input, const CheckOptions& o) {
  if (!input.eq.is_numeric() && !input.unknown)
    throw UsageError("the equation has a parameter but no unknown is declared");
  return detail::run_analysis("check", input.eq, input.unknown, o);
}

inline Outcome cmd_constraints(const io::ParsedEquation& input, const CheckOptions& o) {
  if (!input.unknown) throw UsageError("constraints needs one unknown parameter (--unknown)");
  if (input.eq.is_numeric())
    throw UsageError("the unknown '" + *input.unknown + "' does not occur in the equation");
  return detail::run_analysis("constraints", input.eq, input.unknown, o);
}

// ---------------------------------------------------------------------------
// Demos

/// Named parameters given on the command line, as text.
using DemoParams = std::map<std::string, std::string>;

namespace detail {

inline Rational rational_param(const DemoParams& p, const std::string& key, const char* fallback) {
  auto it = p.find(key);
  return Rational::parse(it == p.end() ? fallback : it->second);
}

inline long long_param(const DemoParams& p, const std::string& key, long fallback) {
  auto it = p.find(key);
  if (it == p.end()) return fallback;
  const Rational v = Rational::parse(it->second);
  if (!v.is_integer()) throw ParseError("--" + key + " must be an integer");
  return v.numerator().get_si();
}

inline Outcome finish_demo(const std::string& name, json params, Analysis an) {
  Outcome out;
  out.report = {{"command", "demo"}, {"demo", name}, {"parameters", std::move(params)}};
  out.report.update(an.report);
  out.report["exists"] = an.exists;
  out.summary = an.line + "\n";
  out.exit_code = an.exists ? kExitFound : kExitNotFound;
  return out;
}

inline Outcome demo_davidson(const DemoParams& p, double) {
  const Rational mu = rational_param(p, "mu", "0");
  const long nodes = long_param(p, "n", 1);
  if (nodes < 0) throw PreconditionError("--n counts nodes and must be nonnegative");
  const Rational eps = davidson_eigenvalue(mu, nodes);
  const long degree = davidson_degree(nodes);
  auto an = analyze_numeric(davidson_spec<Rational>(mu, eps), degree, Method::both);
  an.report["epsilon"] = eps.to_string();
  an.report["degree"] = degree;
  an.line = "Davidson mu=" + mu.to_string() + ", " + std::to_string(nodes) +
            " nodes: epsilon = " + eps.to_string() + "\n" + an.line;
  return finish_demo("davidson", {{"mu", mu.to_string()}, {"n", nodes}}, std::move(an));
}

inline Outcome demo_coulomb(const DemoParams& p, double tolerance) {
  CoulombProblem prob{rational_param(p, "Z", "1"), Rational(1), long_param(p, "d", 3),
                      long_param(p, "l", 0)};
  const long n = long_param(p, "n", 1);
  if (n < 0) throw PreconditionError("--n must be nonnegative");
  prob.validate();
  const Rational k = prob.k();
  const Rational alpha = prob.Z / (Rational(n + 1) + k);
  if (alpha.sign() <= 0) throw PreconditionError("Z must be positive for a bound state");
  const Rational energy = coulomb_energy(prob, n);
  std::ostringstream line;
  line << "shifted Coulomb Z=" << prob.Z << " d=" << prob.d << " l=" << prob.l << " n=" << n
       << ": k = " << k << ", alpha = " << alpha << ", E = " << energy;

  Analysis an;
  json& r = an.report;
  r["k"] = k.to_string();
  r["alpha"] = alpha.to_string();
  r["energy"] = energy.to_string();
  RPoly constraint;
  if (n == 0) {
    // 1x1 matrix [2 t (k+1)]; t = alpha*beta > 0 leaves only k = -1
    constraint = RPoly(Rational(2) * (k + Rational(1)));
  } else {
    constraint = coulomb_constraint<Rational>(k, n);
  }
  r["constraint"] = poly_json(constraint, "t");
  line << "\n  constraint on t = alpha*beta: " << to_string(constraint, "t") << " = 0";
  json admissible = json::array();
  if (!constraint.is_constant()) {
    const RootReport roots = find_real_roots(constraint, tolerance);
    r["roots"] = io::to_json(roots);
    for (std::size_t i = 0; i < roots.refined.size(); ++i) {
      if (roots.refined[i] <= 0) continue;
      json entry = {{"t", roots.refined[i]}, {"beta", roots.refined[i] / alpha.to_double()}};
      line << "\n  t = " << roots.refined[i] << ", beta = " << roots.refined[i] / alpha.to_double();
      for (const auto& t : roots.exact_rational_roots) {
        if (t.to_double() != roots.refined[i]) continue;
        CoulombProblem at = prob;
        at.beta = t / alpha;
        const auto sol = construct_solution(coulomb_spec(at, n), n);
        entry["t_exact"] = t.to_string();
        entry["beta_exact"] = at.beta.to_string();
        entry["solution"] = io::to_json(sol);
        an.exists = an.exists || sol.residual_is_zero;
        line << " (exact " << at.beta << "), f = " << to_string(sol.polynomial(), "r")
             << (sol.residual_is_zero ? " (verified)" : "");
      }
      admissible.push_back(std::move(entry));
    }
  } else {
    r["roots"] = io::to_json(RootReport{constraint, {}, {}, {}, 0});
  }
  if (admissible.empty()) line << "\n  no admissible shift beta > 0";
  r["admissible"] = admissible;
  an.line = line.str();
  return finish_demo("coulomb",
                     {{"Z", prob.Z.to_string()}, {"d", prob.d}, {"l", prob.l}, {"n", n}},
                     std::move(an));
}

inline Outcome demo_krylov(const DemoParams& p, double tolerance) {
  const Rational alpha = rational_param(p, "alpha", "1");
  const long n = long_param(p, "n", 1);
  const auto kr = krylov_robnik_analyze(alpha, n);
  const auto eq = krylov_robnik_spec<Rational>(alpha, kr.beta, unknown<Rational>());
  auto an = analyze_parametric(eq, n, "gamma", Method::both, tolerance);
  an.report["beta"] = kr.beta.to_string();
  an.line = "Krylov-Robnik alpha=" + alpha.to_string() + ": beta = " + kr.beta.to_string() + "\n" +
            an.line;
  return finish_demo("krylov", {{"alpha", alpha.to_string()}, {"n", n}}, std::move(an));
}

inline Outcome demo_chhajlany(const DemoParams& p, double tolerance) {
  const Rational pp = rational_param(p, "p", "2");
  const long n = long_param(p, "n", 1);
  if (n < 1) throw PreconditionError("--n must be positive");
  const auto eq = chhajlany_spec<Rational>(pp, Rational(2 * n), unknown<Rational>());
  auto an = analyze_parametric(eq, n, "alpha", Method::both, tolerance);
  an.report["delta"] = std::to_string(2 * n);
  an.line = "Chhajlany-Malnev p=" + pp.to_string() + ": delta = " + std::to_string(2 * n) + "\n" +
            an.line;
  return finish_demo("chhajlany", {{"p", pp.to_string()}, {"n", n}}, std::move(an));
}

inline Outcome demo_hyper(const DemoParams& p, double) {
  const long m = long_param(p, "m", 1);
  const long n = long_param(p, "n", 1);
  const long l = long_param(p, "l", 2);
  const Rational a = rational_param(p, "a", "1");
  const Rational b = rational_param(p, "b", "1");
  const auto sol = hyper_build(m, n, l, a, b);
  Analysis an;
  json series = json::array();
  for (const auto& c : sol.series) series.push_back(c.to_string());
  const bool residual_ok = hyper_residual(sol).is_zero();
  an.report["series"] = series;
  an.report["prefactor_power"] = sol.prefactor_power();
  an.report["polynomial"] = poly_json(sol.polynomial(), "x");
  an.report["residual_is_zero"] = residual_ok;
  std::ostringstream line;
  line << "hypergeometric class m=" << m << " n=" << n << " l=" << l << ": y = "
       << to_string(sol.polynomial()) << (residual_ok ? " (verified)" : " (residual nonzero)");
  bool ok = residual_ok;
  if (l == 2) {
    const bool cross = hyper_verify(sol);
    an.report["criteria_cross_check"] = cross;
    line << "; criteria cross-check " << (cross ? "passes" : "fails");
    ok = ok && cross;
  }
  an.exists = ok;
  an.line = line.str();
  return finish_demo("hyper",
                     {{"m", m}, {"n", n}, {"l", l}, {"a", a.to_string()}, {"b", b.to_string()}},
                     std::move(an));
}

inline Outcome demo_bessel(const DemoParams& p, double) {
  const long n = long_param(p, "n", 2);
  if (n < 0) throw PreconditionError("--n must be nonnegative");
  const ClassicalEquation<Rational> ce{1, 0, 0, 2, 2};
  const Rational tau = classical_tau(ce.a20, ce.a10, n);
  auto an = analyze_numeric(embed_classical(ce, tau), n, Method::both);
  const auto ys = classical_polynomials(ce, std::size_t(n + 1));
  const RPoly& rec = ys.back();
  bool agree = false;
  if (!an.report["solutions"].empty())
    agree = proportional(rec, io::solution_from_json(an.report["solutions"][0]).polynomial());
  an.report["tau"] = tau.to_string();
  an.report["recurrence"] = poly_json(rec, "x");
  an.report["recurrence_agrees"] = agree;
  an.exists = an.exists && agree;
  an.line = "Bessel n=" + std::to_string(n) + ": tau = " + tau.to_string() + ", recurrence y = " +
            to_string(rec) + (agree ? " (agrees)" : " (disagrees)") + "\n" + an.line;
  return finish_demo("bessel", {{"n", n}}, std::move(an));
}

inline Outcome demo_heun_confluent(const DemoParams& p, double tolerance) {
  using S = Scalar<Rational>;
  const Rational alpha = rational_param(p, "alpha", "1");
  const Rational beta = rational_param(p, "beta", "0");
  const Rational gamma = rational_param(p, "gamma", "0");
  const long n = long_param(p, "n", 1);
  // mu is the unknown; nu follows from mu + nu = -n alpha
  const S mu = unknown<Rational>();
  const S nu = S(-Rational(n) * alpha) - mu;
  const auto eq = confluent_to_spec<Rational>({S(alpha), S(beta), S(gamma), mu, nu});
  auto an = analyze_parametric(eq, n, "mu", Method::both, tolerance);
  an.line = "confluent Heun, nu = -n alpha - mu\n" + an.line;
  return finish_demo("heun-confluent",
                     {{"alpha", alpha.to_string()},
                      {"beta", beta.to_string()},
                      {"gamma", gamma.to_string()},
                      {"n", n}},
                     std::move(an));
}

inline Outcome demo_heun_biconfluent(const DemoParams& p, double tolerance) {
  using S = Scalar<Rational>;
  const Rational alpha = rational_param(p, "alpha", "1");
  const Rational beta = rational_param(p, "beta", "0");
  const long n = long_param(p, "n", 1);
  const Rational gamma = alpha + Rational(2 * (n + 1));
  const auto eq =
      biconfluent_to_spec<Rational>({S(alpha), S(beta), S(gamma), unknown<Rational>()});
  auto an = analyze_parametric(eq, n, "delta", Method::both, tolerance);
  an.report["gamma"] = gamma.to_string();
  an.line = "biconfluent Heun, gamma = " + gamma.to_string() + "\n" + an.line;
  return finish_demo("heun-biconfluent",
                     {{"alpha", alpha.to_string()}, {"beta", beta.to_string()}, {"n", n}},
                     std::move(an));
}

inline Outcome demo_heun_general(const DemoParams& p, double tolerance) {
  using S = Scalar<Rational>;
  const Rational a = rational_param(p, "a", "2");
  const Rational gamma = rational_param(p, "gamma", "1");
  const Rational delta = rational_param(p, "delta", "1");
  const Rational epsilon = rational_param(p, "epsilon", "0");
  const long n = long_param(p, "n", 1);
  // alpha = -n and beta from the Fuchsian relation; q is the unknown
  const Rational alpha(-n);
  const Rational beta = gamma + delta + epsilon - Rational(1) - alpha;
  const auto eq = general_to_spec<Rational>(
      {S(a), S(alpha), S(beta), S(gamma), S(delta), S(epsilon), unknown<Rational>()});
  auto an = analyze_parametric(eq, n, "q", Method::both, tolerance);
  an.report["alpha"] = alpha.to_string();
  an.report["beta"] = beta.to_string();
  an.line = "general Heun, alpha = " + alpha.to_string() + ", beta = " + beta.to_string() + "\n" +
            an.line;
  return finish_demo("heun-general",
                     {{"a", a.to_string()},
                      {"gamma", gamma.to_string()},
                      {"delta", delta.to_string()},
                      {"epsilon", epsilon.to_string()},
                      {"n", n}},
                     std::move(an));
}

using DemoFn = std::function<Outcome(const DemoParams&, double)>;

inline const std::map<std::string, DemoFn>& demos() {
  static const std::map<std::string, DemoFn> table{
      {"bessel", demo_bessel},
      {"chhajlany", demo_chhajlany},
      {"coulomb", demo_coulomb},
      {"davidson", demo_davidson},
      {"heun-biconfluent", demo_heun_biconfluent},
      {"heun-confluent", demo_heun_confluent},
      {"heun-general", demo_heun_general},
      {"hyper", demo_hyper},
      {"krylov", demo_krylov},
  };
  return table;
}

}  // namespace detail

inline std::vector<std::string> demo_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : detail::demos()) names.push_back(name);
  return names;
}

inline Outcome cmd_demo(const std::string& name, const DemoParams& params,
                        double tolerance = 1e-12) {
  const auto& table = detail::demos();
  auto it = table.find(name);
  if (it == table.end()) {
    std::string list;
    for (const auto& n : demo_names()) list += (list.empty() ? "" : ", ") + n;
    throw UsageError("unknown demo '" + name + "'; available: " + list);
  }
  return it->second(params, tolerance);
}

// ---------------------------------------------------------------------------
// heun: a Heun family given by a JSON object of named parameters

namespace detail {

inline Scalar<Rational> heun_param(const json& doc, const std::string& key,
                                   const std::optional<std::string>& unknown) {
  if (doc.contains(key)) return io::scalar_from_json(doc.at(key), unknown);
  if (unknown && *unknown == key) return polyode::unknown<Rational>();
  throw ParseError("missing Heun parameter \"" + key + "\"");
}

}  // namespace detail

inline EquationSpec heun_equation(const std::string& family, const json& doc,
                                  const std::optional<std::string>& unknown) {
  if (!doc.is_object()) throw ParseError("Heun parameters must be a JSON object");
  auto get = [&](const char* key) { return detail::heun_param(doc, key, unknown); };
  if (family == "confluent")
    return confluent_to_spec<Rational>({get("alpha"), get("beta"), get("gamma"), get("mu"),
                                        get("nu")});
  if (family == "biconfluent")
    return biconfluent_to_spec<Rational>({get("alpha"), get("beta"), get("gamma"), get("delta")});
  if (family == "general")
    return general_to_spec<Rational>({get("a"), get("alpha"), get("beta"), get("gamma"),
                                      get("delta"), get("epsilon"), get("q")});
  throw UsageError("unknown Heun family '" + family +
                   "' (expected confluent, biconfluent or general)");
}

inline Outcome cmd_heun(const std::string& family, const std::string& text,
                        const std::optional<std::string>& unknown, const CheckOptions& o) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  const EquationSpec eq = heun_equation(family, doc, unknown);
  if (!eq.is_numeric() && !unknown)
    throw UsageError("the parameters depend on an unknown but none is declared");
  Outcome out = detail::run_analysis("heun", eq, unknown, o);
  out.report["family"] = family;
  return out;
}

}  // namespace polyode::cli
