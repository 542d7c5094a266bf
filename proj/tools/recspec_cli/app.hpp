#ifndef RECSPEC_CLI_APP_HPP
#define RECSPEC_CLI_APP_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "io.hpp"

namespace recspec::cli {

enum ExitCode : int
{
  ok = 0,
  input_error = 2,
  hypothesis_failure = 3,
  numerical_failure = 4,
  usage_error = 64,
};

/// One invocation's output document.
struct Report
{
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  Json diagnostics = Json::array();
  Json residuals = Json::object();

  void diagnose(const std::string& level, const std::string& message)
  {
    diagnostics.push_back(Json{{"level", level}, {"message", message}});
  }

  Json to_json() const
  {
    return Json{{"command", command},
                {"inputs", inputs},
                {"results", results},
                {"diagnostics", diagnostics},
                {"residuals", residuals}};
  }
};

/// Raised by a command that has already filled in a report for a failed
/// hypothesis; the report is still printed.
struct HypothesisExit
{};

namespace commands {

inline Json root_set_json(const RootSet& r)
{
  return Json{{"roots", to_json(std::span<const Complex>(r.roots))},
              {"sep_min", r.sep_min},
              {"abs_min", r.abs_min}};
}

inline void recurrence_solve(const std::vector<Complex>& coeffs, const std::vector<Complex>& initial,
                             std::optional<std::size_t> eval, Report& rep)
{
  rep.inputs = Json{{"coeffs", to_json(std::span<const Complex>(coeffs))},
                    {"initial", to_json(std::span<const Complex>(initial))}};
  if (eval)
    rep.inputs["eval"] = *eval;

  const Recurrence rec(coeffs, initial);
  const Polynomial charpoly = characteristic_polynomial(rec);
  rep.results["order"] = rec.order();
  rep.results["characteristic_polynomial"] = to_json(std::span<const Complex>(charpoly.coeffs()));

  ClosedForm cf;
  try {
    cf = solve_closed_form(rec);
  } catch (const HypothesisError& e) {
    rep.results["hypothesis_ok"] = false;
    rep.results["failure_reason"] = e.what();
    rep.diagnose("error", e.what());
    throw HypothesisExit{};
  }
  rep.results["hypothesis_ok"] = true;
  rep.results["roots"] = to_json(std::span<const Complex>(cf.roots.roots));
  rep.results["sep_min"] = cf.roots.sep_min;
  rep.results["abs_min"] = cf.roots.abs_min;
  rep.results["coefficients"] = to_json(std::span<const Complex>(cf.coefficients));

  const std::size_t horizon = std::max<std::size_t>(2 * rec.order(), eval.value_or(0));
  const auto x = iterate(rec, horizon);
  if (eval) {
    Json terms = Json::array();
    for (std::size_t n = 0; n <= *eval; ++n)
      terms.push_back(Json{{"n", n},
                           {"closed_form", to_json(evaluate_closed_form(cf, n))},
                           {"iterated", to_json(x[n])}});
    rep.results["terms"] = terms;
  }

  // independent route: V c = [x_1..x_m] by elimination
  const std::size_t m = rec.order();
  const auto lu = solve_linear(vandermonde_matrix(cf.roots),
                               std::vector<Complex>(x.begin() + 1, x.begin() + 1 + static_cast<std::ptrdiff_t>(m)));
  double diff = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    diff = std::max(diff, std::abs(lu[i] - cf.coefficients[i]) / std::max(1.0, std::abs(lu[i])));
  rep.residuals["closed_form_vs_iteration"] = closed_form_deviation(cf, x);
  rep.residuals["coefficients_vs_elimination"] = diff;
}

inline void vandermonde_common(const std::vector<Complex>& nodes, Report& rep)
{
  rep.inputs = Json{{"nodes", to_json(std::span<const Complex>(nodes))}};
  if (nodes.size() > vandermonde_soft_cap)
    rep.diagnose("warning", "n = " + std::to_string(nodes.size()) + " exceeds " +
                              std::to_string(vandermonde_soft_cap) +
                              "; the closed form loses accuracy in double precision");
}

inline void vandermonde_invert(const std::vector<Complex>& nodes, Report& rep)
{
  vandermonde_common(nodes, rep);
  const RootSet set(nodes);
  rep.results["n"] = nodes.size();
  Matrix<Complex> w;
  try {
    w = vandermonde_inverse(set);
  } catch (const HypothesisError& e) {
    rep.results["hypothesis_ok"] = false;
    rep.results["failure_reason"] = e.what();
    if (e.value())
      rep.results["measured"] = *e.value();
    rep.diagnose("error", e.what());
    throw HypothesisExit{};
  }
  rep.results["hypothesis_ok"] = true;
  rep.results["sep_min"] = set.sep_min;
  rep.results["abs_min"] = set.abs_min;
  rep.results["inverse"] = to_json(w);
  const auto v = vandermonde_matrix(set);
  rep.residuals["left_identity"] = max_abs(w * v + (Complex{-1.0} * Matrix<Complex>::identity(nodes.size())));
  rep.residuals["right_identity"] = max_abs(v * w + (Complex{-1.0} * Matrix<Complex>::identity(nodes.size())));
}

inline void vandermonde_det_cmd(const std::vector<Complex>& nodes, Report& rep)
{
  vandermonde_common(nodes, rep);
  const RootSet set(nodes);
  const Complex det = vandermonde_det(set);
  rep.results["n"] = nodes.size();
  rep.results["det"] = to_json(det);
  const Complex elim = determinant(vandermonde_matrix(set));
  rep.residuals["det_vs_elimination"] = std::abs(det - elim) / std::max(std::abs(elim), 1e-300);
}

inline Json structure_json(const ChainStructure& s)
{
  Json j{{"irreducible", s.irreducible}};
  if (s.period)
    j["period"] = *s.period;
  else
    j["period"] = nullptr;
  j["aperiodic"] = s.aperiodic;
  return j;
}

inline Json spectrum_json(const Spectrum& s)
{
  return Json{{"eigenvalues", to_json(std::span<const Complex>(s.eigenvalues.roots))},
              {"all_simple", s.all_simple},
              {"all_nonzero", s.all_nonzero},
              {"dominant", to_json(s.dominant)},
              {"sep_min", s.eigenvalues.sep_min},
              {"abs_min", s.eigenvalues.abs_min}};
}

inline void markov_analyze(const Matrix<double>& raw, double epsilon, Report& rep)
{
  rep.inputs = Json{{"matrix", to_json(raw)}, {"epsilon", epsilon}};
  if (!(epsilon > 0.0 && epsilon < 1.0))
    throw ArgumentError("--epsilon must lie in (0, 1)");
  const TransitionMatrix p = validate(raw);
  const ChainSpectrum cs = chain_spectrum(p);
  const HypothesisChecks checks = check_hypotheses(p, cs);

  rep.results["structure"] = structure_json(checks.structure);
  rep.results["spectrum"] = spectrum_json(cs.spectrum);
  rep.results["hypothesis_checks"] = Json{{"irreducible", checks.structure.irreducible},
                                          {"aperiodic", checks.structure.aperiodic},
                                          {"dominant_is_one", checks.dominant_is_one},
                                          {"all_nonzero", checks.all_nonzero},
                                          {"all_simple", checks.all_simple}};
  if (!checks.ok()) {
    rep.results["hypothesis_ok"] = false;
    rep.results["failure"] = to_string(*checks.failure);
    rep.results["failure_reason"] = checks.failure_reason;
    rep.diagnose("error", checks.failure_reason);
    throw HypothesisExit{};
  }

  const ConvergenceAnalysis a(p);
  const std::size_t m = p.size();
  rep.results["hypothesis_ok"] = true;
  rep.results["pi"] = to_json(std::span<const double>(a.pi()));
  rep.results["rho"] = a.rho();
  const Matrix<double> phi = a.phi_grid();
  rep.results["phi_grid"] = to_json(phi);
  rep.results["phi_max"] = max_abs(phi);
  rep.results["psi"] = a.psi();
  rep.results["mixing_time_phi"] = a.mixing_time(epsilon, BoundKind::phi_max);
  rep.results["mixing_time_psi"] = a.mixing_time(epsilon, BoundKind::psi);

  // matrix-power cross-checks of both bounds over n = 1..40
  double phi_violation = 0.0, psi_violation = 0.0;
  const double psi = a.psi();
  Matrix<double> pn = Matrix<double>::identity(m);
  for (int n = 1; n <= 40; ++n) {
    pn = pn * p.matrix();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double err = std::abs(pn(i, j) - a.pi()[j]);
        phi_violation = std::max(phi_violation, err - phi(i, j) * std::pow(a.rho(), n));
        psi_violation = std::max(psi_violation, err - psi * std::pow(a.rho(), n - 1));
      }
  }
  const auto iterated = power_iteration(p, 500);
  double power_diff = 0.0;
  for (std::size_t j = 0; j < m; ++j)
    power_diff = std::max(power_diff, std::abs(iterated[j] - a.pi()[j]));

  Json res{{"stationary_residual", stationary_residual(p, a.pi())},
           {"power_iteration_deviation", power_diff},
           {"phi_bound_violation", std::max(0.0, phi_violation)},
           {"psi_bound_violation", std::max(0.0, psi_violation)}};
  rep.results["oracle_residuals"] = res;
  rep.residuals = res;
  if (power_diff > 1e-8)
    rep.diagnose("info", "power iteration (500 steps) has not converged to the direct solve");
}

inline void graph_diameter_bound(const std::vector<Edge>& edges, std::optional<std::size_t> vertices,
                                 const std::string& construction, Report& rep)
{
  std::size_t m = vertices.value_or(0);
  if (!vertices)
    for (const auto& [u, v] : edges)
      m = std::max({m, u + 1, v + 1});
  Json ej = Json::array();
  for (const auto& [u, v] : edges)
    ej.push_back(Json::array({u, v}));
  rep.inputs = Json{{"vertices", m}, {"edges", ej}, {"construction", construction}};
  if (m == 0)
    throw ArgumentError("graph has no vertices");

  const Digraph g(m, edges);
  const TransitionMatrix p =
    construction == "lazy" ? markov_matrix_lazy_undirected(g) : markov_matrix_uniform(g);
  // the lazy construction adds self-loops, so the bound is for that graph
  std::vector<Edge> support;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (p(i, j) > 0.0)
        support.push_back({i, j});
  const Digraph h(m, support);
  const DiameterReport r = diameter_bound(h, p);

  rep.results["markov_matrix"] = to_json(p.matrix());
  if (r.exact)
    rep.results["exact_diameter"] = *r.exact;
  else
    rep.results["exact_diameter"] = "infinity";
  rep.results["hypothesis_ok"] = r.hypothesis_ok;
  if (!r.hypothesis_ok) {
    rep.results["failure_reason"] = r.failure_reason.value_or("");
    rep.diagnose("error", r.failure_reason.value_or("hypotheses not met"));
    throw HypothesisExit{};
  }
  rep.results["bound"] = *r.bound;
  rep.results["per_j_terms"] = to_json(std::span<const double>(r.per_j_terms));
  rep.results["rho"] = r.rho;
  rep.results["pi"] = to_json(std::span<const double>(r.pi));
  rep.residuals["bound_minus_exact"] =
    r.exact ? static_cast<double>(*r.bound) - static_cast<double>(*r.exact) : 0.0;
}

inline void graph_chung(std::size_t m, std::size_t k, double tau, Report& rep)
{
  rep.inputs = Json{{"m", m}, {"k", k}, {"tau", tau}};
  rep.results["bound"] = chung_bound(m, k, tau);
}

inline void spectral_eigs(const Matrix<Complex>& a, Report& rep)
{
  rep.inputs = Json{{"matrix", to_json(a)}};
  const Polynomial p = char_poly(a);
  const Spectrum s = eigenvalues(a);
  rep.results["char_poly"] = to_json(std::span<const Complex>(p.coeffs()));
  rep.results["spectrum"] = spectrum_json(s);
  rep.results["rho"] = s.rho;
  Complex sum{0.0};
  for (const auto& l : s.eigenvalues.roots)
    sum += l;
  rep.residuals["trace_vs_eigenvalue_sum"] = std::abs(sum - trace(a));
  rep.residuals["cayley_hamilton"] = max_abs(p(a));
}

} // namespace commands

inline const char* usage_text()
{
  return "usage: recspec-cli <command> [options]\n"
         "commands:\n"
         "  recurrence solve --coeffs a0,a1,... --initial x0,x1,... [--eval N]\n"
         "  vandermonde invert --nodes <file>\n"
         "  vandermonde det --nodes <file>\n"
         "  markov analyze --matrix <file> [--epsilon 1e-6]\n"
         "  graph diameter-bound --edges <file> [--construction uniform|lazy] [--vertices N]\n"
         "  graph chung --m M --k K --tau T\n"
         "  spectral eigs --matrix <file>\n"
         "every command accepts --human for a plain-text rendering\n";
}

/// Runs one command. `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  if (args.size() < 2) {
    err << usage_text();
    return usage_error;
  }
  const std::string command = args[0] + " " + args[1];

  CLI::App app{command};
  bool human = false;
  app.add_flag("--human", human, "Render results as plain text");
  Report rep;
  rep.command = command;
  std::function<void()> action;

  std::string coeffs, initial, path, construction = "uniform";
  std::optional<std::size_t> eval, vertices;
  double epsilon = 1e-6, tau = 0.0;
  std::size_t m = 0, k = 0;

  if (command == "recurrence solve") {
    app.add_option("--coeffs", coeffs, "a_0,...,a_{m-1}")->required();
    app.add_option("--initial", initial, "x_0,...,x_{m-1}")->required();
    app.add_option("--eval", eval, "Evaluate terms 0..N");
    action = [&] { commands::recurrence_solve(parse_complex_list(coeffs), parse_complex_list(initial), eval, rep); };
  } else if (command == "vandermonde invert") {
    app.add_option("--nodes", path, "JSON array of nodes")->required();
    action = [&] { commands::vandermonde_invert(read_nodes(path), rep); };
  } else if (command == "vandermonde det") {
    app.add_option("--nodes", path, "JSON array of nodes")->required();
    action = [&] { commands::vandermonde_det_cmd(read_nodes(path), rep); };
  } else if (command == "markov analyze") {
    app.add_option("--matrix", path, "JSON or CSV transition matrix")->required();
    app.add_option("--epsilon", epsilon, "Mixing-time target");
    action = [&] { commands::markov_analyze(read_real_matrix(path), epsilon, rep); };
  } else if (command == "graph diameter-bound") {
    app.add_option("--edges", path, "Edge list file")->required();
    app.add_option("--construction", construction, "Markov matrix construction")
      ->check(CLI::IsMember({"uniform", "lazy"}));
    app.add_option("--vertices", vertices, "Vertex count (default: max index + 1)");
    action = [&] { commands::graph_diameter_bound(read_edges(path), vertices, construction, rep); };
  } else if (command == "graph chung") {
    app.add_option("--m", m, "Vertex count")->required();
    app.add_option("--k", k, "Degree")->required();
    app.add_option("--tau", tau, "Second largest adjacency eigenvalue modulus")->required();
    action = [&] { commands::graph_chung(m, k, tau, rep); };
  } else if (command == "spectral eigs") {
    app.add_option("--matrix", path, "JSON or CSV square matrix")->required();
    action = [&] { commands::spectral_eigs(read_complex_matrix(path), rep); };
  } else {
    err << "unknown command '" << command << "'\n" << usage_text();
    return usage_error;
  }

  std::vector<std::string> rest(args.rbegin(), args.rend() - 2);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return input_error;
  }

  auto emit = [&] {
    if (human) {
      out << rep.command << "\n";
      write_human(rep.results, out, "  ");
      for (const auto& d : rep.diagnostics)
        out << "  [" << d["level"].get<std::string>() << "] " << d["message"].get<std::string>() << "\n";
    } else {
      write_json(rep.to_json(), out);
      out << "\n";
    }
  };

  int code = ok;
  try {
    action();
  } catch (const HypothesisExit&) {
    code = hypothesis_failure;
  } catch (const HypothesisError& e) {
    rep.results["hypothesis_ok"] = false;
    rep.results["failure_reason"] = e.what();
    rep.diagnose("error", e.what());
    code = hypothesis_failure;
  } catch (const NumericalError& e) {
    rep.diagnose("error", std::string(e.what()) + " (residual " + format_double(e.residual()) + ")");
    err << e.what() << "\n";
    code = numerical_failure;
  } catch (const Error& e) {
    rep.diagnose("error", e.what());
    err << e.what() << "\n";
    code = input_error;
  } catch (const std::exception& e) {
    rep.diagnose("error", e.what());
    err << e.what() << "\n";
    code = input_error;
  }
  if (code == hypothesis_failure)
    err << "hypotheses not met: " << rep.results.value("failure_reason", std::string{}) << "\n";
  emit();
  return code;
}

} // namespace recspec::cli

#endif // RECSPEC_CLI_APP_HPP
