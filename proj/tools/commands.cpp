#include "commands.hpp"

#include "residuum/errors.hpp"
#include "residuum/oracle.hpp"
#include "residuum/residue_engine.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace residuum::cli {
namespace {

using nlohmann::json;

int digits() { return std::max(6, static_cast<int>(precision_bits() * 0.30103) - 2); }

json to_json(const Complex& z) {
  return {{"re", format_real(z.real(), digits())}, {"im", format_real(z.imag(), digits())}};
}

json to_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(std::span<const Complex> v) {
  json out = json::array();
  for (const auto& z : v) out.push_back(to_json(z));
  return out;
}

json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const auto& q : m.row(i)) row.push_back(to_string(q));
    out.push_back(row);
  }
  return out;
}

json indices(const Flag& f) {
  json out = json::array();
  for (std::size_t k : f.indices) out.push_back(k + 1);
  return out;
}

std::string short_complex(const Complex& z) { return format_complex(z, 12); }

std::string point_text(std::span<const Complex> v) {
  std::string out = "(";
  for (std::size_t j = 0; j < v.size(); ++j) out += (j ? ", " : "") + format_complex(v[j], 6);
  return out + ")";
}

std::string matrix_text(const RationalMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? "; " : "";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? " " : "") + to_string(m(i, j));
  }
  return out + "]";
}

std::size_t display_width(std::string_view s) {
  return std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; });
}

std::string render(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (width.size() <= j) width.push_back(0);
      width[j] = std::max(width[j], display_width(row[j]));
    }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out += row[j];
      if (j + 1 < row.size()) out += std::string(width[j] - display_width(row[j]) + 2, ' ');
    }
    out += "\n";
  }
  return out;
}

Complex two_pi_i_power(std::size_t r) { return pow(Complex(Real(0), 2 * real_pi()), static_cast<int>(r)); }

Report start(const char* command) {
  Report r;
  r.data = {{"schema", 1}, {"command", command}};
  return r;
}

json problem_json(const Problem& p) {
  json hs = json::array();
  for (std::size_t k = 0; k < p.arrangement.size(); ++k) {
    const Hyperplane& h = p.arrangement.hyperplanes()[k];
    json f = json::array();
    for (const auto& q : h.f) f.push_back(to_string(q));
    hs.push_back({{"label", "H" + std::to_string(k + 1)}, {"f", f}, {"s", to_json(h.s)}, {"multiplicity", h.multiplicity}});
  }
  json cone = json::array();
  for (std::size_t k = 0; k < p.cone.dimension(); ++k) {
    json g = json::array();
    for (const auto& q : p.cone.generator(k)) g.push_back(to_string(q));
    cone.push_back(g);
  }
  return {{"variables", p.variables}, {"cone", cone}, {"hyperplanes", hs}};
}

std::string problem_text(const Problem& p) {
  std::string out = "hyperplanes (f·x = i s):\n";
  for (std::size_t k = 0; k < p.arrangement.size(); ++k) {
    const Hyperplane& h = p.arrangement.hyperplanes()[k];
    std::string f;
    for (const auto& q : h.f) f += (f.empty() ? "" : " ") + to_string(q);
    out += fmt::format("  H{:<3} f = ({})  s = {}", k + 1, f, short_complex(h.s));
    if (h.multiplicity != 1) out += fmt::format("  multiplicity {}", h.multiplicity);
    out += "\n";
  }
  out += "cone generators:";
  for (std::size_t k = 0; k < p.cone.dimension(); ++k) {
    std::string g;
    for (const auto& q : p.cone.generator(k)) g += (g.empty() ? "" : ", ") + to_string(q);
    out += " (" + g + ")";
  }
  return out + "\n";
}

json audit_json(const AuditReport& audit) {
  json violators = json::array();
  for (const auto& v : audit.violators) {
    json qs = json::array();
    for (const auto& [j, l, q] : v.positive_q) qs.push_back({{"j", j}, {"l", l}, {"q", to_string(q)}});
    violators.push_back({{"flag", v.flag.label()}, {"collection", indices(v.flag)}, {"jacobian", to_json(v.jacobian)},
                         {"positive_q", qs}});
  }
  return {{"all_compatible", audit.all_compatible}, {"violation_count", audit.violation_count}, {"violators", violators}};
}

std::string audit_text(const AuditReport& audit) {
  if (audit.all_compatible) return "audit: every stable flag is compatible\n";
  std::string out = fmt::format("audit: {} incompatible flag(s)\n", audit.violation_count);
  for (const auto& v : audit.violators) {
    out += "  " + v.flag.label() + ":";
    for (const auto& [j, l, q] : v.positive_q) out += fmt::format(" q{}{} = {}", j, l, to_string(q));
    out += "\n";
  }
  return out;
}

json certificate_json(const Certificate& c) {
  return {{"certified", c.certified()},
          {"all_compatible", c.all_compatible},
          {"convergence", to_string(c.convergence)},
          {"warnings", c.warnings}};
}

std::string certificate_text(const Certificate& c) {
  std::string out = fmt::format("convergence: {}\n", to_string(c.convergence));
  if (c.certified()) return out + "certified\n";
  out += "NOT CERTIFIED\n";
  for (const auto& w : c.warnings) out += "  warning: " + w + "\n";
  return out;
}

json divergence_diagnostic(const Problem& p, std::string& text) {
  const std::vector<double> radii{10, 20, 40, 80};
  json steps = json::array();
  auto record = [&](const std::string& label, const ExpRationalFunction& f, HalfPlane half) {
    json entry{{"pole", label}, {"half_plane", half == HalfPlane::Upper ? "upper" : "lower"}};
    try {
      const SemicircleDiagnostic d = semicircle_check(f, radii, half);
      entry["radii"] = d.radii;
      entry["arc_magnitudes"] = d.magnitudes;
      entry["decays"] = d.decays;
      std::string mags;
      for (double m : d.magnitudes) mags += fmt::format(" {:.3e}", m);
      text += fmt::format("  {:<6} |arc| at R = 10, 20, 40, 80:{}  {}\n", label, mags,
                          d.decays ? "decays" : "DOES NOT DECAY");
    } catch (const Error& e) {
      entry["error"] = {{"kind", to_string(e.kind())}, {"message", e.what()}};
      entry["decays"] = false;
      text += fmt::format("  {:<6} {}\n", label, e.what());
    }
    steps.push_back(entry);
  };

  const std::size_t r = p.arrangement.dimension();
  text += "divergence diagnostic (semicircle check):\n";
  if (r == 1) {
    const bool upward = p.cone.generator(0)[0] > 0;
    record("x", p.arrangement.integrand(), upward ? HalfPlane::Upper : HalfPlane::Lower);
  } else if (r == 2) {
    text += "  second-step integrands after the first residue in z1, closed upward in z2\n";
    for (std::size_t k : first_step_poles(p.arrangement, p.cone))
      record("H" + std::to_string(k + 1), first_step_residue(p.arrangement, k, p.cone), HalfPlane::Upper);
  } else {
    text += "  not available for r > 2\n";
    return {{"available", false}};
  }
  const bool all = std::all_of(steps.begin(), steps.end(), [](const json& s) { return s["decays"].get<bool>(); });
  if (!all) text += "  closing a contour is not justified: the residue expansion does not represent the integral\n";
  return {{"available", true}, {"steps", steps}, {"all_decay", all}};
}

Report error_report(const char* command, const Error& e, int code) {
  Report r = start(command);
  json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err["line"] = pe->line();
    err["column"] = pe->column();
    err["expected"] = pe->expected();
  }
  r.data["error"] = err;
  r.text = fmt::format("error [{}]: {}\n", to_string(e.kind()), e.what());
  r.exit_code = code;
  return r;
}

Report eval_impl(const Problem& p, ResidueResult& res) {
  Report rep = start("eval");
  res = evaluate_integral(p.arrangement, p.cone);
  const std::size_t r = p.arrangement.dimension();
  const Complex scale = Complex(abs(Complex(to_real(p.cone.det_v())))) * two_pi_i_power(r);

  json contributions = json::array();
  std::vector<std::vector<std::string>> table{{"flag", "collections", "terminal point", "|det V| (2πi)^r tres"}};
  for (const auto& c : res.flag_contributions) {
    json cols = json::array();
    std::string col_text;
    for (const auto& f : c.collections) {
      cols.push_back(f.label());
      col_text += (col_text.empty() ? "" : ",") + f.label();
    }
    const Complex weighted = scale * c.residue;
    contributions.push_back({{"flag", c.flag.label()},
                             {"collections", cols},
                             {"terminal_point", to_json(c.terminal_point)},
                             {"tres", to_json(c.residue)},
                             {"weighted", to_json(weighted)}});
    table.push_back({c.flag.label(), col_text, point_text(c.terminal_point), short_complex(weighted)});
  }

  rep.data["problem"] = problem_json(p);
  rep.data["value"] = to_json(res.value);
  rep.data["value_over_2pi_i_r"] = to_json(res.value / two_pi_i_power(r));
  rep.data["terminal_point_sum"] = to_json(res.terminal_point_sum);
  rep.data["contributions"] = contributions;
  rep.data["certificate"] = certificate_json(res.certificate);
  rep.data["audit"] = audit_json(res.audit);
  rep.data["precision_bits"] = precision_bits();
  rep.text = fmt::format("value              = {}\n", format_complex(res.value, 20)) +
             fmt::format("value / (2πi)^{}    = {}\n", r, format_complex(res.value / two_pi_i_power(r), 20)) +
             fmt::format("terminal-point sum = {}\n\n", format_complex(res.terminal_point_sum, 20)) +
             (res.flag_contributions.empty() ? std::string("no stable flags\n") : render(table)) + "\n" +
             audit_text(res.audit) + certificate_text(res.certificate);
  rep.exit_code = res.certificate.certified() ? kOk : kNotCertified;
  return rep;
}

}  // namespace

Report analyze(const Problem& p, const CommandOptions&) {
  Report rep = start("analyze");
  const std::vector<FlagClass> classes = classify_flags(p.arrangement, p.cone);
  const AuditReport audit = compatibility_audit(p.arrangement, p.cone);
  const Convergence conv = convergence_heuristic(p.arrangement, p.cone);

  json flags = json::array();
  std::vector<std::vector<std::string>> table{
      {"flag", "stable", "compatible", "bruhat", "jacobian", "terminal point"}};
  for (const auto& c : classes) {
    const std::vector<Complex> point = pole_location(p.arrangement, c.flag);
    json ps = json::array();
    for (const auto& q : c.profile.p) ps.push_back(to_string(q));
    flags.push_back({{"flag", c.flag.label()},
                     {"collection", indices(c.flag)},
                     {"jacobian", to_json(c.jacobian)},
                     {"p", ps},
                     {"stable", c.profile.stable},
                     {"compatible", c.profile.compatible},
                     {"in_bruhat_cell", c.profile.in_bruhat_cell},
                     {"terminal_point", to_json(point)},
                     {"terminal_point_in_cone", p.cone.contains(point)}});
    table.push_back({c.flag.label(), c.profile.stable ? "yes" : "no", c.profile.compatible ? "yes" : "no",
                     c.profile.in_bruhat_cell ? "yes" : "no", matrix_text(c.jacobian), point_text(point)});
  }

  json stable = json::array();
  std::string stable_text;
  for (const auto& g : stable_flags(p.arrangement, p.cone)) {
    json cols = json::array();
    for (const auto& c : g.collections) cols.push_back(c.label());
    stable.push_back({{"flag", g.representative.label()}, {"collections", cols}});
    stable_text += " " + g.representative.label();
  }

  const bool certified = audit.all_compatible && conv != Convergence::Unknown;
  rep.data["problem"] = problem_json(p);
  rep.data["flags"] = flags;
  rep.data["stable_flags"] = stable;
  rep.data["audit"] = audit_json(audit);
  rep.data["convergence"] = to_string(conv);
  rep.data["certified"] = certified;
  rep.text = problem_text(p) + "\n" + render(table) + "\nstable flags:" + (stable_text.empty() ? " none" : stable_text) +
             "\n" + audit_text(audit) + fmt::format("convergence: {}\n", to_string(conv)) +
             (certified ? "certified\n" : "NOT CERTIFIED\n");
  rep.exit_code = certified ? kOk : kNotCertified;
  return rep;
}

Report eval(const Problem& p, const CommandOptions&) {
  ResidueResult res;
  return eval_impl(p, res);
}

Report verify(const Problem& p, const CommandOptions& o) {
  ResidueResult res;
  Report rep = eval_impl(p, res);
  rep.data["command"] = "verify";

  QuadratureOptions q;
  q.box = o.box;
  q.tol = std::min(1e-6, o.tol / 10);
  bool pass = false;
  try {
    const QuadratureReport quad = quad_integral(p.arrangement, q);
    const std::complex<double> value = res.value.to_std();
    const double diff = std::abs(value - quad.estimate);
    const double scale = std::max(std::abs(value), std::abs(quad.estimate));
    const double rel = scale > 0 ? diff / scale : 0;
    pass = diff <= o.tol * scale;
    rep.data["oracle"] = {{"estimate", to_json(quad.estimate)},
                          {"error_bound", quad.error_bound},
                          {"tail_estimate", quad.tail_estimate},
                          {"box_halfwidth", quad.box_halfwidth},
                          {"evaluations", quad.evaluations},
                          {"converged", quad.converged},
                          {"quadrature_tol", q.tol}};
    rep.data["comparison"] = {{"abs_diff", diff}, {"rel_diff", rel}, {"tol", o.tol}, {"pass", pass}};
    rep.text += fmt::format("\noracle             = {:.12e} {:+.12e}i  (error bound {:.2e}, tail {:.2e})\n",
                            quad.estimate.real(), quad.estimate.imag(), quad.error_bound, quad.tail_estimate);
    rep.text += fmt::format("relative deviation = {:.3e}  (tol {:.1e})  {}\n", rel, o.tol, pass ? "PASS" : "FAIL");
  } catch (const Error& e) {
    rep.data["oracle"] = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
    rep.data["comparison"] = {{"pass", false}, {"tol", o.tol}};
    rep.text += fmt::format("\noracle failed [{}]: {}\nFAIL\n", to_string(e.kind()), e.what());
  }
  if (!pass) {
    std::string text;
    rep.data["divergence"] = divergence_diagnostic(p, text);
    rep.text += text;
  }
  rep.exit_code = res.certificate.certified() && pass ? kOk : kNotCertified;
  return rep;
}

Report grouping(const Problem& p, const CommandOptions&) {
  Report rep = start("grouping");
  const GroupingReport g = grouping_report(p.arrangement, p.cone);
  const Certificate cert = evaluate_integral(p.arrangement, p.cone).certificate;

  json groups = json::array();
  for (const auto& d : g.grouping.groups) {
    json members = json::array();
    for (std::size_t k : d) members.push_back(k + 1);
    groups.push_back(members);
  }
  json points = json::array();
  std::string text = fmt::format("canonical grouping {}\n", g.grouping.label());
  for (const auto& pt : g.points) {
    points.push_back({{"point", to_json(pt.point)}, {"residue", to_json(pt.residue)}});
    text += fmt::format("  res at {} = {}\n", point_text(pt.point), format_complex(pt.residue, 20));
  }
  const bool match = approx_equal(g.sum, g.expected, sqrt(coincidence_tolerance()));
  rep.data["problem"] = problem_json(p);
  rep.data["grouping"] = {{"label", g.grouping.label()}, {"groups", groups}};
  rep.data["points"] = points;
  rep.data["sum"] = to_json(g.sum);
  rep.data["expected"] = to_json(g.expected);
  rep.data["match"] = match;
  rep.data["certificate"] = certificate_json(cert);
  rep.text = text + fmt::format("sum                       = {}\n", format_complex(g.sum, 20)) +
             fmt::format("sign(det V) eval/(2πi)^r  = {}\n", format_complex(g.expected, 20)) +
             (match ? "sums agree\n" : "SUMS DISAGREE\n") + certificate_text(cert);
  rep.exit_code = match && cert.certified() ? kOk : kNotCertified;
  return rep;
}

Report run(std::string_view command, std::string_view source, const CommandOptions& o) {
  static const std::vector<std::pair<std::string_view, Report (*)(const Problem&, const CommandOptions&)>> kCommands{
      {"analyze", analyze}, {"eval", eval}, {"verify", verify}, {"grouping", grouping}};
  const auto it = std::find_if(kCommands.begin(), kCommands.end(), [&](const auto& c) { return c.first == command; });
  const std::string name(command);
  if (it == kCommands.end())
    return error_report(name.c_str(), Error(ErrorKind::InvalidProblem, "unknown command " + name), kInputError);

  PrecisionScope scope(o.precision);
  Problem p;
  try {
    p = load_problem(source);
  } catch (const Error& e) {
    return error_report(name.c_str(), e, kInputError);
  }
  try {
    Report rep = it->second(p, o);
    rep.data["precision_bits"] = o.precision;
    return rep;
  } catch (const Error& e) {
    return error_report(name.c_str(), e, kNotCertified);
  }
}

}  // namespace residuum::cli
