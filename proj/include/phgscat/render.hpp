#ifndef PHGSCAT_RENDER_HPP
#define PHGSCAT_RENDER_HPP

#include <cstdio>

#include "phgscat/io.hpp"
#include "phgscat/mode.hpp"
#include "phgscat/normal_form.hpp"
#include "phgscat/perturb.hpp"
#include "phgscat/symbol.hpp"

namespace phgscat {

//! Every number in a report carries its provenance: "exact" for ring
//! arithmetic, "numeric(tol=...)" for ODE/special-function values,
//! "closed-form" for values from a stated formula rather than the engine.
inline json exact_value(const std::string& v) {
  return json{{"value", v}, {"provenance", "exact"}};
}
inline json closed_form_value(const std::string& v) {
  return json{{"value", v}, {"provenance", "closed-form"}};
}

inline std::string fmt_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12e", v == 0.0 ? 0.0 : v);  // normalize -0
  return buf;
}

inline json numeric_value(std::complex<double> v, double tol) {
  char tb[32];
  std::snprintf(tb, sizeof(tb), "%.1e", tol);
  return json{{"re", fmt_double(v.real())},
              {"im", fmt_double(v.imag())},
              {"provenance", std::string("numeric(tol=") + tb + ")"}};
}

template <class S>
json render_boundary(const BoundaryFunction<S>& f, const char* provenance = "exact") {
  json modes = json::object();
  for (const auto& [xi, c] : f.terms())
    modes[frequency_key(xi)] = json{{"value", ring<S>::to_string(c)}, {"provenance", provenance}};
  return modes;
}

template <class S>
json render_series(const PhgSeries<S>& v) {
  json out = json::array();
  for (const auto& [key, f] : v.terms())
    out.push_back(json{{"j", key.first}, {"l", key.second}, {"modes", render_boundary(f)}});
  return out;
}

inline json expand_report(const MetricExpansion& g, const BoundaryFunction<ZetaRational>& f,
                          int J) {
  PoissonExpansion e = gz_expand(g, f, J);
  json rep;
  rep["command"] = "expand";
  rep["n"] = g.n();
  rep["truncation"] = J;
  rep["prefactor"] = "x^(n - zeta)";
  rep["source"] = render_boundary(f);
  rep["coefficients"] = render_series(e.series);
  PhgSeries<ZetaRational> r = gz_residual(g, e, J);
  rep["residual_is_zero"] = r.is_zero();
  return rep;
}

//! Pole table of the expansion coefficients at every candidate exceptional
//! point zeta0 = (n + j')/2, j' = 1..J, sorted by zeta0, then (j, l), then
//! frequency.
inline json residues_report(const MetricExpansion& g, const BoundaryFunction<ZetaRational>& f,
                            int J) {
  PoissonExpansion e = gz_expand(g, f, J);
  json rep;
  rep["command"] = "residues";
  rep["n"] = g.n();
  rep["truncation"] = J;
  rep["source"] = render_boundary(f);
  json table = json::array();
  for (int jp = 1; jp <= J; ++jp) {
    GaussianRational zeta0(Rational(g.n() + jp, 2));
    for (const auto& [key, bf] : e.series.terms())
      for (const CoefficientPole& cp : coefficient_poles(bf, zeta0)) {
        if (cp.order <= 0) continue;
        table.push_back(json{{"zeta0", rat_to_string(zeta0.re)},
                             {"j", key.first},
                             {"l", key.second},
                             {"frequency", frequency_key(cp.frequency)},
                             {"order", cp.order},
                             {"leading", exact_value(ring<GaussianRational>::to_string(cp.leading))}});
      }
  }
  rep["poles"] = table;
  return rep;
}

inline json einstein_report(const MetricExpansion& g, const BoundaryFunction<GaussianRational>& f) {
  int n = g.n();
  EinsteinLogResult er = einstein_log_recursion(g, f, n + 1);
  json rep;
  rep["command"] = "einstein-log";
  rep["n"] = n;
  rep["source"] = render_boundary(f);
  rep["F"] = render_series(er.F);
  rep["p_n"] = render_boundary(er.p_n);
  PhgSeries<GaussianRational> r = einstein_log_residual(g, er, n + 1);
  bool clean = true;
  for (const auto& [key, bf] : r.terms())
    if (key.first <= n) clean = false;
  rep["residual_vanishes_through_n"] = clean;
  if (g.corrections().empty()) {
    json rel = json::array();
    // residue relation per source mode, flat model only
    for (const auto& [xi, c] : f.terms()) {
      ResidueRelationReport rr = residue_relation_check(g, xi);
      rel.push_back(json{{"frequency", frequency_key(xi)},
                         {"q_squared", rat_to_string(rr.q_squared)},
                         {"twice_residue", exact_value(rat_to_string(rr.twice_residue))},
                         {"p_n_mode", exact_value(ring<GaussianRational>::to_string(rr.p_n_mode))},
                         {"holds", rr.holds}});
    }
    rep["residue_relation"] = rel;
  }
  return rep;
}

template <class S>
json render_block(const std::map<typename OperatorSeries<S>::Key, BoundaryFunction<S>>& block,
                  const char* provenance = "exact") {
  json out = json::array();
  for (const auto& [key, f] : block) {
    json beta = json::array();
    for (int b : key.second) beta.push_back(b);
    out.push_back(json{{"a", key.first}, {"beta", beta}, {"modes", render_boundary(f, provenance)}});
  }
  return out;
}

inline json perturb_report(const PerturbationSpec& spec, int J) {
  using S = GaussianRational;
  json rep;
  rep["command"] = "perturb";
  rep["n"] = spec.g1.n();
  rep["k"] = spec.k;
  rep["m"] = spec.m;
  auto E = leading_block(operator_difference<S>(spec, J), spec.k, spec.m);
  ClosedFormLeading<S> cf = closed_form_leading<S>(spec);
  rep["engine_block"] = render_block<S>(E);
  rep["closed_form_block"] = render_block<S>(cf.block, "closed-form");
  rep["blocks_match"] = (E == cf.block);
  rep["trace"] = render_boundary(cf.T);
  // compare the radial conjugation through order k + 1; tangential weight
  // derivatives enter the engine value at k + 2 for y-dependent input
  PhgSeries<S> d1 = d1_three_term<S>(spec, J).truncated(spec.k + 1);
  std::vector<int> zero(spec.g1.n(), 0);
  PhgSeries<S> d1_engine =
      operator_difference<S>(spec, J).coeff(0, zero).truncated(spec.k + 1);
  rep["d1_three_term_matches"] = (d1 == d1_engine);
  MsoDifferenceGroups gr =
      mso_difference_groups(cf.H, cf.T, spec.k, spec.m, spec.g1.n());
  rep["mso_groups"] = json{{"higher_zero", gr.group_higher_zero},
                           {"lower_zero", gr.group_lower_zero},
                           {"concludes_L_zero", gr.concludes_L_zero(true)}};
  return rep;
}

inline json mode_report(const MetricExpansion& g, const std::vector<int>& xi,
                        const std::vector<std::complex<double>>& zetas, double tol) {
  json rep;
  rep["command"] = "mode-scatter";
  rep["n"] = g.n();
  rep["frequency"] = frequency_key(xi);
  json rows = json::array();
  for (std::complex<double> z : zetas) {
    ModeProblem p{g, xi, z};
    p.tol = tol;
    NumericScattering ns = numeric_scattering(p);
    SymbolValue sv = scattering_symbol(g.n(), z, ns.q);
    json row;
    row["zeta"] = json{{"re", fmt_double(z.real())}, {"im", fmt_double(z.imag())}};
    row["value"] = numeric_value(ns.value, tol);
    row["fit_residual"] = fmt_double(ns.fit.residual);
    row["fit_condition"] = fmt_double(ns.fit.condition);
    if (sv.pole) {
      row["symbol"] = "pole";
    } else {
      row["symbol"] = numeric_value(sv.value, 0.0);
      double rel = std::abs(ns.value - sv.value) / std::max(1e-300, std::abs(sv.value));
      row["relative_error"] = fmt_double(rel);
    }
    rows.push_back(row);
  }
  rep["rows"] = rows;
  return rep;
}

inline json normal_form_report(const MetricExpansion& g, const GSeries& u, int J) {
  NormalFormResult r = normal_form_solve(g, u, BoundaryFunction<GaussianRational>(g.n()), J);
  json rep;
  rep["command"] = "normal-form";
  rep["n"] = g.n();
  rep["truncation"] = J;
  rep["omega"] = render_series(r.omega);
  rep["new_metric"] = emit_metric_spec(r.h_new);
  rep["residual_is_zero"] = normal_form_residual(g, u, r.omega, J).is_zero();
  return rep;
}

//! Conformal-factor / series literal: list of {j, l, frequency, coeff}.
inline GSeries parse_series_spec(const std::string& text, int n, int J) {
  json j = json::parse(text);
  if (j.is_object()) j = json::array({j});
  int lmax = 0;
  for (const json& t : j) lmax = std::max(lmax, t.value("l", 0));
  GSeries out(n, J, BaseTag::Zero, LogCap{1, (lmax + 1) * (J + 2)});
  for (const json& t : j) {
    std::vector<int> xi(n, 0);
    if (t.contains("frequency"))
      xi = parse_frequency(t.at("frequency").get<std::string>(), n, "series term");
    GaussianRational c =
        t.contains("coeff") ? parse_gaussian(t.at("coeff"), "series coeff") : GaussianRational(1);
    out.add_term(t.at("j").get<int>(), t.value("l", 0), BoundaryFunction<GaussianRational>::mode(n, xi, c));
  }
  return out;
}

}  // namespace phgscat

#endif
