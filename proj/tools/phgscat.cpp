// Command-line front end: expansions, pole tables, integer-point
// obstructions, perturbation blocks, numeric mode scattering, boundary
// normal form, and the self-check suite.
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "phgscat/checks.hpp"

using namespace phgscat;

namespace {

void write_out(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + out_path);
  out << text;
}

std::string read_spec_text(const std::string& arg) {
  // inline JSON or a file path
  if (!arg.empty() && (arg[0] == '[' || arg[0] == '{')) return arg;
  std::ifstream in(arg);
  if (!in) throw spec_error("cannot open spec file: " + arg);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::complex<double>> parse_zeta_grid(const std::string& arg) {
  if (arg == "symbolic")
    throw spec_error("--zeta: this command needs a numeric grid 'a,b,steps'");
  std::vector<double> parts;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) parts.push_back(std::stod(tok));
  std::vector<std::complex<double>> out;
  if (parts.size() == 1) {
    out.push_back({parts[0], 0.0});
  } else if (parts.size() == 3) {
    int steps = static_cast<int>(parts[2]);
    if (steps < 1) throw spec_error("--zeta: steps must be >= 1");
    for (int i = 0; i < steps; ++i)
      out.push_back({parts[0] + (parts[1] - parts[0]) * (steps == 1 ? 0.0 : double(i) / (steps - 1)),
                     0.0});
  } else {
    throw spec_error("--zeta: expected 'symbolic', a single value, or 'a,b,steps'");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact boundary expansions and scattering asymptotics"};
  app.require_subcommand(1);

  std::string metric_path, source_spec, zeta_spec = "symbolic", out_path;
  std::string correction_spec, conformal_spec, corpus_dir = "corpus";
  int truncation = 8;
  double tol = 1e-10;

  auto add_common = [&](CLI::App* cmd, bool needs_metric) {
    if (needs_metric) cmd->add_option("--metric", metric_path, "metric spec JSON file")->required();
    cmd->add_option("--out", out_path, "write the report here instead of stdout");
  };

  CLI::App* c_expand = app.add_subcommand("expand", "formal expansion of the shifted equation");
  add_common(c_expand, true);
  c_expand->add_option("--source", source_spec, "boundary source: frequency or JSON list");
  c_expand->add_option("--zeta", zeta_spec, "must be 'symbolic' for this command");
  c_expand->add_option("--truncation", truncation, "expansion order");

  CLI::App* c_res = app.add_subcommand("residues", "pole table of the expansion coefficients");
  add_common(c_res, true);
  c_res->add_option("--source", source_spec, "boundary source: frequency or JSON list");
  c_res->add_option("--zeta", zeta_spec, "must be 'symbolic' for this command");
  c_res->add_option("--truncation", truncation, "expansion order");

  CLI::App* c_ein = app.add_subcommand("einstein-log", "integer-point recursion and obstruction");
  add_common(c_ein, true);
  c_ein->add_option("--source", source_spec, "boundary source: frequency or JSON list");

  CLI::App* c_pert = app.add_subcommand("perturb", "leading block of a metric perturbation");
  add_common(c_pert, true);
  c_pert->add_option("--correction", correction_spec,
                     "perturbation {j, l, tensor} as JSON or a file")
      ->required();
  c_pert->add_option("--truncation", truncation, "expansion order");

  CLI::App* c_mode = app.add_subcommand("mode-scatter", "numeric connection coefficient");
  add_common(c_mode, true);
  c_mode->add_option("--source", source_spec, "Fourier frequency, e.g. '1,0'")->required();
  c_mode->add_option("--zeta", zeta_spec, "numeric grid 'a,b,steps' or a single value")->required();
  c_mode->add_option("--tol", tol, "ODE tolerance");

  CLI::App* c_nf = app.add_subcommand("normal-form", "boundary defining function normalization");
  add_common(c_nf, true);
  c_nf->add_option("--conformal", conformal_spec, "conformal factor terms as JSON or a file")
      ->required();
  c_nf->add_option("--truncation", truncation, "expansion order");

  CLI::App* c_check = app.add_subcommand("check-all", "run the full self-check suite");
  add_common(c_check, false);
  c_check->add_option("--corpus", corpus_dir, "directory with the metric corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*c_expand || *c_res) {
      if (zeta_spec != "symbolic") throw spec_error("--zeta: this command is exact; use 'symbolic'");
      MetricExpansion g = load_metric_spec(metric_path);
      BoundaryFunction<ZetaRational> f =
          source_spec.empty() ? BoundaryFunction<ZetaRational>(g.n(), ZetaRational(1))
                              : parse_source<ZetaRational>(source_spec, g.n());
      json rep = *c_expand ? expand_report(g, f, truncation)
                           : residues_report(g, f, truncation);
      write_out(rep.dump(2) + "\n", out_path);
      return 0;
    }
    if (*c_ein) {
      MetricExpansion g = load_metric_spec(metric_path);
      BoundaryFunction<GaussianRational> f =
          source_spec.empty() ? BoundaryFunction<GaussianRational>(g.n(), GaussianRational(1))
                              : parse_source<GaussianRational>(source_spec, g.n());
      write_out(einstein_report(g, f).dump(2) + "\n", out_path);
      return 0;
    }
    if (*c_pert) {
      MetricExpansion g = load_metric_spec(metric_path);
      json jc = json::parse(read_spec_text(correction_spec));
      json wrapped = json{{"n", g.n()},
                          {"h0", emit_metric_spec(g)["h0"]},
                          {"corrections", json::array({jc})},
                          {"truncation", truncation}};
      MetricExpansion carrier = parse_metric_spec(wrapped);
      const MetricCorrection& c = carrier.corrections()[0];
      PerturbationSpec spec{g, c.tensor, c.j, c.l};
      write_out(perturb_report(spec, truncation).dump(2) + "\n", out_path);
      return 0;
    }
    if (*c_mode) {
      MetricExpansion g = load_metric_spec(metric_path);
      std::vector<int> xi = parse_frequency(source_spec, g.n(), "--source");
      json rep = mode_report(g, xi, parse_zeta_grid(zeta_spec), tol);
      write_out(rep.dump(2) + "\n", out_path);
      return 0;
    }
    if (*c_nf) {
      MetricExpansion g = load_metric_spec(metric_path);
      GSeries u = parse_series_spec(read_spec_text(conformal_spec), g.n(), truncation);
      write_out(normal_form_report(g, u, truncation).dump(2) + "\n", out_path);
      return 0;
    }
    if (*c_check) {
      Corpus corpus = load_corpus(corpus_dir);
      std::vector<CheckResult> results = run_all_checks(corpus);
      write_out(render_check_lines(results), out_path);
      for (const CheckResult& cr : results)
        if (!cr.pass) return 1;
      return 0;
    }
  } catch (const spec_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
