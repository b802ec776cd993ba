#ifndef PHGSCAT_IO_HPP
#define PHGSCAT_IO_HPP

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phgscat/metric.hpp"

namespace phgscat {

using json = nlohmann::ordered_json;

struct spec_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational parse_rational(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long long>());
  if (v.is_string()) {
    try {
      return rat_from_string(v.get<std::string>());
    } catch (const std::exception& e) {
      throw spec_error(where + ": bad rational '" + v.get<std::string>() + "'");
    }
  }
  throw spec_error(where + ": rational must be an integer or a \"p/q\" string");
}

//! Scalar entries are rationals; a two-element array [re, im] makes a
//! Gaussian rational (for sine-type tensor modes).
inline GaussianRational parse_gaussian(const json& v, const std::string& where) {
  if (v.is_array()) {
    if (v.size() != 2) throw spec_error(where + ": complex entry must be [re, im]");
    return {parse_rational(v[0], where), parse_rational(v[1], where)};
  }
  return GaussianRational(parse_rational(v, where));
}

inline std::vector<int> parse_frequency(const std::string& key, int n, const std::string& where) {
  std::vector<int> xi;
  std::stringstream ss(key);
  std::string part;
  while (std::getline(ss, part, ',')) xi.push_back(std::stoi(part));
  if (static_cast<int>(xi.size()) != n)
    throw spec_error(where + ": frequency '" + key + "' has wrong dimension");
  return xi;
}

inline std::string frequency_key(const std::vector<int>& xi) {
  std::string s;
  for (size_t i = 0; i < xi.size(); ++i) s += (i ? "," : "") + std::to_string(xi[i]);
  return s;
}

inline MetricExpansion parse_metric_spec(const json& j) {
  if (!j.contains("n")) throw spec_error("metric spec: missing field 'n'");
  int n = j.at("n").get<int>();
  if (n < 1) throw spec_error("metric spec: n must be positive");
  RationalMatrix h0(n);
  const json& jh = j.at("h0");
  if (!jh.is_array() || static_cast<int>(jh.size()) != n)
    throw spec_error("metric spec: h0 must be an n x n matrix");
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      h0(r, c) = parse_rational(jh[r][c], "h0[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  if (!h0.is_symmetric()) throw spec_error("metric spec: h0 is not symmetric");
  if (!h0.is_positive_definite()) throw spec_error("metric spec: h0 is not positive definite");

  std::vector<MetricCorrection> corr;
  for (const json& jc : j.value("corrections", json::array())) {
    MetricCorrection c;
    c.j = jc.at("j").get<int>();
    c.l = jc.value("l", 0);
    BoundaryTensor<GaussianRational> t(n);
    for (auto it = jc.at("tensor").begin(); it != jc.at("tensor").end(); ++it) {
      std::vector<int> xi = parse_frequency(it.key(), n, "correction tensor");
      const json& m = it.value();
      for (int r = 0; r < n; ++r)
        for (int cix = 0; cix < n; ++cix) {
          GaussianRational v = parse_gaussian(
              m[r][cix], "tensor[" + it.key() + "][" + std::to_string(r) + "][" + std::to_string(cix) + "]");
          if (r <= cix) {
            GaussianRational vt = parse_gaussian(m[cix][r], "tensor");
            if (v != vt)
              throw spec_error("metric spec: tensor entry (" + std::to_string(r) + "," +
                               std::to_string(cix) + ") at frequency " + it.key() +
                               " is not symmetric");
            BoundaryFunction<GaussianRational> f = t(r, cix);
            f.add_term(xi, v);
            t.set(r, cix, f);
          }
        }
    }
    c.tensor = t;
    corr.push_back(c);
  }
  int J = j.value("truncation", 8);
  return MetricExpansion(n, h0, corr, J);
}

inline MetricExpansion load_metric_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw spec_error("cannot open metric spec: " + path);
  json j;
  in >> j;
  return parse_metric_spec(j);
}

inline json rational_json(const Rational& r) {
  return json(rat_to_string(r));
}
inline json gaussian_json(const GaussianRational& g) {
  if (g.im == 0) return rational_json(g.re);
  return json::array({rational_json(g.re), rational_json(g.im)});
}

inline json emit_metric_spec(const MetricExpansion& g) {
  json j;
  j["n"] = g.n();
  json h0 = json::array();
  for (int r = 0; r < g.n(); ++r) {
    json row = json::array();
    for (int c = 0; c < g.n(); ++c) row.push_back(rational_json(g.h0()(r, c)));
    h0.push_back(row);
  }
  j["h0"] = h0;
  json corr = json::array();
  for (const auto& c : g.corrections()) {
    json jc;
    jc["j"] = c.j;
    jc["l"] = c.l;
    // collect frequencies in deterministic order
    std::map<std::vector<int>, bool> freqs;
    for (int r = 0; r < g.n(); ++r)
      for (int cc = 0; cc < g.n(); ++cc)
        for (const auto& [xi, v] : c.tensor(r, cc).terms()) freqs[xi] = true;
    json tensor;
    for (const auto& [xi, unused] : freqs) {
      json m = json::array();
      for (int r = 0; r < g.n(); ++r) {
        json row = json::array();
        for (int cc = 0; cc < g.n(); ++cc) row.push_back(gaussian_json(c.tensor(r, cc).coeff(xi)));
        m.push_back(row);
      }
      tensor[frequency_key(xi)] = m;
    }
    jc["tensor"] = tensor;
    corr.push_back(jc);
  }
  j["corrections"] = corr;
  j["truncation"] = g.truncation();
  return j;
}

//! Source term: either a bare frequency string "1,0" (coefficient 1) or a
//! list [{"frequency": "1,0", "coeff": ...}, ...].
template <class S>
BoundaryFunction<S> parse_source(const std::string& spec, int n) {
  BoundaryFunction<S> f(n);
  auto from_g = [](const GaussianRational& g) { return MetricExpansion::embed<S>(g); };
  if (!spec.empty() && (spec[0] == '[' || spec[0] == '{')) {
    json j = json::parse(spec);
    if (j.is_object()) j = json::array({j});
    for (const json& t : j) {
      std::vector<int> xi = parse_frequency(t.at("frequency").get<std::string>(), n, "source");
      GaussianRational c =
          t.contains("coeff") ? parse_gaussian(t.at("coeff"), "source coeff") : GaussianRational(1);
      f.add_term(xi, from_g(c));
    }
  } else {
    f.add_term(parse_frequency(spec, n, "source"), from_g(GaussianRational(1)));
  }
  return f;
}

}  // namespace phgscat

#endif
