#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qskew/families.hpp"
#include "qskew/intmatrix.hpp"
#include "qskew/ore.hpp"
#include "qskew/pidegree.hpp"
#include "qskew/removal.hpp"

namespace qskew {

using nlohmann::json;

// ---------------------------------------------------------------------------
// LaurentIntPoly: {"terms": [[exponent, "coefficient"], ...]} sorted by exponent.

inline json laurent_to_json(const LaurentIntPoly& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, c.get_str()}));
  return json{{"terms", std::move(terms)}};
}

inline LaurentIntPoly laurent_from_json(const json& j) {
  LaurentIntPoly p;
  for (const auto& t : j.at("terms"))
    p.add_term(t.at(0).get<long>(), Int(t.at(1).get<std::string>()));
  return p;
}

// ---------------------------------------------------------------------------
// ScalarField / Scalar

inline json field_to_json(const ScalarField& f) {
  json j;
  if (f.is_generic()) {
    j["mode"] = f.with_sqrt() ? "generic-sqrt" : "generic";
    j["vars"] = f.vars();
    json params = json::object();
    for (const auto& name : f.param_names()) params[name] = f.param(name).to_string();
    j["params"] = std::move(params);
  } else {
    j["mode"] = "cyclotomic";
    j["r"] = f.order();
    json params = json::object();
    for (const auto& [name, e] : f.cyclotomic_params()) params[name] = e;
    j["params"] = std::move(params);
  }
  return j;
}

inline FieldPtr field_from_json(const json& j) {
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "generic" || mode == "generic-sqrt") {
    std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
    if (mode == "generic-sqrt") {
      if (vars != std::vector<std::string>{"s"})
        throw DomainError("field_from_json: generic-sqrt field must have the single variable s");
      return ScalarField::generic_with_sqrt();
    }
    FieldPtr plain = ScalarField::generic(vars);
    if (!j.contains("params")) return plain;
    std::map<std::string, std::pair<int, int>> table;
    for (const auto& [name, text] : j.at("params").items()) {
      Scalar v = parse_scalar(plain, text.get<std::string>());
      auto mono = v.as_unit_monomial();
      if (!mono) throw DomainError("field_from_json: parameter " + name + " must be a monomial");
      int idx = -1, power = 0;
      for (size_t k = 0; k < mono->size(); ++k)
        if ((*mono)[k] != 0) {
          if (idx >= 0) throw DomainError("field_from_json: parameter " + name + " must involve one variable");
          idx = static_cast<int>(k);
          power = static_cast<int>((*mono)[k]);
        }
      if (idx < 0) idx = 0;
      table[name] = {idx, power};
    }
    return ScalarField::generic_with_param_powers(std::move(vars), std::move(table));
  }
  if (mode == "cyclotomic") {
    std::map<std::string, long> params;
    if (j.contains("params"))
      for (const auto& [name, e] : j.at("params").items()) params[name] = e.get<long>();
    return ScalarField::cyclotomic(j.at("r").get<long>(), std::move(params));
  }
  throw DomainError("field_from_json: unknown mode " + mode);
}

// ---------------------------------------------------------------------------
// OreSpec / elements

inline json terms_to_json(const TermMap& terms) {
  json out = json::array();
  for (const auto& [e, c] : terms)
    out.push_back(json{{"coeff", c.to_string()}, {"exponents", e}});
  return out;
}

inline TermMap terms_from_json(const FieldPtr& field, int nvars, const json& j) {
  TermMap out;
  for (const auto& t : j) {
    ExpVec e = t.at("exponents").get<ExpVec>();
    if (static_cast<int>(e.size()) != nvars) throw DomainError("terms_from_json: exponent size mismatch");
    ore::add_term(out, e, parse_scalar(field, t.at("coeff").get<std::string>()));
  }
  return out;
}

inline json spec_to_json(const OreSpec& spec) {
  json j;
  j["field"] = field_to_json(*spec.field);
  j["vars"] = spec.vars;
  json lam = json::array();
  for (const auto& row : spec.lambda) {
    json r = json::array();
    for (const auto& s : row) r.push_back(s.to_string());
    lam.push_back(std::move(r));
  }
  j["lambda"] = std::move(lam);
  json qs = json::array();
  for (const auto& s : spec.qskew) qs.push_back(s.to_string());
  j["qskew"] = std::move(qs);
  json deltas = json::array();
  for (const auto& [key, img] : spec.delta)
    deltas.push_back(json{{"var", key.first}, {"arg", key.second}, {"terms", terms_to_json(img)}});
  j["delta"] = std::move(deltas);
  j["invertible"] = std::vector<int>(spec.invertible.begin(), spec.invertible.end());
  j["max_index"] = spec.max_index;
  if (spec.lift) j["lift"] = spec_to_json(*spec.lift);
  return j;
}

inline SpecPtr spec_from_json(const json& j) {
  FieldPtr field = field_from_json(j.at("field"));
  std::vector<std::string> vars = j.at("vars").get<std::vector<std::string>>();
  const int N = static_cast<int>(vars.size());
  std::vector<std::vector<Scalar>> lambda;
  for (const auto& row : j.at("lambda")) {
    std::vector<Scalar> r;
    for (const auto& s : row) r.push_back(parse_scalar(field, s.get<std::string>()));
    lambda.push_back(std::move(r));
  }
  std::vector<Scalar> qskew;
  for (const auto& s : j.at("qskew")) qskew.push_back(parse_scalar(field, s.get<std::string>()));
  std::vector<DeltaEntry> deltas;
  if (j.contains("delta"))
    for (const auto& d : j.at("delta"))
      deltas.push_back(DeltaEntry{d.at("var").get<int>(), d.at("arg").get<int>(),
                                  terms_from_json(field, N, d.at("terms"))});
  std::set<int> invertible;
  if (j.contains("invertible"))
    for (const auto& v : j.at("invertible")) invertible.insert(v.get<int>());
  int max_index = j.value("max_index", 64);
  SpecPtr lift;
  if (j.contains("lift")) lift = spec_from_json(j.at("lift"));
  return make_ore_spec(field, std::move(vars), std::move(lambda), std::move(qskew),
                       std::move(deltas), std::move(invertible), max_index, std::move(lift));
}

inline json element_to_json(const OreElement& e) { return json{{"terms", terms_to_json(e.terms)}}; }

inline OreElement element_from_json(const SpecPtr& spec, const json& j) {
  return make_element(spec, terms_from_json(spec->field, spec->size(), j.at("terms")));
}

// ---------------------------------------------------------------------------
// IntMatrix: {"rows": n, "cols": n, "entries": [[int,...],...]}

inline json matrix_to_json(const IntMatrix& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      const Int& v = m.at(i, j);
      if (mpz_fits_slong_p(v.get_mpz_t()))
        row.push_back(v.get_si());
      else
        row.push_back(v.get_str());
    }
    entries.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline IntMatrix matrix_from_json(const json& j) {
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  IntMatrix m(rows, cols);
  const json& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != rows) throw DomainError("matrix_from_json: row count mismatch");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(entries[i].size()) != cols)
      throw DomainError("matrix_from_json: column count mismatch");
    for (int k = 0; k < cols; ++k) {
      const json& v = entries[i][k];
      m.at(i, k) = v.is_string() ? Int(v.get<std::string>()) : Int(v.get<long>());
    }
  }
  return m;
}

// ---------------------------------------------------------------------------
// Reports

inline json pidegree_report_to_json(const PIDegreeReport& rep) {
  json factors = json::array();
  for (const auto& d : rep.invariant_factors) factors.push_back(d.get_str());
  return json{{"ell", rep.ell},
              {"invariant_factors", std::move(factors)},
              {"h", rep.h.get_str()},
              {"pi_degree", rep.pi_degree.get_str()}};
}

inline json removal_result_to_json(const OreSpec& spec, const RemovalResult& res) {
  json j;
  json lam = json::array();
  for (const auto& row : res.lambda_final) {
    json r = json::array();
    for (const auto& s : row) r.push_back(s.to_string());
    lam.push_back(std::move(r));
  }
  j["lambda_final"] = std::move(lam);
  json steps = json::array();
  for (const auto& st : res.steps) {
    json images = json::object();
    for (const auto& [v, img] : st.images) images[spec.vars[v]] = terms_to_json(img.terms);
    steps.push_back(json{{"removed_var", spec.vars[st.removed_var]},
                         {"images", std::move(images)},
                         {"ore_generator", terms_to_json(st.ore_generator.terms)}});
  }
  j["steps"] = std::move(steps);
  json gens = json::array();
  for (const auto& g : res.ore_generators) gens.push_back(terms_to_json(g.terms));
  j["ore_generators"] = std::move(gens);
  return j;
}

}  // namespace qskew
