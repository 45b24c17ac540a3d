#pragma once

// JSON reading and writing of MeromorphicSpec:
//
//   {"form": "BodeForm", "prefactor": {"exponent_poly": [[re, im], ...]},
//    "origin_order": 0, "zeros": [{"re": 2, "im": 0, "exponent": 1}],
//    "poles": [{"re": 1, "im": 0, "exponent": 1}]}
//
// A term may carry "correction": {"exponent_poly": [...], "weierstrass_order": n}.

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "merolocus/error.hpp"
#include "merolocus/function_model.hpp"

namespace merolocus {

namespace detail {

inline double number_at(const nlohmann::json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw Error(ErrorCode::InvalidSpec, std::string("field '") + key + "' must be a number");
  return j.at(key).get<double>();
}

inline EntireFactor entire_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "entire factor must be an object");
  EntireFactor out;
  if (j.contains("exponent_poly")) {
    for (const auto& c : j.at("exponent_poly")) {
      if (c.is_number()) {
        out.exponent_polynomial.emplace_back(c.get<double>(), 0.0);
      } else if (c.is_array() && c.size() == 2 && c[0].is_number() && c[1].is_number()) {
        out.exponent_polynomial.emplace_back(c[0].get<double>(), c[1].get<double>());
      } else {
        throw Error(ErrorCode::InvalidSpec, "exponent_poly entries must be [re, im] pairs");
      }
    }
  }
  if (j.contains("weierstrass_order")) {
    const auto& w = j.at("weierstrass_order");
    if (!w.is_number_integer() || w.get<long>() < 0) {
      throw Error(ErrorCode::InvalidSpec, "weierstrass_order must be a non-negative integer");
    }
    out.weierstrass_order = w.get<unsigned>();
  }
  return out;
}

inline nlohmann::json entire_to_json(const EntireFactor& f) {
  nlohmann::json j = nlohmann::json::object();
  nlohmann::json poly = nlohmann::json::array();
  for (const Complex& c : f.exponent_polynomial) poly.push_back({c.real(), c.imag()});
  j["exponent_poly"] = poly;
  if (f.weierstrass_order) j["weierstrass_order"] = *f.weierstrass_order;
  return j;
}

template <class Term>
Term term_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "zero/pole entries must be objects");
  Term t;
  t.location = {number_at(j, "re", 0.0), number_at(j, "im", 0.0)};
  t.exponent = number_at(j, "exponent", 1.0);
  if (j.contains("correction")) t.correction = entire_from_json(j.at("correction"));
  return t;
}

template <class Term>
nlohmann::json term_to_json(const Term& t) {
  nlohmann::json j{{"re", t.location.real()}, {"im", t.location.imag()}, {"exponent", t.exponent}};
  if (t.correction) j["correction"] = entire_to_json(*t.correction);
  return j;
}

}  // namespace detail

inline MeromorphicSpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidSpec, "spec must be a JSON object");
  MeromorphicSpec spec;
  const std::string form = j.value("form", std::string("BodeForm"));
  if (form == "BodeForm" || form == "Bode") {
    spec.form = Form::Bode;
  } else if (form == "RootForm" || form == "Root") {
    spec.form = Form::Root;
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown form '" + form + "'");
  }
  if (j.contains("prefactor")) spec.prefactor = detail::entire_from_json(j.at("prefactor"));
  spec.origin_order = detail::number_at(j, "origin_order", 0.0);
  for (const char* key : {"zeros", "poles"}) {
    if (j.contains(key) && !j.at(key).is_array()) {
      throw Error(ErrorCode::InvalidSpec, std::string("'") + key + "' must be an array");
    }
  }
  if (j.contains("zeros")) {
    for (const auto& z : j.at("zeros")) spec.zeros.push_back(detail::term_from_json<ZeroTerm>(z));
  }
  if (j.contains("poles")) {
    for (const auto& p : j.at("poles")) spec.poles.push_back(detail::term_from_json<PoleTerm>(p));
  }
  validate(spec);
  return spec;
}

inline nlohmann::json spec_to_json(const MeromorphicSpec& spec) {
  nlohmann::json j;
  j["form"] = spec.form == Form::Bode ? "BodeForm" : "RootForm";
  j["prefactor"] = detail::entire_to_json(spec.prefactor);
  j["origin_order"] = spec.origin_order;
  j["zeros"] = nlohmann::json::array();
  for (const ZeroTerm& z : spec.zeros) j["zeros"].push_back(detail::term_to_json(z));
  j["poles"] = nlohmann::json::array();
  for (const PoleTerm& p : spec.poles) j["poles"].push_back(detail::term_to_json(p));
  return j;
}

inline MeromorphicSpec parse_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidSpec, std::string("malformed spec JSON: ") + e.what());
  }
  return spec_from_json(j);
}

inline MeromorphicSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidSpec, "cannot open spec file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

}  // namespace merolocus
