#include "rsm/serialization.hpp"

#include "rsm/error.hpp"

namespace rsm {

namespace {

double number_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw Error(ErrorKind::InvalidConfig, std::string("missing numeric field \"") + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

Json to_json(const CharacterForm& form) {
  Json poles = Json::array();
  for (const auto& p : form.poles()) {
    poles.push_back(Json{{"re", p.position.real()}, {"im", p.position.imag()}, {"residue", p.residue}});
  }
  return Json{{"poles", poles}};
}

CharacterForm form_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("poles") || !j.at("poles").is_array()) {
    throw Error(ErrorKind::InvalidConfig, "form JSON needs a \"poles\" array");
  }
  std::vector<PoleSpec> poles;
  for (const auto& p : j.at("poles")) {
    poles.push_back({Complex{number_field(p, "re"), number_field(p, "im")}, number_field(p, "residue")});
  }
  return make_form(std::move(poles));
}

Json to_json(const HeartParams& params) {
  return Json{{"beta", params.beta}, {"c_log", params.c_log}};
}

HeartParams heart_params_from_json(const Json& j) {
  HeartParams params{number_field(j, "beta"), number_field(j, "c_log")};
  validate(params);
  return params;
}

const char* to_string(Branch branch) { return branch == Branch::Plus ? "plus" : "minus"; }

Branch parse_branch(const std::string& text) {
  if (text == "plus") return Branch::Plus;
  if (text == "minus") return Branch::Minus;
  throw Error(ErrorKind::InvalidConfig, "branch must be \"plus\" or \"minus\", got \"" + text + "\"");
}

Json to_json(const ThreeFootballParams& params) {
  return Json{{"alpha", params.angles.alpha},         {"beta", params.angles.beta},
              {"gamma", params.angles.gamma},         {"p_beta_re", params.p_beta.real()},
              {"p_beta_im", params.p_beta.imag()},    {"branch", to_string(params.branch)},
              {"c_amp", params.c_amp}};
}

ThreeFootballParams three_football_params_from_json(const Json& j) {
  ThreeFootballParams params;
  // Stored triples may be the special one, which is not generic; only
  // positivity is required to round-trip.
  params.angles = {number_field(j, "alpha"), number_field(j, "beta"), number_field(j, "gamma")};
  if (!(params.angles.alpha > 0.0 && params.angles.beta > 0.0 && params.angles.gamma > 0.0)) {
    throw Error(ErrorKind::BadAngle, "angles must be positive");
  }
  params.p_beta = {number_field(j, "p_beta_re"), number_field(j, "p_beta_im")};
  if (!j.contains("branch") || !j.at("branch").is_string()) {
    throw Error(ErrorKind::InvalidConfig, "missing string field \"branch\"");
  }
  params.branch = parse_branch(j.at("branch").get<std::string>());
  params.c_amp = number_field(j, "c_amp");
  return params;
}

Json to_json(const GeodesicPath& path) {
  Json samples = Json::array();
  for (const Complex z : path.samples) samples.push_back(Json::array({z.real(), z.imag()}));
  return Json{{"samples", samples}, {"length", path.length}, {"endpoint_defect", path.endpoint_defect}};
}

Json to_json(const TriangleReport& report) {
  return Json{{"ell1", report.ell1}, {"ell2", report.ell2}, {"L01", report.L01}, {"theta", report.theta}};
}

Json to_json(const HeartReport& report) {
  return Json{{"c", report.c_log}, {"apex_modulus", report.apex_modulus}, {"L01", report.L01},
              {"L0inf", report.L0inf}};
}

}  // namespace rsm
