#include "tailalg/spec_io.hpp"

#include <json.hpp>

namespace tailalg {
namespace {

using nlohmann::json;

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw SpecError("", "malformed JSON");
  if (!j.is_object()) throw SpecError("", "spec must be a JSON object");
  return j;
}

std::string get_family(const json& j) {
  if (!j.contains("family") || !j["family"].is_string()) {
    throw SpecError("family", "missing or not a string");
  }
  return j["family"].get<std::string>();
}

double get_number(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number()) {
    throw SpecError(field, "missing or not a number");
  }
  return j[field].get<double>();
}

std::vector<double> get_array(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_array()) {
    throw SpecError(field, "missing or not an array");
  }
  std::vector<double> out;
  for (const auto& x : j[field]) {
    if (!x.is_number()) throw SpecError(field, "entries must be numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

AngularFunction parse_angular(const json& j) {
  const std::string family = get_family(j);
  try {
    if (family == "comonotone") return AngularFunction::comonotone();
    if (family == "independence") return AngularFunction::independence();
    if (family == "clayton") {
      return AngularFunction::clayton(get_number(j, "alpha"));
    }
    if (family == "linear_min") {
      return AngularFunction::linear_min(get_number(j, "alpha"),
                                         get_number(j, "beta"));
    }
    if (family == "plateau") return AngularFunction::plateau(get_number(j, "p"));
    if (family == "piecewise_linear") {
      return AngularFunction::piecewise_linear(get_array(j, "t"),
                                               get_array(j, "v"));
    }
  } catch (const DomainError& e) {
    throw SpecError("family " + family, e.what());
  }
  throw SpecError("family", "unknown family '" + family + "'");
}

Copula parse_copula(const json& j) {
  const std::string family = get_family(j);
  try {
    if (family == "lower_frechet") return Copula::lower_frechet();
    if (family == "product" || family == "independence") {
      return Copula::product(2);
    }
    if (family == "upper_frechet" || family == "comonotone") {
      return Copula::upper_frechet(2);
    }
    if (family == "clayton") return Copula::clayton(get_number(j, "theta"));
    if (family == "ev_survival") {
      if (!j.contains("tdf") || !j["tdf"].is_object()) {
        throw SpecError("tdf", "missing or not an object");
      }
      return Copula::ev_survival(parse_angular(j["tdf"]));
    }
    if (family == "markov_product") {
      if (!j.contains("left") || !j["left"].is_object()) {
        throw SpecError("left", "missing or not an object");
      }
      if (!j.contains("right") || !j["right"].is_object()) {
        throw SpecError("right", "missing or not an object");
      }
      return Copula::markov_product(parse_copula(j["left"]),
                                    parse_copula(j["right"]));
    }
  } catch (const DomainError& e) {
    throw SpecError("family " + family, e.what());
  }
  throw SpecError("family", "unknown copula family '" + family + "'");
}

json angular_to_json(const AngularFunction& a) {
  using Family = AngularFunction::Family;
  switch (a.family()) {
    case Family::comonotone:
      return {{"family", "comonotone"}};
    case Family::independence:
      return {{"family", "independence"}};
    case Family::clayton:
      return {{"family", "clayton"}, {"alpha", a.param_alpha()}};
    case Family::linear_min:
      return {{"family", "linear_min"},
              {"alpha", a.param_alpha()},
              {"beta", a.param_beta()}};
    case Family::plateau:
      return {{"family", "plateau"}, {"p", a.param_p()}};
    case Family::piecewise_linear:
    case Family::sampled:
      return {{"family", "piecewise_linear"},
              {"t", a.knots()},
              {"v", a.knot_values()}};
  }
  throw SpecError("family", "unserializable angular function");
}

json copula_to_json(const Copula& c) {
  using Family = Copula::Family;
  switch (c.family()) {
    case Family::lower_frechet:
      return {{"family", "lower_frechet"}};
    case Family::product:
      return {{"family", "product"}};
    case Family::upper_frechet:
      return {{"family", "upper_frechet"}};
    case Family::clayton:
      return {{"family", "clayton"}, {"theta", c.theta()}};
    case Family::ev_survival:
      return {{"family", "ev_survival"},
              {"tdf", angular_to_json(c.ev_tdf().angular())}};
    case Family::markov_product:
      return {{"family", "markov_product"},
              {"left", copula_to_json(c.left())},
              {"right", copula_to_json(c.right())}};
    case Family::lifted:
      break;
  }
  throw SpecError("family", "unserializable copula family");
}

}  // namespace

TailDependenceFunction parse_tdf_spec(const std::string& json_text) {
  return TailDependenceFunction(parse_angular(parse_text(json_text)));
}

Copula parse_copula_spec(const std::string& json_text) {
  return parse_copula(parse_text(json_text));
}

StepFunction parse_step_spec(const std::string& json_text) {
  const json j = parse_text(json_text);
  auto breaks = get_array(j, "breaks");
  auto values = get_array(j, "values");
  double tail = 0.0;
  if (j.contains("tail")) tail = get_number(j, "tail");
  if (breaks.size() != values.size() + 1) {
    throw SpecError("breaks", "need values.size() + 1 entries");
  }
  try {
    return StepFunction(std::move(breaks), std::move(values), tail);
  } catch (const DomainError& e) {
    throw SpecError("breaks", e.what());
  }
}

std::string tdf_spec_to_json(const TailDependenceFunction& tdf) {
  return angular_to_json(tdf.angular()).dump();
}

std::string copula_spec_to_json(const Copula& c) {
  return copula_to_json(c).dump();
}

std::string step_spec_to_json(const StepFunction& f) {
  json j{{"breaks", f.edges()}, {"values", f.values()}, {"tail", f.tail()}};
  return j.dump();
}

}  // namespace tailalg
