#pragma once

#include <stdexcept>
#include <string>

#include "tailalg/copula.hpp"
#include "tailalg/step_function.hpp"
#include "tailalg/tdf.hpp"

namespace tailalg {

// Invalid input description; `field` names the offending entry.
class SpecError : public std::runtime_error {
 public:
  SpecError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// JSON spec formats:
//   tdf:    {"family":"comonotone"} | {"family":"independence"} |
//           {"family":"clayton","alpha":1.0} |
//           {"family":"linear_min","alpha":0.5,"beta":1.0} |
//           {"family":"plateau","p":0.3333} |
//           {"family":"piecewise_linear","t":[0,0.4,1],"v":[0,0.2,0]}
//   copula: {"family":"lower_frechet"|"product"|"upper_frechet"} |
//           {"family":"clayton","theta":1.0} |
//           {"family":"ev_survival","tdf":{...}} |
//           {"family":"markov_product","left":{...},"right":{...}}
//   step:   {"breaks":[0,1,3],"values":[2,0.5],"tail":0}
TailDependenceFunction parse_tdf_spec(const std::string& json_text);
Copula parse_copula_spec(const std::string& json_text);
StepFunction parse_step_spec(const std::string& json_text);

std::string tdf_spec_to_json(const TailDependenceFunction& tdf);
std::string copula_spec_to_json(const Copula& c);
std::string step_spec_to_json(const StepFunction& f);

}  // namespace tailalg
