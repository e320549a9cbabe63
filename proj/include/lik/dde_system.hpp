#pragma once

#include "lik/lattice_poly.hpp"

#include <string>
#include <vector>

namespace lik {

// First-order polynomial lattice system  d/dt u^(i)_n = rhs[i].
struct DdeSystem {
  std::vector<std::string> components;
  std::vector<std::string> parameters;
  std::vector<LatticePoly> rhs;

  std::size_t size() const { return components.size(); }
  SymbolTable symbols() const { return {components, parameters}; }
  bool has_parameters() const { return !parameters.empty(); }
  int component_index(const std::string& name) const;  // -1 when unknown

  // Replace a parameter by a value in every right-hand side. The parameter
  // stays declared so indices remain stable.
  DdeSystem with_parameter(std::size_t param, const ParamCoeff& value) const;
};

// Total time derivative on solutions: sum over variables x = u^(i)_{n+k} of
// partial(p, x) * D^k rhs[i].
LatticePoly total_time_derivative(const LatticePoly& p, const DdeSystem& sys);

// Same for a vector of expressions.
std::vector<LatticePoly> total_time_derivative(const std::vector<LatticePoly>& p, const DdeSystem& sys);

}  // namespace lik
