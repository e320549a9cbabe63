#include "lik/dde_system.hpp"

#include <stdexcept>

namespace lik {

int DdeSystem::component_index(const std::string& name) const {
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (components[i] == name) return static_cast<int>(i);
  }
  return -1;
}

DdeSystem DdeSystem::with_parameter(std::size_t param, const ParamCoeff& value) const {
  DdeSystem out = *this;
  for (auto& f : out.rhs) f = f.substitute_parameter(param, value);
  return out;
}

LatticePoly total_time_derivative(const LatticePoly& p, const DdeSystem& sys) {
  LatticePoly out;
  for (const VarRef& x : variables_of(p)) {
    const auto c = static_cast<std::size_t>(x.component);
    if (c >= sys.rhs.size()) throw std::out_of_range("variable without an evolution equation");
    out += partial(p, x) * shift(sys.rhs[c], x.shift);
  }
  return out;
}

std::vector<LatticePoly> total_time_derivative(const std::vector<LatticePoly>& p, const DdeSystem& sys) {
  std::vector<LatticePoly> out;
  out.reserve(p.size());
  for (const auto& q : p) out.push_back(total_time_derivative(q, sys));
  return out;
}

}  // namespace lik
