#pragma once

#include "lik/param_coeff.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lik {

using RationalMatrix = std::vector<std::vector<Rational>>;

// In-place reduced row echelon form; returns the pivot columns.
std::vector<std::size_t> rref(RationalMatrix& m, std::size_t columns);

// Homogeneous linear equations  sum_k coeff_k * c_k = 0  over parameter
// polynomials. Equations are stored primitive and deduplicated.
class LinearSystem {
 public:
  using Row = std::map<std::size_t, ParamCoeff>;

  explicit LinearSystem(std::size_t unknowns = 0) : unknowns_(unknowns) {}

  std::size_t unknowns() const { return unknowns_; }
  void set_unknowns(std::size_t n) { unknowns_ = n; }
  const std::vector<Row>& equations() const { return rows_; }
  bool has_parameters() const;

  // Zero rows are ignored.
  void add_equation(Row row);

 private:
  std::size_t unknowns_;
  std::vector<Row> rows_;
  std::map<std::vector<std::pair<std::size_t, ParamCoeff>>, bool> seen_;
};

// Basis of the solution space; each vector has one entry per unknown.
struct SolveOutcome {
  std::vector<std::vector<ParamCoeff>> basis;
  bool empty() const { return basis.empty(); }
};

// Parameter-free nullspace (throws std::invalid_argument when parameters
// occur). One basis vector per free unknown, with that unknown equal to 1.
SolveOutcome nullspace(const LinearSystem& sys);

// Scale v so that v[index] == value; v[index] must be a nonzero rational.
std::vector<ParamCoeff> normalize_vector(const std::vector<ParamCoeff>& v, std::size_t index, const Rational& value);

// Index of the last entry of v that is a nonzero rational, if any.
std::optional<std::size_t> last_rational_entry(const std::vector<ParamCoeff>& v);

// Residual of one equation at a solution vector.
ParamCoeff residual(const LinearSystem::Row& row, const std::vector<ParamCoeff>& x);

struct ParametricBranch {
  enum class Status { Solved, DepthExhausted, Unresolved };

  Status status = Status::Solved;
  // Parameter equalities, applied in order as substitutions param := value.
  std::vector<std::pair<std::size_t, ParamCoeff>> substitutions;
  // Factors assumed nonzero on this branch (pivots and excluded cases).
  std::vector<ParamCoeff> nonzero;
  // Factor whose vanishing could not be turned into a substitution.
  ParamCoeff unresolved;
  SolveOutcome outcome;

  bool has_candidate() const { return status == Status::Solved && !outcome.empty(); }
  // "a = 1" style equalities in application order.
  std::vector<std::string> render_conditions(const std::vector<std::string>& names) const;
  // "b - 1 != 0" for every nonconstant factor assumed nonzero.
  std::vector<std::string> render_assumptions(const std::vector<std::string>& names) const;
};

// Fraction-free elimination over the parameter ring with case splits on
// nonconstant pivots. Declared parameters are assumed nonzero. `max_depth`
// bounds the number of nested zero-branches.
std::vector<ParametricBranch> parametric_solve(const LinearSystem& sys, std::size_t parameter_count,
                                               int max_depth = 6);

// Branch depth from LIK_BRANCH_DEPTH, default 6.
int branch_depth_from_env();

}  // namespace lik
