// SPDX-License-Identifier: Apache-2.0
//
// Modeling layer and solver for the small dense semidefinite programs used by
// the dual method and the rank relaxation.
//
// A Problem holds named free scalar variables, named Hermitian PSD matrix
// variables, scalar linear constraints, and LMI blocks that are affine in the
// scalar variables. Complex Hermitian blocks are handled natively (no real
// 2Nx2N embedding). Internally the problem is canonicalized to the standard
// conic pair
//
//     min <C, X>  s.t.  <A_i, X> = b_i,  X in a product of Hermitian PSD
//     blocks                                  (primal)
//     max b^T y   s.t.  Z = C - sum_i y_i A_i is PSD            (dual)
//
// with <P, Q> = Re tr(P^H Q). Problems with only scalar variables map onto
// the dual side (the user's variables are y); problems with matrix variables
// map onto the primal side (the user's variables live in X). Both sides are
// solved together by an infeasible-start primal-dual interior-point method
// with Nesterov-Todd scaling and a Mehrotra predictor-corrector step.

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "risbf/model.hpp"

namespace risbf::sdp {

enum class Sense { Minimize, Maximize };
enum class Rel { LessEq, GreaterEq, Equal };
enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(Status s);

/// Linear expression: sum of scalar terms a_v * y_v, matrix terms
/// <H, W> = Re tr(H W) with H Hermitian, and a constant.
struct LinExpr {
  std::vector<std::pair<int, double>> scalar_terms;
  std::vector<std::pair<int, CMatrix>> matrix_terms;
  double constant = 0.0;
};

struct ScalarConstraint {
  LinExpr expr;
  Rel rel = Rel::LessEq;
  double rhs = 0.0;
  std::string name;
};

/// F0 + sum_i y_i F_i required PSD; F's Hermitian, y's scalar variables.
struct LmiBlock {
  CMatrix constant;
  std::vector<std::pair<int, CMatrix>> coeffs;
  std::string name;

  int dim() const { return static_cast<int>(constant.rows()); }
};

class Problem {
 public:
  explicit Problem(Sense sense) : sense_(sense) {}

  int add_scalar(std::string name, bool nonneg = false);
  int add_matrix(std::string name, int dim);

  void objective_scalar(int var, double coeff);
  void objective_matrix(int mvar, const CMatrix& coeff);

  void add_constraint(LinExpr expr, Rel rel, double rhs, std::string name = "");
  void add_lmi(const CMatrix& constant,
               std::vector<std::pair<int, CMatrix>> coeffs,
               std::string name = "");

  Sense sense() const { return sense_; }
  int num_scalar_vars() const { return static_cast<int>(scalar_names_.size()); }
  int num_nonneg_vars() const;
  int num_matrix_vars() const { return static_cast<int>(matrix_dims_.size()); }
  int matrix_dim(int mvar) const { return matrix_dims_[mvar]; }
  int num_scalar_constraints() const {
    return static_cast<int>(constraints_.size());
  }
  int num_lmi_blocks() const { return static_cast<int>(lmis_.size()); }
  const LmiBlock& lmi(int j) const { return lmis_[j]; }
  const ScalarConstraint& constraint(int i) const { return constraints_[i]; }
  const std::string& scalar_name(int v) const { return scalar_names_[v]; }
  bool scalar_nonneg(int v) const { return scalar_nonneg_[v]; }
  const std::string& matrix_name(int mv) const { return matrix_names_[mv]; }

  /// Assembly-side annotations (e.g. internal gain scaling), carried to
  /// whoever interprets the solution.
  std::map<std::string, double> metadata;

  /// Plain-text sparse-triplet dump for debugging; format documented inline.
  void dump(std::ostream& os) const;

 private:
  friend struct Canonical;
  Sense sense_;
  std::vector<std::string> scalar_names_;
  std::vector<bool> scalar_nonneg_;
  std::vector<std::string> matrix_names_;
  std::vector<int> matrix_dims_;
  std::vector<std::pair<int, double>> objective_scalar_;
  std::vector<std::pair<int, CMatrix>> objective_matrix_;
  std::vector<ScalarConstraint> constraints_;
  std::vector<LmiBlock> lmis_;
};

struct Solution {
  Status status = Status::NumericalFailure;
  double objective = 0.0;
  std::map<std::string, double> scalars;
  std::map<std::string, CMatrix> matrices;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double gap = 0.0;
  int iterations = 0;

  double scalar(const std::string& name) const;
  const CMatrix& matrix(const std::string& name) const;
};

Solution solve(const Problem& problem, double tol = 1e-8, int max_iter = 200);

/// Worst constraint violation of a candidate solution (PSD blocks measured by
/// most-negative eigenvalue, equalities by absolute deviation).
double max_violation(const Problem& problem, const Solution& solution);

}  // namespace risbf::sdp
