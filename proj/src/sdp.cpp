// SPDX-License-Identifier: Apache-2.0

#include "risbf/sdp.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace risbf::sdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

// <P, Q> = Re tr(P^H Q); real for Hermitian arguments.
double inner(const CMatrix& p, const CMatrix& q) {
  return p.conjugate().cwiseProduct(q).sum().real();
}

// ---------------------------------------------------------------------------
// Standard conic form:  min <C,X>  s.t.  <A_i,X> = b_i,  X in PSD blocks.
// ---------------------------------------------------------------------------

struct StdEntry {
  int block;
  CMatrix mat;
};

struct StdForm {
  std::vector<int> dims;
  std::vector<CMatrix> C;
  std::vector<std::vector<StdEntry>> A;
  Eigen::VectorXd b;
};

enum class StdStatus { Optimal, PrimalInfeasible, DualInfeasible, NumericalFailure };

struct IpmResult {
  StdStatus status = StdStatus::NumericalFailure;
  std::vector<CMatrix> X, Z;
  Eigen::VectorXd y;
  double rel_p = kInf, rel_d = kInf, rel_gap = kInf;
  double pobj = 0.0, dobj = 0.0;
  int iterations = 0;
};

// Largest step alpha with P + alpha*dP PSD, given the Cholesky factor of P.
double step_to_boundary(const CMatrix& L, const CMatrix& dP) {
  CMatrix s = L.triangularView<Eigen::Lower>().solve(dP);
  s = L.triangularView<Eigen::Lower>().solve(s.adjoint()).adjoint();
  const double lmin =
      Eigen::SelfAdjointEigenSolver<CMatrix>(hermitize(s), Eigen::EigenvaluesOnly)
          .eigenvalues()
          .minCoeff();
  if (lmin >= -1e-16) return kInf;
  return -1.0 / lmin;
}

IpmResult ipm_solve(const StdForm& f, double tol, int max_iter) {
  const int m = static_cast<int>(f.b.size());
  const int nb = static_cast<int>(f.dims.size());
  int ntot = 0;
  for (int d : f.dims) ntot += d;

  IpmResult res;
  if (m == 0 || nb == 0) {
    res.status = StdStatus::NumericalFailure;
    return res;
  }

  // Row equilibration: rescale each constraint by its coefficient norm
  // (y_i absorbs the factor, b^T y is invariant), which keeps the Schur
  // complement well conditioned when coefficient scales vary across users.
  Eigen::VectorXd row_scale(m);
  std::vector<std::vector<StdEntry>> A(m);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (const StdEntry& e : f.A[i]) s += e.mat.squaredNorm();
    row_scale[i] = std::max(std::sqrt(s), 1e-300);
    A[i].reserve(f.A[i].size());
    for (const StdEntry& e : f.A[i])
      A[i].push_back({e.block, e.mat / row_scale[i]});
  }

  // Which constraints touch each block, with the entry's coefficient matrix.
  struct Touch {
    int constraint;
    const CMatrix* mat;
  };
  std::vector<std::vector<Touch>> touch(nb);
  for (int i = 0; i < m; ++i)
    for (const StdEntry& e : A[i]) touch[e.block].push_back({i, &e.mat});

  // Equilibrate the right-hand side: the primal solution and both objective
  // values scale linearly in b, so solving with b/bs and multiplying X and
  // the objectives back keeps the termination measures genuinely relative
  // even when the natural objective is many orders below 1.
  const Eigen::VectorXd b_rows = f.b.cwiseQuotient(row_scale);
  const double bmax = b_rows.size() ? b_rows.cwiseAbs().maxCoeff() : 0.0;
  const double bs = bmax > 0.0 ? bmax : 1.0;
  const Eigen::VectorXd b = b_rows / bs;

  const double normb = b.cwiseAbs().maxCoeff();
  double normC = 0.0, normA = 0.0;
  for (int j = 0; j < nb; ++j) normC = std::max(normC, f.C[j].norm());
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (const StdEntry& e : A[i]) s += e.mat.squaredNorm();
    normA = std::max(normA, std::sqrt(s));
  }

  const double xi = std::min(
      1e8, std::max({10.0, std::sqrt(static_cast<double>(ntot)),
                     static_cast<double>(ntot) * (1.0 + normb) / (1.0 + normA)}));
  const double eta = std::min(
      1e8, std::max({10.0, std::sqrt(static_cast<double>(ntot)), normC + normA}));

  std::vector<CMatrix> X(nb), Z(nb);
  for (int j = 0; j < nb; ++j) {
    X[j] = xi * CMatrix::Identity(f.dims[j], f.dims[j]);
    Z[j] = eta * CMatrix::Identity(f.dims[j], f.dims[j]);
  }
  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);

  std::vector<CMatrix> Lx(nb), Lz(nb), R(nb), Rd(nb), Md(nb), Ttil(nb);
  std::vector<Eigen::VectorXd> lam(nb);
  std::vector<std::vector<CMatrix>> Ahat(nb);
  std::vector<CMatrix> dX(nb), dZ(nb), dXs(nb);
  int tiny_steps = 0;

  // The endgame can degrade once the Schur system turns singular to working
  // precision; keep the best iterate seen and report that one on failure.
  IpmResult best;
  double best_phi = kInf;

  auto finish = [&](IpmResult& r) -> IpmResult& {
    for (CMatrix& xb : r.X) xb *= bs;
    r.pobj *= bs;
    r.dobj *= bs;
    r.y = r.y.cwiseQuotient(row_scale);
    return r;
  };

  for (int it = 1; it <= max_iter; ++it) {
    // Residuals and objective values.
    Eigen::VectorXd rp = b;
    for (int i = 0; i < m; ++i)
      for (const StdEntry& e : A[i]) rp[i] -= inner(e.mat, X[e.block]);

    double gap_xz = 0.0, pobj = 0.0;
    for (int j = 0; j < nb; ++j) {
      gap_xz += inner(X[j], Z[j]);
      pobj += inner(f.C[j], X[j]);
      Rd[j] = f.C[j] - Z[j];
    }
    for (int i = 0; i < m; ++i)
      for (const StdEntry& e : A[i]) Rd[e.block] -= y[i] * e.mat;
    const double dobj = b.dot(y);
    const double mu = gap_xz / ntot;

    double rd_norm = 0.0;
    for (int j = 0; j < nb; ++j) rd_norm += Rd[j].squaredNorm();
    rd_norm = std::sqrt(rd_norm);

    res.rel_p = rp.norm() / (1.0 + normb);
    res.rel_d = rd_norm / (1.0 + normC);
    res.rel_gap = gap_xz / (1.0 + std::abs(pobj) + std::abs(dobj));
    res.pobj = pobj;
    res.dobj = dobj;
    res.iterations = it - 1;
    res.X = X;
    res.Z = Z;
    res.y = y;

    const double phi = std::max({res.rel_p, res.rel_d, res.rel_gap});
    if (phi < best_phi) {
      best_phi = phi;
      best = res;
    }

    if (res.rel_p <= tol && res.rel_d <= tol && res.rel_gap <= tol) {
      res.status = StdStatus::Optimal;
      return finish(res);
    }
    // Divergence heuristics in place of a formal Farkas certificate: a dual
    // objective running away while dual feasibility holds marks the primal
    // infeasible, and symmetrically for the dual.
    if (dobj > 1e9 * std::max(1.0, normb) && res.rel_d < 1e-4 &&
        dobj > 1e6 * (1.0 + std::abs(pobj))) {
      res.status = StdStatus::PrimalInfeasible;
      return finish(res);
    }
    if (pobj < -1e9 * std::max(1.0, normC) && res.rel_p < 1e-4 &&
        -pobj > 1e6 * (1.0 + std::abs(dobj))) {
      res.status = StdStatus::DualInfeasible;
      return finish(res);
    }

    // Nesterov-Todd scaling per block: R^H Z R = R^-1 X R^-H = diag(lam).
    bool scale_ok = true;
    for (int j = 0; j < nb && scale_ok; ++j) {
      Eigen::LLT<CMatrix> cx(X[j]);
      Eigen::LLT<CMatrix> cz(Z[j]);
      if (cx.info() != Eigen::Success || cz.info() != Eigen::Success) {
        scale_ok = false;
        break;
      }
      Lx[j] = cx.matrixL();
      Lz[j] = cz.matrixL();
      Eigen::JacobiSVD<CMatrix> svd(Lz[j].adjoint() * Lx[j],
                                    Eigen::ComputeFullU | Eigen::ComputeFullV);
      lam[j] = svd.singularValues();
      if (lam[j].minCoeff() <= 0.0) {
        scale_ok = false;
        break;
      }
      R[j] = Lx[j] * svd.matrixV() *
             lam[j].cwiseSqrt().cwiseInverse().asDiagonal();
      Md[j] = R[j].adjoint() * Rd[j] * R[j];
      Ahat[j].resize(touch[j].size());
      for (size_t t = 0; t < touch[j].size(); ++t)
        Ahat[j][t] = hermitize(R[j].adjoint() * (*touch[j][t].mat) * R[j]);
    }
    if (!scale_ok) {
      best.status = StdStatus::NumericalFailure;
      return finish(best);
    }

    // Schur complement B_il = sum_j <Ahat_i, Ahat_l>, assembled per block as
    // a Gram matrix of the flattened scaled coefficients.
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < nb; ++j) {
      const int mj = static_cast<int>(touch[j].size());
      if (mj == 0) continue;
      const int d2 = f.dims[j] * f.dims[j];
      Eigen::MatrixXd G(mj, 2 * d2);
      for (int t = 0; t < mj; ++t) {
        Eigen::Map<const Eigen::VectorXcd> v(Ahat[j][t].data(), d2);
        G.row(t).head(d2) = v.real();
        G.row(t).tail(d2) = v.imag();
      }
      const Eigen::MatrixXd S = G * G.transpose();
      for (int a = 0; a < mj; ++a)
        for (int c = 0; c < mj; ++c)
          B(touch[j][a].constraint, touch[j][c].constraint) += S(a, c);
    }

    Eigen::LLT<Eigen::MatrixXd> bl(B);
    Eigen::LDLT<Eigen::MatrixXd> bld;
    const bool use_llt = (bl.info() == Eigen::Success);
    if (!use_llt) {
      bld.compute(B);
      if (bld.info() != Eigen::Success) {
        best.status = StdStatus::NumericalFailure;
        return finish(best);
      }
    }
    auto schur_solve = [&](const Eigen::VectorXd& rhs) {
      Eigen::VectorXd x = use_llt ? bl.solve(rhs).eval() : bld.solve(rhs).eval();
      // one step of iterative refinement recovers the digits the endgame
      // conditioning of B eats
      const Eigen::VectorXd r = rhs - B * x;
      x += use_llt ? bl.solve(r).eval() : bld.solve(r).eval();
      return x;
    };

    // Direction for a given scaled complementarity target Ttil:
    //   dXs = Ttil - Md + sum_i dy_i Ahat_i   (scaled dX; V1 of the corrector)
    //   dX  = R dXs R^H,   dZ = Rd - sum_i dy_i A_i.
    auto solve_direction = [&](Eigen::VectorXd& dy) {
      Eigen::VectorXd rhs = rp;
      for (int j = 0; j < nb; ++j) {
        const CMatrix q = (Ttil[j] - Md[j]).eval();
        for (size_t t = 0; t < touch[j].size(); ++t)
          rhs[touch[j][t].constraint] -= inner(Ahat[j][t], q);
      }
      dy = schur_solve(rhs);
      for (int j = 0; j < nb; ++j) {
        CMatrix s = Ttil[j] - Md[j];
        for (size_t t = 0; t < touch[j].size(); ++t)
          s += dy[touch[j][t].constraint] * Ahat[j][t];
        dXs[j] = hermitize(s);
        dX[j] = hermitize(R[j] * dXs[j] * R[j].adjoint());
        CMatrix z = Rd[j];
        for (size_t t = 0; t < touch[j].size(); ++t)
          z -= dy[touch[j][t].constraint] * (*touch[j][t].mat);
        dZ[j] = hermitize(z);
      }
    };

    // Predictor (affine direction): target -lambda in scaled space.
    for (int j = 0; j < nb; ++j) {
      Ttil[j] = CMatrix::Zero(f.dims[j], f.dims[j]);
      Ttil[j].diagonal() = -lam[j].cast<Complex>();
    }
    Eigen::VectorXd dy_aff;
    solve_direction(dy_aff);

    double ap = 1.0, ad = 1.0;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, step_to_boundary(Lx[j], dX[j]));
      ad = std::min(ad, step_to_boundary(Lz[j], dZ[j]));
    }
    double mu_aff = 0.0;
    for (int j = 0; j < nb; ++j)
      mu_aff += inner(X[j], Z[j]) + ap * inner(dX[j], Z[j]) +
                ad * inner(X[j], dZ[j]) + ap * ad * inner(dX[j], dZ[j]);
    mu_aff = std::max(0.0, mu_aff / ntot);
    double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 1e-8, 1.0);
    // while infeasibility dominates the gap, stay central instead of letting
    // the complementarity collapse ahead of feasibility
    if (std::max(res.rel_p, res.rel_d) > 10.0 * res.rel_gap)
      sigma = std::max(sigma, 0.5);

    // Corrector: d_s = sigma mu I - lam^2 - sym(V1 V2), solved through
    // (lam_a + lam_b)/2.
    for (int j = 0; j < nb; ++j) {
      const CMatrix& v1 = dXs[j];
      const CMatrix v2 = (Ttil[j] - dXs[j]).eval();  // V1 + V2 = Ttil_aff
      CMatrix ds = -0.5 * (v1 * v2 + (v1 * v2).adjoint());
      ds.diagonal() -= lam[j].cwiseAbs2().cast<Complex>();
      ds.diagonal().array() += Complex(sigma * mu, 0.0);
      const int d = f.dims[j];
      Ttil[j].resize(d, d);
      for (int a = 0; a < d; ++a)
        for (int c = 0; c < d; ++c)
          Ttil[j](a, c) = 2.0 * ds(a, c) / (lam[j][a] + lam[j][c]);
    }
    Eigen::VectorXd dy;
    solve_direction(dy);

    ap = kInf;
    ad = kInf;
    for (int j = 0; j < nb; ++j) {
      ap = std::min(ap, step_to_boundary(Lx[j], dX[j]));
      ad = std::min(ad, step_to_boundary(Lz[j], dZ[j]));
    }
    ap = std::min(1.0, 0.98 * ap);
    ad = std::min(1.0, 0.98 * ad);

    for (int j = 0; j < nb; ++j) {
      X[j] = hermitize(X[j] + ap * dX[j]);
      Z[j] = hermitize(Z[j] + ad * dZ[j]);
    }
    y += ad * dy;

    if (ap < 1e-8 && ad < 1e-8) {
      if (++tiny_steps >= 3) {
        best.status = StdStatus::NumericalFailure;
        return finish(best);
      }
    } else {
      tiny_steps = 0;
    }
  }
  best.status = StdStatus::NumericalFailure;
  return finish(best);
}

// ---------------------------------------------------------------------------
// Canonicalization of the modeling layer onto the standard pair.
// ---------------------------------------------------------------------------

}  // namespace

struct Canonical {
  StdForm form;
  bool dual_embedding = false;  // true: user's variables are y
  double obj_sign = 1.0;        // user objective = obj_sign * (side objective)
  // primal embedding bookkeeping
  std::vector<int> matrix_block;  // matrix var -> block
  std::vector<int> scalar_block;  // scalar var -> 1x1 block (primal embedding)

  static Canonical build(const Problem& p);
  Solution extract(const Problem& p, const IpmResult& r) const;
};

Canonical Canonical::build(const Problem& p) {
  Canonical c;
  const int ns = p.num_scalar_vars();

  if (p.num_matrix_vars() == 0) {
    // Dual-side embedding: user scalars are y; constraints become Z-blocks
    // of the form Cb - sum_i y_i Ab_i >= 0.
    c.dual_embedding = true;
    c.obj_sign = (p.sense_ == Sense::Maximize) ? 1.0 : -1.0;
    c.form.b = Eigen::VectorXd::Zero(ns);
    for (const auto& [v, coeff] : p.objective_scalar_)
      c.form.b[v] += c.obj_sign * coeff;
    c.form.A.resize(ns);

    auto add_block = [&](const CMatrix& cb,
                         const std::vector<std::pair<int, CMatrix>>& as) {
      const int blk = static_cast<int>(c.form.dims.size());
      c.form.dims.push_back(static_cast<int>(cb.rows()));
      c.form.C.push_back(hermitize(cb));
      for (const auto& [v, mat] : as) c.form.A[v].push_back({blk, hermitize(mat)});
    };

    for (const auto& sc : p.constraints_) {
      if (!sc.expr.matrix_terms.empty())
        throw std::invalid_argument("sdp: matrix terms without matrix variables");
      if (sc.rel == Rel::Equal)
        throw std::invalid_argument(
            "sdp: equality constraints are not supported for scalar-variable "
            "problems");
      const double sgn = (sc.rel == Rel::LessEq) ? 1.0 : -1.0;
      CMatrix cb(1, 1);
      cb(0, 0) = sgn * (sc.rhs - sc.expr.constant);
      std::vector<std::pair<int, CMatrix>> as;
      for (const auto& [v, a] : sc.expr.scalar_terms) {
        CMatrix am(1, 1);
        am(0, 0) = sgn * a;
        as.emplace_back(v, am);
      }
      add_block(cb, as);
    }
    for (int v = 0; v < ns; ++v) {
      if (!p.scalar_nonneg_[v]) continue;
      CMatrix cb = CMatrix::Zero(1, 1);
      CMatrix am(1, 1);
      am(0, 0) = -1.0;
      add_block(cb, {{v, am}});
    }
    for (const auto& lmi : p.lmis_) {
      std::vector<std::pair<int, CMatrix>> as;
      for (const auto& [v, fmat] : lmi.coeffs) as.emplace_back(v, (-fmat).eval());
      add_block(lmi.constant, as);
    }
    return c;
  }

  // Primal-side embedding: matrix variables and nonneg scalars become X
  // blocks, scalar constraints become rows (inequalities get 1x1 slacks).
  if (!p.lmis_.empty())
    throw std::invalid_argument(
        "sdp: LMI blocks combined with matrix variables are not supported");
  for (int v = 0; v < ns; ++v)
    if (!p.scalar_nonneg_[v])
      throw std::invalid_argument(
          "sdp: free scalar variables require a scalar-variable-only problem");

  c.dual_embedding = false;
  c.obj_sign = (p.sense_ == Sense::Minimize) ? 1.0 : -1.0;

  c.matrix_block.resize(p.num_matrix_vars());
  for (int mv = 0; mv < p.num_matrix_vars(); ++mv) {
    c.matrix_block[mv] = static_cast<int>(c.form.dims.size());
    c.form.dims.push_back(p.matrix_dims_[mv]);
    c.form.C.push_back(CMatrix::Zero(p.matrix_dims_[mv], p.matrix_dims_[mv]));
  }
  c.scalar_block.resize(ns);
  for (int v = 0; v < ns; ++v) {
    c.scalar_block[v] = static_cast<int>(c.form.dims.size());
    c.form.dims.push_back(1);
    c.form.C.push_back(CMatrix::Zero(1, 1));
  }
  for (const auto& [mv, cm] : p.objective_matrix_)
    c.form.C[c.matrix_block[mv]] += c.obj_sign * hermitize(cm);
  for (const auto& [v, coeff] : p.objective_scalar_)
    c.form.C[c.scalar_block[v]](0, 0) += c.obj_sign * coeff;

  const int m = p.num_scalar_constraints();
  c.form.A.resize(m);
  c.form.b = Eigen::VectorXd::Zero(m);
  for (int i = 0; i < m; ++i) {
    const ScalarConstraint& sc = p.constraints_[i];
    c.form.b[i] = sc.rhs - sc.expr.constant;
    for (const auto& [mv, h] : sc.expr.matrix_terms)
      c.form.A[i].push_back({c.matrix_block[mv], hermitize(h)});
    for (const auto& [v, a] : sc.expr.scalar_terms) {
      CMatrix am(1, 1);
      am(0, 0) = a;
      c.form.A[i].push_back({c.scalar_block[v], am});
    }
    if (sc.rel != Rel::Equal) {
      const int blk = static_cast<int>(c.form.dims.size());
      c.form.dims.push_back(1);
      c.form.C.push_back(CMatrix::Zero(1, 1));
      CMatrix am(1, 1);
      am(0, 0) = (sc.rel == Rel::LessEq) ? 1.0 : -1.0;
      c.form.A[i].push_back({blk, am});
    }
  }
  return c;
}

Solution Canonical::extract(const Problem& p, const IpmResult& r) const {
  Solution s;
  s.iterations = r.iterations;
  s.primal_residual = r.rel_p;
  s.dual_residual = r.rel_d;
  s.gap = r.rel_gap;

  switch (r.status) {
    case StdStatus::Optimal:
      s.status = Status::Optimal;
      break;
    case StdStatus::PrimalInfeasible:
      s.status = dual_embedding ? Status::Unbounded : Status::Infeasible;
      break;
    case StdStatus::DualInfeasible:
      s.status = dual_embedding ? Status::Infeasible : Status::Unbounded;
      break;
    case StdStatus::NumericalFailure:
      s.status = Status::NumericalFailure;
      break;
  }
  if (r.status != StdStatus::Optimal) return s;

  if (dual_embedding) {
    s.objective = obj_sign * r.dobj;
    for (int v = 0; v < p.num_scalar_vars(); ++v)
      s.scalars[p.scalar_name(v)] = r.y[v];
  } else {
    s.objective = obj_sign * r.pobj;
    for (int mv = 0; mv < p.num_matrix_vars(); ++mv)
      s.matrices[p.matrix_name(mv)] = r.X[matrix_block[mv]];
    for (int v = 0; v < p.num_scalar_vars(); ++v)
      s.scalars[p.scalar_name(v)] = r.X[scalar_block[v]](0, 0).real();
  }
  return s;
}

// ---------------------------------------------------------------------------
// Problem / Solution surface
// ---------------------------------------------------------------------------

const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "optimal";
    case Status::Infeasible: return "infeasible";
    case Status::Unbounded: return "unbounded";
    case Status::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

int Problem::add_scalar(std::string name, bool nonneg) {
  scalar_names_.push_back(std::move(name));
  scalar_nonneg_.push_back(nonneg);
  return static_cast<int>(scalar_names_.size()) - 1;
}

int Problem::add_matrix(std::string name, int dim) {
  if (dim < 1) throw std::invalid_argument("sdp: matrix dim must be >= 1");
  matrix_names_.push_back(std::move(name));
  matrix_dims_.push_back(dim);
  return static_cast<int>(matrix_names_.size()) - 1;
}

int Problem::num_nonneg_vars() const {
  int n = 0;
  for (bool b : scalar_nonneg_) n += b ? 1 : 0;
  return n;
}

void Problem::objective_scalar(int var, double coeff) {
  objective_scalar_.emplace_back(var, coeff);
}

void Problem::objective_matrix(int mvar, const CMatrix& coeff) {
  objective_matrix_.emplace_back(mvar, coeff);
}

void Problem::add_constraint(LinExpr expr, Rel rel, double rhs, std::string name) {
  constraints_.push_back({std::move(expr), rel, rhs, std::move(name)});
}

void Problem::add_lmi(const CMatrix& constant,
                      std::vector<std::pair<int, CMatrix>> coeffs,
                      std::string name) {
  if (constant.rows() != constant.cols())
    throw std::invalid_argument("sdp: LMI constant must be square");
  for (const auto& [v, fmat] : coeffs)
    if (fmat.rows() != constant.rows() || fmat.cols() != constant.cols())
      throw std::invalid_argument("sdp: LMI coefficient dimension mismatch");
  lmis_.push_back({hermitize(constant), std::move(coeffs), std::move(name)});
  for (auto& [v, fmat] : lmis_.back().coeffs) fmat = hermitize(fmat);
}

double Solution::scalar(const std::string& name) const {
  auto it = scalars.find(name);
  if (it == scalars.end())
    throw std::out_of_range("sdp::Solution: no scalar '" + name + "'");
  return it->second;
}

const CMatrix& Solution::matrix(const std::string& name) const {
  auto it = matrices.find(name);
  if (it == matrices.end())
    throw std::out_of_range("sdp::Solution: no matrix '" + name + "'");
  return it->second;
}

Solution solve(const Problem& problem, double tol, int max_iter) {
  const Canonical c = Canonical::build(problem);
  const IpmResult r = ipm_solve(c.form, tol, max_iter);
  return c.extract(problem, r);
}

double max_violation(const Problem& problem, const Solution& solution) {
  double worst = 0.0;
  auto eval_expr = [&](const LinExpr& e) {
    double v = e.constant;
    for (const auto& [var, a] : e.scalar_terms)
      v += a * solution.scalar(problem.scalar_name(var));
    for (const auto& [mv, h] : e.matrix_terms)
      v += inner(hermitize(h), solution.matrix(problem.matrix_name(mv)));
    return v;
  };
  for (int i = 0; i < problem.num_scalar_constraints(); ++i) {
    const ScalarConstraint& sc = problem.constraint(i);
    const double v = eval_expr(sc.expr) - sc.rhs;
    if (sc.rel == Rel::LessEq) worst = std::max(worst, v);
    else if (sc.rel == Rel::GreaterEq) worst = std::max(worst, -v);
    else worst = std::max(worst, std::abs(v));
  }
  for (int j = 0; j < problem.num_lmi_blocks(); ++j) {
    const LmiBlock& lmi = problem.lmi(j);
    CMatrix e = lmi.constant;
    for (const auto& [v, fmat] : lmi.coeffs)
      e += solution.scalar(problem.scalar_name(v)) * fmat;
    const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(
                            hermitize(e), Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    worst = std::max(worst, -lmin);
  }
  for (int v = 0; v < problem.num_scalar_vars(); ++v) {
    if (!problem.scalar_nonneg(v)) continue;
    worst = std::max(worst, -solution.scalar(problem.scalar_name(v)));
  }
  for (const auto& [name, mat] : solution.matrices) {
    const double lmin = Eigen::SelfAdjointEigenSolver<CMatrix>(
                            hermitize(mat), Eigen::EigenvaluesOnly)
                            .eigenvalues()
                            .minCoeff();
    worst = std::max(worst, -lmin);
  }
  return worst;
}

// Dump format (one record per line):
//   sdp-dump v1
//   sense {minimize|maximize}
//   scalar <index> <name> <0|1 nonneg>
//   matrixvar <index> <name> <dim>
//   obj s <var> <coeff>
//   obj m <mvar> <row> <col> <re> <im>
//   con <index> <le|ge|eq> <rhs> <name>
//   con-t s <con> <var> <coeff>
//   con-t m <con> <mvar> <row> <col> <re> <im>
//   lmi <index> <dim> <name>
//   lmi-t <lmi> const <row> <col> <re> <im>
//   lmi-t <lmi> <var> <row> <col> <re> <im>
void Problem::dump(std::ostream& os) const {
  os.precision(17);
  os << "sdp-dump v1\n";
  os << "sense " << (sense_ == Sense::Minimize ? "minimize" : "maximize") << "\n";
  for (int v = 0; v < num_scalar_vars(); ++v)
    os << "scalar " << v << " " << scalar_names_[v] << " "
       << (scalar_nonneg_[v] ? 1 : 0) << "\n";
  for (int mv = 0; mv < num_matrix_vars(); ++mv)
    os << "matrixvar " << mv << " " << matrix_names_[mv] << " "
       << matrix_dims_[mv] << "\n";
  for (const auto& [v, coeff] : objective_scalar_)
    os << "obj s " << v << " " << coeff << "\n";
  auto dump_mat = [&os](const std::string& head, const CMatrix& mat) {
    for (int r = 0; r < mat.rows(); ++r)
      for (int col = 0; col < mat.cols(); ++col)
        if (mat(r, col) != Complex(0, 0))
          os << head << " " << r << " " << col << " " << mat(r, col).real()
             << " " << mat(r, col).imag() << "\n";
  };
  for (const auto& [mv, cm] : objective_matrix_)
    dump_mat("obj m " + std::to_string(mv), cm);
  for (int i = 0; i < num_scalar_constraints(); ++i) {
    const ScalarConstraint& sc = constraints_[i];
    const char* rel = sc.rel == Rel::LessEq ? "le"
                      : sc.rel == Rel::GreaterEq ? "ge"
                                                 : "eq";
    os << "con " << i << " " << rel << " " << sc.rhs << " " << sc.name << "\n";
    for (const auto& [v, a] : sc.expr.scalar_terms)
      os << "con-t s " << i << " " << v << " " << a << "\n";
    for (const auto& [mv, h] : sc.expr.matrix_terms)
      dump_mat("con-t m " + std::to_string(i) + " " + std::to_string(mv), h);
  }
  for (int j = 0; j < num_lmi_blocks(); ++j) {
    const LmiBlock& lmi = lmis_[j];
    os << "lmi " << j << " " << lmi.dim() << " " << lmi.name << "\n";
    dump_mat("lmi-t " + std::to_string(j) + " const", lmi.constant);
    for (const auto& [v, fmat] : lmi.coeffs)
      dump_mat("lmi-t " + std::to_string(j) + " " + std::to_string(v), fmat);
  }
}

}  // namespace risbf::sdp
