#include "horolab/solvgeom.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace horolab {

GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return {a.mat * b.mat};
}

GroupElement inverse(const GroupElement& a) {
  return {a.mat.inverse()};
}

struct SolvableModel::Impl {
  Eigen::HouseholderQR<Eigen::MatrixXd> stack_qr;  // rep_dim^2 x dim
  Eigen::MatrixXd stack;
  Eigen::MatrixXd chol_lt_inv;
};

namespace {

Eigen::VectorXd flatten_d(const Eigen::MatrixXd& m) {
  return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size());
}

constexpr double kLogGuard = 1e9;  // spectral-radius guard via Frobenius norm

}  // namespace

Eigen::MatrixXd SolvableModel::rep_of_an(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rep_dim, rep_dim);
  for (int i = 0; i < dim(); ++i)
    if (v(i) != 0.0) m += v(i) * rep[i];
  return m;
}

Eigen::VectorXd SolvableModel::from_orth(const Eigen::VectorXd& orth) const {
  return impl->chol_lt_inv * orth;
}

Eigen::VectorXd SolvableModel::gamma(const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim());
  for (int i = 0; i < dim(); ++i)
    if (u(i) != 0.0) out += u(i) * (conn_d[i] * v);
  return out;
}

RatVec SolvableModel::gamma_exact(const RatVec& u, const RatVec& v) const {
  RatVec out = RatVec::Zero(dim());
  for (int i = 0; i < dim(); ++i) {
    if (u(i) == 0) continue;
    for (int j = 0; j < dim(); ++j) {
      if (v(j) == 0) continue;
      out += u(i) * v(j) * conn[i][j];
    }
  }
  return out;
}

GroupElement SolvableModel::identity() const {
  return {Eigen::MatrixXd::Identity(rep_dim, rep_dim)};
}

GroupElement SolvableModel::exp_of(const Eigen::VectorXd& an_coords) const {
  return {rep_of_an(an_coords).exp()};
}

Eigen::VectorXd SolvableModel::log_of(const GroupElement& g, double* residual) const {
  if (g.mat.norm() > kLogGuard)
    throw Error("group_log: matrix outside the validated range; use smaller coordinates");
  Eigen::MatrixXd lg = g.mat.log();
  return project_to_an(lg, residual);
}

Eigen::VectorXd SolvableModel::project_to_an(const Eigen::MatrixXd& m,
                                             double* residual) const {
  Eigen::VectorXd flat = flatten_d(m);
  Eigen::VectorXd coords = impl->stack_qr.solve(flat);
  if (residual) *residual = (impl->stack * coords - flat).norm();
  return coords;
}

namespace {

/// Shared construction: exact metric must already be in `model.metric`;
/// fills brackets, Koszul coefficients and the floating caches.
void finish_model(SolvableModel& model) {
  const int n = model.dim();
  const MatrixLieAlgebra& g = *model.rd->g;

  {  // brackets of the an basis, in an-coordinates
    model.an_sc = StructureConstants(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        RatVec br = g.bracket(RatVec(model.an_basis.col(i)), RatVec(model.an_basis.col(j)));
        auto coords = exact::solve(model.an_basis, br);
        if (!coords) throw Error("a+n is not closed under the bracket");
        StructureConstants::SparseVec sparse;
        for (int k = 0; k < n; ++k)
          if ((*coords)(k) != 0) sparse.emplace_back(k, (*coords)(k));
        model.an_sc.set_pair_bracket(i, j, std::move(sparse));
      }
  }

  if (!exact::positive_definite(model.metric))
    throw Error("model metric is not positive definite");
  {
    auto inv = exact::solve_multi(model.metric, RatMat(RatMat::Identity(n, n)));
    model.metric_inverse = std::move(*inv);
  }

  {  // Koszul formula for left-invariant fields
    model.conn.assign(n, std::vector<RatVec>(n));
    for (int i = 0; i < n; ++i) {
      RatVec ei = RatVec::Zero(n);
      ei(i) = 1;
      for (int j = 0; j < n; ++j) {
        RatVec ej = RatVec::Zero(n);
        ej(j) = 1;
        RatVec rhs(n);
        const RatVec br_ij = model.an_sc.bracket(ei, ej);
        for (int k = 0; k < n; ++k) {
          RatVec ek = RatVec::Zero(n);
          ek(k) = 1;
          const RatVec br_jk = model.an_sc.bracket(ej, ek);
          const RatVec br_ki = model.an_sc.bracket(ek, ei);
          Rat val = (br_ij.transpose() * model.metric * ek)(0, 0);
          val -= (br_jk.transpose() * model.metric * ei)(0, 0);
          val += (br_ki.transpose() * model.metric * ej)(0, 0);
          rhs(k) = val / 2;
        }
        model.conn[i][j] = model.metric_inverse * rhs;
      }
    }
  }

  // Floating caches.
  model.metric_d = to_double(model.metric);
  Eigen::LLT<Eigen::MatrixXd> llt(model.metric_d);
  if (llt.info() != Eigen::Success)
    throw Error("floating Cholesky of the model metric failed");
  model.chol_lt = llt.matrixL().transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(model.chol_lt);
  model.chol_cond = svd.singularValues()(0) /
                    svd.singularValues()(svd.singularValues().size() - 1);
  model.conn_d.resize(n);
  for (int i = 0; i < n; ++i) {
    model.conn_d[i].resize(n, n);
    for (int j = 0; j < n; ++j) model.conn_d[i].col(j) = to_double(model.conn[i][j]);
  }

  auto impl = std::make_shared<SolvableModel::Impl>();
  impl->stack.resize(model.rep_dim * model.rep_dim, n);
  for (int i = 0; i < n; ++i) impl->stack.col(i) = flatten_d(model.rep[i]);
  impl->stack_qr = Eigen::HouseholderQR<Eigen::MatrixXd>(impl->stack);
  impl->chol_lt_inv = model.chol_lt.inverse();
  model.impl = std::move(impl);
}

}  // namespace

SolvableModel build_model(std::shared_ptr<const RootSpaceDecomposition> rd) {
  SolvableModel model;
  model.rd = rd;
  const MatrixLieAlgebra& g = *rd->g;
  const int r = rd->rank();
  const int n = r + rd->dim_n();

  model.an_basis.resize(g.dim(), n);
  model.an_basis.leftCols(r) = rd->a_basis;
  model.dim_a = r;
  Index at = r;
  for (int idx : rd->positive) {
    const RatMat& space = rd->root_spaces[idx];
    model.root_blocks.emplace_back(static_cast<int>(at), static_cast<int>(space.cols()));
    model.an_basis.block(0, at, g.dim(), space.cols()) = space;
    at += space.cols();
  }

  // <H,H'> = B(H,H') on a; <X,Y> = -B(X, theta Y)/2 on n; cross terms vanish.
  model.metric = RatMat::Zero(n, n);
  {
    RatMat theta_n = g.theta * model.an_basis.rightCols(n - r);
    model.metric.topLeftCorner(r, r) =
        rd->a_basis.transpose() * g.killing * rd->a_basis;
    model.metric.bottomRightCorner(n - r, n - r) =
        -(model.an_basis.rightCols(n - r).transpose() * g.killing * theta_n) / Rat(2);
  }

  model.rep_dim = g.rep_dim;
  model.rep.reserve(n);
  for (int i = 0; i < n; ++i)
    model.rep.push_back(to_double(g.rep_of(RatVec(model.an_basis.col(i)))));

  finish_model(model);
  return model;
}

SolvableModel build_boundary_submodel(const SolvableModel& parent,
                                      const BoundaryComponent& bc) {
  SolvableModel model;
  model.rd = bc.rd;
  const RootSpaceDecomposition& rdb = *bc.rd;
  const MatrixLieAlgebra& gb = *bc.algebra;
  const int r = rdb.rank();
  const int n = r + rdb.dim_n();

  model.an_basis.resize(gb.dim(), n);
  model.an_basis.leftCols(r) = rdb.a_basis;
  model.dim_a = r;
  Index at = r;
  for (int idx : rdb.positive) {
    const RatMat& space = rdb.root_spaces[idx];
    model.root_blocks.emplace_back(static_cast<int>(at), static_cast<int>(space.cols()));
    model.an_basis.block(0, at, gb.dim(), space.cols()) = space;
    at += space.cols();
  }

  // Induced metric: restrict the parent Gram along the embedding.
  RatMat ambient_g = bc.embedding * model.an_basis;         // ambient algebra coords
  RatMat ambient_an = an_coords_of(parent, ambient_g);      // parent an-coords
  model.metric = ambient_an.transpose() * parent.metric * ambient_an;

  model.rep_dim = gb.rep_dim;
  model.rep.reserve(n);
  for (int i = 0; i < n; ++i)
    model.rep.push_back(to_double(gb.rep_of(RatVec(model.an_basis.col(i)))));

  finish_model(model);
  return model;
}

RatMat an_coords_of(const SolvableModel& model, const RatMat& g_coords_cols) {
  auto sol = exact::solve_multi(model.an_basis, g_coords_cols);
  if (!sol) throw Error("subspace not contained in a+n");
  return *sol;
}

// ---------------------------------------------------------------------------
// Curvature
// ---------------------------------------------------------------------------

RatVec curvature_exact(const SolvableModel& m, const RatVec& x, const RatVec& y,
                       const RatVec& z) {
  const RatVec dyz = m.gamma_exact(y, z);
  const RatVec dxz = m.gamma_exact(x, z);
  const RatVec br = m.an_sc.bracket(x, y);
  return RatVec(m.gamma_exact(x, dyz) - m.gamma_exact(y, dxz) - m.gamma_exact(br, z));
}

Rat sectional_curvature(const SolvableModel& m, const RatVec& x, const RatVec& y) {
  const RatVec rxyy = curvature_exact(m, x, y, y);
  const Rat num = (x.transpose() * m.metric * rxyy)(0, 0);
  const Rat xx = (x.transpose() * m.metric * x)(0, 0);
  const Rat yy = (y.transpose() * m.metric * y)(0, 0);
  const Rat xy = (x.transpose() * m.metric * y)(0, 0);
  const Rat den = xx * yy - xy * xy;
  if (den == 0) throw Error("sectional curvature of a degenerate plane");
  return num / den;
}

RatMat ricci_tensor(const SolvableModel& m) {
  const int n = m.dim();
  RatMat ric = RatMat::Zero(n, n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      RatVec ex = RatVec::Zero(n), ey = RatVec::Zero(n);
      ex(x) = 1;
      ey(y) = 1;
      Rat tr = 0;
      for (int k = 0; k < n; ++k) {
        RatVec ek = RatVec::Zero(n);
        ek(k) = 1;
        const RatVec r = curvature_exact(m, ek, ex, ey);
        for (int l = 0; l < n; ++l) {
          if (m.metric_inverse(k, l) == 0) continue;
          tr += m.metric_inverse(k, l) * (r.transpose() * m.metric.col(l))(0, 0);
        }
      }
      ric(x, y) = tr;
    }
  return ric;
}

Rat scalar_curvature(const SolvableModel& m) {
  const RatMat ric = ricci_tensor(m);
  Rat s = 0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) s += m.metric_inverse(i, j) * ric(i, j);
  return s;
}

bool is_flat(const SolvableModel& m) {
  const int n = m.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        RatVec ei = RatVec::Zero(n), ej = RatVec::Zero(n), ek = RatVec::Zero(n);
        ei(i) = 1;
        ej(j) = 1;
        ek(k) = 1;
        if (!is_zero_exact(curvature_exact(m, ei, ej, ek))) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

OrbitSFF orbit_second_fundamental_form(const SolvableModel& m, const RatMat& subalg_an) {
  const Index d = subalg_an.cols();
  exact::EchelonSpan span(subalg_an);
  for (Index i = 0; i < d; ++i)
    for (Index j = i + 1; j < d; ++j)
      if (!span.contains(m.an_sc.bracket(RatVec(subalg_an.col(i)),
                                         RatVec(subalg_an.col(j)))))
        throw Error("orbit subspace is not closed under the bracket");

  OrbitSFF out;
  out.tangent = subalg_an;
  out.ii.assign(d, std::vector<RatVec>(d));
  RatMat tangent_gram = subalg_an.transpose() * m.metric * subalg_an;
  auto gram_inv = exact::solve_multi(tangent_gram, RatMat(RatMat::Identity(d, d)));
  if (!gram_inv) throw Error("degenerate tangent Gram matrix");

  out.mean_curvature = RatVec::Zero(m.dim());
  out.totally_geodesic = true;
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) {
      const RatVec nabla =
          m.gamma_exact(RatVec(subalg_an.col(i)), RatVec(subalg_an.col(j)));
      // Tangential part: solve G_s tau = S^T G nabla.
      RatVec rhs = subalg_an.transpose() * m.metric * nabla;
      auto tau = exact::solve(tangent_gram, rhs);
      RatVec ii = nabla - subalg_an * *tau;
      if (!is_zero_exact(ii)) out.totally_geodesic = false;
      out.mean_curvature += (*gram_inv)(i, j) * ii;
      out.ii[i][j] = std::move(ii);
    }
  return out;
}

bool totally_geodesic_test(const SolvableModel& m, const RatMat& subalg_an) {
  if (subalg_an.cols() == 0) return true;
  return orbit_second_fundamental_form(m, subalg_an).totally_geodesic;
}

// ---------------------------------------------------------------------------
// Horospherical factorization
// ---------------------------------------------------------------------------

HoroSplit make_horosplit(const SolvableModel& m, const ParabolicData& pd) {
  HoroSplit split;
  const RootSpaceDecomposition& rd = *m.rd;
  RatMat aphi_an = an_coords_of(m, pd.aphi_basis);
  RatMat asup_an = an_coords_of(m, pd.asup_basis);
  RatMat nphi_an = pd.nphi_basis.cols() ? an_coords_of(m, pd.nphi_basis)
                                        : RatMat::Zero(m.dim(), 0);
  RatMat nsup_an = pd.nsup_basis.cols() ? an_coords_of(m, pd.nsup_basis)
                                        : RatMat::Zero(m.dim(), 0);
  split.ideal_an = RatMat(m.dim(), aphi_an.cols() + nphi_an.cols());
  split.ideal_an << aphi_an, nphi_an;
  split.section_an = RatMat(m.dim(), asup_an.cols() + nsup_an.cols());
  split.section_an << asup_an, nsup_an;
  if (split.ideal_an.cols() + split.section_an.cols() != m.dim())
    throw Error("horospherical split dimensions do not add up");

  RatMat full(m.dim(), m.dim());
  full << split.ideal_an, split.section_an;
  auto inv = exact::solve_multi(full, RatMat(RatMat::Identity(m.dim(), m.dim())));
  if (!inv) throw Error("horospherical split is not a direct sum");
  split.to_parts = to_double(*inv);
  split.ideal_d = to_double(split.ideal_an);
  split.section_d = to_double(split.section_an);
  return split;
}

namespace {

double membership_residual(const SolvableModel& m, const Eigen::MatrixXd& sub_basis,
                           const GroupElement& g) {
  double span_residual = 0;
  Eigen::VectorXd xi = m.log_of(g, &span_residual);
  if (sub_basis.cols() == 0) return std::hypot(xi.norm(), span_residual);
  Eigen::VectorXd c = sub_basis.householderQr().solve(xi);
  return std::hypot((sub_basis * c - xi).norm(), span_residual);
}

}  // namespace

Factorization horospherical_factorize(const SolvableModel& m, const HoroSplit& split,
                                      const GroupElement& g) {
  Factorization f;
  const Eigen::VectorXd xi = m.log_of(g);
  const Eigen::VectorXd parts = split.to_parts * xi;
  const Index k = split.ideal_d.cols();
  Eigen::VectorXd xi_section =
      split.section_d * parts.tail(parts.size() - k);
  f.s = m.exp_of(xi_section);
  f.h = compose(g, inverse(f.s));
  f.recompose_residual = (compose(f.h, f.s).mat - g.mat).norm();
  f.h_membership_residual = membership_residual(m, split.ideal_d, f.h);
  f.s_membership_residual = membership_residual(m, split.section_d, f.s);
  return f;
}

// ---------------------------------------------------------------------------
// Geodesics
// ---------------------------------------------------------------------------

GeodesicResult geodesic(const SolvableModel& m, const GroupElement& start,
                        const Eigen::VectorXd& v_an, double t, double step) {
  if (step <= 0) throw Error("geodesic: step must be positive");
  const int n_steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step)));
  const double h = t / n_steps;
  if (std::abs(h) < 1e-300) throw Error("geodesic: step-size underflow");

  Eigen::MatrixXd g = start.mat;
  Eigen::VectorXd v = v_an;
  const double e0 = v.dot(m.metric_d * v);
  auto dv = [&](const Eigen::VectorXd& vv) { return (-m.gamma(vv, vv)).eval(); };
  auto dg = [&](const Eigen::MatrixXd& gg, const Eigen::VectorXd& vv) {
    return (gg * m.rep_of_an(vv)).eval();
  };
  for (int s = 0; s < n_steps; ++s) {
    const Eigen::MatrixXd k1g = dg(g, v);
    const Eigen::VectorXd k1v = dv(v);
    const Eigen::MatrixXd k2g = dg(g + 0.5 * h * k1g, v + 0.5 * h * k1v);
    const Eigen::VectorXd k2v = dv(v + 0.5 * h * k1v);
    const Eigen::MatrixXd k3g = dg(g + 0.5 * h * k2g, v + 0.5 * h * k2v);
    const Eigen::VectorXd k3v = dv(v + 0.5 * h * k2v);
    const Eigen::MatrixXd k4g = dg(g + h * k3g, v + h * k3v);
    const Eigen::VectorXd k4v = dv(v + h * k3v);
    g += (h / 6.0) * (k1g + 2 * k2g + 2 * k3g + k4g);
    v += (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v);
  }
  GeodesicResult out;
  out.end = {std::move(g)};
  out.v_end = v;
  out.energy_drift = std::abs(v.dot(m.metric_d * v) - e0);
  return out;
}

double geodesic_richardson_delta(const SolvableModel& m, const GroupElement& start,
                                 const Eigen::VectorXd& v_an, double t, double step) {
  const auto full = geodesic(m, start, v_an, t, step);
  const auto half = geodesic(m, start, v_an, t, step / 2);
  return (full.end.mat - half.end.mat).norm();
}

// ---------------------------------------------------------------------------
// Model invariants
// ---------------------------------------------------------------------------

std::vector<CheckItem> model_checks(const SolvableModel& m, bool ambient) {
  std::vector<CheckItem> out;
  auto add = [&](const std::string& id, bool pass, const std::string& detail) {
    out.push_back({id, pass, detail});
  };
  const int n = m.dim();

  add("metric-positive-definite", exact::positive_definite(m.metric), "0");

  {  // metric compatibility: <D_i j, k> + <j, D_i k> = 0 for left-invariant fields
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j)
        for (int k = 0; k < n && ok; ++k) {
          const Rat lhs = (m.conn[i][j].transpose() * m.metric.col(k))(0, 0) +
                          (m.metric.row(j) * m.conn[i][k])(0, 0);
          ok = lhs == 0;
        }
    add("metric-compatibility", ok, "0");
  }

  {  // torsion-free: D_i j - D_j i = [e_i, e_j]
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        RatVec ei = RatVec::Zero(n), ej = RatVec::Zero(n);
        ei(i) = 1;
        ej(j) = 1;
        ok = eq_exact(RatVec(m.conn[i][j] - m.conn[j][i]), m.an_sc.bracket(ei, ej));
      }
    add("torsion-free", ok, "0");
  }

  if (ambient) {
    // X -> (X - theta X)/2 must be a linear isometry onto (p, B|p).
    const MatrixLieAlgebra& g = *m.rd->g;
    bool ok = true;
    RatMat half_proj(g.dim(), n);
    for (int i = 0; i < n; ++i)
      half_proj.col(i) =
          (RatVec(m.an_basis.col(i)) - RatVec(g.theta * m.an_basis.col(i))) / Rat(2);
    RatMat pulled = half_proj.transpose() * g.killing * half_proj;
    ok = eq_exact(pulled, m.metric);
    add("an-to-p-isometry", ok, "0");
  }
  return out;
}

}  // namespace horolab
