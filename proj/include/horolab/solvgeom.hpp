#ifndef HOROLAB_SOLVGEOM_HPP
#define HOROLAB_SOLVGEOM_HPP

#include <memory>
#include <vector>

#include "horolab/parabolic.hpp"

namespace horolab {

/// Element of the solvable group AN in the faithful matrix representation.
struct GroupElement {
  Eigen::MatrixXd mat;
};

GroupElement compose(const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupElement& a);

/// The group AN (or a boundary subgroup A^Phi N^Phi) with its left-invariant
/// metric. The exact layer carries the Gram matrix, Koszul connection and
/// curvature; the floating layer carries the representation matrices,
/// exp/log charts and the geodesic integrator.
class SolvableModel {
 public:
  std::shared_ptr<const RootSpaceDecomposition> rd;
  RatMat an_basis;  // columns, coords in rd->g's basis: a first, then n
  int dim_a = 0;
  std::vector<std::pair<int, int>> root_blocks;  // (offset, len) per rd->positive
  RatMat metric;                          // exact Gram on a + n
  RatMat metric_inverse;
  StructureConstants an_sc;               // brackets in an-coordinates
  std::vector<std::vector<RatVec>> conn;  // Koszul: conn[i][j] = coords of D_{e_i} e_j

  int rep_dim = 0;
  std::vector<Eigen::MatrixXd> rep;  // rep matrices of the an basis
  Eigen::MatrixXd metric_d, chol_lt; // metric = chol_lt^T chol_lt (lt = L^T)
  double chol_cond = 0;              // conditioning of the orthonormal frame
  std::vector<Eigen::MatrixXd> conn_d;

  int dim() const { return static_cast<int>(an_basis.cols()); }

  Eigen::MatrixXd rep_of_an(const Eigen::VectorXd& v) const;
  /// Left-invariant-frame coords -> orthonormal-frame coords and back.
  Eigen::VectorXd to_orth(const Eigen::VectorXd& an) const { return chol_lt * an; }
  Eigen::VectorXd from_orth(const Eigen::VectorXd& orth) const;
  Eigen::VectorXd gamma(const Eigen::VectorXd& u, const Eigen::VectorXd& v) const;
  RatVec gamma_exact(const RatVec& u, const RatVec& v) const;

  GroupElement identity() const;
  GroupElement exp_of(const Eigen::VectorXd& an_coords) const;
  /// Principal log projected onto the a+n span; *residual reports the part
  /// outside the span. Throws when the spectral-radius guard trips.
  Eigen::VectorXd log_of(const GroupElement& g, double* residual = nullptr) const;

  /// In-span projection of an arbitrary rep-sized matrix (least squares).
  Eigen::VectorXd project_to_an(const Eigen::MatrixXd& m, double* residual = nullptr) const;

  struct Impl;
  std::shared_ptr<const Impl> impl;  // cached QR projectors
};

/// Ambient model of AN from a root space decomposition.
SolvableModel build_model(std::shared_ptr<const RootSpaceDecomposition> rd);

/// Boundary model: the subgroup A^Phi N^Phi inside `parent`, carrying the
/// restricted (induced) metric, in the intrinsic coordinates of bc.
SolvableModel build_boundary_submodel(const SolvableModel& parent,
                                      const BoundaryComponent& bc);

/// Exact an-coordinates of algebra-coordinate columns; throws if outside a+n.
RatMat an_coords_of(const SolvableModel& model, const RatMat& g_coords_cols);

// -- curvature (exact) -------------------------------------------------------

RatVec curvature_exact(const SolvableModel& m, const RatVec& x, const RatVec& y,
                       const RatVec& z);  // R(x,y)z
Rat sectional_curvature(const SolvableModel& m, const RatVec& x, const RatVec& y);
RatMat ricci_tensor(const SolvableModel& m);
Rat scalar_curvature(const SolvableModel& m);
bool is_flat(const SolvableModel& m);

// -- orbits of Lie subgroups (exact) -----------------------------------------

struct OrbitSFF {
  RatMat tangent;                      // the subalgebra basis (an-coords)
  std::vector<std::vector<RatVec>> ii; // II(e_i, e_j), normal components, an-coords
  RatVec mean_curvature;               // an-coords
  bool totally_geodesic = false;
};

/// Second fundamental form at the identity of the subgroup orbit of a
/// bracket-closed subspace. Throws when the subspace is not closed.
OrbitSFF orbit_second_fundamental_form(const SolvableModel& m, const RatMat& subalg_an);

bool totally_geodesic_test(const SolvableModel& m, const RatMat& subalg_an);

// -- horospherical factorization ---------------------------------------------

struct HoroSplit {
  RatMat ideal_an;    // a_Phi + n_Phi
  RatMat section_an;  // a^Phi + n^Phi
  Eigen::MatrixXd ideal_d, section_d;
  Eigen::MatrixXd to_parts;  // inverse of [ideal | section]
};

HoroSplit make_horosplit(const SolvableModel& m, const ParabolicData& pd);

struct Factorization {
  GroupElement h;  // in A_Phi N_Phi
  GroupElement s;  // in A^Phi N^Phi
  double recompose_residual = 0;
  double h_membership_residual = 0;
  double s_membership_residual = 0;
};

/// g = h * s with h in the ideal subgroup and s in the section subgroup,
/// via s = exp(pi(log g)), pi the projection along the ideal.
Factorization horospherical_factorize(const SolvableModel& m, const HoroSplit& split,
                                      const GroupElement& g);

// -- geodesics ----------------------------------------------------------------

struct GeodesicResult {
  GroupElement end;
  Eigen::VectorXd v_end;  // left-trivialized final velocity
  double energy_drift = 0;
};

/// Fixed-step RK4 for the left-trivialized geodesic equation.
GeodesicResult geodesic(const SolvableModel& m, const GroupElement& start,
                        const Eigen::VectorXd& v_an, double t, double step = 1e-3);

/// Endpoint difference between full-step and half-step integrations.
double geodesic_richardson_delta(const SolvableModel& m, const GroupElement& start,
                                 const Eigen::VectorXd& v_an, double t, double step);

/// Exact model invariants: positive-definite metric, metric compatibility,
/// torsion-freeness, and (for ambient models) the linear isometry of
/// X -> (X - theta X)/2 onto p with the Killing metric.
std::vector<CheckItem> model_checks(const SolvableModel& m, bool ambient);

}  // namespace horolab

#endif
