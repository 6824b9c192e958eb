#ifndef HOROLAB_LIEALG_HPP
#define HOROLAB_LIEALG_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "horolab/exact_linalg.hpp"
#include "horolab/rational.hpp"

namespace horolab {

/// Catalog descriptor: sl(n,R), su(p,q), so(p,q) or a direct sum of those.
struct AlgebraSpec {
  enum class Family { Sl, Su, So, Sum, Derived };
  Family family = Family::Sl;
  int p = 0;  // n for sl
  int q = 0;
  std::vector<AlgebraSpec> summands;

  /// Accepts short names: "sl3r", "su32", "so32", and sums "sl2r+sl2r".
  static AlgebraSpec parse_name(std::string_view name);
  static AlgebraSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  std::string canonical_name() const;
};

/// Sparse bracket table; entry (i,j) holds the coordinates of [e_i, e_j].
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(int dim) : dim_(dim), table_(dim * dim) {}

  int dim() const { return dim_; }
  using SparseVec = std::vector<std::pair<int, Rat>>;
  const SparseVec& pair_bracket(int i, int j) const { return table_[i * dim_ + j]; }
  void set_pair_bracket(int i, int j, SparseVec v);

  RatVec bracket(const RatVec& x, const RatVec& y) const;
  Eigen::VectorXd bracket(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  /// [e_i, v] for sparse v, accumulated into acc.
  void apply_ad_basis(int i, const SparseVec& v, RatVec& acc) const;
  RatMat ad(int i) const;
  RatMat ad(const RatVec& x) const;

 private:
  int dim_ = 0;
  std::vector<SparseVec> table_;
};

/// Real semisimple Lie algebra realized by exact rational matrices, with
/// Killing form and Cartan involution, plus the catalog choice of a maximal
/// abelian subspace of p and a default regular element.
struct MatrixLieAlgebra {
  std::string name;
  AlgebraSpec spec;
  int rep_dim = 0;
  std::vector<RatMat> basis;  // rep matrices
  StructureConstants sc;
  RatMat killing;  // B(X_i, X_j) = trace(ad X_i ad X_j)
  RatMat theta;    // coordinate matrix of the Cartan involution
  RatMat catalog_a;                        // columns: coords of the catalog a
  RatVec catalog_hreg;                     // coords of H_reg in the a-basis
  std::vector<int> summand_tag;            // summand index per basis vector
  std::optional<RatMat> complex_structure; // rep matrix of J (su only)

  int dim() const { return static_cast<int>(basis.size()); }
  RatVec bracket(const RatVec& x, const RatVec& y) const { return sc.bracket(x, y); }
  RatMat rep_of(const RatVec& coords) const;
  /// Exact expansion of a rep matrix over the basis; throws if outside span.
  RatVec coords_of(const RatMat& rep_matrix) const;
  RatMat theta_of(const RatVec& coords) const { return RatMat(theta * coords); }
  Rat killing_form(const RatVec& x, const RatVec& y) const;
  /// B_theta(x, y) = -B(x, theta y); positive definite.
  Rat btheta_form(const RatVec& x, const RatVec& y) const;

  struct SolverData;  // exact expansion helper built once per algebra
  std::shared_ptr<const SolverData> solver;
};

MatrixLieAlgebra build_from_catalog(const AlgebraSpec& spec);
inline MatrixLieAlgebra build_from_catalog(std::string_view name) {
  return build_from_catalog(AlgebraSpec::parse_name(name));
}

/// Abstract route for derived algebras (boundary components): the basis
/// matrices are given directly; structure constants, Killing form and
/// theta (restriction) are recomputed intrinsically.
MatrixLieAlgebra build_from_basis(std::string name, std::vector<RatMat> basis,
                                  const RatMat& theta_coords, RatMat catalog_a,
                                  RatVec catalog_hreg);

struct CartanDecomposition {
  RatMat k_basis;  // +1 eigenspace of theta, coords as columns
  RatMat p_basis;  // -1 eigenspace
};

CartanDecomposition cartan_decompose(const MatrixLieAlgebra& g);

struct CheckItem {
  std::string id;
  bool pass = false;
  std::string detail;  // residual or witness; "0" for exact passes
};

/// Exact structural invariants of the algebra: antisymmetry, Jacobi,
/// Killing symmetry/ad-invariance/nondegeneracy, theta involution and
/// automorphism, positivity of B_theta, Cartan bracket relations and
/// definiteness of B on k and p.
std::vector<CheckItem> structural_checks(const MatrixLieAlgebra& g,
                                         const CartanDecomposition& cd);

/// Ratio B_killing / trace-form, exact and constant across basis pairs
/// where the trace form does not vanish; used as a catalog self-check.
Rat killing_trace_ratio(const MatrixLieAlgebra& g);

}  // namespace horolab

#endif
