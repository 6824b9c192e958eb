#ifndef HOROLAB_ROOTSPACE_HPP
#define HOROLAB_ROOTSPACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "horolab/liealg.hpp"

namespace horolab {

/// A restricted root, stored as the covector of its values on the a-basis.
struct RestrictedRoot {
  RatVec coords;        // alpha(H_i) for the chosen basis H_i of a
  int multiplicity = 0; // dim g_alpha
  int summand = 0;      // which direct summand carries the root space
};

/// g = g_0 + sum of root spaces over a maximal abelian a in p, with a chosen
/// positive system and simple roots.
struct RootSpaceDecomposition {
  std::shared_ptr<const MatrixLieAlgebra> g;
  CartanDecomposition cartan;
  RatMat a_basis;   // columns, coords in the algebra basis
  RatMat a_gram;    // B restricted to a (positive definite)
  RatMat g0_basis, k0_basis;
  std::vector<RestrictedRoot> roots;
  std::vector<RatMat> root_spaces;  // parallel to roots
  std::vector<int> positive;        // indices into roots
  std::vector<int> simple;          // indices into roots, catalog order
  RatVec h_reg;                     // a-coordinates of the regular element used

  int rank() const { return static_cast<int>(a_basis.cols()); }
  int dim_n() const;
  RatMat n_basis() const;           // positive root spaces, concatenated
  Rat root_value(const RatVec& coords, const RatVec& h_in_a) const;
  /// B-dual inner product on a*.
  Rat dual_inner(const RatVec& alpha, const RatVec& beta) const;
  int find_root(const RatVec& coords) const;  // -1 when absent
  /// Coordinates of a root over the simple system (exact; integers for roots).
  RatVec simple_coordinates(const RatVec& coords) const;
};

/// Returns the catalog maximal abelian subspace after verifying it is
/// abelian and equal to its centralizer in p.
RatMat maximal_abelian(const MatrixLieAlgebra& g, const CartanDecomposition& cd);

/// Simultaneous exact eigenspace decomposition of ad(a) on g. Chooses the
/// positive system for the catalog regular element (or a deterministic
/// fallback when the algebra does not carry one).
RootSpaceDecomposition root_decompose(const MatrixLieAlgebra& g, const RatMat& a);
RootSpaceDecomposition root_decompose(std::shared_ptr<const MatrixLieAlgebra> g,
                                      const RatMat& a);

/// Replaces the positive system by the one induced by h_reg (a-coordinates).
/// Throws, naming the vanishing root, if h_reg is not regular.
void choose_positive_system(RootSpaceDecomposition& rd, const RatVec& h_reg);

/// Deterministic regular element search: first weight vector
/// (N^{r-1}, ..., N, 1), N = 2, 3, ..., that vanishes on no root.
RatVec default_regular_element(const RootSpaceDecomposition& rd);

/// Cartan matrix of the simple system, C_ij = 2 <a_i, a_j> / <a_j, a_j>.
RatMat cartan_matrix(const RootSpaceDecomposition& rd);

/// Root system type: "A2", "BC1", "B2", ..., products joined by " x ";
/// "unclassified" when the Cartan pattern is not recognized.
std::string classify_root_system(const RootSpaceDecomposition& rd);

/// Exact invariants: dimension bookkeeping, g_0 = k_0 + a, the grading
/// [g_a, g_b] in g_{a+b}, theta g_a = g_{-a}, Killing orthogonality,
/// nilpotency of n, and the Iwasawa split g = k + a + n.
std::vector<CheckItem> rootspace_checks(const RootSpaceDecomposition& rd);

}  // namespace horolab

#endif
