#ifndef HOROLAB_PARABOLIC_HPP
#define HOROLAB_PARABOLIC_HPP

#include <memory>
#include <vector>

#include "horolab/rootspace.hpp"

namespace horolab {

/// Subset of simple roots, stored as 1-based indices into the simple system.
struct PhiSubset {
  std::vector<int> indices;

  static PhiSubset parse(std::string_view comma_list, int rank);
  static std::vector<PhiSubset> all_subsets(int rank);
  bool contains(int one_based) const;
  std::string to_string() const;
};

/// The five subalgebras attached to Phi plus the horospherical splitting
/// of a + n. All bases are exact, columns in algebra coordinates.
struct ParabolicData {
  PhiSubset phi;
  std::vector<int> sigma_phi;       // root indices in Sigma_Phi
  std::vector<int> sigma_phi_plus;  // subset of positive roots
  RatMat l_basis;     // l_Phi = g_0 + sum over Sigma_Phi
  RatMat gphi_basis;  // g_Phi = [l_Phi, l_Phi]
  RatMat nphi_basis;  // n_Phi = sum over Sigma^+ minus Sigma_Phi^+
  RatMat aphi_basis;  // a_Phi = intersection of ker(alpha), alpha in Phi
  RatMat q_basis;     // q_Phi = l_Phi + n_Phi
  RatMat asup_basis;  // a^Phi: B-orthocomplement of a_Phi in a (= a meet g_Phi)
  RatMat nsup_basis;  // n^Phi = sum over Sigma_Phi^+
};

ParabolicData build_parabolic(const RootSpaceDecomposition& rd, const PhiSubset& phi);

/// True iff every root of Phi is B-dual-orthogonal to every root of its
/// complement in the simple system.
bool orthogonality_test(const RootSpaceDecomposition& rd, const PhiSubset& phi);

/// Exact structural invariants of one parabolic datum.
std::vector<CheckItem> parabolic_checks(const RootSpaceDecomposition& rd,
                                        const ParabolicData& pd);

/// The boundary-component algebra g_Phi with intrinsic structure constants,
/// restricted Cartan involution, and its own root decomposition relative to
/// a^Phi. The positive system is inherited from the ambient one.
struct BoundaryComponent {
  std::shared_ptr<const MatrixLieAlgebra> algebra;
  RatMat embedding;  // ambient-coords matrix, columns = intrinsic basis
  std::shared_ptr<const RootSpaceDecomposition> rd;
};

BoundaryComponent boundary_component_algebra(const RootSpaceDecomposition& rd,
                                             const ParabolicData& pd);

}  // namespace horolab

#endif
