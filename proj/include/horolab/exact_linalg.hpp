#ifndef HOROLAB_EXACT_LINALG_HPP
#define HOROLAB_EXACT_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "horolab/rational.hpp"

namespace horolab::exact {

/// Gauss-Jordan reduced row echelon form. Returns the pivot columns.
std::vector<Index> rref_in_place(RatMat& m);

Index rank(RatMat m);

/// Basis of the null space, as columns. Canonical (derived from the RREF).
RatMat kernel(const RatMat& m);

/// One exact solution of a x = b; std::nullopt if inconsistent.
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);
std::optional<RatMat> solve_multi(const RatMat& a, const RatMat& b);

Rat determinant(const RatMat& m);

/// det of the k x k top-left blocks, k = 1..n.
std::vector<Rat> leading_principal_minors(const RatMat& m);

/// Sylvester criterion on a symmetric matrix.
bool positive_definite(const RatMat& m);

// ---------------------------------------------------------------------------
// Subspaces of Q^n, represented by matrices whose columns span them.
// ---------------------------------------------------------------------------

/// Unique reduced column-echelon basis of the column span.
RatMat canonical_basis(const RatMat& s);

bool contains(const RatMat& s, const RatVec& v);
bool subspace_leq(const RatMat& a, const RatMat& b);
bool subspace_eq(const RatMat& a, const RatMat& b);

RatMat intersect(const RatMat& a, const RatMat& b);
RatMat subspace_sum(const RatMat& a, const RatMat& b);

/// {w in span(w_basis) : gram(s, w) = 0 for every column s of s_basis};
/// gram is a bilinear form on the ambient coordinate space.
RatMat orthocomplement_in(const RatMat& s_basis, const RatMat& w_basis,
                          const RatMat& gram);

/// Row-echelon view of a span for fast repeated membership tests.
class EchelonSpan {
 public:
  explicit EchelonSpan(const RatMat& columns);
  bool contains(RatVec v) const;
  Index dim() const { return static_cast<Index>(pivots_.size()); }

 private:
  RatMat rows_;
  std::vector<Index> pivots_;
};

/// Monic characteristic polynomial coefficients c[0..n] (c[n] = 1),
/// p(x) = sum_i c[i] x^i, via Faddeev-LeVerrier.
std::vector<Rat> charpoly(const RatMat& m);

struct EigenSplit {
  std::vector<Rat> values;
  std::vector<RatMat> spaces;  // parallel to values; columns are eigenvectors
};

/// All rational eigenvalues of m with their exact eigenspaces. Candidates are
/// enumerated by the rational root theorem applied to the integer
/// characteristic polynomial of D*m (D = lcm of denominators): integer roots
/// divide the trailing coefficient, whose prime factors are bounded by the
/// Gershgorin radius, so bounded trial division is complete. Throws when the
/// eigenspace dimensions do not sum to n (a non-rational eigenvalue).
EigenSplit rational_eigen_split(const RatMat& m, const std::string& context);

}  // namespace horolab::exact

#endif
