#include "horolab/exact_linalg.hpp"

#include <algorithm>
#include <map>

namespace horolab::exact {

std::vector<Index> rref_in_place(RatMat& m) {
  const Index rows = m.rows(), cols = m.cols();
  std::vector<Index> pivots;
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index p = -1;
    for (Index i = r; i < rows; ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Rat inv = Rat(1) / m(r, c);
    for (Index j = c; j < cols; ++j) m(r, j) *= inv;
    for (Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Rat f = m(i, c);
      for (Index j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

Index rank(RatMat m) { return static_cast<Index>(rref_in_place(m).size()); }

RatMat kernel(const RatMat& m) {
  RatMat r = m;
  const auto pivots = rref_in_place(r);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (Index c : pivots) is_pivot[c] = true;
  RatMat out = RatMat::Zero(cols, cols - static_cast<Index>(pivots.size()));
  Index k = 0;
  for (Index c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    out(c, k) = 1;
    for (Index i = 0; i < static_cast<Index>(pivots.size()); ++i)
      out(pivots[i], k) = -r(i, c);
    ++k;
  }
  return out;
}

std::optional<RatMat> solve_multi(const RatMat& a, const RatMat& b) {
  RatMat aug(a.rows(), a.cols() + b.cols());
  aug << a, b;
  const auto pivots = rref_in_place(aug);
  // Inconsistent iff a pivot falls inside the right block.
  for (Index c : pivots)
    if (c >= a.cols()) return std::nullopt;
  RatMat x = RatMat::Zero(a.cols(), b.cols());
  for (Index i = 0; i < static_cast<Index>(pivots.size()); ++i)
    x.row(pivots[i]) = aug.block(i, a.cols(), 1, b.cols());
  return x;
}

std::optional<RatVec> solve(const RatMat& a, const RatVec& b) {
  auto x = solve_multi(a, RatMat(b));
  if (!x) return std::nullopt;
  return RatVec(x->col(0));
}

Rat determinant(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("determinant of non-square matrix");
  RatMat a = m;
  const Index n = a.rows();
  Rat det = 1;
  for (Index c = 0; c < n; ++c) {
    Index p = -1;
    for (Index i = c; i < n; ++i)
      if (a(i, c) != 0) { p = i; break; }
    if (p < 0) return Rat(0);
    if (p != c) {
      a.row(p).swap(a.row(c));
      det = -det;
    }
    det *= a(c, c);
    const Rat inv = Rat(1) / a(c, c);
    for (Index i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      const Rat f = a(i, c) * inv;
      for (Index j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

std::vector<Rat> leading_principal_minors(const RatMat& m) {
  std::vector<Rat> out;
  for (Index k = 1; k <= m.rows(); ++k)
    out.push_back(determinant(m.topLeftCorner(k, k)));
  return out;
}

bool positive_definite(const RatMat& m) {
  if (m.rows() != m.cols()) return false;
  for (const Rat& d : leading_principal_minors(m))
    if (d <= 0) return false;
  return true;
}

RatMat canonical_basis(const RatMat& s) {
  RatMat t = s.transpose();
  const auto pivots = rref_in_place(t);
  RatMat out(s.rows(), static_cast<Index>(pivots.size()));
  for (Index i = 0; i < out.cols(); ++i) out.col(i) = t.row(i).transpose();
  return out;
}

bool contains(const RatMat& s, const RatVec& v) {
  if (is_zero_exact(v)) return true;
  RatMat aug(s.rows(), s.cols() + 1);
  aug << s, v;
  return rank(s) == rank(aug);
}

bool subspace_leq(const RatMat& a, const RatMat& b) {
  RatMat aug(a.rows(), a.cols() + b.cols());
  aug << b, a;
  return rank(b) == rank(aug);
}

bool subspace_eq(const RatMat& a, const RatMat& b) {
  return subspace_leq(a, b) && subspace_leq(b, a);
}

RatMat intersect(const RatMat& a, const RatMat& b) {
  if (a.cols() == 0 || b.cols() == 0) return RatMat::Zero(a.rows(), 0);
  RatMat stacked(a.rows(), a.cols() + b.cols());
  stacked << a, -b;
  RatMat k = kernel(stacked);
  RatMat inter(a.rows(), k.cols());
  for (Index j = 0; j < k.cols(); ++j)
    inter.col(j) = a * k.block(0, j, a.cols(), 1);
  return canonical_basis(inter);
}

RatMat subspace_sum(const RatMat& a, const RatMat& b) {
  RatMat stacked(a.rows(), a.cols() + b.cols());
  stacked << a, b;
  return canonical_basis(stacked);
}

RatMat orthocomplement_in(const RatMat& s_basis, const RatMat& w_basis,
                          const RatMat& gram) {
  if (s_basis.cols() == 0) return canonical_basis(w_basis);
  // Rows: constraints s_i^T G (w_basis c) = 0 on coefficient vectors c.
  RatMat constraints = s_basis.transpose() * gram * w_basis;
  RatMat coeffs = kernel(constraints);
  return canonical_basis(w_basis * coeffs);
}

EchelonSpan::EchelonSpan(const RatMat& columns) {
  rows_ = columns.transpose();
  pivots_ = rref_in_place(rows_);
}

bool EchelonSpan::contains(RatVec v) const {
  for (size_t i = 0; i < pivots_.size(); ++i) {
    const Rat& c = v(pivots_[i]);
    if (c != 0) v -= c * rows_.row(static_cast<Index>(i)).transpose();
  }
  return is_zero_exact(v);
}

std::vector<Rat> charpoly(const RatMat& m) {
  if (m.rows() != m.cols()) throw Error("charpoly of non-square matrix");
  const Index n = m.rows();
  std::vector<Rat> c(static_cast<size_t>(n) + 1, Rat(0));
  c[n] = 1;
  RatMat mk = RatMat::Zero(n, n);
  for (Index k = 1; k <= n; ++k) {
    if (k == 1)
      mk = m;
    else {
      for (Index i = 0; i < n; ++i) mk(i, i) += c[n - k + 1];
      mk = RatMat(m * mk);
    }
    Rat tr = 0;
    for (Index i = 0; i < n; ++i) tr += mk(i, i);
    c[n - k] = -tr / k;
  }
  return c;
}

namespace {

// Prime factors of |x| up to `bound` by trial division; the leftover
// cofactor (product of larger primes) is discarded -- the caller's
// dimension-count check catches anything this could miss.
std::map<Int, int> bounded_factor(Int x, const Int& bound) {
  std::map<Int, int> factors;
  if (x < 0) x = -x;
  for (Int p = 2; p <= bound && p * p <= x; ++p)
    while (x % p == 0) {
      ++factors[p];
      x /= p;
    }
  if (x > 1 && x <= bound) ++factors[x];
  return factors;
}

void enumerate_divisors(const std::vector<std::pair<Int, int>>& pf, size_t i,
                        const Int& cur, const Int& bound, std::vector<Int>& out) {
  if (cur > bound) return;
  if (i == pf.size()) {
    out.push_back(cur);
    return;
  }
  Int v = cur;
  for (int e = 0; e <= pf[i].second; ++e) {
    enumerate_divisors(pf, i + 1, v, bound, out);
    v *= pf[i].first;
    if (v > bound) break;
  }
}

Rat horner(const std::vector<Rat>& coeff, const Rat& x) {
  Rat acc = 0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
  return acc;
}

}  // namespace

EigenSplit rational_eigen_split(const RatMat& m, const std::string& context) {
  const Index n = m.rows();
  EigenSplit split;
  if (n == 0) return split;

  const Int d = lcm_denominators(m);
  RatMat mi = m * Rat(d);
  const auto poly = charpoly(mi);  // integer coefficients, monic
  for (const Rat& c : poly)
    if (rat_den(c) != 1)
      throw Error(context + ": characteristic polynomial not integral");

  // Gershgorin radius bounds every eigenvalue of the integer matrix.
  Int radius = 0;
  for (Index i = 0; i < n; ++i) {
    Int row = 0;
    for (Index j = 0; j < n; ++j) row += boost::multiprecision::abs(rat_num(mi(i, j)));
    radius = std::max(radius, row);
  }

  // Strip the power of x (eigenvalue zero), then apply the rational root
  // theorem to the remaining trailing coefficient.
  size_t low = 0;
  while (low < poly.size() && poly[low] == 0) ++low;
  std::vector<Rat> reduced(poly.begin() + static_cast<long>(low), poly.end());

  std::vector<Int> candidates;
  if (reduced.size() > 1) {
    const auto factors_map = bounded_factor(rat_num(reduced.front()), radius);
    std::vector<std::pair<Int, int>> pf(factors_map.begin(), factors_map.end());
    enumerate_divisors(pf, 0, Int(1), radius, candidates);
  }
  std::sort(candidates.begin(), candidates.end());

  std::vector<Rat> eigenvalues;
  if (low > 0) eigenvalues.push_back(Rat(0));
  for (const Int& cand : candidates) {
    for (int sign : {1, -1}) {
      const Rat x = Rat(sign) * Rat(cand);
      if (horner(reduced, x) == 0) eigenvalues.push_back(x / Rat(d));
    }
  }
  std::sort(eigenvalues.begin(), eigenvalues.end());
  eigenvalues.erase(std::unique(eigenvalues.begin(), eigenvalues.end()),
                    eigenvalues.end());

  Index total = 0;
  for (const Rat& ev : eigenvalues) {
    RatMat shifted = m;
    for (Index i = 0; i < n; ++i) shifted(i, i) -= ev;
    RatMat space = kernel(shifted);
    if (space.cols() == 0) continue;
    split.values.push_back(ev);
    split.spaces.push_back(canonical_basis(space));
    total += split.spaces.back().cols();
  }
  if (total != n)
    throw Error(context + ": non-rational eigenvalue encountered (" +
                std::to_string(total) + " of " + std::to_string(n) +
                " dimensions split)");
  return split;
}

}  // namespace horolab::exact
