#include "horolab/parabolic.hpp"

#include <algorithm>
#include <sstream>

namespace horolab {

PhiSubset PhiSubset::parse(std::string_view s, int rank) {
  PhiSubset phi;
  if (s.empty() || s == "none" || s == "empty") return phi;
  std::stringstream ss{std::string(s)};
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    int idx = 0;
    try {
      idx = std::stoi(tok);
    } catch (const std::exception&) {
      throw Error("bad simple-root index '" + tok + "'");
    }
    if (idx < 1 || idx > rank)
      throw Error("simple-root index " + std::to_string(idx) +
                  " outside 1.." + std::to_string(rank));
    phi.indices.push_back(idx);
  }
  std::sort(phi.indices.begin(), phi.indices.end());
  phi.indices.erase(std::unique(phi.indices.begin(), phi.indices.end()),
                    phi.indices.end());
  return phi;
}

std::vector<PhiSubset> PhiSubset::all_subsets(int rank) {
  std::vector<PhiSubset> out;
  for (int mask = 0; mask < (1 << rank); ++mask) {
    PhiSubset phi;
    for (int i = 0; i < rank; ++i)
      if (mask & (1 << i)) phi.indices.push_back(i + 1);
    out.push_back(std::move(phi));
  }
  return out;
}

bool PhiSubset::contains(int one_based) const {
  return std::find(indices.begin(), indices.end(), one_based) != indices.end();
}

std::string PhiSubset::to_string() const {
  if (indices.empty()) return "{}";
  std::string s = "{";
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(indices[i]);
  }
  return s + "}";
}

namespace {

/// Support of a root over the simple system, as 1-based indices.
std::vector<int> simple_support(const RootSpaceDecomposition& rd, int root_idx) {
  RatVec c = rd.simple_coordinates(rd.roots[root_idx].coords);
  std::vector<int> support;
  for (Index i = 0; i < c.size(); ++i)
    if (c(i) != 0) support.push_back(static_cast<int>(i) + 1);
  return support;
}

RatMat concat_root_spaces(const RootSpaceDecomposition& rd,
                          const std::vector<int>& idxs) {
  int cols = 0;
  for (int i : idxs) cols += rd.roots[i].multiplicity;
  RatMat out(rd.g->dim(), cols);
  Index at = 0;
  for (int i : idxs) {
    out.block(0, at, rd.g->dim(), rd.root_spaces[i].cols()) = rd.root_spaces[i];
    at += rd.root_spaces[i].cols();
  }
  return out;
}

}  // namespace

ParabolicData build_parabolic(const RootSpaceDecomposition& rd, const PhiSubset& phi) {
  for (int i : phi.indices)
    if (i < 1 || i > rd.rank())
      throw Error("Phi index " + std::to_string(i) + " outside the simple system");

  ParabolicData pd;
  pd.phi = phi;
  const MatrixLieAlgebra& g = *rd.g;

  // Sigma_Phi = roots whose simple support lies in Phi (= Sigma meet ZZ-span of Phi).
  for (size_t i = 0; i < rd.roots.size(); ++i) {
    const auto support = simple_support(rd, static_cast<int>(i));
    const bool inside = std::all_of(support.begin(), support.end(),
                                    [&](int s) { return phi.contains(s); });
    if (inside) pd.sigma_phi.push_back(static_cast<int>(i));
  }
  for (int i : rd.positive)
    if (std::find(pd.sigma_phi.begin(), pd.sigma_phi.end(), i) != pd.sigma_phi.end())
      pd.sigma_phi_plus.push_back(i);

  pd.l_basis = exact::subspace_sum(rd.g0_basis, concat_root_spaces(rd, pd.sigma_phi));

  {  // g_Phi = [l_Phi, l_Phi]
    std::vector<RatVec> brackets;
    for (Index i = 0; i < pd.l_basis.cols(); ++i)
      for (Index j = i + 1; j < pd.l_basis.cols(); ++j)
        brackets.push_back(
            g.bracket(RatVec(pd.l_basis.col(i)), RatVec(pd.l_basis.col(j))));
    RatMat stacked(g.dim(), static_cast<Index>(brackets.size()));
    for (size_t c = 0; c < brackets.size(); ++c) stacked.col(c) = brackets[c];
    pd.gphi_basis = exact::canonical_basis(stacked);
  }

  {
    std::vector<int> rest;
    for (int i : rd.positive)
      if (std::find(pd.sigma_phi_plus.begin(), pd.sigma_phi_plus.end(), i) ==
          pd.sigma_phi_plus.end())
        rest.push_back(i);
    pd.nphi_basis = concat_root_spaces(rd, rest);
  }
  pd.nsup_basis = concat_root_spaces(rd, pd.sigma_phi_plus);

  {  // a_Phi: joint kernel of the Phi roots inside a
    RatMat rows(static_cast<Index>(phi.indices.size()), rd.rank());
    for (size_t r = 0; r < phi.indices.size(); ++r)
      rows.row(static_cast<Index>(r)) =
          rd.roots[rd.simple[phi.indices[r] - 1]].coords.transpose();
    RatMat coeff = exact::kernel(rows);  // coordinates within the a-basis
    pd.aphi_basis = exact::canonical_basis(RatMat(rd.a_basis * coeff));
  }

  {  // a^Phi: B-orthocomplement of a_Phi in a; verified to equal a meet g_Phi
    pd.asup_basis =
        exact::orthocomplement_in(pd.aphi_basis, rd.a_basis, g.killing);
    RatMat meet = exact::intersect(rd.a_basis, pd.gphi_basis);
    if (!exact::subspace_eq(pd.asup_basis, meet))
      throw Error("a^Phi mismatch: B-orthocomplement of a_Phi differs from a meet g_Phi");
  }

  pd.q_basis = exact::subspace_sum(pd.l_basis, pd.nphi_basis);
  return pd;
}

bool orthogonality_test(const RootSpaceDecomposition& rd, const PhiSubset& phi) {
  for (int i = 1; i <= rd.rank(); ++i) {
    if (phi.contains(i)) continue;
    for (int j : phi.indices) {
      const Rat inner = rd.dual_inner(rd.roots[rd.simple[j - 1]].coords,
                                      rd.roots[rd.simple[i - 1]].coords);
      if (inner != 0) return false;
    }
  }
  return true;
}

std::vector<CheckItem> parabolic_checks(const RootSpaceDecomposition& rd,
                                        const ParabolicData& pd) {
  std::vector<CheckItem> out;
  const MatrixLieAlgebra& g = *rd.g;
  auto add = [&](const std::string& id, bool pass, const std::string& detail) {
    out.push_back({id, pass, detail});
  };
  const std::string tag = "phi=" + pd.phi.to_string();

  add("aphi-dim", static_cast<int>(pd.aphi_basis.cols()) ==
                      rd.rank() - static_cast<int>(pd.phi.indices.size()),
      tag);

  {  // a = a_Phi + a^Phi
    bool ok = exact::subspace_eq(exact::subspace_sum(pd.aphi_basis, pd.asup_basis),
                                 rd.a_basis) &&
              pd.aphi_basis.cols() + pd.asup_basis.cols() == rd.a_basis.cols();
    add("a-splits", ok, tag);
  }

  {  // [l_Phi, n_Phi] inside n_Phi
    exact::EchelonSpan nphi(pd.nphi_basis);
    bool ok = true;
    for (Index i = 0; i < pd.l_basis.cols() && ok; ++i)
      for (Index j = 0; j < pd.nphi_basis.cols() && ok; ++j)
        ok = nphi.contains(
            g.bracket(RatVec(pd.l_basis.col(i)), RatVec(pd.nphi_basis.col(j))));
    add("l-normalizes-nphi", ok, tag);
  }

  {  // l_Phi centralizes a_Phi
    bool ok = true;
    for (Index i = 0; i < pd.aphi_basis.cols() && ok; ++i)
      for (Index j = 0; j < pd.l_basis.cols() && ok; ++j)
        ok = is_zero_exact(
            g.bracket(RatVec(pd.aphi_basis.col(i)), RatVec(pd.l_basis.col(j))));
    add("aphi-centralized-by-l", ok, tag);
  }

  {  // n_Phi nilpotent
    RatMat series = pd.nphi_basis;
    int guard = 0;
    while (series.cols() > 0 && guard++ <= g.dim()) {
      std::vector<RatVec> brackets;
      for (Index i = 0; i < pd.nphi_basis.cols(); ++i)
        for (Index j = 0; j < series.cols(); ++j)
          brackets.push_back(
              g.bracket(RatVec(pd.nphi_basis.col(i)), RatVec(series.col(j))));
      RatMat stacked(g.dim(), static_cast<Index>(brackets.size()));
      for (size_t c = 0; c < brackets.size(); ++c) stacked.col(c) = brackets[c];
      series = exact::canonical_basis(stacked);
    }
    add("nphi-nilpotent", series.cols() == 0, tag);
  }

  {  // a_Phi abelian
    bool ok = true;
    for (Index i = 0; i < pd.aphi_basis.cols() && ok; ++i)
      for (Index j = i + 1; j < pd.aphi_basis.cols() && ok; ++j)
        ok = is_zero_exact(
            g.bracket(RatVec(pd.aphi_basis.col(i)), RatVec(pd.aphi_basis.col(j))));
    add("aphi-abelian", ok, tag);
  }

  {  // g_Phi semisimple: intrinsic Killing form nondegenerate
    bool ok = true;
    if (pd.gphi_basis.cols() > 0) {
      const Index m = pd.gphi_basis.cols();
      std::vector<RatMat> ads;  // intrinsic ad matrices
      exact::EchelonSpan span(pd.gphi_basis);
      for (Index i = 0; i < m && ok; ++i) {
        RatMat img(g.dim(), m);
        for (Index j = 0; j < m; ++j) {
          RatVec br =
              g.bracket(RatVec(pd.gphi_basis.col(i)), RatVec(pd.gphi_basis.col(j)));
          ok = ok && span.contains(br);
          img.col(j) = br;
        }
        if (!ok) break;
        auto coords = exact::solve_multi(pd.gphi_basis, img);
        if (!coords) { ok = false; break; }
        ads.push_back(std::move(*coords));
      }
      if (ok) {
        RatMat killing(m, m);
        for (Index i = 0; i < m; ++i)
          for (Index j = 0; j < m; ++j) killing(i, j) = (ads[i] * ads[j]).trace();
        ok = exact::determinant(killing) != 0;
      }
    }
    add("gphi-semisimple", ok, tag);
  }

  {  // l_Phi and q_Phi close under the bracket
    auto closed = [&](const RatMat& s) {
      exact::EchelonSpan span(s);
      for (Index i = 0; i < s.cols(); ++i)
        for (Index j = i + 1; j < s.cols(); ++j)
          if (!span.contains(g.bracket(RatVec(s.col(i)), RatVec(s.col(j)))))
            return false;
      return true;
    };
    add("l-subalgebra", closed(pd.l_basis), tag);
    add("q-subalgebra", closed(pd.q_basis), tag);
    add("q-dim-split",
        pd.q_basis.cols() == pd.l_basis.cols() + pd.nphi_basis.cols() &&
            exact::intersect(pd.l_basis, pd.nphi_basis).cols() == 0,
        tag);
  }

  {  // a + n = (a_Phi + n_Phi) + (a^Phi + n^Phi), and the first part is an ideal
    RatMat an = exact::subspace_sum(rd.a_basis, rd.n_basis());
    RatMat ideal = exact::subspace_sum(pd.aphi_basis, pd.nphi_basis);
    RatMat sect = exact::subspace_sum(pd.asup_basis, pd.nsup_basis);
    bool ok = ideal.cols() + sect.cols() == an.cols() &&
              exact::subspace_eq(exact::subspace_sum(ideal, sect), an);
    add("horospherical-split", ok, tag);

    exact::EchelonSpan ideal_span(ideal);
    bool is_ideal = true;
    for (Index i = 0; i < an.cols() && is_ideal; ++i)
      for (Index j = 0; j < ideal.cols() && is_ideal; ++j)
        is_ideal = ideal_span.contains(
            g.bracket(RatVec(an.col(i)), RatVec(ideal.col(j))));
    add("aphi-nphi-ideal-in-an", is_ideal, tag);
  }

  {  // limit cases
    if (pd.phi.indices.empty()) {
      RatMat expect = exact::subspace_sum(
          exact::subspace_sum(rd.k0_basis, rd.a_basis), rd.n_basis());
      add("q-empty-is-minimal-parabolic", exact::subspace_eq(pd.q_basis, expect), tag);
    }
    if (static_cast<int>(pd.phi.indices.size()) == rd.rank()) {
      add("q-full-is-g", static_cast<int>(pd.q_basis.cols()) == g.dim(), tag);
    }
  }
  return out;
}

BoundaryComponent boundary_component_algebra(const RootSpaceDecomposition& rd,
                                             const ParabolicData& pd) {
  if (pd.phi.indices.empty()) throw Error("boundary component is a point");
  const MatrixLieAlgebra& g = *rd.g;
  const Index m = pd.gphi_basis.cols();

  // theta restricted to g_Phi, in intrinsic coordinates.
  RatMat mapped = g.theta * pd.gphi_basis;
  auto theta_coords = exact::solve_multi(pd.gphi_basis, mapped);
  if (!theta_coords) throw Error("theta does not preserve g_Phi");

  std::vector<RatMat> basis;
  basis.reserve(m);
  for (Index i = 0; i < m; ++i) basis.push_back(g.rep_of(RatVec(pd.gphi_basis.col(i))));

  auto a_intrinsic = exact::solve_multi(pd.gphi_basis, pd.asup_basis);
  if (!a_intrinsic) throw Error("a^Phi not inside g_Phi");

  BoundaryComponent bc;
  MatrixLieAlgebra gb =
      build_from_basis(g.name + "|phi=" + pd.phi.to_string(), std::move(basis),
                       *theta_coords, *a_intrinsic, RatVec());
  bc.embedding = pd.gphi_basis;
  auto gbp = std::make_shared<MatrixLieAlgebra>(std::move(gb));

  // Verify a^Phi is maximal abelian in the intrinsic p before decomposing.
  CartanDecomposition cd = cartan_decompose(*gbp);
  maximal_abelian(*gbp, cd);
  auto rdb = std::make_shared<RootSpaceDecomposition>(
      root_decompose(gbp, gbp->catalog_a));

  // Positive system compatible with the ambient one: project H_reg onto a^Phi
  // along a_Phi (the Sigma_Phi roots vanish on a_Phi, so values agree).
  {
    RatVec h_ambient = rd.a_basis * rd.h_reg;  // g-coords
    RatMat split(g.dim(), pd.asup_basis.cols() + pd.aphi_basis.cols());
    split << pd.asup_basis, pd.aphi_basis;
    auto c = exact::solve(split, h_ambient);
    if (!c) throw Error("H_reg not inside a");
    RatVec h_sup = pd.asup_basis * c->head(pd.asup_basis.cols());  // g-coords
    auto h_intr = exact::solve(RatMat(pd.gphi_basis * gbp->catalog_a), h_sup);
    if (!h_intr) throw Error("projected H_reg not inside a^Phi");
    choose_positive_system(*rdb, *h_intr);
  }

  if (rdb->rank() != static_cast<int>(pd.phi.indices.size()))
    throw Error("boundary component rank " + std::to_string(rdb->rank()) +
                " != |Phi| = " + std::to_string(pd.phi.indices.size()));

  bc.algebra = gbp;
  bc.rd = rdb;
  return bc;
}

}  // namespace horolab
