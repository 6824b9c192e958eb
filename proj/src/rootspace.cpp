#include "horolab/rootspace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace horolab {

namespace {

/// Lexicographic order on exact coordinate vectors.
bool lex_less(const RatVec& a, const RatVec& b) {
  for (Index i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return true;
    if (a(i) > b(i)) return false;
  }
  return false;
}

std::string coords_str(const RatVec& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(v(i));
  }
  return s + ")";
}

}  // namespace

int RootSpaceDecomposition::dim_n() const {
  int n = 0;
  for (int idx : positive) n += roots[idx].multiplicity;
  return n;
}

RatMat RootSpaceDecomposition::n_basis() const {
  RatMat n(g->dim(), dim_n());
  Index at = 0;
  for (int idx : positive) {
    n.block(0, at, g->dim(), root_spaces[idx].cols()) = root_spaces[idx];
    at += root_spaces[idx].cols();
  }
  return n;
}

Rat RootSpaceDecomposition::root_value(const RatVec& coords, const RatVec& h) const {
  return (coords.transpose() * h)(0, 0);
}

Rat RootSpaceDecomposition::dual_inner(const RatVec& alpha, const RatVec& beta) const {
  auto sol = exact::solve(a_gram, beta);
  if (!sol) throw Error("a_gram singular");
  return (alpha.transpose() * *sol)(0, 0);
}

int RootSpaceDecomposition::find_root(const RatVec& coords) const {
  for (size_t i = 0; i < roots.size(); ++i)
    if (eq_exact(roots[i].coords, coords)) return static_cast<int>(i);
  return -1;
}

RatVec RootSpaceDecomposition::simple_coordinates(const RatVec& coords) const {
  RatMat simple_mat(rank(), static_cast<Index>(simple.size()));
  for (size_t j = 0; j < simple.size(); ++j) simple_mat.col(j) = roots[simple[j]].coords;
  auto sol = exact::solve(simple_mat, coords);
  if (!sol) throw Error("root not in the span of the simple system");
  return *sol;
}

RatMat maximal_abelian(const MatrixLieAlgebra& g, const CartanDecomposition& cd) {
  const RatMat& a = g.catalog_a;
  // a lies in p.
  for (Index i = 0; i < a.cols(); ++i)
    if (!exact::contains(cd.p_basis, RatVec(a.col(i))))
      throw Error(g.name + ": catalog a is not contained in p");
  // Abelian.
  for (Index i = 0; i < a.cols(); ++i)
    for (Index j = i + 1; j < a.cols(); ++j)
      if (!is_zero_exact(g.bracket(RatVec(a.col(i)), RatVec(a.col(j)))))
        throw Error(g.name + ": catalog a is not abelian");
  // Maximal: centralizer of a inside p equals a. The centralizer is the
  // joint kernel of the ad(H_i) restricted to p.
  const Index dp = cd.p_basis.cols();
  RatMat stacked(a.cols() * g.dim(), dp);
  for (Index i = 0; i < a.cols(); ++i) {
    RatMat ad_h = g.sc.ad(RatVec(a.col(i)));
    stacked.block(i * g.dim(), 0, g.dim(), dp) = ad_h * cd.p_basis;
  }
  RatMat cent = RatMat(cd.p_basis * exact::kernel(stacked));
  if (!exact::subspace_eq(cent, a))
    throw Error(g.name + ": catalog a is not maximal abelian in p (centralizer has dim " +
                std::to_string(exact::rank(cent)) + ")");
  return a;
}

RootSpaceDecomposition root_decompose(const MatrixLieAlgebra& g, const RatMat& a) {
  return root_decompose(std::make_shared<MatrixLieAlgebra>(g), a);
}

RootSpaceDecomposition root_decompose(std::shared_ptr<const MatrixLieAlgebra> gp,
                                      const RatMat& a) {
  const MatrixLieAlgebra& g = *gp;
  const int d = g.dim();
  RootSpaceDecomposition rd;
  rd.g = gp;
  rd.cartan = cartan_decompose(g);
  rd.a_basis = a;
  rd.a_gram = a.transpose() * g.killing * a;

  // Simultaneous refinement: split invariant subspaces by each ad(H_i).
  struct Piece {
    RatVec value;  // accumulated eigenvalues
    RatMat space;  // columns in g-coords
  };
  std::vector<Piece> pieces{{RatVec(0), RatMat(RatMat::Identity(d, d))}};
  for (Index step = 0; step < a.cols(); ++step) {
    RatMat ad_h = g.sc.ad(RatVec(a.col(step)));
    std::vector<Piece> next;
    for (const auto& piece : pieces) {
      // Restrict ad(H) to the invariant subspace: ad_h * space = space * m.
      auto m = exact::solve_multi(piece.space, RatMat(ad_h * piece.space));
      if (!m) throw Error(g.name + ": subspace not ad(a)-invariant");
      auto split = exact::rational_eigen_split(*m, g.name + ": root eigenvalues");
      for (size_t e = 0; e < split.values.size(); ++e) {
        Piece refined;
        refined.value.resize(step + 1);
        refined.value.head(step) = piece.value;
        refined.value(step) = split.values[e];
        refined.space = exact::canonical_basis(RatMat(piece.space * split.spaces[e]));
        next.push_back(std::move(refined));
      }
    }
    pieces = std::move(next);
  }

  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& x, const Piece& y) { return lex_less(x.value, y.value); });

  for (auto& piece : pieces) {
    if (is_zero_exact(piece.value)) {
      rd.g0_basis = piece.space;
      continue;
    }
    RestrictedRoot root;
    root.coords = piece.value;
    root.multiplicity = static_cast<int>(piece.space.cols());
    // Tag the summand carrying the root space (uniform across the space).
    root.summand = 0;
    for (Index r = 0; r < piece.space.rows(); ++r)
      if (piece.space(r, 0) != 0) {
        root.summand = g.summand_tag[r];
        break;
      }
    rd.roots.push_back(std::move(root));
    rd.root_spaces.push_back(piece.space);
  }
  if (rd.g0_basis.cols() == 0)
    throw Error(g.name + ": zero weight space empty (a not inside the algebra?)");

  rd.k0_basis = exact::intersect(rd.g0_basis, rd.cartan.k_basis);

  RatVec hreg = g.catalog_hreg;
  if (hreg.size() != a.cols()) hreg = default_regular_element(rd);
  choose_positive_system(rd, hreg);
  return rd;
}

void choose_positive_system(RootSpaceDecomposition& rd, const RatVec& h_reg) {
  std::vector<int> positive;
  for (size_t i = 0; i < rd.roots.size(); ++i) {
    const Rat v = rd.root_value(rd.roots[i].coords, h_reg);
    if (v == 0)
      throw Error("H_reg not regular: root " + coords_str(rd.roots[i].coords) +
                  " vanishes on it");
    if (v > 0) positive.push_back(static_cast<int>(i));
  }
  // Simple roots: positive roots that are not sums of two positive roots.
  std::vector<int> simple;
  for (int i : positive) {
    bool decomposable = false;
    for (int j : positive) {
      if (decomposable) break;
      for (int k : positive) {
        RatVec sum = rd.roots[j].coords + rd.roots[k].coords;
        if (eq_exact(sum, rd.roots[i].coords)) {
          decomposable = true;
          break;
        }
      }
    }
    if (!decomposable) simple.push_back(i);
  }
  if (static_cast<int>(simple.size()) != rd.rank())
    throw Error("simple system has size " + std::to_string(simple.size()) +
                ", expected rank " + std::to_string(rd.rank()));
  // Catalog order: by summand, then lexicographically decreasing coords.
  std::sort(simple.begin(), simple.end(), [&](int x, int y) {
    if (rd.roots[x].summand != rd.roots[y].summand)
      return rd.roots[x].summand < rd.roots[y].summand;
    return lex_less(rd.roots[y].coords, rd.roots[x].coords);
  });
  rd.positive = std::move(positive);
  rd.simple = std::move(simple);
  rd.h_reg = h_reg;
}

RatVec default_regular_element(const RootSpaceDecomposition& rd) {
  const int r = rd.rank();
  for (int base = 2;; ++base) {
    RatVec h(r);
    Rat w = 1;
    for (int i = r - 1; i >= 0; --i) {
      h(i) = w;
      w *= base;
    }
    bool regular = true;
    for (const auto& root : rd.roots)
      if (rd.root_value(root.coords, h) == 0) {
        regular = false;
        break;
      }
    if (regular) return h;
  }
}

RatMat cartan_matrix(const RootSpaceDecomposition& rd) {
  const int r = static_cast<int>(rd.simple.size());
  RatMat c(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const RatVec& ai = rd.roots[rd.simple[i]].coords;
      const RatVec& aj = rd.roots[rd.simple[j]].coords;
      c(i, j) = 2 * rd.dual_inner(ai, aj) / rd.dual_inner(aj, aj);
    }
  return c;
}

namespace {

struct Component {
  std::vector<int> members;  // positions within rd.simple
};

std::vector<Component> connected_components(const RatMat& cartan) {
  const int r = static_cast<int>(cartan.rows());
  std::vector<int> comp(r, -1);
  int n_comp = 0;
  for (int i = 0; i < r; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = n_comp;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int u = 0; u < r; ++u)
        if (comp[u] < 0 && cartan(v, u) != 0) {
          comp[u] = n_comp;
          stack.push_back(u);
        }
    }
    ++n_comp;
  }
  std::vector<Component> out(n_comp);
  for (int i = 0; i < r; ++i) out[comp[i]].members.push_back(i);
  return out;
}

std::string classify_component(const RootSpaceDecomposition& rd, const RatMat& cartan,
                               const std::vector<int>& members) {
  const int r = static_cast<int>(members.size());
  // Does some simple root in this component have a doubled root?
  bool has_double = false;
  for (int m : members) {
    const RatVec doubled = 2 * rd.roots[rd.simple[m]].coords;
    if (rd.find_root(doubled) >= 0) has_double = true;
  }
  if (r == 1) return has_double ? "BC1" : "A1";

  // Local structure: degrees and bond weights within the component.
  std::vector<int> degree(r, 0);
  int n_double_bonds = 0, n_triple_bonds = 0;
  std::pair<int, int> double_bond{-1, -1};
  for (int x = 0; x < r; ++x)
    for (int y = x + 1; y < r; ++y) {
      const Rat w = cartan(members[x], members[y]) * cartan(members[y], members[x]);
      if (w == 0) continue;
      ++degree[x];
      ++degree[y];
      if (w == 2) {
        ++n_double_bonds;
        double_bond = {x, y};
      } else if (w == 3) {
        ++n_triple_bonds;
      } else if (w != 1) {
        return "unclassified";
      }
    }
  int n_leaves = 0, n_branch = 0;
  for (int x = 0; x < r; ++x) {
    if (degree[x] == 1) ++n_leaves;
    if (degree[x] > 2) ++n_branch;
    if (degree[x] == 0) return "unclassified";  // disconnected inside component
  }
  const std::string rs = std::to_string(r);
  if (n_triple_bonds == 1 && r == 2 && n_double_bonds == 0) return "G2";
  if (n_double_bonds == 0 && n_branch == 0 && n_leaves == 2) return "A" + rs;
  if (n_double_bonds == 0 && n_branch == 1 && r >= 4) {
    // D_r: the branch node has exactly three neighbours, two of them leaves.
    for (int x = 0; x < r; ++x) {
      if (degree[x] <= 2) continue;
      if (degree[x] != 3) return "unclassified";
      int leaf_neighbours = 0;
      for (int y = 0; y < r; ++y)
        if (y != x && cartan(members[x], members[y]) != 0 && degree[y] == 1)
          ++leaf_neighbours;
      if (leaf_neighbours >= 2) return "D" + rs;
    }
    return "unclassified";
  }
  if (n_double_bonds == 1 && n_branch == 0 && n_leaves == 2) {
    auto [x, y] = double_bond;
    const RatVec& ax = rd.roots[rd.simple[members[x]]].coords;
    const RatVec& ay = rd.roots[rd.simple[members[y]]].coords;
    const bool x_short = rd.dual_inner(ax, ax) < rd.dual_inner(ay, ay);
    const int short_v = x_short ? x : y;
    const int long_v = x_short ? y : x;
    if (has_double) return "BC" + rs;
    if (r == 2) return "B2";  // B2 and C2 coincide
    if (degree[short_v] == 1) return "B" + rs;
    if (degree[long_v] == 1) return "C" + rs;
  }
  return "unclassified";
}

}  // namespace

std::string classify_root_system(const RootSpaceDecomposition& rd) {
  if (rd.simple.empty()) return "unclassified";
  const RatMat cartan = cartan_matrix(rd);
  // The Cartan integers must be nonpositive integers off the diagonal.
  for (Index i = 0; i < cartan.rows(); ++i)
    for (Index j = 0; j < cartan.cols(); ++j) {
      if (i == j) continue;
      if (cartan(i, j) > 0 || rat_den(cartan(i, j)) != 1) return "unclassified";
    }
  std::vector<std::string> labels;
  for (const auto& comp : connected_components(cartan))
    labels.push_back(classify_component(rd, cartan, comp.members));
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (i) out += " x ";
    out += labels[i];
  }
  return out;
}

std::vector<CheckItem> rootspace_checks(const RootSpaceDecomposition& rd) {
  std::vector<CheckItem> out;
  const MatrixLieAlgebra& g = *rd.g;
  auto add = [&](const std::string& id, bool pass, const std::string& detail) {
    out.push_back({id, pass, detail});
  };

  {
    int total = static_cast<int>(rd.g0_basis.cols());
    for (const auto& root : rd.roots) total += root.multiplicity;
    add("dim-bookkeeping", total == g.dim(),
        std::to_string(total) + " vs dim g = " + std::to_string(g.dim()));
  }

  {  // g_0 = k_0 + a as an exact direct sum
    RatMat sum = exact::subspace_sum(rd.k0_basis, rd.a_basis);
    bool ok = exact::subspace_eq(sum, rd.g0_basis) &&
              exact::rank(sum) ==
                  static_cast<Index>(rd.k0_basis.cols() + rd.a_basis.cols());
    add("g0-is-k0-plus-a", ok, "0");
  }

  {  // -alpha has the same multiplicity and theta g_a = g_{-a}
    bool ok = true;
    for (size_t i = 0; i < rd.roots.size() && ok; ++i) {
      const int j = rd.find_root(RatVec(-rd.roots[i].coords));
      if (j < 0 || rd.roots[j].multiplicity != rd.roots[i].multiplicity) {
        ok = false;
        break;
      }
      RatMat mapped = g.theta * rd.root_spaces[i];
      ok = exact::subspace_eq(mapped, rd.root_spaces[j]);
    }
    add("theta-maps-roots", ok, "0");
  }

  {  // grading [g_a, g_b] in g_{a+b} (zero space when a+b is not a root or 0)
    bool ok = true;
    std::vector<RatVec> weights;
    std::vector<RatMat> spaces;
    weights.push_back(RatVec(RatVec::Zero(rd.rank())));
    spaces.push_back(rd.g0_basis);
    for (size_t i = 0; i < rd.roots.size(); ++i) {
      weights.push_back(rd.roots[i].coords);
      spaces.push_back(rd.root_spaces[i]);
    }
    std::vector<exact::EchelonSpan> spans;
    for (const auto& s : spaces) spans.emplace_back(s);
    auto span_of = [&](const RatVec& coords) -> const exact::EchelonSpan* {
      for (size_t i = 0; i < weights.size(); ++i)
        if (eq_exact(weights[i], coords)) return &spans[i];
      return nullptr;
    };
    for (size_t x = 0; x < weights.size() && ok; ++x)
      for (size_t y = 0; y < weights.size() && ok; ++y) {
        const auto* target = span_of(RatVec(weights[x] + weights[y]));
        for (Index cx = 0; cx < spaces[x].cols() && ok; ++cx)
          for (Index cy = 0; cy < spaces[y].cols() && ok; ++cy) {
            RatVec br = g.bracket(RatVec(spaces[x].col(cx)), RatVec(spaces[y].col(cy)));
            if (is_zero_exact(br)) continue;
            ok = target != nullptr && target->contains(br);
          }
      }
    add("grading", ok, "0");
  }

  {  // Killing orthogonality across root spaces
    bool ok = true;
    for (size_t x = 0; x < rd.roots.size() && ok; ++x)
      for (size_t y = 0; y < rd.roots.size() && ok; ++y) {
        if (is_zero_exact(RatVec(rd.roots[x].coords + rd.roots[y].coords))) continue;
        ok = is_zero_exact(
            RatMat(rd.root_spaces[x].transpose() * g.killing * rd.root_spaces[y]));
      }
    for (size_t x = 0; x < rd.roots.size() && ok; ++x)
      ok = is_zero_exact(
          RatMat(rd.root_spaces[x].transpose() * g.killing * rd.g0_basis));
    add("killing-orthogonality", ok, "0");
  }

  {  // every positive root is a nonnegative integer combination of the simple system
    bool ok = true;
    for (int idx : rd.positive) {
      RatVec c = rd.simple_coordinates(rd.roots[idx].coords);
      for (Index i = 0; i < c.size(); ++i)
        if (c(i) < 0 || rat_den(c(i)) != 1) ok = false;
    }
    add("positive-integral", ok, "0");
  }

  {  // n nilpotent: the lower central series reaches zero
    RatMat n = rd.n_basis();
    RatMat series = n;
    int guard = 0;
    while (series.cols() > 0 && guard++ <= g.dim()) {
      std::vector<RatVec> brackets;
      for (Index i = 0; i < n.cols(); ++i)
        for (Index j = 0; j < series.cols(); ++j)
          brackets.push_back(g.bracket(RatVec(n.col(i)), RatVec(series.col(j))));
      RatMat next(g.dim(), static_cast<Index>(brackets.size()));
      for (size_t c = 0; c < brackets.size(); ++c) next.col(c) = brackets[c];
      series = exact::canonical_basis(next);
    }
    add("n-nilpotent", series.cols() == 0, "0");
  }

  {  // a + n is a subalgebra and g = k + a + n
    RatMat an = exact::subspace_sum(rd.a_basis, rd.n_basis());
    bool closed = true;
    for (Index i = 0; i < an.cols() && closed; ++i)
      for (Index j = i + 1; j < an.cols() && closed; ++j)
        closed = exact::contains(an, g.bracket(RatVec(an.col(i)), RatVec(an.col(j))));
    const bool split =
        static_cast<int>(rd.cartan.k_basis.cols() + an.cols()) == g.dim() &&
        exact::rank(exact::subspace_sum(rd.cartan.k_basis, an)) == g.dim();
    add("iwasawa", closed && split, "0");
  }
  return out;
}

}  // namespace horolab
