#include "horolab/liealg.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace horolab {

// ---------------------------------------------------------------------------
// AlgebraSpec
// ---------------------------------------------------------------------------

namespace {

AlgebraSpec parse_single(std::string_view s) {
  AlgebraSpec spec;
  auto fail = [&] { throw Error("unknown catalog name '" + std::string(s) + "'"); };
  if (s.size() < 3) fail();
  const std::string_view fam = s.substr(0, 2);
  std::string_view rest = s.substr(2);
  if (fam == "sl") {
    if (rest.size() < 2 || rest.back() != 'r') fail();
    rest.remove_suffix(1);
    int n = 0;
    for (char c : rest) {
      if (!isdigit(c)) fail();
      n = 10 * n + (c - '0');
    }
    spec.family = AlgebraSpec::Family::Sl;
    spec.p = n;
    return spec;
  }
  if (fam == "su" || fam == "so") {
    if (rest.size() != 2 || !isdigit(rest[0]) || !isdigit(rest[1])) fail();
    spec.family = fam == "su" ? AlgebraSpec::Family::Su : AlgebraSpec::Family::So;
    spec.p = rest[0] - '0';
    spec.q = rest[1] - '0';
    return spec;
  }
  fail();
  return spec;
}

}  // namespace

AlgebraSpec AlgebraSpec::parse_name(std::string_view name) {
  if (name.find('+') == std::string_view::npos) return parse_single(name);
  AlgebraSpec sum;
  sum.family = Family::Sum;
  size_t start = 0;
  while (start <= name.size()) {
    size_t pos = name.find('+', start);
    if (pos == std::string_view::npos) pos = name.size();
    sum.summands.push_back(parse_single(name.substr(start, pos - start)));
    start = pos + 1;
  }
  if (sum.summands.size() < 2) throw Error("direct sum needs at least two summands");
  return sum;
}

AlgebraSpec AlgebraSpec::from_json(const nlohmann::json& j) {
  AlgebraSpec spec;
  const std::string fam = j.at("algebra").get<std::string>();
  if (fam == "sum") {
    spec.family = Family::Sum;
    for (const auto& s : j.at("summands")) spec.summands.push_back(from_json(s));
    if (spec.summands.size() < 2) throw Error("direct sum needs at least two summands");
    return spec;
  }
  const auto& params = j.at("params");
  if (fam == "sl") {
    spec.family = Family::Sl;
    spec.p = params.at("n").get<int>();
  } else if (fam == "su" || fam == "so") {
    spec.family = fam == "su" ? Family::Su : Family::So;
    spec.p = params.at("p").get<int>();
    spec.q = params.at("q").get<int>();
  } else {
    throw Error("unknown catalog name '" + fam + "'");
  }
  return spec;
}

nlohmann::json AlgebraSpec::to_json() const {
  nlohmann::json j;
  switch (family) {
    case Family::Sl:
      j["algebra"] = "sl";
      j["params"] = {{"n", p}};
      break;
    case Family::Su:
      j["algebra"] = "su";
      j["params"] = {{"p", p}, {"q", q}};
      break;
    case Family::So:
      j["algebra"] = "so";
      j["params"] = {{"p", p}, {"q", q}};
      break;
    case Family::Sum: {
      j["algebra"] = "sum";
      auto arr = nlohmann::json::array();
      for (const auto& s : summands) arr.push_back(s.to_json());
      j["summands"] = arr;
      break;
    }
    case Family::Derived:
      j["algebra"] = "derived";
      break;
  }
  return j;
}

std::string AlgebraSpec::canonical_name() const {
  switch (family) {
    case Family::Sl:
      return "sl" + std::to_string(p) + "r";
    case Family::Su:
      return "su" + std::to_string(p) + std::to_string(q);
    case Family::So:
      return "so" + std::to_string(p) + std::to_string(q);
    case Family::Sum: {
      std::string out;
      for (size_t i = 0; i < summands.size(); ++i) {
        if (i) out += "+";
        out += summands[i].canonical_name();
      }
      return out;
    }
    case Family::Derived:
      return "derived";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// StructureConstants
// ---------------------------------------------------------------------------

void StructureConstants::set_pair_bracket(int i, int j, SparseVec v) {
  table_[i * dim_ + j] = std::move(v);
}

RatVec StructureConstants::bracket(const RatVec& x, const RatVec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error("bracket: dimension mismatch");
  RatVec out = RatVec::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j) == 0) continue;
      const Rat f = x(i) * y(j);
      for (const auto& [k, c] : pair_bracket(i, j)) out(k) += f * c;
    }
  }
  return out;
}

Eigen::VectorXd StructureConstants::bracket(const Eigen::VectorXd& x,
                                            const Eigen::VectorXd& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw Error("bracket: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (y(j) == 0.0) continue;
      const double f = x(i) * y(j);
      for (const auto& [k, c] : pair_bracket(i, j)) out(k) += f * to_double(c);
    }
  }
  return out;
}

void StructureConstants::apply_ad_basis(int i, const SparseVec& v, RatVec& acc) const {
  for (const auto& [j, c] : v)
    for (const auto& [k, d] : pair_bracket(i, j)) acc(k) += c * d;
}

RatMat StructureConstants::ad(int i) const {
  RatMat m = RatMat::Zero(dim_, dim_);
  for (int j = 0; j < dim_; ++j)
    for (const auto& [k, c] : pair_bracket(i, j)) m(k, j) = c;
  return m;
}

RatMat StructureConstants::ad(const RatVec& x) const {
  RatMat m = RatMat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    if (x(i) == 0) continue;
    for (int j = 0; j < dim_; ++j)
      for (const auto& [k, c] : pair_bracket(i, j)) m(k, j) += x(i) * c;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Exact expansion over the basis
// ---------------------------------------------------------------------------

struct MatrixLieAlgebra::SolverData {
  std::vector<Index> pivot_rows;  // rows of the flattened basis stack
  RatMat inverse;                 // inverse of the pivot-row square block
  RatMat stack;                   // rep_dim^2 x dim flattened basis
};

namespace {

RatVec flatten(const RatMat& m) {
  RatVec v(m.rows() * m.cols());
  Index k = 0;
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
  return v;
}

std::shared_ptr<const MatrixLieAlgebra::SolverData> make_solver(
    const std::vector<RatMat>& basis) {
  auto data = std::make_shared<MatrixLieAlgebra::SolverData>();
  const Index dim = static_cast<Index>(basis.size());
  const Index flat = basis.empty() ? 0 : basis[0].size();
  data->stack.resize(flat, dim);
  for (Index j = 0; j < dim; ++j) data->stack.col(j) = flatten(basis[j]);

  // Select dim independent rows by row-reducing the transpose.
  RatMat work = data->stack;
  std::vector<Index> rows;
  Index r = 0;
  for (Index i = 0; i < flat && r < dim; ++i) {
    Index lead = -1;
    for (Index c = 0; c < dim; ++c)
      if (work(i, c) != 0) { lead = c; break; }
    if (lead < 0) continue;
    rows.push_back(i);
    const Rat inv = Rat(1) / work(i, lead);
    for (Index ii = i + 1; ii < flat; ++ii) {
      if (work(ii, lead) == 0) continue;
      const Rat f = work(ii, lead) * inv;
      for (Index c = 0; c < dim; ++c) work(ii, c) -= f * work(i, c);
    }
    ++r;
  }
  if (static_cast<Index>(rows.size()) != dim)
    throw Error("basis matrices are linearly dependent");
  RatMat block(dim, dim);
  for (Index i = 0; i < dim; ++i) block.row(i) = data->stack.row(rows[i]);
  auto inv = exact::solve_multi(block, RatMat(RatMat::Identity(dim, dim)));
  if (!inv) throw Error("basis solver: singular pivot block");
  data->pivot_rows = std::move(rows);
  data->inverse = std::move(*inv);
  return data;
}

}  // namespace

RatMat MatrixLieAlgebra::rep_of(const RatVec& coords) const {
  RatMat m = RatMat::Zero(rep_dim, rep_dim);
  for (Index i = 0; i < coords.size(); ++i)
    if (coords(i) != 0) m += coords(i) * basis[i];
  return m;
}

RatVec MatrixLieAlgebra::coords_of(const RatMat& rep_matrix) const {
  const RatVec flat = flatten(rep_matrix);
  RatVec rhs(dim());
  for (Index i = 0; i < dim(); ++i) rhs(i) = flat(solver->pivot_rows[i]);
  RatVec coords = solver->inverse * rhs;
  if (!eq_exact(RatVec(solver->stack * coords), flat))
    throw Error(name + ": matrix outside the algebra span");
  return coords;
}

Rat MatrixLieAlgebra::killing_form(const RatVec& x, const RatVec& y) const {
  return (x.transpose() * killing * y)(0, 0);
}

Rat MatrixLieAlgebra::btheta_form(const RatVec& x, const RatVec& y) const {
  return -(x.transpose() * killing * (theta * y))(0, 0);
}

// ---------------------------------------------------------------------------
// Catalog constructions
// ---------------------------------------------------------------------------

namespace {

RatMat unit_matrix(int n, int i, int j) {
  RatMat m = RatMat::Zero(n, n);
  m(i, j) = 1;
  return m;
}

/// Real encoding of the complex matrix re + i*im as [[re, -im], [im, re]].
RatMat encode_complex(const RatMat& re, const RatMat& im) {
  const Index m = re.rows();
  RatMat out = RatMat::Zero(2 * m, 2 * m);
  out.topLeftCorner(m, m) = re;
  out.bottomRightCorner(m, m) = re;
  out.topRightCorner(m, m) = -im;
  out.bottomLeftCorner(m, m) = im;
  return out;
}

struct RawCatalog {
  std::vector<RatMat> basis;
  int rep_dim = 0;
  int a_dim = 0;  // the first a_dim basis vectors span the catalog a
  RatVec hreg;    // in a-basis coordinates
  std::optional<RatMat> complex_structure;
};

RawCatalog raw_sl(int n) {
  if (n < 2) throw Error("sl(n,R) requires n >= 2");
  RawCatalog raw;
  raw.rep_dim = n;
  raw.a_dim = n - 1;
  for (int k = 0; k + 1 < n; ++k)
    raw.basis.push_back(unit_matrix(n, k, k) - unit_matrix(n, k + 1, k + 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) raw.basis.push_back(unit_matrix(n, i, j));
  // H_reg = diag(n-1, n-3, ..., 1-n): strictly decreasing entries.
  raw.hreg.resize(n - 1);
  Rat partial = 0;
  for (int k = 0; k + 1 < n; ++k) {
    partial += Rat(n - 1 - 2 * k);
    raw.hreg(k) = partial;
  }
  return raw;
}

RawCatalog raw_su(int p, int q) {
  if (q < 1) throw Error("su(" + std::to_string(p) + ",0) is compact: rejected");
  if (p < q) throw Error("su(p,q) requires p >= q (swap the parameters)");
  const int m = p + q;
  RawCatalog raw;
  raw.rep_dim = 2 * m;
  raw.a_dim = q;
  RatMat zero = RatMat::Zero(m, m);
  auto push = [&](const RatMat& re, const RatMat& im) {
    raw.basis.push_back(encode_complex(re, im));
  };
  // Maximal abelian a: real symmetric cross elements E_{i,p+i} + E_{p+i,i}.
  for (int i = 0; i < q; ++i)
    push(unit_matrix(m, i, p + i) + unit_matrix(m, p + i, i), zero);
  // Trace-zero imaginary diagonal.
  for (int k = 0; k + 1 < m; ++k)
    push(zero, unit_matrix(m, k, k) - unit_matrix(m, k + 1, k + 1));
  // Anti-Hermitian pairs within each diagonal block.
  auto block_pairs = [&](int lo, int hi) {
    for (int a = lo; a < hi; ++a)
      for (int b = a + 1; b < hi; ++b) {
        push(unit_matrix(m, a, b) - unit_matrix(m, b, a), zero);
        push(zero, unit_matrix(m, a, b) + unit_matrix(m, b, a));
      }
  };
  block_pairs(0, p);
  block_pairs(p, m);
  // Hermitian cross block.
  for (int a = 0; a < p; ++a)
    for (int b = p; b < m; ++b) {
      if (b - p != a)  // (i, p+i) real part already listed in a
        push(unit_matrix(m, a, b) + unit_matrix(m, b, a), zero);
      push(zero, unit_matrix(m, a, b) - unit_matrix(m, b, a));
    }
  raw.hreg.resize(q);
  for (int i = 0; i < q; ++i) raw.hreg(i) = Rat(2 * (q - i) - 1);
  raw.complex_structure = encode_complex(zero, RatMat(RatMat::Identity(m, m)));
  return raw;
}

RawCatalog raw_so(int p, int q) {
  if (q < 1) throw Error("so(" + std::to_string(p) + ",0) is compact: rejected");
  if (p < q) throw Error("so(p,q) requires p >= q (swap the parameters)");
  if (p + q < 3) throw Error("so(1,1) is abelian, not semisimple: rejected");
  const int m = p + q;
  RawCatalog raw;
  raw.rep_dim = m;
  raw.a_dim = q;
  for (int i = 0; i < q; ++i)
    raw.basis.push_back(unit_matrix(m, i, p + i) + unit_matrix(m, p + i, i));
  auto skew_block = [&](int lo, int hi) {
    for (int a = lo; a < hi; ++a)
      for (int b = a + 1; b < hi; ++b)
        raw.basis.push_back(unit_matrix(m, a, b) - unit_matrix(m, b, a));
  };
  skew_block(0, p);
  skew_block(p, m);
  for (int a = 0; a < p; ++a)
    for (int b = p; b < m; ++b)
      if (b - p != a)
        raw.basis.push_back(unit_matrix(m, a, b) + unit_matrix(m, b, a));
  raw.hreg.resize(q);
  for (int i = 0; i < q; ++i) raw.hreg(i) = Rat(2 * (q - i) - 1);
  return raw;
}

RawCatalog raw_catalog(const AlgebraSpec& spec, std::vector<int>& tags) {
  if (spec.family == AlgebraSpec::Family::Sum) {
    std::vector<RawCatalog> parts;
    for (const auto& s : spec.summands) {
      std::vector<int> sub_tags;
      parts.push_back(raw_catalog(s, sub_tags));
      if (parts.back().complex_structure)
        parts.back().complex_structure.reset();  // J is only kept for irreducible su
    }
    RawCatalog sum;
    for (const auto& part : parts) sum.rep_dim += part.rep_dim;
    int offset = 0, summand = 0;
    // a-blocks first so the catalog a stays an initial segment of the basis.
    std::vector<RatVec> hregs;
    for (const auto& part : parts) {
      for (int i = 0; i < part.a_dim; ++i) {
        RatMat big = RatMat::Zero(sum.rep_dim, sum.rep_dim);
        big.block(offset, offset, part.rep_dim, part.rep_dim) = part.basis[i];
        sum.basis.push_back(big);
        tags.push_back(summand);
      }
      sum.a_dim += part.a_dim;
      offset += part.rep_dim;
      ++summand;
    }
    offset = 0;
    summand = 0;
    for (const auto& part : parts) {
      for (int i = part.a_dim; i < static_cast<int>(part.basis.size()); ++i) {
        RatMat big = RatMat::Zero(sum.rep_dim, sum.rep_dim);
        big.block(offset, offset, part.rep_dim, part.rep_dim) = part.basis[i];
        sum.basis.push_back(big);
        tags.push_back(summand);
      }
      offset += part.rep_dim;
      ++summand;
    }
    sum.hreg.resize(sum.a_dim);
    Index at = 0;
    for (const auto& part : parts)
      for (Index i = 0; i < part.hreg.size(); ++i) sum.hreg(at++) = part.hreg(i);
    return sum;
  }
  RawCatalog raw;
  switch (spec.family) {
    case AlgebraSpec::Family::Sl: raw = raw_sl(spec.p); break;
    case AlgebraSpec::Family::Su: raw = raw_su(spec.p, spec.q); break;
    case AlgebraSpec::Family::So: raw = raw_so(spec.p, spec.q); break;
    default: throw Error("unreachable");
  }
  tags.assign(raw.basis.size(), 0);
  return raw;
}

StructureConstants compute_structure_constants(const MatrixLieAlgebra& g) {
  const int d = g.dim();
  StructureConstants sc(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i == j) continue;
      RatMat br = g.basis[i] * g.basis[j] - g.basis[j] * g.basis[i];
      RatVec coords = g.coords_of(br);
      StructureConstants::SparseVec sparse;
      for (int k = 0; k < d; ++k)
        if (coords(k) != 0) sparse.emplace_back(k, coords(k));
      sc.set_pair_bracket(i, j, std::move(sparse));
    }
  return sc;
}

RatMat compute_killing(const StructureConstants& sc) {
  const int d = sc.dim();
  std::vector<RatMat> ads;
  ads.reserve(d);
  for (int i = 0; i < d; ++i) ads.push_back(sc.ad(i));
  RatMat b = RatMat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rat tr = 0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          const Rat& x = ads[i](k, l);
          if (x == 0) continue;
          const Rat& y = ads[j](l, k);
          if (y == 0) continue;
          tr += x * y;
        }
      b(i, j) = tr;
      b(j, i) = tr;
    }
  return b;
}

MatrixLieAlgebra finish_build(std::string name, AlgebraSpec spec,
                              std::vector<RatMat> basis, int rep_dim,
                              RatMat catalog_a, RatVec hreg,
                              std::vector<int> tags,
                              std::optional<RatMat> complex_structure,
                              std::optional<RatMat> theta_coords) {
  MatrixLieAlgebra g;
  g.name = std::move(name);
  g.spec = std::move(spec);
  g.rep_dim = rep_dim;
  g.basis = std::move(basis);
  g.catalog_a = std::move(catalog_a);
  g.catalog_hreg = std::move(hreg);
  g.summand_tag = std::move(tags);
  g.complex_structure = std::move(complex_structure);
  g.solver = make_solver(g.basis);
  g.sc = compute_structure_constants(g);
  g.killing = compute_killing(g.sc);
  if (theta_coords) {
    g.theta = std::move(*theta_coords);
  } else {
    g.theta.resize(g.dim(), g.dim());
    for (int i = 0; i < g.dim(); ++i)
      g.theta.col(i) = g.coords_of(RatMat(-g.basis[i].transpose()));
  }
  if (exact::determinant(g.killing) == 0)
    throw Error(g.name + ": Killing form degenerate (algebra not semisimple)");
  return g;
}

}  // namespace

MatrixLieAlgebra build_from_catalog(const AlgebraSpec& spec) {
  std::vector<int> tags;
  RawCatalog raw = raw_catalog(spec, tags);
  const int dim = static_cast<int>(raw.basis.size());
  RatMat a = RatMat::Zero(dim, raw.a_dim);
  for (int i = 0; i < raw.a_dim; ++i) a(i, i) = 1;
  return finish_build(spec.canonical_name(), spec, std::move(raw.basis),
                      raw.rep_dim, std::move(a), std::move(raw.hreg),
                      std::move(tags), std::move(raw.complex_structure),
                      std::nullopt);
}

MatrixLieAlgebra build_from_basis(std::string name, std::vector<RatMat> basis,
                                  const RatMat& theta_coords, RatMat catalog_a,
                                  RatVec catalog_hreg) {
  AlgebraSpec spec;
  spec.family = AlgebraSpec::Family::Derived;
  const int rep_dim = basis.empty() ? 0 : static_cast<int>(basis[0].rows());
  std::vector<int> tags(basis.size(), 0);
  MatrixLieAlgebra g =
      finish_build(std::move(name), std::move(spec), std::move(basis), rep_dim,
                   std::move(catalog_a), std::move(catalog_hreg),
                   std::move(tags), std::nullopt, RatMat(theta_coords));
  return g;
}

CartanDecomposition cartan_decompose(const MatrixLieAlgebra& g) {
  const int d = g.dim();
  RatMat id = RatMat::Identity(d, d);
  if (!eq_exact(RatMat(g.theta * g.theta), id))
    throw Error(g.name + ": theta fails the involution check");
  CartanDecomposition cd;
  cd.k_basis = exact::kernel(RatMat(g.theta - id));
  cd.p_basis = exact::kernel(RatMat(g.theta + id));
  if (cd.k_basis.cols() + cd.p_basis.cols() != d)
    throw Error(g.name + ": theta eigenspaces do not span");
  return cd;
}

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

namespace {

RatVec basis_bracket_dense(const StructureConstants& sc, int i, int j) {
  RatVec v = RatVec::Zero(sc.dim());
  for (const auto& [k, c] : sc.pair_bracket(i, j)) v(k) = c;
  return v;
}

}  // namespace

std::vector<CheckItem> structural_checks(const MatrixLieAlgebra& g,
                                         const CartanDecomposition& cd) {
  std::vector<CheckItem> out;
  const int d = g.dim();
  auto add = [&](const std::string& id, bool pass, const std::string& detail) {
    out.push_back({id, pass, detail});
  };

  {  // c_{ij}^k = -c_{ji}^k
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      for (int j = 0; j < d && ok; ++j)
        ok = eq_exact(basis_bracket_dense(g.sc, i, j), RatVec(-basis_bracket_dense(g.sc, j, i)));
    add("antisymmetry", ok, ok ? "0" : "bracket table not antisymmetric");
  }

  {  // Jacobi on ordered triples i<j<k (covers all triples by antisymmetry).
    bool ok = true;
    std::string witness = "0";
    for (int i = 0; i < d && ok; ++i)
      for (int j = i + 1; j < d && ok; ++j)
        for (int k = j + 1; k < d && ok; ++k) {
          RatVec acc = RatVec::Zero(d);
          g.sc.apply_ad_basis(i, g.sc.pair_bracket(j, k), acc);
          g.sc.apply_ad_basis(j, g.sc.pair_bracket(k, i), acc);
          g.sc.apply_ad_basis(k, g.sc.pair_bracket(i, j), acc);
          if (!is_zero_exact(acc)) {
            ok = false;
            witness = "triple (" + std::to_string(i) + "," + std::to_string(j) +
                      "," + std::to_string(k) + ")";
          }
        }
    add("jacobi", ok, witness);
  }

  add("killing-symmetric", eq_exact(g.killing, RatMat(g.killing.transpose())), "0");

  {  // B([x,y],z) = -B(y,[x,z])  <=>  ad_i^T B + B ad_i = 0
    bool ok = true;
    for (int i = 0; i < d && ok; ++i) {
      RatMat adi = g.sc.ad(i);
      ok = is_zero_exact(RatMat(adi.transpose() * g.killing + g.killing * adi));
    }
    add("killing-ad-invariant", ok, "0");
  }

  add("killing-nondegenerate", exact::determinant(g.killing) != 0, "0");
  add("theta-involution", eq_exact(RatMat(g.theta * g.theta), RatMat(RatMat::Identity(d, d))), "0");

  {  // theta[x,y] = [theta x, theta y]
    bool ok = true;
    for (int i = 0; i < d && ok; ++i)
      for (int j = i + 1; j < d && ok; ++j) {
        RatVec lhs = g.theta * basis_bracket_dense(g.sc, i, j);
        RatVec rhs = g.sc.bracket(RatVec(g.theta.col(i)), RatVec(g.theta.col(j)));
        ok = eq_exact(lhs, rhs);
      }
    add("theta-automorphism", ok, "0");
  }

  {
    RatMat btheta = -g.killing * g.theta;
    bool sym = eq_exact(btheta, RatMat(btheta.transpose()));
    add("btheta-positive-definite", sym && exact::positive_definite(btheta), "0");
  }

  {  // Cartan decomposition invariants
    const RatMat& k = cd.k_basis;
    const RatMat& p = cd.p_basis;
    add("cartan-dim-split", k.cols() + p.cols() == d,
        "dim k = " + std::to_string(k.cols()) + ", dim p = " + std::to_string(p.cols()));
    auto bracket_into = [&](const RatMat& a, const RatMat& b, const RatMat& target) {
      for (Index i = 0; i < a.cols(); ++i)
        for (Index j = 0; j < b.cols(); ++j) {
          RatVec br = g.sc.bracket(RatVec(a.col(i)), RatVec(b.col(j)));
          if (!exact::contains(target, br)) return false;
        }
      return true;
    };
    add("cartan-kk-in-k", bracket_into(k, k, k), "0");
    add("cartan-kp-in-p", bracket_into(k, p, p), "0");
    add("cartan-pp-in-k", bracket_into(p, p, k), "0");
    RatMat bk = k.transpose() * g.killing * k;
    RatMat bp = p.transpose() * g.killing * p;
    add("killing-negative-on-k", exact::positive_definite(RatMat(-bk)), "0");
    add("killing-positive-on-p", exact::positive_definite(bp), "0");
  }

  if (g.spec.family != AlgebraSpec::Family::Derived) {
    bool ok = true;
    try {
      killing_trace_ratio(g);
    } catch (const Error&) {
      ok = false;
    }
    add("killing-trace-ratio-constant", ok, "0");
  }
  return out;
}

Rat killing_trace_ratio(const MatrixLieAlgebra& g) {
  const int d = g.dim();
  std::map<int, Rat> ratio_by_summand;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      Rat t = (g.basis[i] * g.basis[j]).trace();
      const Rat b = g.killing(i, j);
      if (g.summand_tag[i] != g.summand_tag[j]) {
        if (t != 0 || b != 0)
          throw Error("killing_trace_ratio: cross-summand pairing nonzero");
        continue;
      }
      if (t == 0) {
        if (b != 0) throw Error("killing_trace_ratio: ratio not constant");
        continue;
      }
      const Rat r = b / t;
      auto [it, inserted] = ratio_by_summand.emplace(g.summand_tag[i], r);
      if (!inserted && it->second != r)
        throw Error("killing_trace_ratio: ratio not constant");
    }
  if (ratio_by_summand.empty()) throw Error("killing_trace_ratio: trace form vanishes");
  return ratio_by_summand.begin()->second;
}

}  // namespace horolab
