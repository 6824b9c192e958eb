#include "horolab/rational.hpp"

namespace horolab {

Rat rat_from_string(std::string_view s) {
  if (s.empty()) throw Error("empty rational literal");
  try {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rat(Int(std::string(s)));
    Int num(std::string(s.substr(0, slash)));
    Int den(std::string(s.substr(slash + 1)));
    if (den == 0) throw Error("zero denominator in rational literal");
    return Rat(num) / Rat(den);
  } catch (const std::exception& e) {
    throw Error("bad rational literal '" + std::string(s) + "': " + e.what());
  }
}

std::string rat_to_string(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

Int lcm_denominators(const RatMat& m) {
  Int l = 1;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) l = boost::multiprecision::lcm(l, rat_den(m(i, j)));
  return l;
}

RatMat rat_mat(std::initializer_list<std::initializer_list<Rat>> rows) {
  RatMat m(static_cast<Index>(rows.size()),
           rows.size() ? static_cast<Index>(rows.begin()->size()) : 0);
  Index i = 0;
  for (const auto& row : rows) {
    Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

}  // namespace horolab
