#ifndef HOROLAB_RATIONAL_HPP
#define HOROLAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <string_view>

namespace horolab {

/// Exact arbitrary-precision rational scalar. All structural computations
/// (structure constants, Killing forms, root data, Koszul coefficients)
/// run over this type; doubles enter only in the solvable-model numerics.
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                          boost::multiprecision::et_off>;

using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int rat_den(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

/// Parses "p/q" or "p" (exact decimal integers only).
Rat rat_from_string(std::string_view s);

/// Serializes as "p/q", or "p" when the denominator is one.
std::string rat_to_string(const Rat& r);

/// Least common multiple of all entry denominators (>= 1).
Int lcm_denominators(const RatMat& m);

RatMat rat_mat(std::initializer_list<std::initializer_list<Rat>> rows);

template <typename Derived>
bool is_zero_exact(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) return false;
  return true;
}

template <typename A, typename B>
bool eq_exact(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return is_zero_exact((a - b).eval());
}

inline Eigen::MatrixXd to_double(const RatMat& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

inline Eigen::VectorXd to_double(const RatVec& v) {
  Eigen::VectorXd out(v.size());
  for (Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

}  // namespace horolab

#endif
