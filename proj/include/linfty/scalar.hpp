#ifndef LINFTY_SCALAR_HPP
#define LINFTY_SCALAR_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

#include <string>

#include "linfty/errors.hpp"

namespace linfty {

using Rational = boost::multiprecision::cpp_rational;

/// Exact coefficient: a rational number times an integer power of the formal
/// unit u.  The unit stands in for the Chern normalization constant and is
/// never evaluated numerically; coefficients of distinct u-powers may not be
/// added.  Zero is stored canonically with power 0.
class Scalar {
 public:
  Scalar() = default;
  Scalar(int n) : m_rat(n) {}
  Scalar(long n) : m_rat(n) {}
  Scalar(const Rational& r) : m_rat(r) {}
  Scalar(const Rational& r, int upow) : m_rat(r), m_upow(r == 0 ? 0 : upow) {}

  static Scalar unit(int k) { return Scalar(Rational(1), k); }

  const Rational& rat() const { return m_rat; }
  int upow() const { return m_upow; }
  bool is_zero() const { return m_rat == 0; }

  Scalar operator-() const { return Scalar(-m_rat, m_upow); }

  Scalar& operator+=(const Scalar& o) {
    if (o.m_rat == 0) return *this;
    if (m_rat == 0) {
      *this = o;
      return *this;
    }
    if (m_upow != o.m_upow)
      throw ArgumentError("cannot add scalars with distinct unit powers u^" +
                          std::to_string(m_upow) + " and u^" + std::to_string(o.m_upow));
    m_rat += o.m_rat;
    if (m_rat == 0) m_upow = 0;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) { return *this += (-o); }
  Scalar& operator*=(const Scalar& o) {
    m_rat *= o.m_rat;
    m_upow = (m_rat == 0) ? 0 : m_upow + o.m_upow;
    return *this;
  }
  Scalar& operator/=(const Scalar& o) {
    if (o.m_rat == 0) throw ArgumentError("scalar division by zero");
    m_rat /= o.m_rat;
    m_upow = (m_rat == 0) ? 0 : m_upow - o.m_upow;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.m_rat == b.m_rat && a.m_upow == b.m_upow;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Canonical text form, e.g. "3/4", "-2", "5*u^2", "1/2*u^-1".
  std::string str() const {
    std::string s = m_rat.str();
    if (m_upow != 0) s += "*u^" + std::to_string(m_upow);
    return s;
  }

 private:
  Rational m_rat = 0;
  int m_upow = 0;
};

inline Scalar rational(long num, long den) { return Scalar(Rational(num, den)); }

using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

}  // namespace linfty

namespace Eigen {
template <>
struct NumTraits<linfty::Scalar> : GenericNumTraits<linfty::Scalar> {
  typedef linfty::Scalar Real;
  typedef linfty::Scalar NonInteger;
  typedef linfty::Scalar Nested;
  typedef linfty::Scalar Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 60
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

#endif
