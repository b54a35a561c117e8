#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace catcert {

// Arbitrary-precision rational, always canonical (lowest terms, positive
// denominator). All classical-path arithmetic goes through this type; no
// floating point enters the exact modules.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Column vector of rationals. Eigen handles the expression plumbing; the
// NumTraits come from boost/multiprecision/eigen.hpp.
using RVector = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Parses "3/4", "-1/6" or a bare integer "2". Rejects zero denominators.
Rational parse_rational(const std::string& text);

// Canonical "num/den" form ("0/1" for zero) used in all JSON payloads.
std::string format_rational(const Rational& r);

// Exact value of an IEEE double (every finite double is rational).
Rational rational_from_double_exact(double x);

// Continued-fraction approximation with denominator <= max_den.
Rational rational_approx(double x, const BigInt& max_den);

BigInt lcm(const BigInt& a, const BigInt& b);

// Least common multiple of all entry denominators (the atom count of a
// rational distribution).
BigInt common_denominator(const RVector& v);

inline Eigen::VectorXd to_double_vector(const RVector& v) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = to_double(v(i));
  return out;
}

}  // namespace catcert
