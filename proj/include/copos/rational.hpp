#ifndef COPOS_RATIONAL_HPP
#define COPOS_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace copos {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// Exact value of a binary64 number as a rational (every finite double is one).
Rational exact_rational(double v);

// Nearest rational with small denominator via continued fractions;
// stops when |p/q - v| <= rel_tol * |v| (absolute tol for v == 0).
Rational rationalize(double v, double rel_tol = 1e-12);

// Parses "123", "-4.75", "1e-7", "2.5e3" or "9/10" exactly.
Rational rational_from_literal(const std::string& text);

Rational pow_rational(const Rational& base, long long e);

std::string rational_to_string(const Rational& r);

}  // namespace copos

#endif
