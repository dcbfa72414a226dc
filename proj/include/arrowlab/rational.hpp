#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace arrowlab {

/// Arbitrary-precision rational; the exact number type used wherever the
/// library promises exact results (probabilities, measures ratios, posterior
/// terms). Doubles are a presentation-layer conversion.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

double rational_to_double(const Rational& value);

/// "num/den" in lowest terms ("0", "1", "1/2", ...).
std::string rational_to_string(const Rational& value);

} // namespace arrowlab
