#include "arrowlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace arrowlab {

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) {
        throw std::domain_error("rational_from_double: value must be finite");
    }
    if (value == 0.0) {
        return Rational(0);
    }
    int exponent = 0;
    const double mantissa = std::frexp(value, &exponent);
    // 53 shifts make the mantissa integral; the exponent absorbs them.
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    exponent -= 53;
    Rational result(scaled);
    if (exponent >= 0) {
        result *= Rational(BigInt(1) << exponent);
    } else {
        result /= Rational(BigInt(1) << -exponent);
    }
    return result;
}

double rational_to_double(const Rational& value) {
    return value.convert_to<double>();
}

std::string rational_to_string(const Rational& value) {
    if (denominator(value) == 1) {
        return numerator(value).str();
    }
    return numerator(value).str() + "/" + denominator(value).str();
}

} // namespace arrowlab
