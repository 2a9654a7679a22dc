#pragma once

// Exact-rational evaluation of digit-string prefixes, for validating the
// floating path on parameters with rational real and imaginary parts.

#include "ifs/core.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace ifs::exact {

using Rational = boost::multiprecision::cpp_rational;

template <class Scalar>
struct BasicComplex {
    Scalar re{};
    Scalar im{};

    friend BasicComplex operator+(const BasicComplex& a, const BasicComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BasicComplex operator-(const BasicComplex& a, const BasicComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BasicComplex operator*(const BasicComplex& a, const BasicComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const BasicComplex&, const BasicComplex&) = default;
};

using ExactComplex = BasicComplex<Rational>;

// Horner evaluation in any field; same order as the floating eval_prefix.
template <class Scalar>
BasicComplex<Scalar> eval_prefix(const DigitString& d, const BasicComplex<Scalar>& lambda)
{
    const auto c = d.coefficients();
    if (c.empty())
        return {};
    BasicComplex<Scalar> acc{Scalar(c.back()), Scalar(0)};
    for (std::size_t j = c.size() - 1; j-- > 0;)
        acc = acc * lambda + BasicComplex<Scalar>{Scalar(c[j]), Scalar(0)};
    return acc;
}

inline Complex to_double(const ExactComplex& z)
{
    return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

// Rational with the exact value of a double.
inline Rational from_double(double x)
{
    int exponent = 0;
    const double mantissa = std::frexp(x, &exponent);
    const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
    Rational r(scaled);
    exponent -= 53;
    if (exponent >= 0)
        r *= Rational(boost::multiprecision::cpp_int(1) << exponent);
    else
        r /= Rational(boost::multiprecision::cpp_int(1) << -exponent);
    return r;
}

} // namespace ifs::exact
