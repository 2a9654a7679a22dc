#include "ifs/core.hpp"

#include "ifs/errors.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <sstream>

namespace ifs {

Parameter Parameter::in_disc(Complex z)
{
    Parameter p(z);
    require_in_disc(p, true);
    return p;
}

void require_in_disc(Parameter lambda, bool nonzero)
{
    const double r = lambda.modulus();
    if (!std::isfinite(r) || r >= 1.0) {
        std::ostringstream msg;
        msg << "parameter (" << lambda.re() << "," << lambda.im() << ") must lie in the open unit disc";
        throw DomainError(msg.str());
    }
    if (nonzero && r == 0.0)
        throw DomainError("parameter must be nonzero");
}

std::span<const int> alphabet_digits(Alphabet alphabet)
{
    static constexpr std::array<int, 2> signs{-1, 1};
    static constexpr std::array<int, 3> ternary{-1, 0, 1};
    if (alphabet == Alphabet::signs)
        return signs;
    return ternary;
}

std::string to_string(Alphabet alphabet)
{
    return alphabet == Alphabet::signs ? "signs" : "ternary";
}

DigitString::DigitString(std::vector<int> digits, Alphabet alphabet, bool leading_one)
    : alphabet_(alphabet), leading_one_(leading_one)
{
    digits_.reserve(digits.size());
    for (int d : digits) {
        const bool ok = alphabet == Alphabet::signs ? (d == 1 || d == -1) : (d >= -1 && d <= 1);
        if (!ok)
            throw PreconditionError("digit " + std::to_string(d) + " is not in the " + to_string(alphabet) + " alphabet");
        digits_.push_back(static_cast<std::int8_t>(d));
    }
}

std::vector<int> DigitString::coefficients() const
{
    std::vector<int> c;
    c.reserve(digits_.size() + 1);
    if (leading_one_)
        c.push_back(1);
    for (auto d : digits_)
        c.push_back(d);
    return c;
}

DigitString parse_leading_one_polynomial(const std::string& text)
{
    std::vector<int> values;
    std::string token;
    const auto flush = [&] {
        int v = 0;
        const char* first = token.data() + (token.size() > 1 && token[0] == '+' ? 1 : 0);
        const auto [end, ec] = std::from_chars(first, token.data() + token.size(), v);
        if (ec != std::errc() || end != token.data() + token.size())
            throw ParseError("bad coefficient '" + token + "' in '" + text + "'");
        if (v < -1 || v > 1)
            throw ParseError("coefficient " + token + " in '" + text + "' is not in {-1, 0, 1}");
        values.push_back(v);
        token.clear();
    };
    for (char ch : text) {
        if (ch == '[' || ch == ']' || std::isspace(static_cast<unsigned char>(ch)))
            continue;
        if (ch == ',') {
            if (token.empty())
                throw ParseError("empty coefficient in '" + text + "'");
            flush();
            continue;
        }
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+'))
            throw ParseError("unexpected character '" + std::string(1, ch) + "' in '" + text + "'");
        token.push_back(ch);
    }
    if (!token.empty())
        flush();
    if (values.empty() || values.front() != 1)
        throw ParseError("polynomial '" + text + "' must have constant term 1");
    while (values.size() > 1 && values.back() == 0)
        values.pop_back();
    return DigitString(std::vector<int>(values.begin() + 1, values.end()), Alphabet::ternary, true);
}

Rectangle::Rectangle(double a, double b) : half_width(a), half_height(b)
{
    if (!(a > 0.0) || !(b > 0.0))
        throw PreconditionError("rectangle half-sides must be positive");
}

Evaluation eval_coefficients(std::span<const int> coefficients, Complex z)
{
    if (coefficients.empty())
        return {};
    const double r = std::abs(z);
    Complex acc = static_cast<double>(coefficients.back());
    double magnitude = std::abs(coefficients.back());
    for (std::size_t j = coefficients.size() - 1; j-- > 0;) {
        acc = acc * z + static_cast<double>(coefficients[j]);
        magnitude = magnitude * r + std::abs(coefficients[j]);
    }
    // Each Horner step costs one complex multiply (relative error <= sqrt(5) u)
    // and one add; 2 (m + 2) eps covers both with room for the magnitude sum.
    const double m = static_cast<double>(coefficients.size());
    const double eps = std::numeric_limits<double>::epsilon();
    return {acc, round_up(2.0 * (m + 2.0) * eps * magnitude * (1.0 + 4.0 * eps))};
}

Evaluation eval_prefix(const DigitString& d, Parameter lambda)
{
    const auto c = d.coefficients();
    return eval_coefficients(c, lambda.value());
}

double geometric_tail(double modulus, int n)
{
    if (!(modulus < 1.0) || modulus < 0.0)
        throw DomainError("geometric tail needs modulus in [0, 1)");
    if (n < -1)
        throw DomainError("geometric tail index must be >= -1");
    const double numerator = round_up(round_up(std::pow(modulus, n + 1)));
    const double denominator = round_down(1.0 - modulus);
    return round_up(numerator / denominator);
}

double tail_bound(Parameter lambda, int n)
{
    require_in_disc(lambda);
    if (n < 0)
        throw DomainError("tail_bound needs n >= 0");
    return geometric_tail(modulus_up(lambda.value()), n);
}

double similarity_dimension(Parameter lambda)
{
    require_in_disc(lambda, true);
    return std::log(2.0) / -std::log(lambda.modulus());
}

} // namespace ifs
