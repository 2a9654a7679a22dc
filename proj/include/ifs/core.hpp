#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ifs {

using Complex = std::complex<double>;

// The IFS parameter lambda. Operations that need lambda inside the open unit
// disc check it themselves; use in_disc() to validate once up front.
class Parameter {
public:
    constexpr Parameter() = default;
    constexpr explicit Parameter(Complex z) : value_(z) {}
    constexpr Parameter(double re, double im) : value_(re, im) {}

    // Throws DomainError unless 0 < |z| < 1.
    static Parameter in_disc(Complex z);

    constexpr Complex value() const { return value_; }
    constexpr double re() const { return value_.real(); }
    constexpr double im() const { return value_.imag(); }
    double modulus() const { return std::abs(value_); }
    double norm() const { return std::norm(value_); }

    friend constexpr bool operator==(const Parameter&, const Parameter&) = default;

private:
    Complex value_{};
};

// Throws DomainError if |lambda| >= 1, or if lambda == 0 and nonzero is requested.
void require_in_disc(Parameter lambda, bool nonzero = false);

enum class Alphabet {
    signs,   // {-1, +1}
    ternary, // {-1, 0, +1}
};

std::span<const int> alphabet_digits(Alphabet alphabet);
std::string to_string(Alphabet alphabet);

// Finite coefficient sequence. With leading_one the string d_1..d_n stands for
// 1 + sum d_k z^k; otherwise d_0..d_{n-1} stands for sum d_k z^k.
class DigitString {
public:
    DigitString() = default;
    DigitString(std::vector<int> digits, Alphabet alphabet, bool leading_one);

    std::span<const std::int8_t> digits() const { return digits_; }
    std::size_t size() const { return digits_.size(); }
    bool empty() const { return digits_.empty(); }
    Alphabet alphabet() const { return alphabet_; }
    bool leading_one() const { return leading_one_; }

    // Coefficients c_0..c_m of the represented polynomial, constant first.
    std::vector<int> coefficients() const;

    friend bool operator==(const DigitString&, const DigitString&) = default;

private:
    std::vector<std::int8_t> digits_;
    Alphabet alphabet_ = Alphabet::ternary;
    bool leading_one_ = true;
};

// Parses "[1,0,1,1,-1,-1,0,1]" (constant first, leading 1 required) into a
// ternary leading-one digit string d_1..d_n.
DigitString parse_leading_one_polynomial(const std::string& text);

struct Disc {
    Complex center;
    double radius = 0.0;
};

// Axis-aligned rectangle with vertices +-a +- ib.
struct Rectangle {
    double half_width = 0.0;
    double half_height = 0.0;

    Rectangle() = default;
    Rectangle(double a, double b);
    double area() const { return 4.0 * half_width * half_height; }
};

// Axis-aligned region of the complex plane, [re_min, re_max] x [im_min, im_max].
struct Window {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;
    double im_max = 0.0;

    bool valid() const { return re_min < re_max && im_min < im_max; }
    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    bool contains(Complex z) const
    {
        return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
    }
};

struct Resolution {
    int width = 1;
    int height = 1;
};

// Pixel geometry: column 0 is re_min, row 0 is im_max (top of the image).
struct PixelGrid {
    Window window;
    Resolution resolution;

    double dx() const { return window.width() / resolution.width; }
    double dy() const { return window.height() / resolution.height; }
    Complex center(int col, int row) const
    {
        return {window.re_min + (col + 0.5) * dx(), window.im_max - (row + 0.5) * dy()};
    }
    Window pixel(int col, int row) const
    {
        return {window.re_min + col * dx(), window.re_min + (col + 1) * dx(),
                window.im_max - (row + 1) * dy(), window.im_max - row * dy()};
    }
    // Half the pixel diagonal: every point of the pixel is within this of the center.
    double pixel_radius() const { return 0.5 * std::hypot(dx(), dy()); }
};

struct Evaluation {
    Complex value;
    double error_bound = 0.0; // absolute bound on the floating rounding error
};

// Horner evaluation (highest degree first) of the series prefix encoded by d.
Evaluation eval_prefix(const DigitString& d, Parameter lambda);

// Horner evaluation of an arbitrary coefficient list, constant first.
Evaluation eval_coefficients(std::span<const int> coefficients, Complex z);

// sum_{k>n} |lambda|^k = |lambda|^{n+1} / (1 - |lambda|), rounded upward.
double tail_bound(Parameter lambda, int n);

// Same as tail_bound with the modulus given directly; n may be -1.
double geometric_tail(double modulus, int n);

// log 2 / (-log |lambda|).
double similarity_dimension(Parameter lambda);

// Directed-rounding helpers: one ulp toward +inf / -inf.
inline double round_up(double x) { return std::nextafter(x, std::numeric_limits<double>::infinity()); }
inline double round_down(double x) { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }

// Upper bound on |z| that is safe against hypot rounding.
inline double modulus_up(Complex z) { return round_up(std::abs(z)); }
inline double modulus_down(Complex z) { return round_down(std::abs(z)); }

} // namespace ifs
