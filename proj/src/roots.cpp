#include "ifs/roots.hpp"

#include "ifs/errors.hpp"

#include <algorithm>
#include <numbers>

namespace ifs::roots {

namespace {

using LComplex = std::complex<long double>;

// p(z) and p'(z) by Horner.
template <class C>
std::pair<C, C> eval_with_derivative(std::span<const double> c, C z)
{
    C p = c.back();
    C dp = 0;
    for (std::size_t j = c.size() - 1; j-- > 0;) {
        dp = dp * z + p;
        p = p * z + static_cast<typename C::value_type>(c[j]);
    }
    return {p, dp};
}

} // namespace

double residual(std::span<const double> coefficients, Complex z)
{
    const LComplex zl(z.real(), z.imag());
    LComplex p = coefficients.back();
    for (std::size_t j = coefficients.size() - 1; j-- > 0;)
        p = p * zl + static_cast<long double>(coefficients[j]);
    return static_cast<double>(std::abs(p));
}

RootSet aberth(std::span<const double> coefficients, const RootOptions& options)
{
    if (coefficients.empty() || coefficients.back() == 0.0)
        throw PreconditionError("root finder needs a nonzero leading coefficient");

    // Zero roots from vanishing low-order coefficients.
    std::size_t zeros = 0;
    while (zeros < coefficients.size() && coefficients[zeros] == 0.0)
        ++zeros;
    const std::span<const double> c = coefficients.subspan(zeros);
    const std::size_t n = c.size() - 1;

    RootSet result;
    result.roots.assign(zeros, Complex(0.0, 0.0));
    if (n == 0) {
        result.converged = true;
        return result;
    }

    double radius = options.initial_radius;
    if (radius <= 0.0)
        radius = std::pow(std::abs(c.front() / c.back()), 1.0 / static_cast<double>(n));

    std::vector<Complex> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    std::vector<char> done(n, 0);
    constexpr double tol = 4.0 * std::numeric_limits<double>::epsilon();
    for (int it = 0; it < options.max_iterations; ++it) {
        result.iterations = it + 1;
        bool all_done = true;
        for (std::size_t k = 0; k < n; ++k) {
            if (done[k])
                continue;
            const auto [p, dp] = eval_with_derivative<Complex>(c, z[k]);
            if (p == Complex(0.0, 0.0)) {
                done[k] = 1;
                continue;
            }
            const Complex ratio = p / dp;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k)
                    repulsion += 1.0 / (z[k] - z[j]);
            const Complex step = ratio / (1.0 - ratio * repulsion);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                continue;
            z[k] -= step;
            if (std::abs(step) <= tol * std::max(1.0, std::abs(z[k])))
                done[k] = 1;
            else
                all_done = false;
        }
        if (all_done) {
            result.converged = true;
            break;
        }
    }

    for (auto& root : z) {
        LComplex zl(root.real(), root.imag());
        for (int s = 0; s < options.polish_steps; ++s) {
            const auto [p, dp] = eval_with_derivative<LComplex>(c, zl);
            if (dp == LComplex(0.0L, 0.0L))
                break;
            const LComplex next = zl - p / dp;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag()))
                break;
            // Keep the polished value only if it does not increase the residual.
            const auto [pn, dpn] = eval_with_derivative<LComplex>(c, next);
            (void)dpn;
            if (std::abs(pn) > std::abs(p))
                break;
            zl = next;
        }
        root = Complex(static_cast<double>(zl.real()), static_cast<double>(zl.imag()));
    }
    result.roots.insert(result.roots.end(), z.begin(), z.end());
    return result;
}

} // namespace ifs::roots
