#include "ifs/certificate_json.hpp"
#include "ifs/certificates.hpp"
#include "ifs/connectivity.hpp"
#include "ifs/errors.hpp"

#include <doctest.h>

#include <random>

using namespace ifs;
using namespace ifs::certificates;

namespace {

double halton(int index, int base)
{
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

bool in_rect(Complex z, Complex center, const Rectangle& rect)
{
    return std::abs(z.real() - center.real()) <= rect.half_width &&
           std::abs(z.imag() - center.imag()) <= rect.half_height;
}

// Fraction of lambda^{-1} R outside R u (R - 1/l) u (R + 1/l), by sampling.
double monte_carlo_uncovered(Complex lambda, const Rectangle& rect, int samples)
{
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const Complex inv = 1.0 / lambda;
    int missed = 0;
    for (int i = 0; i < samples; ++i) {
        const Complex z = inv * Complex(u(rng) * rect.half_width, u(rng) * rect.half_height);
        if (!in_rect(z, 0.0, rect) && !in_rect(z, inv, rect) && !in_rect(z, -inv, rect))
            ++missed;
    }
    return static_cast<double>(missed) / samples;
}

const DigitString example_poly({0, 1, 1, -1, -1, 0, 1}, Alphabet::ternary, true);
const Complex example_root(0.141964290284217, 0.677696073543426);

} // namespace

TEST_CASE("H membership")
{
    const Parameter corner(0.25, std::sqrt(7.0) / 4.0);
    CHECK(h_contains(corner, false));
    CHECK_FALSE(h_contains(corner, true));
    CHECK(h_contains(Parameter(0.141964, 0.677696), true));
    CHECK_FALSE(h_contains(Parameter(0.3, 0.5), false));
}

TEST_CASE("closed-form rectangles")
{
    const auto p1 = cover_params(Parameter(0.12, 0.64));
    CHECK(p1.regime == CoverRegime::ab1);
    CHECK(p1.threshold == doctest::Approx(0.07455472531).epsilon(1e-9));
    CHECK(p1.a == doctest::Approx(1.378406709).epsilon(1e-9));
    CHECK(p1.b == doctest::Approx(0.7966457023).epsilon(1e-9));

    const auto p2 = cover_params(Parameter(0.05, 0.65));
    CHECK(p2.regime == CoverRegime::ab2);
    CHECK(p2.threshold == doctest::Approx(0.07544671365).epsilon(1e-9));
    CHECK(p2.a == doctest::Approx(1.5654102).epsilon(1e-7));
    CHECK(p2.b == doctest::Approx(0.9800443459).epsilon(1e-9));

    const auto p3 = cover_params(Parameter(0.0, 1.0 / std::sqrt(3.0)));
    CHECK(p3.a == doctest::Approx(1.5));
    CHECK(p3.b == doctest::Approx(0.8660254038));

    CHECK_THROWS_AS(cover_params(Parameter(0.3, 0.5)), PreconditionError);
}

TEST_CASE("covering condition slacks")
{
    const auto s = covering_condition_slacks(Parameter(0.1, 0.68), 1.35, 0.78);
    CHECK(s.holds);
    CHECK(s.slack[0] == doctest::Approx(0.036502564).epsilon(1e-6));
    CHECK(s.slack[1] == doctest::Approx(0.072054191).epsilon(1e-6));
    CHECK(s.slack[2] == doctest::Approx(0.07234).epsilon(1e-6));
    CHECK(s.slack[3] == doctest::Approx(0.052472).epsilon(1e-6));

    const auto bad = covering_condition_slacks(Parameter(0.1, 0.68), 1.35, 0.3);
    CHECK_FALSE(bad.holds);
    CHECK(bad.slack[0] < 0.0);

    const auto p = cover_params(Parameter(0.12, 0.64));
    const auto eq = covering_condition_slacks(Parameter(0.12, 0.64), p.a, p.b);
    CHECK(eq.min() >= -1e-12);
    CHECK(std::abs(eq.slack[1]) < 1e-12);
    CHECK(std::abs(eq.slack[3]) < 1e-12);
}

TEST_CASE("geometric cover agrees with sampling")
{
    const Parameter lambda(0.1, 0.68);
    const auto good = verify_cover_geometric(lambda, Rectangle(1.35, 0.78), TranslateSet::with_zero);
    CHECK(good.covered);
    CHECK(good.residual_area <= 1e-12 * good.target_area);
    CHECK(monte_carlo_uncovered(lambda.value(), Rectangle(1.35, 0.78), 200000) == 0.0);

    const auto bad = verify_cover_geometric(lambda, Rectangle(0.5, 0.3), TranslateSet::with_zero);
    CHECK_FALSE(bad.covered);
    const double sampled = monte_carlo_uncovered(lambda.value(), Rectangle(0.5, 0.3), 1000000);
    CHECK(bad.residual_area / bad.target_area == doctest::Approx(sampled).epsilon(0.01));

    const double a = 1.0 / (1.0 - 0.9025);
    CHECK(verify_cover_geometric(Parameter(0.0, 0.95), Rectangle(a, 0.95 * a), TranslateSet::signs).covered);
}

TEST_CASE("closed forms pass both checks across H")
{
    int tested = 0;
    for (int i = 1; tested < 2000; ++i) {
        const Parameter lambda(0.25 * halton(i, 2), 0.45 + 0.27 * halton(i, 3));
        if (!h_contains(lambda, false))
            continue;
        ++tested;
        const auto cert = certify_cover(lambda);
        REQUIRE(cert.conditions);
        CHECK(cert.conditions->min() >= -1e-12);
        CHECK(cert.residual.covered);
        CHECK(cert.rect.half_width >= 1.0);
        CHECK(cert.rect.half_height > 0.5);
        CHECK(cert.rect.half_width >= cert.rect.half_height);
    }
}

TEST_CASE("both closed forms agree at the regime threshold")
{
    for (double s = 0.34; s <= 0.5; s += 0.01) {
        const double xi = s - std::sqrt(s) * std::sqrt(1.0 - s) / std::sqrt(2.0);
        const Parameter lambda(xi, std::sqrt(s - xi * xi));
        if (!h_contains(lambda, false))
            continue;
        const auto a1 = cover_params_ab1(lambda);
        const auto a2 = cover_params_ab2(lambda);
        CHECK(a1.a == doctest::Approx(a2.a).epsilon(1e-6));
        CHECK(a1.b == doctest::Approx(a2.b).epsilon(1e-6));
    }
}

TEST_CASE("Omega search")
{
    CHECK(omega_cover_params(Parameter(0.0, 0.95)).found);
    const auto s = omega_cover_params(Parameter(0.05, 0.85));
    CHECK(s.found);
    CHECK(s.certificate.valid);
    CHECK_THROWS_AS(omega_cover_params(Parameter(0.5, 0.5)), PreconditionError);
}

TEST_CASE("disc certificates")
{
    CHECK(certify_disc(example_poly, example_root, 2e-3).accepted);
    CHECK(certify_disc(example_poly, example_root, 0.0).accepted);
    const auto wide = certify_disc(example_poly, example_root, 0.05);
    CHECK_FALSE(wide.accepted);
    CHECK_FALSE(wide.failing_clause.empty());

    const double radius = max_certified_radius(example_poly, example_root);
    CHECK(radius >= 2e-3);
    CHECK(certify_disc(example_poly, example_root, radius).accepted);
    CHECK_FALSE(certify_disc(example_poly, example_root, radius * 1.001).accepted);

    const DigitString golden({-1, -1}, Alphabet::ternary, true);
    CHECK(max_certified_radius(golden, (std::sqrt(5.0) - 1.0) / 2.0) == 0.0);
    CHECK_FALSE(certify_disc(example_poly, example_root + Complex(1e-3, 0.0), 0.0).accepted);
}

TEST_CASE("accepted discs are never excluded")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double delta = 2e-3;
    int checked = 0;
    while (checked < 1000) {
        const Complex offset(u(rng) * delta, u(rng) * delta);
        if (std::abs(offset) > delta)
            continue;
        ++checked;
        CHECK(connectivity::mset_exclude(Parameter(example_root + offset), 30).kind !=
              connectivity::VerdictKind::certified_out);
    }
}

TEST_CASE("certificate JSON round trip")
{
    const auto disc = to_json(certify_disc(example_poly, example_root, 2e-3));
    CHECK(disc["schema_version"] == schema_version);
    CHECK(verify_certificate(disc).ok);
    auto tampered = disc;
    tampered["radius"] = 3e-3;
    CHECK_FALSE(verify_certificate(tampered).ok);

    CHECK(verify_certificate(to_json(certify_cover(Parameter(0.12, 0.64)))).ok);
    CHECK(verify_certificate(to_json(check_cover(Parameter(0.1, 0.68), Rectangle(1.35, 0.78), TranslateSet::with_zero))).ok);
    CHECK(verify_certificate(to_json(omega_cover_params(Parameter(0.0, 0.95)))).ok);
}
