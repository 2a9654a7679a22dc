#include "ifs/algebraic.hpp"
#include "ifs/errors.hpp"

#include <doctest.h>

using namespace ifs;
using namespace ifs::algebraic;

TEST_CASE("parsing and printing")
{
    const auto p = IntPolynomial::parse("z^3 - z^2 + 1");
    CHECK(p.coefficients() == std::vector<std::int64_t>{1, 0, -1, 1});
    CHECK(IntPolynomial::parse("[1,0,-1,1]") == p);
    CHECK(p.to_string() == "z^3 - z^2 + 1");
    CHECK(IntPolynomial::parse("x^2 - 2*x + 2").to_string() == "z^2 - 2z + 2");
    CHECK(IntPolynomial::parse("-2 + 3z^4").coefficients() == std::vector<std::int64_t>{-2, 0, 0, 0, 3});
    CHECK_THROWS_AS(IntPolynomial::parse("z^ + 1"), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("hello"), ParseError);
    CHECK_THROWS_AS(IntPolynomial::parse("[3]"), PreconditionError);
}

TEST_CASE("root finding examples")
{
    const auto twin = find_roots(IntPolynomial::parse("z^2 - 2z + 2"));
    REQUIRE(twin.size() == 2);
    CHECK(twin[0].value == Complex(1.0, -1.0));
    CHECK(twin[1].value == Complex(1.0, 1.0));

    const auto alpha = find_roots(IntPolynomial::parse("z^3 - z - 1"));
    CHECK(std::abs(alpha[0].value) == doctest::Approx(0.868836961833).epsilon(1e-11));
    CHECK(alpha[2].value.real() == doctest::Approx(1.32471795724).epsilon(1e-11));
    CHECK(alpha[2].value.imag() == 0.0);

    const auto chamfy = find_roots(IntPolynomial::parse("z^3 - z^2 + 1"));
    CHECK(chamfy[0].value.real() == doctest::Approx(-0.754877666247).epsilon(1e-11));
    CHECK(std::abs(chamfy[2].value) == doctest::Approx(1.15096392526).epsilon(1e-11));
}

TEST_CASE("root invariants: residuals, Vieta and conjugates")
{
    for (const char* text : {"z^3 - z^2 + 1", "z^6 - z^2 + 1", "z^3 - z - 2", "z^5 - z^3 - 2", "z^10 - z^4 - 2",
                             "z^8 + 3z^5 - z + 7", "z^4 - 2z^2 + 1", "z^24 - z - 1"}) {
        const auto p = IntPolynomial::parse(text);
        const auto roots = find_roots(p);
        REQUIRE(roots.size() == static_cast<std::size_t>(p.degree()));
        double product = 1.0;
        for (const auto& r : roots) {
            CHECK(r.residual <= 1e-10);
            product *= std::abs(r.value);
            if (r.value.imag() != 0.0) {
                bool partner = false;
                for (const auto& s : roots)
                    partner = partner || (s.value == std::conj(r.value) &&
                                          std::abs(std::abs(s.value) - std::abs(r.value)) <= 1e-12);
                CHECK(partner);
            }
        }
        CHECK(product == doctest::Approx(std::abs(static_cast<double>(p.constant()))).epsilon(1e-9));
    }
    CHECK_THROWS_AS(find_roots(IntPolynomial(std::vector<std::int64_t>(27, 1))), ResourceError);
}

TEST_CASE("irreducibility")
{
    CHECK(is_irreducible(IntPolynomial::parse("z^2 - 2z + 2")) == Irreducibility::irreducible);
    CHECK(is_irreducible(IntPolynomial::parse("z^4 - 1")) == Irreducibility::reducible);
    CHECK(is_irreducible(IntPolynomial::parse("z^6 - z^2 + 1")) == Irreducibility::irreducible);
    CHECK(is_irreducible(IntPolynomial::parse("z^4 + 4")) == Irreducibility::reducible); // (z^2+2z+2)(z^2-2z+2)
    CHECK(is_irreducible(IntPolynomial::parse("z^6 + z^3 + 1")) == Irreducibility::irreducible);
    CHECK_THROWS_AS(is_irreducible(IntPolynomial::parse("2z^2 + 1")), PreconditionError);
    CHECK(is_irreducible(IntPolynomial::parse("z^4 + z^3 + z + 1"), 1) == Irreducibility::reducible);
}

TEST_CASE("products of small polynomials are found reducible")
{
    const auto multiply = [](const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
        std::vector<std::int64_t> out(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                out[i + j] += a[i] * b[j];
        return out;
    };
    const std::vector<std::vector<std::int64_t>> factors = {
        {-1, -1, 0, 1}, {1, 0, -1, 1}, {2, -2, 1}, {1, 1, 1}, {-2, -1, 0, 1}, {1, 0, -1, 0, 0, 0, 1}};
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = i; j < factors.size(); ++j)
            CHECK(is_irreducible(IntPolynomial(multiply(factors[i], factors[j]))) == Irreducibility::reducible);
}

TEST_CASE("classification examples")
{
    const auto chamfy = make_algebraic(IntPolynomial::parse("z^3 - z^2 + 1"), {std::nullopt, Complex(0.88, -0.74)});
    const auto c1 = classify(chamfy);
    CHECK(c1.kind == NumberKind::complex_pisot);
    CHECK(c1.modulus == doctest::Approx(1.15096).epsilon(1e-5));
    CHECK(c1.pisot_theorem);

    const auto twin = make_algebraic(IntPolynomial::parse("z^2 - 2z + 2"), {std::nullopt, Complex(1.0, 1.0)});
    const auto c2 = classify(twin);
    CHECK(c2.kind == NumberKind::complex_garsia);
    CHECK(c2.garsia_theorem);

    const auto cubic = make_algebraic(IntPolynomial::parse("z^3 - z - 2"), {std::nullopt, Complex(-0.76, 0.86)});
    const auto c3 = classify(cubic);
    CHECK(c3.kind == NumberKind::complex_garsia);
    CHECK(c3.modulus == doctest::Approx(1.14655842079).epsilon(1e-10));
    CHECK(c3.constant_pm2);

    const auto root2 = make_algebraic(IntPolynomial::parse("z^2 - 2"), {1, std::nullopt});
    const auto c4 = classify(root2);
    CHECK(c4.kind == NumberKind::real_garsia);
    CHECK(c4.garsia_theorem);

    const auto alpha = make_algebraic(IntPolynomial::parse("z^3 - z - 1"), {2, std::nullopt});
    CHECK(classify(alpha).kind == NumberKind::real_pisot);
    const auto inner = make_algebraic(IntPolynomial::parse("z^3 - z - 1"), {0, std::nullopt});
    CHECK(classify(inner).kind == NumberKind::neither);

    CHECK(classify(make_algebraic(IntPolynomial::parse("z^2 + 1"), {})).kind == NumberKind::indeterminate);
    CHECK(classify(make_algebraic(IntPolynomial::parse("z^4 - 1"), {})).reason == "reducible");
}

TEST_CASE("Garsia family x^{m+n} - x^n - 2")
{
    for (int m = 1; m <= 9; ++m) {
        for (int n = 1; m + n <= 10; ++n) {
            std::vector<std::int64_t> c(m + n + 1, 0);
            c[0] = -2;
            c[n] = -1;
            c[m + n] = 1;
            const IntPolynomial p(c);
            const auto roots = find_roots(p);
            bool all_outside = true;
            for (const auto& r : roots)
                all_outside = all_outside && std::abs(r.value) > 1.0 + 1e-9;
            if (!all_outside)
                continue;
            CHECK(is_irreducible(p) == Irreducibility::irreducible);
            for (std::size_t i = 0; i < roots.size(); ++i) {
                if (roots[i].value.imag() == 0.0)
                    continue;
                const auto theta = make_algebraic(p, {static_cast<int>(i), std::nullopt});
                const auto c2 = classify(theta);
                CHECK(c2.kind == NumberKind::complex_garsia);
                CHECK(c2.garsia_theorem);
            }
        }
    }
}

TEST_CASE("catalog")
{
    const auto& entries = catalog();
    CHECK(entries.size() == 9);
    const auto& twin = catalog_entry("twindragon");
    CHECK(twin.theta.root == Complex(1.0, -1.0));
    CHECK(twin.lambda == Complex(0.5, 0.5));
    CHECK(catalog_entry("chamfy").classification.kind == NumberKind::complex_pisot);
    CHECK(std::abs(catalog_entry("tame_twindragon").lambda - Complex(0.25, std::sqrt(7.0) / 4.0)) < 1e-15);
    CHECK_THROWS_AS(catalog_entry("nope"), PreconditionError);
}

TEST_CASE("classification is invariant under z -> -z")
{
    for (const auto& e : catalog()) {
        const auto q = e.theta.minpoly.negated_variable();
        const auto neg = make_algebraic(q, {std::nullopt, -e.theta.root});
        CHECK(std::abs(neg.root + e.theta.root) < 1e-12);
        const auto c = classify(neg);
        CHECK(c.kind == e.classification.kind);
        CHECK(c.garsia_theorem == e.classification.garsia_theorem);
        CHECK(c.margin == doctest::Approx(e.classification.margin).epsilon(1e-9));
    }
}

TEST_CASE("JSON report")
{
    const auto& e = catalog_entry("chamfy");
    const auto j = to_json(e.theta, e.classification);
    CHECK(j["classification"]["kind"] == "ComplexPisot");
    CHECK(j["conjugates"].size() == 3);
}
