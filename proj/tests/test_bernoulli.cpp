#include "ifs/bernoulli.hpp"
#include "ifs/errors.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace ifs;
using namespace ifs::bernoulli;
using algebraic::catalog_entry;

TEST_CASE("Fourier product basics")
{
    const auto zero = fourier_nu(Parameter(0.3, 0.4), 0.0, 25);
    CHECK(zero.value == 1.0);
    CHECK(zero.truncation_error == 0.0);

    const auto v = fourier_nu(Parameter(0.5, 0.0), std::numbers::pi, 40);
    CHECK(std::abs(v.value) <= v.truncation_error);

    // prod_{n>=0} cos(t 2^-n) = sin(2t) / (2t).
    for (const double t : {0.3, 1.0, 2.5, 7.0}) {
        const auto w = fourier_nu_auto(Parameter(0.5, 0.0), t);
        CHECK(std::abs(w.value - std::sin(2 * t) / (2 * t)) <= w.truncation_error + 1e-15);
    }
    CHECK_THROWS_AS(fourier_nu(Parameter(0.3, 0.4), 1.0, 0), PreconditionError);
}

TEST_CASE("Fourier product is bounded by one and factorizes")
{
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> coord(-0.9, 0.9), freq(-20.0, 20.0);
    int tested = 0;
    while (tested < 100) {
        const Complex l(coord(rng), coord(rng));
        if (std::abs(l) >= 0.9 || std::abs(l) < 0.2)
            continue;
        ++tested;
        const Complex xi(freq(rng), freq(rng));
        const int k = 2 + tested % 4;
        const auto whole = fourier_nu_auto(Parameter(l), xi);
        CHECK(std::abs(whole.value) <= 1.0);
        const Parameter lk(std::pow(l, k));
        double product = 1.0, error = 0.0;
        Complex shift = xi;
        for (int j = 0; j < k; ++j) {
            const auto part = fourier_nu_auto(lk, shift);
            error += part.truncation_error;
            product *= part.value;
            shift *= std::conj(l);
        }
        CHECK(std::abs(whole.value - product) <= whole.truncation_error + error + 1e-12);
    }
}

TEST_CASE("Pisot decay scan")
{
    const auto& chamfy = catalog_entry("chamfy").theta;
    const auto scan = pisot_decay_scan(chamfy, 40);
    CHECK(scan.rows[0].recurrence_value == 2.0);
    CHECK(scan.rows[0].distance == 0.0);
    const long long expected[] = {3, 1, 1, -2, -3, -4, -2, 1, 5, 7, 6};
    for (int n = 0; n <= 10; ++n)
        CHECK(scan.rows[n].power_sum == expected[n]);
    CHECK(scan.max_route_gap < 1e-6);
    CHECK(scan.rho == doctest::Approx(0.754877666247).epsilon(1e-6));

    const auto sextic = pisot_decay_scan(catalog_entry("chamfy_sextic").theta, 40);
    CHECK(sextic.rho < 1.0);
    CHECK_THROWS_AS(pisot_decay_scan(catalog_entry("twindragon").theta, 10), PreconditionError);
}

TEST_CASE("singularity witness")
{
    const auto report = singularity_witness(catalog_entry("chamfy").theta, 25);
    // Frozen high-precision values of nu_hat(2 pi) and nu_hat(2 pi conj(theta)^10).
    CHECK(report.base.value == doctest::Approx(3.995964292673254923e-5).epsilon(1e-9));
    CHECK(report.rows[10].direct == doctest::Approx(3.475399769354743441e-7).epsilon(1e-7));
    CHECK(report.max_discrepancy <= 1e-8);
    CHECK(report.floor > 0.0);
    CHECK(report.min_abs >= report.floor);
    CHECK_THROWS_AS(singularity_witness(catalog_entry("twindragon").theta, 5), PreconditionError);
    CHECK_THROWS_AS(singularity_witness(catalog_entry("smallest_pisot").theta, 5), PreconditionError);
}

TEST_CASE("Garsia separation")
{
    const auto& twin = catalog_entry("twindragon").theta;
    const auto r1 = garsia_separation(twin, 1);
    CHECK(r1.count == 2);
    CHECK(std::abs(r1.min_distance - 2.0) <= 1e-12);
    CHECK(std::abs(r1.bound - 2.0) <= 1e-12);
    const auto r2 = garsia_separation(twin, 2);
    CHECK(r2.count == 4);
    CHECK(std::abs(r2.min_distance - std::sqrt(2.0)) <= 1e-12);
    CHECK(std::abs(r2.bound - std::sqrt(2.0)) <= 1e-12);

    const auto& cubic = catalog_entry("garsia_cubic").theta;
    const auto r10 = garsia_separation(cubic, 10);
    CHECK(r10.c == doctest::Approx(2.0 * 1.14655842079 * std::sqrt(0.5213797068)).epsilon(1e-9));
    CHECK(r10.count == 1024);
    CHECK(r10.holds);

    CHECK_THROWS_AS(garsia_separation(catalog_entry("chamfy").theta, 4), PreconditionError);
    CHECK_THROWS_AS(garsia_separation(twin, 15), ResourceError);

    // Pisot reciprocals: counts recorded, never asserted beyond the trivial bound.
    const auto pisot = level_statistics(Parameter(catalog_entry("chamfy").lambda), 12, 1e-3);
    CHECK(pisot.count <= 4096);
    MESSAGE("chamfy level-12 distinct sums: " << pisot.count);
}

TEST_CASE("density histogram")
{
    const Window w{-3, 3, -3, 3};
    const auto twin = density_histogram(Parameter(0.5, 0.5), 12, w, {64, 64});
    CHECK(twin.max_ratio <= 2.0);
    CHECK(twin.mass_outside == 0.0);
    const auto single = density_histogram(Parameter(0.5, 0.5), 0, w, {64, 64});
    CHECK(single.max_ratio == doctest::Approx(1.0 / single.cell_area));
    CHECK_THROWS_AS(density_histogram(Parameter(0.5, 0.5), 15, w, {8, 8}), ResourceError);
}

TEST_CASE("transversality bound")
{
    CHECK(transversality_bound(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(transversality_bound(4) - 2.0 * std::pow(5.0, -5.0 / 8.0)) <= 1e-12);
    CHECK(transversality_bound(2) == doctest::Approx(0.6204032394014).epsilon(1e-12));
    CHECK(transversality_bound(3) == doctest::Approx(0.687364818499301).epsilon(1e-12));
    CHECK(transversality_bound(5) == doctest::Approx(0.763122488405138).epsilon(1e-12));
    for (int k = 1; k < 500; ++k)
        CHECK(transversality_bound(k + 1) > transversality_bound(k));
    CHECK(transversality_bound(100000) > 0.9999);
    CHECK_THROWS_AS(transversality_bound(0), DomainError);
}

TEST_CASE("continuous-density intervals")
{
    const auto r = continuous_density_intervals(12);
    CHECK(r.intervals[0].low == doctest::Approx(0.8408964153).epsilon(1e-10));
    CHECK(r.intervals[0].high == doctest::Approx(0.8552377681).epsilon(1e-10));
    CHECK(r.intervals[8].k == 10);
    CHECK(r.intervals[8].low == doctest::Approx(0.9659363289).epsilon(1e-10));
    CHECK(r.intervals[8].high == doctest::Approx(0.9692088571).epsilon(1e-10));
    REQUIRE(r.overlap_k);
    CHECK(*r.overlap_k == 10);
    const auto two = continuous_density_intervals(2);
    CHECK(two.intervals.size() == 1);
    CHECK_FALSE(two.overlap_k);
    CHECK_THROWS_AS(continuous_density_intervals(1), PreconditionError);
}

TEST_CASE("typical region report")
{
    const auto find = [](const nlohmann::json& report, const std::string& id) {
        for (const auto& s : report["statements"])
            if (s["id"] == id)
                return s;
        return nlohmann::json();
    };
    const auto a = typical_region_report(Parameter(0.72, 0.0));
    CHECK(find(a, "l2_density")["applies"] == true);
    CHECK(find(a, "continuous_density")["applies"] == false);
    const auto b = typical_region_report(Parameter(0.0, 0.97));
    CHECK(find(b, "continuous_density")["applies"] == true);
    const auto c = typical_region_report(Parameter(0.85, 0.0));
    CHECK(find(c, "continuous_density")["k"] == 2);
    const auto d = typical_region_report(Parameter(0.6, 0.1));
    CHECK(find(d, "dimension")["applies"] == true);
    for (const auto& s : d["statements"])
        CHECK(s["label"] == "a.e. in the annulus");
}
