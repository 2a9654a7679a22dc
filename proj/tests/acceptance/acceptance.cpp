// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include "ifs/algebraic.hpp"
#include "ifs/attractor.hpp"
#include "ifs/bernoulli.hpp"
#include "ifs/certificates.hpp"
#include "ifs/connectivity.hpp"
#include "ifs/geometry.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace ifs;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream notes;

    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            if (pass)
                notes << what;
            else
                notes << "; " << what;
            pass = false;
        }
    }
};

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

void figure_cover(Outcome& o)
{
    const Parameter lambda(0.1, 0.68);
    const auto slacks = certificates::covering_condition_slacks(lambda, 1.35, 0.78);
    for (int i = 0; i < 4; ++i)
        o.expect(slacks.slack[i] > 0.0, "A" + std::to_string(i + 1) + " slack not positive");
    o.expect(slacks.holds, "conditions do not hold");
    const Rectangle rect(1.35, 0.78);
    const auto geo = certificates::verify_cover_geometric(lambda, rect, certificates::TranslateSet::with_zero);
    o.expect(geo.residual_area <= 1e-12 * rect.area(), "geometric residual too large");
}

void worked_example(Outcome& o)
{
    const Complex target(0.141964, 0.677696);
    const auto roots = connectivity::m0_roots(7, Disc{target, 0.01});
    const DigitString poly({0, 1, 1, -1, -1, 0, 1}, Alphabet::ternary, true);
    const connectivity::M0Root* hit = nullptr;
    for (const auto& r : roots)
        if (r.polynomial == poly && std::abs(r.root - target) <= 1e-4)
            hit = &r;
    o.expect(hit != nullptr, "root of 1+z^2+z^3-z^4-z^5+z^7 not found");
    if (!hit)
        return;
    o.expect(certificates::certify_disc(poly, hit->root, 2e-3).accepted, "delta = 2e-3 rejected");
    o.expect(certificates::max_certified_radius(poly, hit->root) >= 2e-3, "max certified radius below 2e-3");
}

void cover_property(Outcome& o)
{
    int tested = 0, failures = 0;
    for (int i = 1; tested < 10000; ++i) {
        const Parameter lambda(0.25 * halton(i, 2), 0.45 + 0.27 * halton(i, 3));
        if (!certificates::h_contains(lambda, false))
            continue;
        ++tested;
        const auto p = certificates::cover_params(lambda);
        const auto slacks = certificates::covering_condition_slacks(lambda, p.a, p.b);
        const auto geo = certificates::verify_cover_geometric(lambda, Rectangle(p.a, p.b),
                                                              certificates::TranslateSet::with_zero);
        const bool ok = slacks.min() >= -1e-12 && geo.covered && p.a >= 1.0 && p.b > 0.5 && p.a >= p.b;
        if (!ok && failures++ == 0) {
            std::ostringstream s;
            s << "first failure at " << lambda.re() << "+" << lambda.im() << "i";
            o.expect(false, s.str());
        }
    }
    if (failures > 1)
        o.expect(false, std::to_string(failures) + " failures in total");
}

void transversality(Outcome& o)
{
    const double r4 = 2.0 * std::pow(5.0, -5.0 / 8.0);
    o.expect(std::abs(bernoulli::transversality_bound(4) - r4) <= 1e-12, "r(4) mismatch");
    const auto report = bernoulli::typical_region_report(Parameter(0.0, 0.72));
    double low = 0.0, high = 0.0, ray = 0.0;
    for (const auto& s : report["statements"]) {
        if (s["id"] == "l2_density") {
            low = s["interval"][0];
            high = s["interval"][1];
            o.expect(s["applies"] == true, "|lambda| = 0.72 not in the L2 interval");
        }
        if (s["id"] == "continuous_density")
            ray = s["ray_threshold"];
    }
    o.expect(std::abs(low - 0.7071067) <= 1e-6, "lower endpoint 2^-1/2");
    o.expect(std::abs(high - 0.7314316) <= 1e-6, "upper endpoint 2*5^-5/8");
    o.expect(std::abs(ray - 0.9659363) <= 1e-6, "ray threshold 2^-1/20");
    const auto intervals = bernoulli::continuous_density_intervals(12);
    o.expect(intervals.overlap_k && *intervals.overlap_k == 10, "first overlap is not at k = 10");
    o.expect(std::abs(intervals.intervals[8].low - 0.9659363) <= 1e-6, "k = 10 interval start");
}

void garsia(Outcome& o)
{
    const auto& twin = algebraic::catalog_entry("twindragon").theta;
    for (int n = 1; n <= 12; ++n) {
        const auto r = bernoulli::garsia_separation(twin, n);
        const double bound = 2.0 * std::sqrt(2.0) * std::pow(2.0, -n / 2.0);
        o.expect(r.count == (std::size_t{1} << n), "1-i count at n = " + std::to_string(n));
        o.expect(r.min_distance >= bound - 1e-12, "1-i separation at n = " + std::to_string(n));
        if (n <= 2)
            o.expect(std::abs(r.min_distance - bound) <= 1e-12, "1-i equality at n = " + std::to_string(n));
    }
    const auto& cubic = algebraic::catalog_entry("garsia_cubic").theta;
    for (int n = 1; n <= 12; ++n) {
        const auto r = bernoulli::garsia_separation(cubic, n);
        o.expect(r.count == (std::size_t{1} << n), "cubic count at n = " + std::to_string(n));
        o.expect(r.holds && r.min_distance >= r.bound, "cubic separation at n = " + std::to_string(n));
    }
}

void pisot(Outcome& o)
{
    const auto& theta = algebraic::catalog_entry("chamfy").theta;
    const auto scan = bernoulli::pisot_decay_scan(theta, 40);
    o.expect(scan.max_route_gap <= 1e-6, "recurrence and floating routes disagree");
    o.expect(std::abs(scan.rho - 0.75488) <= 0.01, "fitted rho off");
    const auto w = bernoulli::singularity_witness(theta, 25);
    o.expect(w.floor > 0.0, "floor not positive");
    o.expect(w.min_abs >= w.floor, "minimum below floor");
    o.expect(w.max_discrepancy <= 1e-8, "direct and factorized disagree");
    if (o.pass)
        o.notes << "min " << w.min_abs << " >= floor " << w.floor;
}

void exclusion(Outcome& o)
{
    const Window w{0.0, 0.25, 0.6, 0.72};
    const int res = 64;
    const auto render = connectivity::render_mset(w, {res, res}, 24);
    const auto roots = connectivity::m0_roots(12, w);
    std::size_t bad = 0;
    for (const auto& r : roots) {
        // A root on a pixel edge belongs to every pixel sharing it.
        const double fx = (r.root.real() - w.re_min) / render.grid.dx();
        const double fy = (w.im_max - r.root.imag()) / render.grid.dy();
        for (int col = static_cast<int>(std::floor(fx - 1e-9)); col <= static_cast<int>(std::floor(fx + 1e-9)); ++col)
            for (int row = static_cast<int>(std::floor(fy - 1e-9)); row <= static_cast<int>(std::floor(fy + 1e-9));
                 ++row)
                if (col >= 0 && col < res && row >= 0 && row < res &&
                    render.at(col, row) == connectivity::PixelClass::out)
                    ++bad;
    }
    o.expect(bad == 0, std::to_string(bad) + " Out pixels contain an M0 root");
    for (int row = 0; row < res; ++row)
        for (int col = 0; col < res; ++col) {
            const double m = std::abs(render.grid.center(col, row));
            if (m < 0.5)
                o.expect(render.at(col, row) == connectivity::PixelClass::out, "small-modulus pixel not Out");
            if (m >= std::sqrt(0.5))
                o.expect(render.at(col, row) == connectivity::PixelClass::in, "large-modulus pixel not In");
        }
    // The window above has no pixel with |center| < 1/2. Near the origin, pixels reaching
    // past |z| = 1/2 can contain points of M such as 1/2 itself, so only pixels lying
    // inside the disc are required to be Out.
    const auto inner = connectivity::render_mset(Window{-0.5, 0.5, -0.5, 0.5}, {32, 32}, 24);
    std::size_t small = 0;
    for (int row = 0; row < 32; ++row)
        for (int col = 0; col < 32; ++col)
            if (std::abs(inner.grid.center(col, row)) + inner.grid.pixel_radius() < 0.5) {
                ++small;
                o.expect(inner.at(col, row) == connectivity::PixelClass::out, "pixel near the origin not Out");
            }
    o.expect(small > 0, "no small-modulus pixels tested");
    if (o.pass)
        o.notes << roots.size() << " roots, out/in/unknown " << render.counts.out << "/" << render.counts.in << "/"
                << render.counts.unknown;
}

void polygons(Outcome& o)
{
    using attractor::PolygonForm;
    const auto rect = attractor::polygon_attractor(std::sqrt(0.5), 1, 2, PolygonForm::half_turn);
    o.expect(rect.vertices.size() == 4, "rectangle vertex count");
    for (const auto& v : rect.vertices)
        o.expect(std::abs(std::abs(v.real()) - 2.0) <= 1e-12 && std::abs(std::abs(v.imag()) - std::sqrt(2.0)) <= 1e-12,
                 "rectangle vertex off");
    const auto hex = attractor::polygon_attractor(0.9, 1, 3, PolygonForm::half_turn);
    for (const double a : attractor::interior_angles(hex))
        o.expect(std::abs(a - 2.0 * std::numbers::pi / 3.0) <= 1e-9, "hexagon angle");
    for (const auto& c : {std::pair{std::sqrt(0.5), 2}, std::pair{0.9, 3}}) {
        const auto poly = attractor::polygon_attractor(c.first, 1, c.second, PolygonForm::half_turn);
        const Parameter lambda(attractor::polygon_parameter(c.first, 1, c.second, PolygonForm::half_turn));
        const auto hull = geometry::convex_hull(attractor::prefix_sums(lambda, Alphabet::signs, 16).points);
        o.expect(geometry::hausdorff_convex(hull, poly.vertices) <= tail_bound(lambda, 15), "hull not within tail");
    }
}

void classifications(Outcome& o)
{
    using algebraic::NumberKind;
    const auto check = [&](const std::string& text, NumberKind kind, double modulus, bool flag) {
        const auto theta = algebraic::make_algebraic(algebraic::IntPolynomial::parse(text), {});
        const auto c = algebraic::classify(theta);
        o.expect(c.kind == kind, text + " classified " + algebraic::to_string(c.kind));
        if (modulus > 0.0)
            o.expect(std::abs(c.modulus - modulus) <= 1e-4, text + " modulus");
        if (flag)
            o.expect(c.garsia_theorem, text + " theorem flag not set");
    };
    check("z^3 - z^2 + 1", NumberKind::complex_pisot, 1.15096, false);
    check("z^3 - z - 1", NumberKind::real_pisot, 1.3247, false);
    check("z^2 + 2", NumberKind::complex_garsia, std::sqrt(2.0), true);
    check("z^2 - 2z + 2", NumberKind::complex_garsia, std::sqrt(2.0), true);
    check("z^2 - z + 2", NumberKind::complex_garsia, std::sqrt(2.0), true);
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<void(Outcome&)> run;
    };
    const std::vector<Criterion> criteria{
        {"1 rectangle cover at 0.1+0.68i", 1, figure_cover},
        {"2 worked example end to end", 10, worked_example},
        {"3 cover property suite", 60, cover_property},
        {"4 transversality constant", 1, transversality},
        {"5 Garsia separation", 30, garsia},
        {"6 Pisot singularity witness", 30, pisot},
        {"7 exclusion soundness", 300, exclusion},
        {"8 polygon attractors", 30, polygons},
        {"9 catalog classifications", 5, classifications},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.expect(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_s)
            o.expect(false, "runtime over budget");
        if (!o.pass)
            ++failed;
        std::printf("%s criterion %s (%.2f s) %s\n", o.pass ? "PASS" : "FAIL", c.name, secs, o.notes.str().c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
