#include "ifs/bernoulli.hpp"

#include "ifs/attractor.hpp"
#include "ifs/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <tuple>

namespace ifs::bernoulli {

using algebraic::AlgebraicNumber;
using algebraic::NumberKind;
using nlohmann::json;

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
using LongComplex = std::complex<long double>;
__extension__ typedef __int128 Wide;

double tail_sum(double modulus, double xi_abs, int terms)
{
    const double m2 = modulus * modulus;
    return round_up(xi_abs * xi_abs * std::pow(m2, terms) / (2.0 * (1.0 - m2)));
}

} // namespace

FourierValue fourier_nu(Parameter lambda, Complex xi, int terms)
{
    require_in_disc(lambda);
    if (terms < 1)
        throw PreconditionError("fourier_nu needs at least one term");
    const Complex l = lambda.value();
    Complex z = std::conj(xi);
    double product = 1.0;
    for (int n = 0; n < terms; ++n) {
        product *= std::cos(z.real());
        z *= l;
    }
    FourierValue out;
    out.value = product;
    out.terms_used = terms;
    if (xi == Complex{})
        return out;
    const double m = modulus_up(l);
    const double s = tail_sum(m, modulus_up(xi), terms);
    const double tail = s <= 1.0 ? s : 2.0;
    // Allowance for the rounding of cos and of the products lambda^n xi.
    const double rounding = eps * (4.0 * terms + 4.0 * std::abs(xi) / ((1.0 - m) * (1.0 - m)));
    out.truncation_error = round_up(std::abs(product) * tail + rounding);
    return out;
}

FourierValue fourier_nu_auto(Parameter lambda, Complex xi, int max_terms)
{
    require_in_disc(lambda);
    if (max_terms < 1)
        throw PreconditionError("fourier_nu needs at least one term");
    const double m = modulus_up(lambda.value());
    const double x = std::abs(xi);
    int terms = 1;
    if (x > 0.0 && m > 0.0) {
        const double m2 = m * m;
        const double target = 2e-12 * (1.0 - m2) / (x * x);
        const double need = std::ceil(std::log(target) / std::log(m2));
        terms = static_cast<int>(std::clamp(need, 1.0, static_cast<double>(max_terms)));
        while (terms < max_terms && tail_sum(m, x, terms) > 1e-12)
            ++terms;
    }
    return fourier_nu(lambda, xi, terms);
}

namespace {

// Roots of the minimal polynomial other than theta and its complex conjugate.
std::vector<Complex> other_conjugates(const AlgebraicNumber& theta)
{
    std::vector<Complex> out;
    bool skipped_partner = false;
    for (std::size_t i = 0; i < theta.conjugates.size(); ++i) {
        if (static_cast<int>(i) == theta.index)
            continue;
        if (!skipped_partner && theta.root.imag() != 0.0 && theta.conjugates[i] == std::conj(theta.root)) {
            skipped_partner = true;
            continue;
        }
        out.push_back(theta.conjugates[i]);
    }
    return out;
}

// Newton power sums s_0..s_n of the roots of a monic integer polynomial.
std::vector<long long> power_sums(const algebraic::IntPolynomial& p, int n_max)
{
    const auto& c = p.coefficients();
    const int m = p.degree();
    std::vector<long long> s(n_max + 1, 0);
    s[0] = m;
    for (int n = 1; n <= n_max; ++n) {
        Wide acc = 0;
        if (n <= m)
            acc += static_cast<Wide>(n) * c[m - n];
        for (int i = 1; i <= std::min(n - 1, m); ++i)
            acc += static_cast<Wide>(c[m - i]) * s[n - i];
        acc = -acc;
        if (acc > (Wide(1) << 62) || acc < -(Wide(1) << 62))
            throw ResourceError("power sum s_" + std::to_string(n) + " overflows 64-bit integers");
        s[n] = static_cast<long long>(acc);
    }
    return s;
}

void require_complex_pisot(const AlgebraicNumber& theta, const char* what)
{
    const auto c = algebraic::classify(theta);
    if (c.kind != NumberKind::complex_pisot)
        throw PreconditionError(std::string(what) + " needs a complex Pisot number, got " + to_string(c.kind) +
                                " for " + theta.minpoly.to_string());
}

} // namespace

DecayScan pisot_decay_scan(const AlgebraicNumber& theta, int n_max)
{
    if (n_max < 0)
        throw PreconditionError("n_max must be nonnegative");
    require_complex_pisot(theta, "pisot_decay_scan");
    const auto others = other_conjugates(theta);
    const auto sums = power_sums(theta.minpoly, n_max);

    DecayScan scan;
    for (const auto& z : others)
        scan.rho_max = std::max(scan.rho_max, std::abs(z));

    const LongComplex t(theta.root.real(), theta.root.imag());
    LongComplex t_pow(1.0L, 0.0L);
    std::vector<LongComplex> o(others.begin(), others.end());
    std::vector<LongComplex> o_pow(o.size(), LongComplex(1.0L, 0.0L));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 0; n <= n_max; ++n) {
        long double small = 0.0L;
        for (const auto& w : o_pow)
            small += w.real();
        DecayRow row;
        row.n = n;
        row.power_sum = sums[n];
        row.float_value = static_cast<double>(2.0L * t_pow.real());
        row.recurrence_value = static_cast<double>(static_cast<long double>(sums[n]) - small);
        row.distance = static_cast<double>(std::abs(small - std::nearbyint(small)));
        scan.max_route_gap = std::max(scan.max_route_gap, std::abs(row.float_value - row.recurrence_value));
        if (n >= 1 && row.distance > 0.0 && row.distance < 0.1) {
            const double y = std::log(row.distance);
            sx += n;
            sy += y;
            sxx += double(n) * n;
            sxy += n * y;
            ++scan.fit_points;
        }
        scan.rows.push_back(row);
        t_pow *= t;
        for (std::size_t i = 0; i < o.size(); ++i)
            o_pow[i] *= o[i];
    }
    if (scan.fit_points >= 2) {
        const double k = scan.fit_points;
        const double slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        scan.rho = std::exp(slope);
    } else {
        scan.rho = std::numeric_limits<double>::quiet_NaN();
    }
    return scan;
}

WitnessReport singularity_witness(const AlgebraicNumber& theta, int n_max, int extra_terms)
{
    if (n_max < 0 || extra_terms < 1)
        throw PreconditionError("singularity_witness needs n_max >= 0 and extra_terms >= 1");
    if (std::abs(theta.root) >= std::sqrt(2.0))
        throw PreconditionError("|theta| >= sqrt 2: nu_lambda is singular because A_lambda has zero area");
    WitnessReport report;
    report.scan = pisot_decay_scan(theta, n_max);

    const Parameter lambda(1.0 / theta.root);
    const double two_pi = 2.0 * std::numbers::pi;
    report.base = fourier_nu_auto(lambda, two_pi);

    const LongComplex tbar(theta.root.real(), -theta.root.imag());
    LongComplex power(1.0L, 0.0L);
    double factor = 1.0;
    report.min_abs = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= n_max; ++n) {
        if (n >= 1) {
            // cos(pi v) with v = 2 Re theta^n = k + d, d the signed distance to Z.
            const double v = report.scan.rows[n].recurrence_value;
            const double k = std::nearbyint(v);
            const double d = report.scan.rows[n].distance;
            const double sign = std::fmod(std::abs(k), 2.0) == 0.0 ? 1.0 : -1.0;
            factor *= sign * std::cos(std::numbers::pi * d);
        }
        const Complex xi(static_cast<double>(two_pi * power.real()), static_cast<double>(two_pi * power.imag()));
        const auto direct = fourier_nu(lambda, xi, n + extra_terms);
        WitnessRow row;
        row.n = n;
        row.direct = direct.value;
        row.direct_error = direct.truncation_error;
        row.factorized = report.base.value * factor;
        row.factorized_error = round_up(report.base.truncation_error * std::abs(factor) + 4.0 * eps * (n + 1));
        report.max_discrepancy = std::max(report.max_discrepancy, std::abs(row.direct - row.factorized));
        if (std::abs(row.direct) < report.min_abs) {
            report.min_abs = std::abs(row.direct);
            report.argmin = n;
        }
        report.rows.push_back(row);
        power *= tbar;
    }

    // Uniform floor: |nu_hat(2 pi)| times every |cos(pi d_n)|; beyond n_max the
    // distances are at most (#others) rho_max^n.
    double floor = std::max(0.0, std::abs(report.base.value) - report.base.truncation_error);
    for (int n = 1; n <= n_max; ++n)
        floor *= std::abs(std::cos(std::numbers::pi * report.scan.rows[n].distance));
    const double count = static_cast<double>(theta.minpoly.degree() - 2);
    const double rho = report.scan.rho_max;
    if (count > 0.0) {
        double t = count * std::pow(rho, n_max + 1);
        int n = n_max + 1;
        while (t > 1e-9 && n < n_max + 1 + max_fourier_terms) {
            floor *= t < 0.5 ? std::cos(std::numbers::pi * t) : 0.0;
            t *= rho;
            ++n;
        }
        const double rest = std::numbers::pi * std::numbers::pi * t * t / (2.0 * (1.0 - rho * rho));
        floor *= std::max(0.0, 1.0 - rest);
    }
    report.floor = floor * (1.0 - 1e-12);
    return report;
}

LevelStatistics level_statistics(Parameter lambda, int n, double hint, unsigned threads)
{
    if (n < 0)
        throw PreconditionError("level must be nonnegative");
    if (n > hard_level_cap)
        throw ResourceError("level " + std::to_string(n) + " exceeds the hard cap of " + std::to_string(hard_level_cap));
    require_in_disc(lambda, true);
    attractor::EnumerationOptions options;
    options.threads = threads;
    const auto points = attractor::level_sums(lambda, Alphabet::signs, n, options);

    LevelStatistics stats;
    stats.n = n;
    stats.min_distance = std::numeric_limits<double>::infinity();
    if (points.size() < 2) {
        stats.count = static_cast<long long>(points.size());
        return stats;
    }
    constexpr double same = 1e-10;
    double h = std::isfinite(hint) ? std::max(hint, 1e-9) : 1.0;
    while (true) {
        using Key = std::tuple<long long, long long, std::size_t>;
        std::vector<Key> keys(points.size());
        for (std::size_t i = 0; i < points.size(); ++i)
            keys[i] = {static_cast<long long>(std::floor(points[i].real() / h)),
                       static_cast<long long>(std::floor(points[i].imag() / h)), i};
        std::sort(keys.begin(), keys.end());

        double best = std::numeric_limits<double>::infinity();
        long long duplicates = 0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            const long long ix = static_cast<long long>(std::floor(points[i].real() / h));
            const long long iy = static_cast<long long>(std::floor(points[i].imag() / h));
            bool duplicate = false;
            for (long long dx = -1; dx <= 1; ++dx) {
                for (long long dy = -1; dy <= 1; ++dy) {
                    auto lo = std::lower_bound(keys.begin(), keys.end(), Key{ix + dx, iy + dy, 0});
                    for (auto it = lo; it != keys.end() && std::get<0>(*it) == ix + dx && std::get<1>(*it) == iy + dy;
                         ++it) {
                        const std::size_t j = std::get<2>(*it);
                        if (j == i)
                            continue;
                        const double d = std::abs(points[i] - points[j]);
                        best = std::min(best, d);
                        if (j < i && d <= same)
                            duplicate = true;
                    }
                }
            }
            duplicates += duplicate ? 1 : 0;
        }
        if (best <= h) {
            stats.min_distance = best;
            stats.count = static_cast<long long>(points.size()) - duplicates;
            return stats;
        }
        h *= 2.0;
    }
}

double garsia_constant(const AlgebraicNumber& theta)
{
    double c = 2.0 * std::abs(theta.root);
    for (const auto& z : other_conjugates(theta))
        c *= std::sqrt(std::abs(z) - 1.0);
    return c;
}

SeparationReport garsia_separation(const AlgebraicNumber& theta, int n, int cap, unsigned threads)
{
    const auto cls = algebraic::classify(theta);
    if (cls.kind != NumberKind::complex_garsia || !cls.constant_pm2)
        throw PreconditionError("garsia_separation needs a complex Garsia number with constant term +-2, got " +
                                to_string(cls.kind) + " for " + theta.minpoly.to_string());
    if (n < 1)
        throw PreconditionError("garsia_separation needs n >= 1");
    if (cap > hard_level_cap)
        throw PreconditionError("level cap may not exceed " + std::to_string(hard_level_cap));
    if (n > cap)
        throw ResourceError("level " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));

    SeparationReport report;
    report.n = n;
    report.c = garsia_constant(theta);
    report.bound = report.c * std::pow(2.0, -0.5 * n);
    const auto stats = level_statistics(Parameter(1.0 / theta.root), n, report.bound, threads);
    report.count = stats.count;
    report.min_distance = stats.min_distance;
    report.holds = report.count == (1LL << n) && report.min_distance >= report.bound - 1e-12;
    return report;
}

DensityReport density_histogram(Parameter lambda, int n, const Window& window, Resolution grid, int cap,
                                unsigned threads)
{
    if (n < 0)
        throw PreconditionError("level must be nonnegative");
    if (!window.valid() || grid.width < 1 || grid.height < 1)
        throw PreconditionError("density histogram needs a nonempty window and grid");
    if (cap > hard_level_cap)
        throw PreconditionError("level cap may not exceed " + std::to_string(hard_level_cap));
    if (n > cap)
        throw ResourceError("level " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
    require_in_disc(lambda);
    attractor::EnumerationOptions options;
    options.threads = threads;
    const auto points = attractor::level_sums(lambda, Alphabet::signs, n, options);

    const PixelGrid pixels{window, grid};
    std::vector<long long> counts(static_cast<std::size_t>(grid.width) * grid.height, 0);
    long long outside = 0;
    for (const auto& z : points) {
        if (!window.contains(z)) {
            ++outside;
            continue;
        }
        const int col = std::min(grid.width - 1, static_cast<int>((z.real() - window.re_min) / pixels.dx()));
        const int row = std::min(grid.height - 1, static_cast<int>((window.im_max - z.imag()) / pixels.dy()));
        ++counts[static_cast<std::size_t>(row) * grid.width + col];
    }
    const auto best = std::max_element(counts.begin(), counts.end()) - counts.begin();
    const double weight = std::ldexp(1.0, -n);
    DensityReport report;
    report.cell_area = pixels.dx() * pixels.dy();
    report.max_ratio = counts[best] * weight / report.cell_area;
    report.location = pixels.center(static_cast<int>(best % grid.width), static_cast<int>(best / grid.width));
    report.mass_outside = outside * weight;
    return report;
}

double transversality_bound(int k)
{
    if (k < 1)
        throw DomainError("transversality bound needs k >= 1");
    const double kk = k;
    return std::pow(kk, -1.0 / (2.0 * kk)) * std::pow(1.0 + 1.0 / kk, -0.5 * (1.0 + 1.0 / kk));
}

IntervalReport continuous_density_intervals(int k_max)
{
    if (k_max < 2)
        throw PreconditionError("continuous_density_intervals needs k_max >= 2");
    const double r4 = 2.0 * std::pow(5.0, -5.0 / 8.0);
    IntervalReport report;
    for (int k = 2; k <= k_max; ++k)
        report.intervals.push_back({k, std::pow(2.0, -1.0 / (2.0 * k)), std::pow(r4, 1.0 / k)});
    for (std::size_t i = 0; i + 1 < report.intervals.size(); ++i) {
        if (report.intervals[i + 1].low < report.intervals[i].high) {
            report.overlap_k = report.intervals[i].k;
            break;
        }
    }
    return report;
}

json typical_region_report(Parameter lambda)
{
    require_in_disc(lambda, true);
    const double m = lambda.modulus();
    const double s = similarity_dimension(lambda);
    const double inner = 1.0 / std::sqrt(2.0);
    const double r4 = 2.0 * std::pow(5.0, -5.0 / 8.0);
    const double ray = std::pow(2.0, -1.0 / 20.0);

    json statements = json::array();

    json dim;
    dim["id"] = "dimension";
    dim["region"] = "parameters of M with |lambda| < 2^-1/2";
    dim["label"] = "a.e. in the annulus";
    dim["applies"] = m < inner;
    dim["claim"] = "dim_H A_lambda = s(lambda) for almost every such lambda";
    if (m < inner)
        dim["exceptional_dimension_bound"] = std::log(2.0) / -std::log(m);
    statements.push_back(dim);

    json hm;
    hm["id"] = "hausdorff_measure";
    hm["region"] = "parameters of M with |lambda| < 2^-1/2";
    hm["label"] = "a.e. in the annulus";
    hm["applies"] = m < inner;
    hm["claim"] = "the s(lambda)-dimensional Hausdorff measure of A_lambda vanishes for almost every such lambda";
    statements.push_back(hm);

    json pm;
    pm["id"] = "packing_measure";
    pm["region"] = "parameters of M with |lambda| < 2^-1/2";
    pm["label"] = "a.e. in the annulus";
    pm["applies"] = m < inner;
    pm["claim"] = "the s(lambda)-dimensional packing measure of A_lambda is positive and finite for almost every "
                  "such lambda, and nu_lambda is equivalent to it";
    if (m < inner)
        pm["exceptional_dimension_bound"] = std::log(2.0) / -std::log(m);
    statements.push_back(pm);

    json l2;
    l2["id"] = "l2_density";
    l2["region"] = "2^-1/2 <= |lambda| <= 2*5^-5/8";
    l2["label"] = "a.e. in the annulus";
    l2["applies"] = m >= inner && m <= r4;
    l2["claim"] = "nu_lambda is absolutely continuous with a density in L^2, so A_lambda has positive area, for "
                  "almost every such lambda";
    l2["interval"] = {inner, r4};
    if (m > inner && m < r4)
        l2["exceptional_dimension_bound"] = 4.0 - std::log(2.0) / -std::log(m);
    statements.push_back(l2);

    json cont;
    cont["id"] = "continuous_density";
    cont["region"] = "|lambda| in the union over k >= 2 of (2^(-1/(2k)), (2*5^-5/8)^(1/k))";
    cont["label"] = "a.e. in the annulus";
    cont["claim"] = "nu_lambda has a continuous density, so A_lambda has nonempty interior, for almost every such "
                    "lambda";
    cont["ray_threshold"] = ray;
    std::optional<int> k_hit;
    for (int k = 2; k <= 1'000'000; ++k) {
        const double low = std::pow(2.0, -1.0 / (2.0 * k));
        if (low >= m)
            break;
        if (m < std::pow(r4, 1.0 / k)) {
            k_hit = k;
            break;
        }
    }
    const bool in_union = k_hit.has_value() || m > ray;
    cont["applies"] = in_union;
    if (k_hit)
        cont["k"] = *k_hit;
    statements.push_back(cont);

    json out;
    out["schema_version"] = 1;
    out["kind"] = "typical_region_report";
    out["lambda"] = json::array({lambda.re(), lambda.im()});
    out["modulus"] = m;
    out["similarity_dimension"] = s;
    out["annulus"] = m < 0.5 ? "outside M (|lambda| < 1/2)"
                     : m >= inner ? "inside M (|lambda| >= 2^-1/2)"
                                  : "1/2 <= |lambda| < 2^-1/2, membership in M not decided here";
    out["scope"] = "every statement holds for almost every parameter of its region and says nothing about this lambda";
    out["statements"] = statements;
    return out;
}

} // namespace ifs::bernoulli
