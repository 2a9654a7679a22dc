#include "ifs/certificates.hpp"

#include "ifs/attractor.hpp"
#include "ifs/errors.hpp"
#include "ifs/geometry.hpp"

#include <algorithm>
#include <numbers>

namespace ifs::certificates {

namespace {

constexpr double boundary_slack = 8.0 * std::numeric_limits<double>::epsilon();
constexpr double relative_area_tolerance = 1e-12;

} // namespace

bool h_contains(Parameter lambda, bool strict)
{
    const double n2 = lambda.norm();
    const double re = lambda.re();
    const double im = lambda.im();
    const double re_cap = (3.0 * n2 - 1.0) / 2.0;
    if (strict) {
        const double t = boundary_slack;
        return n2 > 1.0 / 3.0 + t && n2 < 0.5 - t && re > t && re < re_cap - t && im > t;
    }
    const double t = boundary_slack;
    return n2 >= 1.0 / 3.0 - t && n2 <= 0.5 + t && re >= -t && re <= re_cap + t && im >= -t;
}

std::string to_string(CoverRegime regime)
{
    return regime == CoverRegime::ab1 ? "AB1" : "AB2";
}

std::string to_string(TranslateSet set)
{
    return set == TranslateSet::with_zero ? "zero_and_signs" : "signs";
}

static double regime_threshold(Parameter lambda)
{
    const double n2 = lambda.norm();
    const double r = lambda.modulus();
    return n2 - r * std::sqrt(1.0 - n2) / std::numbers::sqrt2;
}

CoverParams cover_params_ab1(Parameter lambda)
{
    const double n2 = lambda.norm();
    const double xi = lambda.re();
    const double eta = lambda.im();
    const double gap = n2 - xi;
    const double denom = n2 * (1.0 - n2);
    return {1.0 + gap * gap / denom, eta * gap / denom, CoverRegime::ab1, regime_threshold(lambda)};
}

CoverParams cover_params_ab2(Parameter lambda)
{
    const double n2 = lambda.norm();
    const double xi = lambda.re();
    const double eta = lambda.im();
    const double gap = n2 - xi;
    const double denom = eta * eta - gap * gap;
    return {(eta * eta + xi * gap) / denom, eta * n2 / denom, CoverRegime::ab2, regime_threshold(lambda)};
}

CoverParams cover_params(Parameter lambda)
{
    if (!h_contains(lambda, false))
        throw PreconditionError("cover_params needs lambda in H");
    return lambda.re() >= regime_threshold(lambda) ? cover_params_ab1(lambda) : cover_params_ab2(lambda);
}

double ConditionSlacks::min() const
{
    return *std::min_element(slack.begin(), slack.end());
}

ConditionSlacks covering_condition_slacks(Parameter lambda, double a, double b)
{
    const double n2 = lambda.norm();
    const double xi = lambda.re();
    const double eta = lambda.im();
    ConditionSlacks s;
    s.slack[0] = n2 - eta / (2.0 * b);                       // overlap
    s.slack[1] = a * eta + b * xi - b - xi * eta / n2;        // short sides
    s.slack[2] = a * n2 + xi - a * xi - b * eta;              // long sides, real part
    s.slack[3] = b * n2 + eta - a * eta - b * xi;             // long sides, imaginary part
    s.holds = s.min() >= 0.0;
    return s;
}

CoverResidual verify_cover_geometric(Parameter lambda, const Rectangle& rect, TranslateSet translates)
{
    if (lambda.value() == Complex(0.0, 0.0) || !std::isfinite(lambda.modulus()))
        throw DomainError("covering check needs a finite nonzero lambda");
    const Complex inv = 1.0 / lambda.value();

    geometry::Polygon target;
    for (const auto& v : geometry::rectangle_polygon(rect))
        target.push_back(inv * v);

    std::vector<geometry::Polygon> covers;
    if (translates == TranslateSet::with_zero)
        covers.push_back(geometry::rectangle_polygon(rect));
    covers.push_back(geometry::rectangle_polygon(rect, -inv));
    covers.push_back(geometry::rectangle_polygon(rect, inv));

    double scale = 1.0;
    for (const auto& v : target)
        scale = std::max(scale, std::abs(v));
    const double snap = 1e-14 * scale;

    std::vector<geometry::Polygon> pieces{target};
    for (const auto& cover : covers) {
        std::vector<geometry::Polygon> next;
        for (const auto& piece : pieces)
            for (auto& rest : geometry::subtract_convex(piece, cover, snap))
                next.push_back(std::move(rest));
        pieces = std::move(next);
    }

    CoverResidual result;
    result.target_area = geometry::area(target);
    for (const auto& piece : pieces)
        result.residual_area += geometry::area(piece);
    result.covered = result.residual_area <= relative_area_tolerance * result.target_area;
    return result;
}

CoverCertificate check_cover(Parameter lambda, const Rectangle& rect, TranslateSet translates)
{
    CoverCertificate cert;
    cert.lambda = lambda;
    cert.rect = rect;
    cert.translates = translates;
    if (translates == TranslateSet::with_zero)
        cert.conditions = covering_condition_slacks(lambda, rect.half_width, rect.half_height);
    cert.residual = verify_cover_geometric(lambda, rect, translates);
    cert.valid = cert.residual.covered && (!cert.conditions || cert.conditions->holds);
    return cert;
}

CoverCertificate certify_cover(Parameter lambda)
{
    const auto params = cover_params(lambda);
    auto cert = check_cover(lambda, Rectangle(params.a, params.b), TranslateSet::with_zero);
    cert.regime = params.regime;
    // The closed forms make two inequalities equalities; allow their rounding.
    if (cert.conditions)
        cert.valid = cert.residual.covered && cert.conditions->min() >= -1e-12;
    return cert;
}

OmegaSearch omega_cover_params(Parameter lambda)
{
    if (!attractor::omega_contains(lambda))
        throw PreconditionError("omega_cover_params needs lambda in Omega (0 <= Re <= |lambda|^2 - 1/2)");
    require_in_disc(lambda, true);

    constexpr int grid = 64;
    double a_lo = 1.0, a_hi = 40.0;
    double b_lo = std::numbers::sqrt2 / 2.0, b_hi = 40.0;

    OmegaSearch search;
    search.best_relative_residual = std::numeric_limits<double>::infinity();
    double best_a = 0.0, best_b = 0.0;
    for (int level = 0; level < 3; ++level) {
        const double da = (a_hi - a_lo) / grid;
        const double db = (b_hi - b_lo) / grid;
        for (int i = 0; i < grid; ++i) {
            const double a = a_lo + (i + 0.5) * da;
            for (int j = 0; j < grid; ++j) {
                const double b = b_lo + (j + 0.5) * db;
                ++search.evaluations;
                const auto res = verify_cover_geometric(lambda, Rectangle(a, b), TranslateSet::signs);
                const double rel = res.residual_area / res.target_area;
                if (rel < search.best_relative_residual) {
                    search.best_relative_residual = rel;
                    best_a = a;
                    best_b = b;
                }
                if (res.covered) {
                    search.found = true;
                    search.certificate = check_cover(lambda, Rectangle(a, b), TranslateSet::signs);
                    return search;
                }
            }
        }
        // Refine around the best cell, staying inside the admissible box.
        a_lo = std::max(1.0, best_a - da);
        a_hi = best_a + da;
        b_lo = std::max(std::numbers::sqrt2 / 2.0, best_b - db);
        b_hi = best_b + db;
    }
    search.certificate = check_cover(lambda, Rectangle(best_a, best_b), TranslateSet::signs);
    return search;
}

// ---------------------------------------------------------------------------

namespace {

int polynomial_degree(const DigitString& p)
{
    int degree = 0;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p.digits()[k] != 0)
            degree = static_cast<int>(k) + 1;
    return degree;
}

CoverSample sample_cover(Complex z)
{
    CoverSample s;
    s.point = z;
    const Parameter lambda(z);
    if (!h_contains(lambda, false))
        return s;
    const auto cert = certify_cover(lambda);
    s.a = cert.rect.half_width;
    s.b = cert.rect.half_height;
    s.min_slack = cert.conditions->min();
    s.residual_area = cert.residual.residual_area;
    s.ok = cert.valid && s.a >= 1.0 && s.b > 0.5;
    return s;
}

} // namespace

DiscDecision certify_disc(const DigitString& p, Complex center, double delta)
{
    if (!p.leading_one() || p.alphabet() != Alphabet::ternary)
        throw PreconditionError("certify_disc needs a leading-one {0,+-1} polynomial");
    const int n = polynomial_degree(p);
    if (n < 1)
        throw PreconditionError("certify_disc needs degree >= 1");
    if (!(delta >= 0.0))
        throw PreconditionError("radius must be nonnegative");

    DiscDecision decision;
    auto& cert = decision.certificate;
    cert.polynomial = p;
    cert.center = center;
    cert.radius = delta;
    cert.degree = n;

    const auto eval = eval_prefix(p, Parameter(center));
    cert.center_residual = round_up(std::abs(eval.value) + eval.error_bound);

    // Conservative ranges of |l|^2, Re l and Im l over the closed disc.
    const double r_lo = round_down(modulus_down(center) - delta);
    const double r_hi = round_up(modulus_up(center) + delta);
    cert.norm_min = r_lo > 0.0 ? round_down(r_lo * r_lo) : 0.0;
    cert.norm_max = round_up(r_hi * r_hi);
    cert.re_min = round_down(center.real() - delta);
    cert.re_max = round_up(center.real() + delta);
    cert.im_min = round_down(center.imag() - delta);

    const double rho = r_hi;
    double lipschitz = 0.0;
    for (int k = 1; k <= n; ++k)
        if (p.digits()[k - 1] != 0)
            lipschitz = round_up(lipschitz + round_up(k * std::pow(rho, k - 1)) * (1.0 + 2e-16 * k));
    cert.lipschitz_bound = lipschitz;
    cert.floor_bound = r_lo > 0.0 ? round_down(0.5 * std::pow(r_lo, n + 1) * (1.0 - 4e-16 * (n + 1))) : 0.0;
    cert.lhs = round_up(cert.center_residual + round_up(delta * lipschitz));

    // Defense in depth: the covering rectangle at the center and 8 boundary points.
    cert.samples.push_back(sample_cover(center));
    for (int j = 0; j < 8; ++j)
        cert.samples.push_back(sample_cover(center + std::polar(delta, std::numbers::pi * j / 4.0)));

    auto reject = [&](std::string clause) {
        decision.accepted = false;
        decision.failing_clause = std::move(clause);
        return decision;
    };

    if (cert.center_residual > 1e-10)
        return reject("residual: |p(center)| exceeds 1e-10");
    const double re_cap = round_down((3.0 * cert.norm_min - 1.0) / 2.0);
    const double t = boundary_slack;
    if (!(cert.norm_min > 1.0 / 3.0 + t && cert.norm_max < 0.5 - t && cert.re_min > t && cert.re_max < re_cap - t &&
          cert.im_min > t))
        return reject("disc: closed disc is not inside int(H)");
    if (!(cert.lhs <= cert.floor_bound))
        return reject("bound: |p(center)| + delta * L exceeds 0.5 (|center| - delta)^(n+1)");
    for (const auto& s : cert.samples)
        if (!s.ok)
            return reject("cover: covering rectangle check failed at a sample point");

    decision.accepted = true;
    return decision;
}

double max_certified_radius(const DigitString& p, Complex center)
{
    if (!certify_disc(p, center, 0.0).accepted)
        return 0.0;
    double lo = 0.0;
    double hi = 1e-3;
    while (certify_disc(p, center, hi).accepted) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1.0)
            return lo;
    }
    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (certify_disc(p, center, mid).accepted)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace ifs::certificates
