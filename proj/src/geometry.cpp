#include "ifs/geometry.hpp"

#include <algorithm>

namespace ifs::geometry {

double signed_area(const Polygon& poly)
{
    double twice = 0.0;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        twice += cross(poly[i], poly[(i + 1) % n]);
    return 0.5 * twice;
}

Polygon clip_halfplane(const Polygon& poly, Point a, Point b, double offset)
{
    Polygon out;
    const std::size_t n = poly.size();
    if (n == 0)
        return out;
    const Point dir = b - a;
    const double len = std::abs(dir);
    auto side = [&](Point p) { return cross(dir, p - a) / len - offset; };

    out.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        const Point cur = poly[i];
        const Point nxt = poly[(i + 1) % n];
        const double sc = side(cur);
        const double sn = side(nxt);
        if (sc >= 0.0)
            out.push_back(cur);
        if ((sc >= 0.0) != (sn >= 0.0)) {
            const double t = sc / (sc - sn);
            out.push_back(cur + t * (nxt - cur));
        }
    }
    // Drop consecutive duplicates produced by vertices lying on the line.
    Polygon cleaned;
    cleaned.reserve(out.size());
    for (const auto& p : out)
        if (cleaned.empty() || p != cleaned.back())
            cleaned.push_back(p);
    while (cleaned.size() > 1 && cleaned.front() == cleaned.back())
        cleaned.pop_back();
    if (cleaned.size() < 3)
        cleaned.clear();
    return cleaned;
}

std::vector<Polygon> subtract_convex(const Polygon& subject, const Polygon& clip, double snap)
{
    std::vector<Polygon> pieces;
    Polygon remainder = subject;
    const std::size_t n = clip.size();
    for (std::size_t i = 0; i < n && !remainder.empty(); ++i) {
        const Point a = clip[i];
        const Point b = clip[(i + 1) % n];
        // strictly outside this edge (beyond the snap band)
        Polygon outside = clip_halfplane(remainder, b, a, snap);
        if (!outside.empty() && area(outside) > 0.0)
            pieces.push_back(std::move(outside));
        remainder = clip_halfplane(remainder, a, b, -snap);
    }
    return pieces;
}

Polygon convex_hull(std::vector<Point> points)
{
    auto less = [](Point p, Point q) {
        return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    };
    std::sort(points.begin(), points.end(), less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3)
        return points;

    Polygon hull(2 * points.size());
    std::size_t k = 0;
    for (const auto& p : points) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = p;
    }
    for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
        const Point p = points[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = p;
    }
    hull.resize(k - 1);
    return hull;
}

bool contains(const Polygon& poly, Point p, double tolerance)
{
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point b = poly[(i + 1) % n];
        if (cross(b - a, p - a) / std::abs(b - a) < -tolerance)
            return false;
    }
    return n >= 3;
}

static double distance_to_segment(Point p, Point a, Point b)
{
    const Point d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0)
        return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(d)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double distance_to_polygon(const Polygon& poly, Point p)
{
    if (contains(poly, p))
        return 0.0;
    double best = std::numeric_limits<double>::infinity();
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i)
        best = std::min(best, distance_to_segment(p, poly[i], poly[(i + 1) % n]));
    return best;
}

double hausdorff_convex(const Polygon& a, const Polygon& b)
{
    // The distance to a convex set is convex, so the maxima sit at vertices.
    double h = 0.0;
    for (const auto& p : a)
        h = std::max(h, distance_to_polygon(b, p));
    for (const auto& q : b)
        h = std::max(h, distance_to_polygon(a, q));
    return h;
}

double distance_to_box(const Window& box, Point p)
{
    const double dx = std::max({box.re_min - p.real(), 0.0, p.real() - box.re_max});
    const double dy = std::max({box.im_min - p.imag(), 0.0, p.imag() - box.im_max});
    return std::hypot(dx, dy);
}

Polygon rectangle_polygon(const Rectangle& rect, Point center)
{
    const double a = rect.half_width;
    const double b = rect.half_height;
    return {center + Point(-a, -b), center + Point(a, -b), center + Point(a, b), center + Point(-a, b)};
}

} // namespace ifs::geometry
