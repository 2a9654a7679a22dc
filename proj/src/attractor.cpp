#include "ifs/attractor.hpp"

#include "ifs/errors.hpp"
#include "ifs/parallel.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace ifs::attractor {

namespace {

bool complex_less(Complex a, Complex b)
{
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}

std::vector<Complex> powers(Complex z, int n)
{
    std::vector<Complex> p(static_cast<std::size_t>(std::max(n, 1)));
    Complex cur(1.0, 0.0);
    for (int k = 0; k < n; ++k) {
        p[k] = cur;
        cur *= z;
    }
    return p;
}

// Extends `level` (sums of the first `from` digits) by digits from..to-1.
void extend(std::vector<Complex>& level, int from, int to, std::span<const int> digits, const std::vector<Complex>& pw)
{
    for (int k = from; k < to; ++k) {
        std::vector<Complex> next;
        next.reserve(level.size() * digits.size());
        for (const auto& s : level)
            for (int a : digits)
                next.push_back(s + static_cast<double>(a) * pw[k]);
        level = std::move(next);
    }
}

std::size_t checked_power(std::size_t base, int n, std::size_t cap, const char* what)
{
    std::size_t total = 1;
    for (int k = 0; k < n; ++k) {
        if (total > cap / base)
            throw ResourceError(std::string(what) + " exceeds the cap of " + std::to_string(cap) + " points");
        total *= base;
    }
    return total;
}

} // namespace

std::vector<Complex> level_sums(Parameter lambda, Alphabet alphabet, int n, const EnumerationOptions& options)
{
    if (n < 0)
        throw DomainError("depth must be nonnegative");
    const auto digits = alphabet_digits(alphabet);
    const std::size_t total = checked_power(digits.size(), n, options.max_points, "level-sum enumeration");
    const auto pw = powers(lambda.value(), n);

    // Split at a shallow level; each prefix subtree extends independently and
    // the blocks concatenate in digit order.
    const int split = std::min(n, 6);
    std::vector<Complex> prefixes{Complex(0.0, 0.0)};
    extend(prefixes, 0, split, digits, pw);

    std::vector<std::vector<Complex>> blocks(prefixes.size());
    parallel_for(prefixes.size(), options.threads, [&](std::size_t i) {
        std::vector<Complex> block{prefixes[i]};
        extend(block, split, n, digits, pw);
        blocks[i] = std::move(block);
    });

    std::vector<Complex> out;
    out.reserve(total);
    for (auto& b : blocks)
        out.insert(out.end(), b.begin(), b.end());
    return out;
}

PointCloud prefix_sums(Parameter lambda, Alphabet alphabet, int n, const EnumerationOptions& options)
{
    require_in_disc(lambda);
    PointCloud cloud;
    cloud.points = level_sums(lambda, alphabet, n, options);
    std::sort(cloud.points.begin(), cloud.points.end(), complex_less);
    cloud.points.erase(std::unique(cloud.points.begin(), cloud.points.end()), cloud.points.end());
    cloud.depth = n;
    cloud.alphabet = alphabet;
    cloud.lambda = lambda;
    cloud.covering_radius = geometric_tail(modulus_up(lambda.value()), n - 1);
    return cloud;
}

std::size_t BitRaster::count() const
{
    return static_cast<std::size_t>(std::count(marked.begin(), marked.end(), std::uint8_t{1}));
}

GrayImage BitRaster::to_gray() const
{
    GrayImage img(grid.resolution.width, grid.resolution.height, 255);
    for (std::size_t i = 0; i < marked.size(); ++i)
        if (marked[i])
            img.pixels[i] = 0;
    return img;
}

RgbImage BitRaster::to_rgb(Rgb ink, Rgb paper) const
{
    RgbImage img(grid.resolution.width, grid.resolution.height, paper);
    for (std::size_t i = 0; i < marked.size(); ++i)
        if (marked[i])
            img.pixels[i] = ink;
    return img;
}

BitRaster render_attractor(Parameter lambda, int depth, const Window& viewport, Resolution resolution,
                           const RenderOptions& options)
{
    require_in_disc(lambda);
    if (depth < 0)
        throw DomainError("depth must be nonnegative");
    if (resolution.width < 1 || resolution.height < 1 || !viewport.valid())
        throw PreconditionError("render needs a nonempty viewport and resolution >= 1x1");

    const PixelGrid grid{viewport, resolution};
    const double modulus = modulus_up(lambda.value());
    const auto pw = powers(lambda.value(), depth);
    const auto digits = alphabet_digits(Alphabet::signs);

    // Breadth-first subdivision. A node at level k stands for the subtree of
    // continuations, all within geometric_tail(modulus, k-1) of it.
    std::vector<Complex> frontier{Complex(0.0, 0.0)};
    for (int k = 0; k < depth; ++k) {
        const double reach = geometric_tail(modulus, k);
        std::vector<Complex> next;
        next.reserve(frontier.size() * 2);
        for (const auto& s : frontier)
            for (int a : digits) {
                const Complex child = s + static_cast<double>(a) * pw[k];
                if (geometry::distance_to_box(viewport, child) <= reach)
                    next.push_back(child);
            }
        std::sort(next.begin(), next.end(), complex_less);
        next.erase(std::unique(next.begin(), next.end()), next.end());
        if (next.size() > options.max_nodes)
            throw ResourceError("attractor render frontier exceeds the cap of " + std::to_string(options.max_nodes) +
                                " nodes");
        frontier = std::move(next);
    }

    const double radius = geometric_tail(modulus, depth - 1);
    const int w = resolution.width;
    const int h = resolution.height;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(resolve_threads(options.threads),
                                                                          std::max<std::size_t>(frontier.size(), 1)));
    std::vector<std::vector<std::uint8_t>> partial(workers, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0));
    parallel_for(workers, workers, [&](std::size_t t) {
        auto& bits = partial[t];
        const std::size_t begin = frontier.size() * t / workers;
        const std::size_t end = frontier.size() * (t + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) {
            const Complex p = frontier[i];
            const int c0 = std::max(0, static_cast<int>(std::floor((p.real() - radius - viewport.re_min) / grid.dx())));
            const int c1 = std::min(w - 1, static_cast<int>(std::floor((p.real() + radius - viewport.re_min) / grid.dx())));
            const int r0 = std::max(0, static_cast<int>(std::floor((viewport.im_max - p.imag() - radius) / grid.dy())));
            const int r1 = std::min(h - 1, static_cast<int>(std::floor((viewport.im_max - p.imag() + radius) / grid.dy())));
            for (int row = r0; row <= r1; ++row)
                for (int col = c0; col <= c1; ++col)
                    if (geometry::distance_to_box(grid.pixel(col, row), p) <= radius)
                        bits[static_cast<std::size_t>(row) * w + col] = 1;
        }
    });

    BitRaster raster{grid, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, 0)};
    for (const auto& bits : partial)
        for (std::size_t i = 0; i < bits.size(); ++i)
            raster.marked[i] |= bits[i];
    return raster;
}

Complex polygon_parameter(double r, int m, int n, PolygonForm form)
{
    const double turns = form == PolygonForm::half_turn ? static_cast<double>(m) / n
                                                        : 2.0 * static_cast<double>(m) / (2 * n + 1);
    return std::polar(r, std::numbers::pi * turns);
}

ConvexPolygon polygon_attractor(double r, int m, int n, PolygonForm form)
{
    if (n < 1)
        throw PreconditionError("polygon attractor needs n >= 1");
    const int order = form == PolygonForm::half_turn ? n : 2 * n + 1;
    if (std::gcd(m, order) != 1)
        throw PreconditionError("m and " + std::to_string(order) + " must be coprime");
    if (!(r < 1.0))
        throw PreconditionError("r must be below 1");
    // r^N >= 1/2 makes A_{r^N} a segment; allow a few ulps for inputs like 2^{-1/2}.
    const double threshold = std::pow(2.0, -1.0 / order);
    if (r < threshold * (1.0 - 8.0 * std::numeric_limits<double>::epsilon()))
        throw PreconditionError("r = " + std::to_string(r) + " is below 2^(-1/" + std::to_string(order) +
                                "); A_{r^N} is then a Cantor set, not a segment");

    const Complex lambda = polygon_parameter(r, m, n, form);
    const double half_length = 1.0 / (1.0 - std::pow(r, order));

    // Full segment vectors, oriented into the half-open upper half plane.
    std::vector<Complex> edges;
    Complex pw(1.0, 0.0);
    for (int k = 0; k < order; ++k) {
        Complex v = 2.0 * half_length * pw;
        if (v.imag() < 0.0 || (v.imag() == 0.0 && v.real() < 0.0))
            v = -v;
        edges.push_back(v);
        pw *= lambda;
    }
    std::sort(edges.begin(), edges.end(), [](Complex a, Complex b) { return std::arg(a) < std::arg(b); });

    // Start at the bottom vertex (-1/2 sum of oriented edges) and walk edges
    // in increasing angle, then their negatives.
    Complex start(0.0, 0.0);
    for (const auto& e : edges)
        start -= 0.5 * e;
    std::vector<Complex> vertices;
    Complex cur = start;
    for (const auto& e : edges) {
        vertices.push_back(cur);
        cur += e;
    }
    for (const auto& e : edges) {
        vertices.push_back(cur);
        cur -= e;
    }

    // Rotate to begin at the maximal real part, ties broken by imaginary part.
    const double scale = 2.0 * half_length * order;
    const double tie = 1e-12 * scale;
    std::size_t best = 0;
    for (std::size_t i = 1; i < vertices.size(); ++i) {
        const double dr = vertices[i].real() - vertices[best].real();
        if (dr > tie || (std::abs(dr) <= tie && vertices[i].imag() > vertices[best].imag()))
            best = i;
    }
    std::rotate(vertices.begin(), vertices.begin() + static_cast<std::ptrdiff_t>(best), vertices.end());
    return {std::move(vertices)};
}

std::vector<double> interior_angles(const ConvexPolygon& polygon)
{
    const auto& v = polygon.vertices;
    const std::size_t n = v.size();
    std::vector<double> angles(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Complex incoming = v[i] - v[(i + n - 1) % n];
        const Complex outgoing = v[(i + 1) % n] - v[i];
        const double turn = std::arg(outgoing / incoming);
        angles[i] = std::numbers::pi - turn;
    }
    return angles;
}

bool omega_contains(Parameter lambda)
{
    const double re = lambda.re();
    return 0.0 <= re && re <= lambda.norm() - 0.5;
}

} // namespace ifs::attractor
