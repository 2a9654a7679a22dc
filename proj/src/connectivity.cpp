#include "ifs/connectivity.hpp"

#include "ifs/errors.hpp"
#include "ifs/geometry.hpp"
#include "ifs/parallel.hpp"
#include "ifs/roots.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>

namespace ifs::connectivity {

namespace {

constexpr double inner_radius = 0.5;
constexpr double outer_norm = 0.5; // |lambda|^2 >= 1/2

} // namespace

AnnulusClass classify_annulus(Parameter lambda)
{
    if (lambda.norm() >= outer_norm)
        return AnnulusClass::in;
    if (lambda.modulus() < inner_radius)
        return AnnulusClass::out;
    return AnnulusClass::unknown;
}

std::string to_string(VerdictKind kind)
{
    switch (kind) {
    case VerdictKind::certified_out:
        return "certified_out";
    case VerdictKind::witness_in:
        return "witness_in";
    case VerdictKind::inconclusive:
        return "inconclusive";
    }
    return "?";
}

MembershipVerdict mset_exclude_disc(const Disc& disc, int max_depth, const ExclusionOptions& options)
{
    if (max_depth < 0)
        throw DomainError("max_depth must be nonnegative");
    if (disc.radius < 0.0)
        throw DomainError("disc radius must be nonnegative");
    const double outer = round_up(modulus_up(disc.center) + disc.radius);
    if (!(outer < 1.0))
        throw DomainError("exclusion disc must lie inside the unit disc");

    const auto depth = static_cast<std::size_t>(max_depth);
    std::vector<Complex> pw(depth + 1);
    std::vector<double> threshold(depth + 1); // tail + eps at each depth
    std::vector<double> slope(depth + 1);     // k R^{k-1}, for the derivative pad
    Complex cur(1.0, 0.0);
    for (std::size_t k = 0; k <= depth; ++k) {
        pw[k] = cur;
        cur *= disc.center;
        threshold[k] = geometric_tail(outer, static_cast<int>(k)) + 1e-12 * static_cast<double>(k + 2);
        slope[k] = k == 0 ? 0.0 : round_up(static_cast<double>(k) * std::pow(outer, static_cast<double>(k - 1)));
    }

    struct Node {
        Complex value;
        double derivative; // sum |a_j| j R^{j-1} along the path
        std::int32_t depth;
        std::int8_t digit;
    };

    MembershipVerdict verdict;
    std::vector<Node> stack;
    stack.reserve(3 * depth + 3);
    stack.push_back({Complex(1.0, 0.0), 0.0, 0, 0});
    std::vector<int> path(depth, 0);
    std::size_t visited = 0;
    int deepest_prune = 0;
    bool any_survivor = false;

    while (!stack.empty()) {
        const Node node = stack.back();
        stack.pop_back();
        if (++visited > options.node_budget)
            throw ResourceError("exclusion search exceeded the budget of " + std::to_string(options.node_budget) +
                                " nodes");
        const auto k = static_cast<std::size_t>(node.depth);
        if (k > 0)
            path[k - 1] = node.digit;

        const double pad = disc.radius * node.derivative;
        if (std::abs(node.value) - pad > threshold[k]) {
            deepest_prune = std::max(deepest_prune, node.depth);
            continue;
        }
        if (k == depth) {
            if (!any_survivor) {
                verdict.witness = DigitString(path, Alphabet::ternary, true);
                any_survivor = true;
            }
            ++verdict.surviving_count;
            if (!options.count_survivors)
                break;
            continue;
        }

        std::array<Node, 3> children;
        for (int i = 0; i < 3; ++i) {
            const int a = i - 1;
            children[i] = {node.value + static_cast<double>(a) * pw[k + 1],
                           node.derivative + (a != 0 ? slope[k + 1] : 0.0), node.depth + 1,
                           static_cast<std::int8_t>(a)};
        }
        // Push largest first so the child nearest zero is explored next.
        std::stable_sort(children.begin(), children.end(),
                         [](const Node& x, const Node& y) { return std::abs(x.value) > std::abs(y.value); });
        for (const auto& c : children)
            stack.push_back(c);
    }

    verdict.nodes_visited = visited;
    if (any_survivor) {
        verdict.kind = VerdictKind::inconclusive;
        verdict.depth_used = max_depth;
        verdict.justification = "a prefix of length " + std::to_string(max_depth) + " survives";
    } else {
        verdict.kind = VerdictKind::certified_out;
        verdict.depth_used = deepest_prune;
        verdict.witness.reset();
        verdict.justification = "every prefix pruned by depth " + std::to_string(deepest_prune);
    }
    return verdict;
}

MembershipVerdict mset_exclude(Parameter lambda, int max_depth, const ExclusionOptions& options)
{
    require_in_disc(lambda);
    return mset_exclude_disc(Disc{lambda.value(), 0.0}, max_depth, options);
}

MembershipVerdict membership(Parameter lambda, int max_depth, const ExclusionOptions& options)
{
    require_in_disc(lambda);
    if (classify_annulus(lambda) == AnnulusClass::in) {
        MembershipVerdict v;
        v.kind = VerdictKind::witness_in;
        v.justification = "|lambda| >= 2^(-1/2)";
        return v;
    }
    return mset_exclude(lambda, max_depth, options);
}

// ---------------------------------------------------------------------------
// M0 enumeration

namespace {

using IntPoly = std::vector<long long>; // constant first

// Exact division by a monic polynomial; returns nullopt if not divisible.
std::optional<IntPoly> divide_exact(const IntPoly& num, const IntPoly& den)
{
    if (num.size() < den.size())
        return std::nullopt;
    IntPoly rem = num;
    IntPoly quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const long long q = rem[i + den.size() - 1];
        quot[i] = q;
        for (std::size_t j = 0; j < den.size(); ++j)
            rem[i + j] -= q * den[j];
    }
    for (std::size_t j = 0; j + 1 < den.size(); ++j)
        if (rem[j] != 0)
            return std::nullopt;
    return quot;
}

// Cyclotomic polynomials Phi_N with deg <= max_degree.
const std::vector<IntPoly>& cyclotomics()
{
    static const std::vector<IntPoly> table = [] {
        constexpr int max_degree = 24;
        std::map<int, IntPoly> phi;
        std::vector<IntPoly> out;
        for (int n = 1; n <= 400; ++n) {
            IntPoly p(static_cast<std::size_t>(n) + 1, 0);
            p[0] = -1;
            p[n] = 1;
            for (const auto& [d, f] : phi)
                if (n % d == 0)
                    p = *divide_exact(p, f);
            phi[n] = p;
            if (static_cast<int>(p.size()) - 1 <= max_degree)
                out.push_back(p);
        }
        return out;
    }();
    return table;
}

IntPoly strip_cyclotomic(IntPoly p)
{
    for (const auto& phi : cyclotomics()) {
        while (p.size() >= phi.size()) {
            auto q = divide_exact(p, phi);
            if (!q)
                break;
            p = std::move(*q);
        }
    }
    return p;
}

bool in_region(const Region& region, Complex z)
{
    if (const auto* d = std::get_if<Disc>(&region))
        return std::abs(z - d->center) < d->radius;
    return std::get<Window>(region).contains(z);
}

struct Found {
    std::size_t index;
    Complex root;
    double residual;
};

std::vector<int> digits_of(std::size_t index_in_degree, int degree)
{
    // a_degree in {-1, 1}, a_1..a_{degree-1} in {-1, 0, 1}
    std::vector<int> digits(static_cast<std::size_t>(degree));
    digits[degree - 1] = (index_in_degree % 2 == 0) ? -1 : 1;
    std::size_t rest = index_in_degree / 2;
    for (int k = 0; k < degree - 1; ++k) {
        digits[k] = static_cast<int>(rest % 3) - 1;
        rest /= 3;
    }
    return digits;
}

void collect_roots(const std::vector<int>& digits, std::size_t index, const Region& region, std::vector<Found>& out)
{
    std::vector<double> coeffs;
    coeffs.reserve(digits.size() + 1);
    coeffs.push_back(1.0);
    for (int d : digits)
        coeffs.push_back(d);

    roots::RootOptions ropts;
    ropts.initial_radius = 1.0;
    auto found = roots::aberth(coeffs, ropts);

    // Roots of unity may be multiple and badly conditioned; divide them out
    // exactly and solve the rest.
    bool near_circle = false;
    for (const auto& z : found.roots)
        if (std::abs(z) > 1.0 - 1e-3 && std::abs(z) < 1.0 + 1e-3)
            near_circle = true;
    if (near_circle) {
        IntPoly p(coeffs.begin(), coeffs.end());
        if (p.back() < 0)
            for (auto& c : p)
                c = -c;
        const IntPoly reduced = strip_cyclotomic(p);
        if (reduced.size() < p.size()) {
            coeffs.assign(reduced.begin(), reduced.end());
            if (coeffs.size() <= 1)
                return;
            found = roots::aberth(coeffs, ropts);
        }
    }

    for (const auto& z : found.roots) {
        if (z.imag() < -1e-12 || !(std::abs(z) < 1.0 - 1e-9) || !in_region(region, z))
            continue;
        const Complex root = std::abs(z.imag()) <= 1e-12 ? Complex(z.real(), 0.0) : z;
        const double res = roots::residual(coeffs, root);
        if (res <= 1e-10)
            out.push_back({index, root, res});
    }
}

} // namespace

std::vector<M0Root> m0_roots(int max_degree, const Region& region, const M0Options& options)
{
    if (max_degree > options.degree_cap)
        throw ResourceError("m0_roots degree " + std::to_string(max_degree) + " exceeds the cap of " +
                            std::to_string(options.degree_cap));
    if (max_degree < 1)
        return {};

    // Global index: degree-major, 2 * 3^{d-1} polynomials of exact degree d.
    std::vector<std::size_t> first_index{0};
    for (int d = 1; d <= max_degree; ++d) {
        std::size_t count = 2;
        for (int k = 1; k < d; ++k)
            count *= 3;
        first_index.push_back(first_index.back() + count);
    }
    const std::size_t total = first_index.back();

    constexpr std::size_t block = 4096;
    const std::size_t blocks = (total + block - 1) / block;
    std::vector<std::vector<Found>> partial(blocks);
    parallel_for(blocks, options.threads, [&](std::size_t b) {
        const std::size_t begin = b * block;
        const std::size_t end = std::min(total, begin + block);
        for (std::size_t idx = begin; idx < end; ++idx) {
            const auto it = std::upper_bound(first_index.begin(), first_index.end(), idx);
            const int degree = static_cast<int>(it - first_index.begin());
            collect_roots(digits_of(idx - first_index[degree - 1], degree), idx, region, partial[b]);
        }
    });

    // Merge in index order; drop roots within 1e-9 of an earlier one.
    constexpr double merge = 1e-9;
    std::map<std::pair<long long, long long>, std::vector<Complex>> cells;
    std::vector<M0Root> out;
    for (const auto& part : partial) {
        for (const auto& f : part) {
            const auto cx = static_cast<long long>(std::floor(f.root.real() / merge));
            const auto cy = static_cast<long long>(std::floor(f.root.imag() / merge));
            bool duplicate = false;
            for (long long i = -1; i <= 1 && !duplicate; ++i)
                for (long long j = -1; j <= 1 && !duplicate; ++j) {
                    const auto c = cells.find({cx + i, cy + j});
                    if (c == cells.end())
                        continue;
                    for (const auto& z : c->second)
                        if (std::abs(z - f.root) <= merge)
                            duplicate = true;
                }
            if (duplicate)
                continue;
            cells[{cx, cy}].push_back(f.root);
            const auto it = std::upper_bound(first_index.begin(), first_index.end(), f.index);
            const int degree = static_cast<int>(it - first_index.begin());
            out.push_back({DigitString(digits_of(f.index - first_index[degree - 1], degree), Alphabet::ternary, true),
                           f.root, f.residual});
        }
    }
    std::sort(out.begin(), out.end(), [](const M0Root& a, const M0Root& b) {
        return a.root.real() < b.root.real() || (a.root.real() == b.root.real() && a.root.imag() < b.root.imag());
    });
    return out;
}

// ---------------------------------------------------------------------------
// Tri-state rendering

GrayImage MsetRender::to_gray() const
{
    GrayImage img(grid.resolution.width, grid.resolution.height);
    for (std::size_t i = 0; i < pixels.size(); ++i)
        img.pixels[i] = static_cast<std::uint8_t>(pixels[i]);
    return img;
}

MsetRender render_mset(const Window& window, Resolution resolution, int max_depth, const MsetRenderOptions& options)
{
    if (!window.valid() || resolution.width < 1 || resolution.height < 1)
        throw PreconditionError("render needs a nonempty window and resolution >= 1x1");
    if (max_depth < 0)
        throw DomainError("depth must be nonnegative");

    MsetRender render;
    render.grid = PixelGrid{window, resolution};
    render.depth = max_depth;
    const auto& grid = render.grid;
    const int w = resolution.width;
    const int h = resolution.height;
    render.pixels.assign(static_cast<std::size_t>(w) * h, PixelClass::unknown);

    // M0 roots that can fall in the window (upper half plane, plus conjugates).
    std::vector<Complex> witnesses;
    if (options.m0_degree > 0) {
        const double lo = window.im_min >= 0.0 ? window.im_min : (window.im_max <= 0.0 ? -window.im_max : 0.0);
        const Window upper{window.re_min, window.re_max, lo, std::max(std::abs(window.im_min), std::abs(window.im_max))};
        M0Options mopts;
        mopts.threads = options.threads;
        mopts.degree_cap = std::max(mopts.degree_cap, options.m0_degree);
        for (const auto& r : m0_roots(options.m0_degree, upper, mopts)) {
            if (window.contains(r.root))
                witnesses.push_back(r.root);
            if (r.root.imag() != 0.0 && window.contains(std::conj(r.root)))
                witnesses.push_back(std::conj(r.root));
        }
    }
    std::vector<std::uint8_t> has_root(static_cast<std::size_t>(w) * h, 0);
    for (const auto& z : witnesses) {
        // A root on a pixel edge marks every pixel sharing that edge.
        const double fc = (z.real() - window.re_min) / grid.dx();
        const double fr = (window.im_max - z.imag()) / grid.dy();
        for (int col = static_cast<int>(std::floor(fc)) - 1; col <= static_cast<int>(std::floor(fc)) + 1; ++col)
            for (int row = static_cast<int>(std::floor(fr)) - 1; row <= static_cast<int>(std::floor(fr)) + 1; ++row)
                if (col >= 0 && col < w && row >= 0 && row < h && grid.pixel(col, row).contains(z))
                    has_root[static_cast<std::size_t>(row) * w + col] = 1;
    }

    const double pixel_radius = round_up(grid.pixel_radius());
    parallel_for(static_cast<std::size_t>(w) * h, options.threads, [&](std::size_t i) {
        const int col = static_cast<int>(i % w);
        const int row = static_cast<int>(i / w);
        const Complex c = grid.center(col, row);
        if (has_root[i] || std::norm(c) >= outer_norm) {
            render.pixels[i] = PixelClass::in;
            return;
        }
        if (!(std::abs(c) + pixel_radius < 1.0))
            return;
        ExclusionOptions eopts;
        eopts.node_budget = options.pixel_node_budget;
        try {
            if (mset_exclude_disc(Disc{c, pixel_radius}, max_depth, eopts).kind == VerdictKind::certified_out)
                render.pixels[i] = PixelClass::out;
        } catch (const ResourceError&) {
            // budget exhausted: stays Unknown
        }
    });

    for (auto p : render.pixels) {
        if (p == PixelClass::out)
            ++render.counts.out;
        else if (p == PixelClass::in)
            ++render.counts.in;
        else
            ++render.counts.unknown;
    }
    return render;
}

} // namespace ifs::connectivity
