#pragma once

#include "ifs/core.hpp"
#include "ifs/raster.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ifs::connectivity {

enum class AnnulusClass { in, out, unknown };

// In if |lambda| >= 2^{-1/2}, Out if |lambda| < 1/2.
AnnulusClass classify_annulus(Parameter lambda);

enum class VerdictKind { certified_out, witness_in, inconclusive };
std::string to_string(VerdictKind kind);

struct MembershipVerdict {
    VerdictKind kind = VerdictKind::inconclusive;
    int depth_used = 0;
    // Inconclusive: the surviving prefix with the smallest |value| found first.
    std::optional<DigitString> witness;
    std::string justification;
    std::size_t surviving_count = 0;
    std::size_t nodes_visited = 0;
};

struct ExclusionOptions {
    // Enumerate every surviving prefix at max_depth instead of stopping at the first.
    bool count_survivors = false;
    std::size_t node_budget = 100'000'000;
};

// Branch-and-bound over 1 + sum a_k lambda^k, a_k in {-1,0,1}: a prefix of
// length n is pruned when |value| - eps_n > sum_{k>n} |lambda|^k. CertifiedOut
// means no {0,+-1} power series vanishes at lambda.
MembershipVerdict mset_exclude(Parameter lambda, int max_depth, const ExclusionOptions& options = {});

// Same search, certified for every point of the closed disc: the prune test is
// padded by radius * sum |a_k| k R^{k-1} and the tail uses R = |center| + radius.
MembershipVerdict mset_exclude_disc(const Disc& disc, int max_depth, const ExclusionOptions& options = {});

// Annulus test first, then the branch-and-bound.
MembershipVerdict membership(Parameter lambda, int max_depth, const ExclusionOptions& options = {});

struct M0Root {
    DigitString polynomial; // leading-one, ternary
    Complex root;
    double residual = 0.0;
};

using Region = std::variant<Disc, Window>;

struct M0Options {
    int degree_cap = 16;
    unsigned threads = 0;
};

// Roots in the closed upper half plane, inside the unit disc and the region,
// of all {0,+-1} polynomials 1 + sum_{k<=n} a_k z^k with n <= max_degree.
// Roots closer than 1e-9 are merged, keeping the lowest-degree polynomial.
std::vector<M0Root> m0_roots(int max_degree, const Region& region, const M0Options& options = {});

enum class PixelClass : std::uint8_t { out = 0, unknown = 128, in = 255 };

struct MsetRenderOptions {
    int m0_degree = 10;
    unsigned threads = 0;
    std::size_t pixel_node_budget = 2'000'000;
};

struct MsetCounts {
    std::size_t out = 0;
    std::size_t in = 0;
    std::size_t unknown = 0;
};

struct MsetRender {
    PixelGrid grid;
    int depth = 0;
    std::vector<PixelClass> pixels; // row-major
    MsetCounts counts;

    PixelClass at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * grid.resolution.width + col]; }
    GrayImage to_gray() const;
};

// Out: the whole pixel is excluded. In: the pixel center has |lambda| >= 2^{-1/2},
// or the pixel contains an M0 root of degree <= m0_degree. Unknown otherwise.
MsetRender render_mset(const Window& window, Resolution resolution, int max_depth, const MsetRenderOptions& options = {});

} // namespace ifs::connectivity
