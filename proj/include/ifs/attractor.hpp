#pragma once

#include "ifs/core.hpp"
#include "ifs/geometry.hpp"
#include "ifs/raster.hpp"

#include <cstddef>
#include <vector>

namespace ifs::attractor {

// Level-n approximation of the attractor: the distinct values
// sum_{k<n} a_k lambda^k with a_k in the alphabet. Every point of the full
// attractor lies within covering_radius of some point of the cloud.
struct PointCloud {
    std::vector<Complex> points; // sorted by (re, im), bit-exact duplicates removed
    int depth = 0;
    Alphabet alphabet = Alphabet::signs;
    Parameter lambda;
    double covering_radius = 0.0;
};

struct EnumerationOptions {
    std::size_t max_points = std::size_t{1} << 24;
    unsigned threads = 0;
};

// All |alphabet|^n level sums in digit order (a_0 most significant), with
// repetitions. Bit-identical for any thread count.
std::vector<Complex> level_sums(Parameter lambda, Alphabet alphabet, int n, const EnumerationOptions& options = {});

PointCloud prefix_sums(Parameter lambda, Alphabet alphabet, int n, const EnumerationOptions& options = {});

struct BitRaster {
    PixelGrid grid;
    std::vector<std::uint8_t> marked; // row-major, 1 = marked

    bool at(int col, int row) const { return marked[static_cast<std::size_t>(row) * grid.resolution.width + col] != 0; }
    std::size_t count() const;
    GrayImage to_gray() const; // marked = 0 (black) on 255
    RgbImage to_rgb(Rgb ink = {20, 40, 120}, Rgb paper = {255, 255, 255}) const;
};

struct RenderOptions {
    std::size_t max_nodes = std::size_t{1} << 23;
    unsigned threads = 0;
};

// Marks every pixel within covering_radius(depth) of some depth-`depth` level
// sum. No pixel meeting the attractor is missed.
BitRaster render_attractor(Parameter lambda, int depth, const Window& viewport, Resolution resolution,
                           const RenderOptions& options = {});

enum class PolygonForm {
    half_turn,     // lambda = r e^{pi i m / n}
    odd_full_turn, // lambda = r e^{2 pi i m / (2n+1)}
};

struct ConvexPolygon {
    std::vector<Complex> vertices; // counterclockwise, starting at the rightmost vertex
};

Complex polygon_parameter(double r, int m, int n, PolygonForm form);

// Exact attractor for the rotational parameters above: the Minkowski sum of the
// segments lambda^k [-1/(1-r^N), 1/(1-r^N)], k < N.
ConvexPolygon polygon_attractor(double r, int m, int n, PolygonForm form);

// Interior angle at each vertex, in radians.
std::vector<double> interior_angles(const ConvexPolygon& polygon);

// 0 <= Re(lambda) <= |lambda|^2 - 1/2.
bool omega_contains(Parameter lambda);

} // namespace ifs::attractor
