#pragma once

#include "ifs/core.hpp"

#include <vector>

namespace ifs::geometry {

using Point = Complex;
// Vertex list of a convex polygon, counterclockwise.
using Polygon = std::vector<Point>;

inline double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

double signed_area(const Polygon& poly);
inline double area(const Polygon& poly) { return std::abs(signed_area(poly)); }

// Keeps the part of `poly` on or left of the directed line a->b shifted left
// by `offset` (signed distance >= offset).
Polygon clip_halfplane(const Polygon& poly, Point a, Point b, double offset = 0.0);

// subject \ clip as disjoint convex pieces. Points within `snap` of the clip
// boundary count as covered.
std::vector<Polygon> subtract_convex(const Polygon& subject, const Polygon& clip, double snap);

// Counterclockwise hull without collinear points.
Polygon convex_hull(std::vector<Point> points);

bool contains(const Polygon& poly, Point p, double tolerance = 0.0);
double distance_to_polygon(const Polygon& poly, Point p);

// Hausdorff distance between two convex polygons (as filled sets).
double hausdorff_convex(const Polygon& a, const Polygon& b);

// Distance from p to the closed axis-aligned box.
double distance_to_box(const Window& box, Point p);

Polygon rectangle_polygon(const Rectangle& rect, Point center = {});

} // namespace ifs::geometry
