#pragma once

#include <complex>
#include <vector>

namespace radop {

// 2-D convex hull (monotone chain) of points in the complex plane,
// counterclockwise, starting from the lexicographically smallest vertex.
// Degenerate hulls (a point, a segment) are returned as-is. Points within
// collinear_tol of an edge are not kept as vertices.
std::vector<std::complex<double>> convex_hull(std::vector<std::complex<double>> points,
                                              double collinear_tol = 1e-12);

// Exact containment check against a hull built by convex_hull (points on the
// boundary count as inside), with the same tolerance convention.
bool hull_contains(const std::vector<std::complex<double>>& hull, std::complex<double> p,
                   double tol = 1e-9);

} // namespace radop
