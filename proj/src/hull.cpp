#include "radop/hull.hpp"

#include <algorithm>
#include <cmath>

namespace radop {

namespace {

double cross(std::complex<double> o, std::complex<double> a, std::complex<double> b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

} // namespace

std::vector<std::complex<double>> convex_hull(std::vector<std::complex<double>> points,
                                              double collinear_tol) {
    auto lex_less = [](std::complex<double> a, std::complex<double> b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    };
    std::sort(points.begin(), points.end(), lex_less);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<std::complex<double>> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], points[i]) <= collinear_tol) --k;
        hull[k++] = points[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) { // upper chain
        while (k >= t && cross(hull[k - 2], hull[k - 1], points[i]) <= collinear_tol) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    // the chains are built clockwise-free already: monotone chain as written
    // yields counterclockwise order starting at the lexicographic minimum
    return hull;
}

bool hull_contains(const std::vector<std::complex<double>>& hull, std::complex<double> p,
                   double tol) {
    if (hull.empty()) return false;
    if (hull.size() == 1) return std::abs(hull[0] - p) <= tol;
    if (hull.size() == 2) {
        // segment: distance to the segment
        const std::complex<double> a = hull[0], b = hull[1];
        const double len2 = std::norm(b - a);
        double t = ((p.real() - a.real()) * (b.real() - a.real()) +
                    (p.imag() - a.imag()) * (b.imag() - a.imag())) /
                   len2;
        t = std::clamp(t, 0.0, 1.0);
        const std::complex<double> proj = a + t * (b - a);
        return std::abs(p - proj) <= tol;
    }
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const std::complex<double> a = hull[i];
        const std::complex<double> b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < -tol) return false; // strictly right of a CCW edge
    }
    return true;
}

} // namespace radop
