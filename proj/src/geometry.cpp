#include "radop/geometry.hpp"

#include <atomic>
#include <cmath>
#include <random>

namespace radop {

namespace {

std::uint64_t next_custom_serial() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

void check_dim(int expected, std::size_t got, const char* what) {
    if (static_cast<std::size_t>(expected) != got)
        throw DimensionMismatch(std::string(what) + ": expected dimension " + std::to_string(expected) +
                                ", got " + std::to_string(got));
}

} // namespace

ShadowRegion ShadowRegion::box(std::vector<std::pair<double, double>> intervals) {
    ShadowRegion s;
    s.kind_ = ShadowKind::Box;
    s.dim_ = static_cast<int>(intervals.size());
    if (s.dim_ < 1) throw PreconditionError("box shadow needs at least one interval");
    for (auto& [a, b] : intervals) {
        if (!(a >= 0.0) || !(b > a) || !std::isfinite(b))
            throw PreconditionError("box shadow interval must satisfy 0 <= a < b < inf");
    }
    s.intervals_ = intervals;
    s.bounding_ = std::move(intervals);
    return s;
}

ShadowRegion ShadowRegion::ball(int dim) {
    ShadowRegion s;
    s.kind_ = ShadowKind::Ball;
    s.dim_ = dim;
    if (dim < 1) throw PreconditionError("ball shadow needs dim >= 1");
    s.bounding_.assign(static_cast<std::size_t>(dim), {0.0, 1.0});
    return s;
}

ShadowRegion ShadowRegion::ordered_simplex(int dim) {
    ShadowRegion s;
    s.kind_ = ShadowKind::OrderedSimplex;
    s.dim_ = dim;
    if (dim < 1) throw PreconditionError("ordered-simplex shadow needs dim >= 1");
    s.bounding_.assign(static_cast<std::size_t>(dim), {0.0, 1.0});
    return s;
}

ShadowRegion ShadowRegion::custom(int dim, Predicate pred,
                                  std::vector<std::pair<double, double>> bounding_box) {
    ShadowRegion s;
    s.kind_ = ShadowKind::Custom;
    s.dim_ = dim;
    if (dim < 1) throw PreconditionError("custom shadow needs dim >= 1");
    check_dim(dim, bounding_box.size(), "custom shadow bounding box");
    for (auto& [a, b] : bounding_box) {
        if (!(a >= 0.0) || !(b > a) || !std::isfinite(b))
            throw PreconditionError("bounding box interval must satisfy 0 <= a < b < inf");
    }
    if (!pred) throw PreconditionError("custom shadow needs a membership predicate");
    s.pred_ = std::move(pred);
    s.bounding_ = std::move(bounding_box);
    s.serial_ = next_custom_serial();
    return s;
}

const std::vector<std::pair<double, double>>& ShadowRegion::intervals() const {
    if (kind_ != ShadowKind::Box) throw PreconditionError("intervals() is only defined for box shadows");
    return intervals_;
}

bool ShadowRegion::contains(std::span<const double> r) const {
    check_dim(dim_, r.size(), "shadow membership");
    for (double x : r)
        if (!(x >= 0.0)) return false;
    switch (kind_) {
    case ShadowKind::Box: {
        for (int j = 0; j < dim_; ++j) {
            const auto& [a, b] = intervals_[static_cast<std::size_t>(j)];
            const double x = r[static_cast<std::size_t>(j)];
            if (a == 0.0) {
                if (!(x < b)) return false;
            } else {
                if (!(x > a && x < b)) return false;
            }
        }
        return true;
    }
    case ShadowKind::Ball: {
        double q = 0.0;
        for (double x : r) q += x * x;
        return q < 1.0;
    }
    case ShadowKind::OrderedSimplex: {
        double prev = -1.0;
        for (double x : r) {
            if (!(x > prev)) return false;
            prev = x;
        }
        return prev < 1.0 && r[0] >= 0.0;
    }
    case ShadowKind::Custom:
        return pred_(r);
    }
    return false;
}

WeightSpec WeightSpec::constant(double c) {
    if (!(c > 0.0)) throw PreconditionError("constant weight must be positive");
    WeightSpec w;
    w.kind_ = Kind::Constant;
    w.constant_ = c;
    w.admissible_ = true;
    return w;
}

WeightSpec WeightSpec::radial_power(std::vector<double> exponents) {
    for (double s : exponents)
        if (!(s > -1.0)) throw PreconditionError("radial-power exponents must satisfy s > -1");
    WeightSpec w;
    w.kind_ = Kind::RadialPower;
    w.exponents_ = std::move(exponents);
    w.admissible_ = true;
    return w;
}

WeightSpec WeightSpec::custom(std::function<double(std::span<const double>)> eval, bool admissible) {
    if (!eval) throw PreconditionError("custom weight needs an evaluator");
    WeightSpec w;
    w.kind_ = Kind::Custom;
    w.eval_ = std::move(eval);
    w.admissible_ = admissible;
    w.serial_ = next_custom_serial();
    return w;
}

double WeightSpec::operator()(std::span<const double> r) const {
    switch (kind_) {
    case Kind::Constant:
        return constant_;
    case Kind::RadialPower: {
        check_dim(static_cast<int>(exponents_.size()), r.size(), "radial-power weight");
        double v = 1.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const double t = 1.0 - r[j] * r[j];
            v *= std::pow(t, exponents_[j]);
        }
        return v;
    }
    case Kind::Custom:
        return eval_(r);
    }
    return 1.0;
}

bool shadow_contains(const DomainSpec& domain, std::span<const double> r) {
    check_dim(domain.dim, r.size(), "shadow_contains");
    return domain.shadow.contains(r);
}

namespace {

// Tilde shadow of a box is the per-axis product set; the lower endpoint
// stays closed exactly when a_j == 0.
bool box_tilde_contains(const std::vector<std::pair<double, double>>& intervals,
                        std::span<const double> s) {
    for (std::size_t j = 0; j < s.size(); ++j) {
        const auto& [a, b] = intervals[j];
        const double lo = a * a;
        const double hi = b * b;
        const double x = s[j];
        if (a == 0.0) {
            if (!(x >= 0.0 && x < hi)) return false;
        } else {
            if (!(x > lo && x < hi)) return false;
        }
    }
    return true;
}

} // namespace

bool tilde_shadow_contains(const DomainSpec& domain, std::span<const double> s,
                           int max_resolution_log2) {
    check_dim(domain.dim, s.size(), "tilde_shadow_contains");
    for (double x : s)
        if (!(x >= 0.0)) return false;
    const ShadowRegion& sh = domain.shadow;
    switch (sh.kind()) {
    case ShadowKind::Box:
        return box_tilde_contains(sh.intervals(), s);
    case ShadowKind::Ball: {
        // s = r.t with |r|,|t| < 1 is attainable iff sum s_j < 1
        // (Cauchy-Schwarz one way, r = t = sqrt(s) the other).
        double q = 0.0;
        for (double x : s) q += x;
        return q < 1.0;
    }
    case ShadowKind::OrderedSimplex: {
        // Products of strictly increasing tuples are strictly increasing,
        // and sqrt preserves order: the tilde shadow is the simplex itself.
        return sh.contains(s);
    }
    case ShadowKind::Custom: {
        // Certify "outside" from the bounding box, otherwise search factor
        // pairs on grids of increasing resolution.
        const auto& bb = sh.bounding_box();
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] >= bb[j].second * bb[j].second) return false;
        }
        const int n = domain.dim;
        std::vector<double> r(static_cast<std::size_t>(n));
        std::vector<double> t(static_cast<std::size_t>(n));
        for (int level = 3; level <= max_resolution_log2; ++level) {
            const int grid = 1 << level;
            // walk the grid of candidate factors r; t = s / r must land in
            // the shadow as well.
            std::vector<int> idx(static_cast<std::size_t>(n), 0);
            bool done = false;
            while (!done) {
                bool valid = true;
                for (int j = 0; j < n && valid; ++j) {
                    const auto& [a, b] = bb[static_cast<std::size_t>(j)];
                    const double rj = a + (b - a) * (static_cast<double>(idx[static_cast<std::size_t>(j)]) + 0.5) /
                                               static_cast<double>(grid);
                    r[static_cast<std::size_t>(j)] = rj;
                    if (rj <= 0.0) {
                        if (s[static_cast<std::size_t>(j)] != 0.0) valid = false;
                        t[static_cast<std::size_t>(j)] = 0.0;
                    } else {
                        t[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j)] / rj;
                    }
                }
                if (valid && sh.contains(r) && sh.contains(t)) return true;
                int j = 0;
                while (j < n) {
                    if (++idx[static_cast<std::size_t>(j)] < grid) break;
                    idx[static_cast<std::size_t>(j)] = 0;
                    ++j;
                }
                done = (j == n);
            }
        }
        throw ResolutionExceeded("no factor pair found for " + domain.name +
                                 " at resolution 2^" + std::to_string(max_resolution_log2));
    }
    }
    return false;
}

std::vector<std::vector<double>> sample_shadow(const DomainSpec& domain, int count,
                                               std::uint64_t seed) {
    if (count < 1) throw PreconditionError("sample count must be >= 1");
    std::mt19937_64 gen(seed);
    const auto& bb = domain.shadow.bounding_box();
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    std::vector<double> r(static_cast<std::size_t>(domain.dim));
    int guard = 0;
    while (static_cast<int>(out.size()) < count) {
        for (int j = 0; j < domain.dim; ++j) {
            const auto& [a, b] = bb[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(j)] = a + (b - a) * unit_real(gen());
        }
        if (domain.shadow.contains(r)) {
            out.push_back(r);
            guard = 0;
        } else if (++guard > 1'000'000) {
            throw NumericError("rejection sampling starved on domain " + domain.name);
        }
    }
    return out;
}

std::vector<std::vector<std::complex<double>>> sample_domain(const DomainSpec& domain, int count,
                                                             std::uint64_t seed) {
    auto radii = sample_shadow(domain, count, seed);
    // fresh stream for phases, decoupled from the rejection pattern
    std::mt19937_64 gen(seed ^ 0x9e3779b97f4a7c15ull);
    std::vector<std::vector<std::complex<double>>> out;
    out.reserve(radii.size());
    for (const auto& r : radii) {
        std::vector<std::complex<double>> z(r.size());
        for (std::size_t j = 0; j < r.size(); ++j) {
            const double theta = 2.0 * M_PI * unit_real(gen());
            z[j] = std::polar(r[j], theta);
        }
        out.push_back(std::move(z));
    }
    return out;
}

DomainSpec make_disk() { return DomainSpec{"disk", 1, ShadowRegion::box({{0.0, 1.0}})}; }

DomainSpec make_polydisc(int n) {
    std::vector<std::pair<double, double>> iv(static_cast<std::size_t>(n), {0.0, 1.0});
    return DomainSpec{"polydisc", n, ShadowRegion::box(std::move(iv))};
}

DomainSpec make_ball(int n) { return DomainSpec{"ball", n, ShadowRegion::ball(n)}; }

DomainSpec make_poly_annulus(int n, double inner, double outer) {
    if (!(0.0 < inner && inner < outer))
        throw PreconditionError("poly-annulus needs 0 < inner < outer");
    std::vector<std::pair<double, double>> iv(static_cast<std::size_t>(n), {inner, outer});
    return DomainSpec{"poly-annulus", n, ShadowRegion::box(std::move(iv))};
}

DomainSpec make_hartogs_triangle() {
    return DomainSpec{"hartogs", 2, ShadowRegion::ordered_simplex(2)};
}

} // namespace radop
