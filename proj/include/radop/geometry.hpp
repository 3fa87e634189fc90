#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "radop/errors.hpp"

namespace radop {

enum class ShadowKind { Box, Ball, OrderedSimplex, Custom };

// The Reinhardt shadow |Omega|: the image of the domain under the
// coordinatewise modulus. A shadow determines its domain completely.
class ShadowRegion {
public:
    using Predicate = std::function<bool(std::span<const double>)>;

    // Per-axis intervals [a_j, b_j) with 0 <= a_j < b_j. The lower end is
    // included only when a_j == 0 (moduli of interior points reach 0 there);
    // otherwise both ends are open.
    static ShadowRegion box(std::vector<std::pair<double, double>> intervals);
    // {r >= 0 : sum r_j^2 < 1}.
    static ShadowRegion ball(int dim);
    // {0 <= r_1 < r_2 < ... < r_n < 1} (Hartogs-type).
    static ShadowRegion ordered_simplex(int dim);
    static ShadowRegion custom(int dim, Predicate pred,
                               std::vector<std::pair<double, double>> bounding_box);

    ShadowKind kind() const noexcept { return kind_; }
    int dim() const noexcept { return dim_; }

    bool contains(std::span<const double> r) const;

    // Bounded box enclosing the region (equals the intervals for Box kind).
    const std::vector<std::pair<double, double>>& bounding_box() const noexcept { return bounding_; }
    const std::vector<std::pair<double, double>>& intervals() const;

    // Custom predicates cannot be compared, so each one gets a process-unique
    // serial that feeds the space fingerprint.
    std::uint64_t custom_serial() const noexcept { return serial_; }

private:
    ShadowKind kind_ = ShadowKind::Box;
    int dim_ = 0;
    std::vector<std::pair<double, double>> intervals_; // box only
    std::vector<std::pair<double, double>> bounding_;
    Predicate pred_; // custom only
    std::uint64_t serial_ = 0;
};

struct DomainSpec {
    std::string name;
    int dim = 0;
    ShadowRegion shadow;
};

// Multi-radial weight evaluated on the shadow. Admissibility is declared
// metadata; the paper treats it as a hypothesis and so do we.
class WeightSpec {
public:
    enum class Kind { Constant, RadialPower, Custom };

    static WeightSpec constant(double c = 1.0);
    // prod_j (1 - r_j^2)^{s_j}, s_j > -1; valid on shadows inside [0,1]^n.
    static WeightSpec radial_power(std::vector<double> exponents);
    static WeightSpec custom(std::function<double(std::span<const double>)> eval, bool admissible);

    Kind kind() const noexcept { return kind_; }
    double constant_value() const noexcept { return constant_; }
    const std::vector<double>& exponents() const noexcept { return exponents_; }
    bool admissible() const noexcept { return admissible_; }
    std::uint64_t custom_serial() const noexcept { return serial_; }

    double operator()(std::span<const double> r) const;

private:
    Kind kind_ = Kind::Constant;
    double constant_ = 1.0;
    std::vector<double> exponents_;
    std::function<double(std::span<const double>)> eval_;
    bool admissible_ = true;
    std::uint64_t serial_ = 0;
};

bool shadow_contains(const DomainSpec& domain, std::span<const double> r);

// Membership in the shadow of Omega~ = {z w-bar : z, w in Omega}: the set of
// entrywise products r.t with r, t in the shadow. Closed form per catalog
// kind; custom shadows fall back to a factor-pair grid search.
bool tilde_shadow_contains(const DomainSpec& domain, std::span<const double> s,
                           int max_resolution_log2 = 9);

// Seeded points z with |z| in the shadow and uniform phases. Deterministic:
// the same seed yields the same points on every run.
std::vector<std::vector<std::complex<double>>> sample_domain(const DomainSpec& domain, int count,
                                                             std::uint64_t seed);

// Seeded points of the shadow itself (used by quadrature and probes).
std::vector<std::vector<double>> sample_shadow(const DomainSpec& domain, int count,
                                               std::uint64_t seed);

// Catalog. These cover every domain the representation examples use.
DomainSpec make_disk();
DomainSpec make_polydisc(int n);
DomainSpec make_ball(int n);
DomainSpec make_poly_annulus(int n, double inner, double outer);
DomainSpec make_hartogs_triangle();

// Portable uniform double in [0,1) from a 64-bit generator draw.
inline double unit_real(std::uint64_t raw) { return static_cast<double>(raw >> 11) * 0x1.0p-53; }

} // namespace radop
