#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "radop/geometry.hpp"

namespace radop {

enum class RuleKind { TensorGauss, AdaptiveSubdivision, MonteCarlo };

// Nodes and weights approximating an integral over a shadow region.
// Rules carry an embedded coarser companion used for error estimation.
// If weight_absorbed is set, the multi-radial weight (including any
// endpoint-singularity substitution) is already folded into the weights.
struct QuadratureRule {
    int dim = 0;
    RuleKind kind = RuleKind::TensorGauss;
    int order = 0;
    std::uint64_t seed = 0;
    bool weight_absorbed = false;

    std::vector<double> nodes;   // size() * dim, node-major
    std::vector<double> weights; // size()
    std::vector<double> coarse_nodes;
    std::vector<double> coarse_weights;

    std::size_t size() const noexcept { return weights.size(); }
    std::span<const double> node(std::size_t i) const {
        return {nodes.data() + static_cast<std::ptrdiff_t>(i) * dim, static_cast<std::size_t>(dim)};
    }
    std::size_t coarse_size() const noexcept { return coarse_weights.size(); }
    std::span<const double> coarse_node(std::size_t i) const {
        return {coarse_nodes.data() + static_cast<std::ptrdiff_t>(i) * dim,
                static_cast<std::size_t>(dim)};
    }
};

struct IntegrationReport {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

struct QuadratureOptions {
    double rel_tol = 1e-8;
    std::int64_t budget = 10'000'000;
};

// Gauss-Legendre nodes/weights on [-1, 1].
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

// Tensor-product Gauss-Legendre rule over an axis-aligned box.
QuadratureRule gauss_rule(std::span<const std::pair<double, double>> intervals,
                          int points_per_axis);

// Composite 1-D rule whose panels shrink geometrically toward `a`
// (resolves integrable endpoint singularities such as log).
QuadratureRule geometric_panel_rule(double a, double b, int panels, int points_per_panel);

// Rule approximating the plain shadow integral of f(r) dr. Box shadows map
// directly; ball and ordered-simplex shadows are pulled back to a box by a
// smooth change of variables folded into the weights.
QuadratureRule shadow_rule(const DomainSpec& domain, int points_per_axis);

// Same, with the weight absorbed: sum w_i f(r_i) ~ integral f(r) w(r) dr.
// Radial-power singularities (s in (-1,0)) are removed analytically by the
// substitution r = 1 - (1-u)^{1/(1+s)} on the affected axes.
QuadratureRule weighted_shadow_rule(const DomainSpec& domain, const WeightSpec& weight,
                                    int points_per_axis);

// Seeded Monte-Carlo rule on the shadow (rejection from the bounding box).
QuadratureRule monte_carlo_shadow_rule(const DomainSpec& domain, std::size_t count,
                                       std::uint64_t seed);

// Adaptive marker rule: integrate_shadow refines dyadically until the
// relative error estimate drops below options.rel_tol or the budget runs out.
QuadratureRule adaptive_rule(const DomainSpec& domain);

using ShadowIntegrand = std::function<double(std::span<const double>)>;

IntegrationReport integrate_shadow(const ShadowIntegrand& f, const DomainSpec& domain,
                                   const QuadratureRule& rule,
                                   const QuadratureOptions& options = {});

using DomainIntegrand = std::function<std::complex<double>(std::span<const std::complex<double>>)>;

// Integral of f w dV over the domain by polar reduction: the shadow rule is
// tensored with the trapezoidal phase rule (phase_order points per axis,
// exact for trigonometric polynomials of degree < phase_order); the Jacobian
// prod r_j is included here.
IntegrationReport integrate_domain(const DomainIntegrand& f, const DomainSpec& domain,
                                   const WeightSpec& weight, const QuadratureRule& rule,
                                   int phase_order);

} // namespace radop
