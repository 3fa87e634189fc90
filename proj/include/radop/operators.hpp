#pragma once

#include <functional>
#include <memory>

#include "radop/hull.hpp"
#include "radop/laurent.hpp"
#include "radop/norms.hpp"
#include "radop/symbol.hpp"

namespace radop {

// The radial operator R = T* M_a T: a space paired with a bounded symbol.
// The action on monomials is diagonal, R e_alpha = u-hat(alpha) e_alpha.
class RadialOperator {
public:
    RadialOperator(SpaceSpec space, Symbol symbol);

    const SpaceSpec& space() const noexcept { return space_; }
    const Symbol& symbol() const noexcept { return symbol_; }
    const NormProviderPtr& norms() const noexcept { return norms_; }

    double norm_sq_of(const MultiIndex& alpha) const { return norms_->norm_sq(alpha); }
    double coord_sq_of(const MultiIndex& alpha) const { return norms_->coord_sq(alpha); }

private:
    SpaceSpec space_;
    Symbol symbol_;
    NormProviderPtr norms_;
};

// Operator norm = sup of the symbol over the allowable set, certainty-flagged
// like sup_norm.
SupNormReport operator_norm(const RadialOperator& op, const IndexSet& probe);

// --- transforms -----------------------------------------------------------

// Entry at alpha is c_alpha(f) * ||e_alpha||: computed exactly from the
// coefficients and the norm table, no quadrature.
std::vector<Complex> analysis_transform(const SpaceSpec& space, const LaurentPoly& f,
                                        const IndexSet& set);

// Independent route computing ||c_alpha|| * integral of f zbar^alpha omega dV
// by quadrature (Bergman spaces only); used for cross-validation.
std::vector<Complex> analysis_transform_quadrature(const SpaceSpec& space, const LaurentPoly& f,
                                                   const IndexSet& set, int points_per_axis,
                                                   int phase_order);

// Coefficient at alpha is seq(alpha) / ||e_alpha||; inverse of the analysis
// transform on truncations.
LaurentPoly synthesis_transform(const SpaceSpec& space, std::span<const Complex> seq,
                                const IndexSet& set);

// --- application ----------------------------------------------------------

LaurentPoly apply_diagonal(const RadialOperator& op, const LaurentPoly& f);

struct SeriesOptions {
    double tol = 1e-10;
    std::size_t term_budget = 1'000'000;
};

// g(zeta) = sum ||c_alpha||^2 u-hat(alpha) zeta^alpha over the allowable set,
// summed in graded shells with a geometric tail estimate.
Complex inducing_function_eval(const RadialOperator& op, std::span<const Complex> zeta,
                               double tol, std::size_t term_budget = 1'000'000);

struct IntegralApplyOptions {
    int shadow_points = 24;  // per axis
    int phase_order = 64;    // points per phase axis
    double series_tol = 1e-9;
    std::size_t term_budget = 2'000'000;
};

// Rf(z) = integral over Omega of f(w) g(z w-bar) omega dV(w). The inducing
// function is expanded on each phase ring through its truncated Laurent
// series (coefficients folded modulo the phase order, then a separable DFT),
// which is exact for the retained terms.
Complex apply_integral(const RadialOperator& op, const LaurentPoly& f,
                       std::span<const Complex> z, const IntegralApplyOptions& options = {});

// Reference route: black-box quadrature calling inducing_function_eval at
// every node. Slow; kept for cross-checking the fast path.
Complex apply_integral_direct(const RadialOperator& op, const LaurentPoly& f,
                              std::span<const Complex> z, int shadow_points, int phase_order,
                              double series_tol);

// --- rotations and structure checks ----------------------------------------

// (V_lambda f)(z) = f(lambda z): coefficient at alpha picks up lambda^alpha.
LaurentPoly rotation_apply(std::span<const Complex> lambda, const LaurentPoly& f);

// Max over seeded random (lambda, f) of the coefficientwise distance between
// R V_lambda f and V_lambda R f.
double radiality_residual(const RadialOperator& op, int trials, std::uint64_t seed);

// Same harness for an arbitrary coefficient map (used to expose non-radial
// maps to the same test).
double radiality_residual_generic(const std::function<LaurentPoly(const LaurentPoly&)>& op,
                                  const SpaceSpec& space, int trials, std::uint64_t seed);

RadialOperator adjoint(const RadialOperator& op);

// --- spectrum ---------------------------------------------------------------

struct SpectrumReport {
    std::vector<Complex> values;      // distinct sampled values, first-seen order
    std::vector<char> attained;       // all true: each value is an eigenvalue
    std::vector<Complex> limit_points; // heuristic cluster detection
    std::vector<Complex> hull;        // counterclockwise numerical-range hull
};

SpectrumReport spectrum_report(const RadialOperator& op, const IndexSet& probe,
                               double cluster_tol = 1e-6);

enum class TriState { Yes, No, Unknown };

TriState is_compact(const RadialOperator& op);
TriState is_finite_rank(const RadialOperator& op);

// Symbol chi_E: self-adjoint idempotent whose range is span{e_alpha : alpha in E}.
RadialOperator reducing_projection(const SpaceSpec& space, const IndexSet& E);

// Sup-entry norm of R*R - RR* on the truncated matrix in the normalized
// monomial basis, built through the full transform pipeline.
double normality_residual(const RadialOperator& op, const IndexBox& box);

// --- feasibility ------------------------------------------------------------

struct FeasibilityReport {
    struct Point {
        std::vector<Complex> zeta;
        bool converged = false;
        Complex value{0.0, 0.0};
    };
    std::vector<Point> points;
    bool feasible = true;
};

// Runs the kernel series (symbol = 1) at seeded points z w-bar of the tilde
// domain; a numeric probe, not a proof.
FeasibilityReport feasibility_probe(const DomainSpec& domain, const WeightSpec& weight,
                                    int samples, std::uint64_t seed, double tol = 1e-8);

} // namespace radop
