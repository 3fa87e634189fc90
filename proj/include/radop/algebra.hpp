#pragma once

#include <map>
#include <string>

#include "radop/operators.hpp"

namespace radop {

// Element of the von Neumann algebra of inducing functions: stored
// symbol-first (the map g <-> u-hat is injective), with the analytic
// function g derived by series evaluation.
class AlgebraElement {
public:
    AlgebraElement(SpaceSpec space, Symbol symbol);

    const SpaceSpec& space() const noexcept { return op_.space(); }
    const Symbol& symbol() const noexcept { return op_.symbol(); }
    const RadialOperator& as_operator() const noexcept { return op_; }

    // g(zeta) by the kernel series
    Complex eval(std::span<const Complex> zeta, double tol = 1e-10) const;
    // Laurent coefficient of g at alpha: ||c_alpha||^2 u-hat(alpha)
    Complex g_coefficient(const MultiIndex& alpha) const;

private:
    RadialOperator op_;
};

AlgebraElement element_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement element_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement element_star(const AlgebraElement& a);
AlgebraElement element_scale(Complex c, const AlgebraElement& a);

// ||g||_S = ||R_g|| = sup |u-hat| (certainty-flagged as in sup_norm).
SupNormReport algebra_norm(const AlgebraElement& g, const IndexSet& probe);

Symbol iso_to_linf(const AlgebraElement& g);
AlgebraElement iso_from_linf(const SpaceSpec& space, const Symbol& s, const IndexSet& probe,
                             double bound_cap = 1e8);

struct DiskApplyOptions {
    int radial_points = 16;  // Gauss points per panel
    int panels = 30;         // dyadic panels toward 0
    int phase_order = 64;    // must clear the truncated g' degree
    double series_tol = 1e-10;
};

// Dirichlet route: u-hat(0) f(0) + z * integral of f'(w) g'(z w-bar) dA(w),
// normalized area measure.
Complex dirichlet_apply(const AlgebraElement& g, const LaurentPoly& f, Complex z,
                        const DiskApplyOptions& options = {});

// Hardy route: u-hat(0) f(0) + z * integral of f'(w) g'(z w-bar)
// log(1/|w|^2) dA(w). The log factor rides the integration variable; the
// panel rule resolves the singularity at the origin.
Complex hardy_apply(const AlgebraElement& g, const LaurentPoly& f, Complex z,
                    const DiskApplyOptions& options = {});

// --- inclusion-chain classifier ---------------------------------------------

enum class MembershipFlag { CertifiedIn, BoundedOnProbe, UnboundedEvidence };

struct MembershipVerdict {
    MembershipFlag flag = MembershipFlag::BoundedOnProbe;
    double sup = 0.0;            // max |recovered symbol| over the probe
    double head_sup = 0.0;       // max over the leading decile
    double growth_ratio = 1.0;   // sup / head_sup
    double value_at_last = 0.0;  // |recovered symbol| at index N
};

struct MembershipReport {
    int probe_bound = 0;
    MembershipVerdict dirichlet;
    MembershipVerdict hardy;
    MembershipVerdict bergman;
};

// Recovers the candidate symbol of g per space from its Taylor coefficients
// (u-hat(m) = c_m(g) * ||e_m||^2) and reports boundedness evidence on the
// probe 0..N. Polynomials are certified in all three spaces.
MembershipReport classify_membership(const LaurentPoly& coeffs, int probe_bound);

// --- CLI expression surface ---------------------------------------------------
// expr := term (('+'|'*') term)* ; term := name | 'star(' name ')'
//       | scalar '·' name    (also accepted: scalar 'x' name)
// Evaluated left to right; '+' and '*' share one precedence level.
Symbol parse_symbol_expression(const std::string& expr,
                               const std::map<std::string, Symbol>& env);

} // namespace radop
