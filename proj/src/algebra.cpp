#include "radop/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "radop/parallel.hpp"

namespace radop {

AlgebraElement::AlgebraElement(SpaceSpec space, Symbol symbol)
    : op_(std::move(space), std::move(symbol)) {}

Complex AlgebraElement::eval(std::span<const Complex> zeta, double tol) const {
    return inducing_function_eval(op_, zeta, tol);
}

Complex AlgebraElement::g_coefficient(const MultiIndex& alpha) const {
    if (!is_allowable(op_.space(), alpha)) return {0.0, 0.0};
    return op_.coord_sq_of(alpha) * op_.symbol().value(alpha);
}

namespace {

void require_same_space(const AlgebraElement& a, const AlgebraElement& b) {
    if (a.space().fingerprint() != b.space().fingerprint())
        throw SpaceMismatch("algebra elements live on different spaces");
}

} // namespace

AlgebraElement element_add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_space(a, b);
    return AlgebraElement(a.space(), pointwise_sum(a.symbol(), b.symbol()));
}

AlgebraElement element_mul(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_space(a, b);
    return AlgebraElement(a.space(), pointwise_product(a.symbol(), b.symbol()));
}

AlgebraElement element_star(const AlgebraElement& a) {
    return AlgebraElement(a.space(), conjugate(a.symbol()));
}

AlgebraElement element_scale(Complex c, const AlgebraElement& a) {
    return AlgebraElement(a.space(), scale(c, a.symbol()));
}

SupNormReport algebra_norm(const AlgebraElement& g, const IndexSet& probe) {
    return sup_norm(g.symbol(), probe);
}

Symbol iso_to_linf(const AlgebraElement& g) { return g.symbol(); }

AlgebraElement iso_from_linf(const SpaceSpec& space, const Symbol& s, const IndexSet& probe,
                             double bound_cap) {
    const SupNormReport norm = sup_norm(s, probe);
    if (norm.value > bound_cap)
        throw UnboundedSymbol("symbol sup " + std::to_string(norm.value) +
                              " exceeds the bound cap");
    return AlgebraElement(space, s);
}

namespace {

LaurentPoly derivative_1d(const LaurentPoly& f) {
    LaurentPoly out(1);
    for (const auto& [alpha, c] : f.terms()) {
        const int m = alpha[0];
        if (m <= 0) continue;
        out.set_coefficient(MultiIndex{m - 1}, static_cast<double>(m) * c);
    }
    return out;
}

// coefficients of g'(zeta) = sum_{m>=1} m ||c_m||^2 u-hat(m) zeta^{m-1},
// truncated so the geometric tail at radius rho_max is below tol
std::vector<Complex> derivative_series_coeffs(const AlgebraElement& g, double rho_max,
                                              double tol) {
    if (!(rho_max < 1.0)) throw OutsideTildeDomain("derivative series needs |zeta| < 1");
    const NormProviderPtr& norms = g.as_operator().norms();
    std::vector<Complex> coeffs; // index k holds the zeta^k coefficient (m = k+1)
    const double geo = rho_max / std::max(1e-300, 1.0 - rho_max);
    int quiet = 0;
    for (int m = 1; m <= 400000; ++m) {
        const Complex c = static_cast<double>(m) * norms->coord_sq(MultiIndex{m}) *
                          g.symbol().value(MultiIndex{m});
        coeffs.push_back(c);
        const double tail_proxy = std::abs(c) * std::pow(rho_max, m - 1) * geo;
        if (tail_proxy < tol && m >= 8) {
            if (++quiet >= 3) return coeffs;
        } else {
            quiet = 0;
        }
    }
    throw NoConvergence("derivative series truncation exceeded its budget");
}

Complex eval_poly_coeffs(const std::vector<Complex>& coeffs, Complex zeta) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * zeta + coeffs[k];
    return acc;
}

Complex disk_derivative_apply(const AlgebraElement& g, const LaurentPoly& f, Complex z,
                              const DiskApplyOptions& options, bool log_factor) {
    if (f.dim() != 1) throw DimensionMismatch("disk routes take one-variable polynomials");
    if (f.has_negative_exponent())
        throw NotAllowable("disk-space polynomials have nonnegative exponents");
    if (!(std::abs(z) < 1.0)) throw OutsideDomain("z outside the unit disk");

    const Complex head = g.symbol().value(MultiIndex{0}) * f.coefficient(MultiIndex{0});
    const LaurentPoly fprime = derivative_1d(f);
    if (fprime.is_zero()) return head;

    const DomainSpec disk = make_disk();
    const WeightSpec one = WeightSpec::constant(1.0);
    const double rho_max = std::abs(z); // |z w-bar| < |z| on the disk
    const std::vector<Complex> dcoef =
        derivative_series_coeffs(g, rho_max, options.series_tol);

    QuadratureRule rule = log_factor
                              ? geometric_panel_rule(0.0, 1.0, options.panels, options.radial_points)
                              : gauss_rule(std::vector<std::pair<double, double>>{{0.0, 1.0}},
                                           4 * options.radial_points);
    auto integrand = [&](std::span<const Complex> w) {
        const Complex zeta = z * std::conj(w[0]);
        Complex v = fprime.eval(w) * eval_poly_coeffs(dcoef, zeta) / M_PI; // normalized dA
        if (log_factor) v *= std::log(1.0 / std::norm(w[0]));
        return v;
    };
    const IntegrationReport rep = integrate_domain(integrand, disk, one, rule, options.phase_order);
    return head + z * rep.value;
}

} // namespace

Complex dirichlet_apply(const AlgebraElement& g, const LaurentPoly& f, Complex z,
                        const DiskApplyOptions& options) {
    if (g.space().kind() != SpaceSpec::Kind::DirichletDisk)
        throw SpaceMismatch("dirichlet_apply needs a Dirichlet-space element");
    return disk_derivative_apply(g, f, z, options, /*log_factor=*/false);
}

Complex hardy_apply(const AlgebraElement& g, const LaurentPoly& f, Complex z,
                    const DiskApplyOptions& options) {
    if (g.space().kind() != SpaceSpec::Kind::HardyDisk)
        throw SpaceMismatch("hardy_apply needs a Hardy-space element");
    return disk_derivative_apply(g, f, z, options, /*log_factor=*/true);
}

namespace {

MembershipVerdict analyze_growth(const std::vector<double>& values, bool certified) {
    MembershipVerdict v;
    const std::size_t n = values.size();
    const std::size_t head_end = std::max<std::size_t>(3, n / 10);
    for (std::size_t i = 0; i < n; ++i) {
        v.sup = std::max(v.sup, values[i]);
        if (i < head_end) v.head_sup = std::max(v.head_sup, values[i]);
    }
    v.value_at_last = values.empty() ? 0.0 : values.back();
    v.growth_ratio = v.head_sup > 0.0 ? v.sup / v.head_sup : (v.sup > 0.0 ? 1e308 : 1.0);
    if (certified)
        v.flag = MembershipFlag::CertifiedIn;
    else if (v.growth_ratio >= 4.0)
        v.flag = MembershipFlag::UnboundedEvidence;
    else
        v.flag = MembershipFlag::BoundedOnProbe;
    return v;
}

} // namespace

MembershipReport classify_membership(const LaurentPoly& coeffs, int probe_bound) {
    if (coeffs.dim() != 1) throw DimensionMismatch("membership classifier takes disk coefficients");
    if (coeffs.has_negative_exponent())
        throw NotAllowable("disk coefficient sequences start at m = 0");
    if (probe_bound < 1) throw PreconditionError("probe bound must be >= 1");

    MembershipReport report;
    report.probe_bound = probe_bound;
    // a support gap at the top of the probe certifies a polynomial
    const bool certified = coeffs.sup_degree() < probe_bound;

    std::vector<double> dirichlet, hardy, bergman;
    dirichlet.reserve(static_cast<std::size_t>(probe_bound) + 1);
    for (int m = 0; m <= probe_bound; ++m) {
        const double c = std::abs(coeffs.coefficient(MultiIndex{m}));
        hardy.push_back(c);
        dirichlet.push_back(c * static_cast<double>(std::max(1, m)));
        bergman.push_back(c * M_PI / (static_cast<double>(m) + 1.0));
    }
    report.dirichlet = analyze_growth(dirichlet, certified);
    report.hardy = analyze_growth(hardy, certified);
    report.bergman = analyze_growth(bergman, certified);
    return report;
}

// --- expression parser --------------------------------------------------------

namespace {

struct Token {
    enum class Kind { Name, Scalar, Plus, Times, Star, LParen, RParen, Dot, End };
    Kind kind = Kind::End;
    std::string text;
    double number = 0.0;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ >= s_.size()) return {Token::Kind::End, "", 0.0};
        const char c = s_[pos_];
        if (c == '+') {
            ++pos_;
            return {Token::Kind::Plus, "+", 0.0};
        }
        if (c == '(') {
            ++pos_;
            return {Token::Kind::LParen, "(", 0.0};
        }
        if (c == ')') {
            ++pos_;
            return {Token::Kind::RParen, ")", 0.0};
        }
        if (c == '*') {
            ++pos_;
            return {Token::Kind::Times, "*", 0.0};
        }
        // UTF-8 middle dot 0xC2 0xB7
        if (static_cast<unsigned char>(c) == 0xC2 && pos_ + 1 < s_.size() &&
            static_cast<unsigned char>(s_[pos_ + 1]) == 0xB7) {
            pos_ += 2;
            return {Token::Kind::Dot, "·", 0.0};
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '-') {
            std::size_t end = pos_;
            char* conv_end = nullptr;
            const double v = std::strtod(s_.c_str() + pos_, &conv_end);
            end = static_cast<std::size_t>(conv_end - s_.c_str());
            if (end == pos_) throw ParseError("bad scalar at position " + std::to_string(pos_));
            std::string text = s_.substr(pos_, end - pos_);
            pos_ = end;
            return {Token::Kind::Scalar, std::move(text), v};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t end = pos_;
            while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) ||
                                       s_[end] == '_' || s_[end] == '-'))
                ++end;
            std::string name = s_.substr(pos_, end - pos_);
            pos_ = end;
            // 'x' between a scalar and a name works as an ASCII scaling dot
            if (name == "x") return {Token::Kind::Dot, "x", 0.0};
            return {Token::Kind::Name, std::move(name), 0.0};
        }
        throw ParseError(std::string("unexpected character '") + c + "' in expression");
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;
};

} // namespace

Symbol parse_symbol_expression(const std::string& expr,
                               const std::map<std::string, Symbol>& env) {
    Lexer lexer(expr);
    Token tok = lexer.next();

    auto lookup = [&](const std::string& name) -> const Symbol& {
        auto it = env.find(name);
        if (it == env.end()) throw ParseError("unknown symbol name '" + name + "'");
        return it->second;
    };

    auto parse_term = [&]() -> Symbol {
        if (tok.kind == Token::Kind::Scalar) {
            const double c = tok.number;
            tok = lexer.next();
            if (tok.kind != Token::Kind::Dot)
                throw ParseError("scalar must be followed by '·' and a name");
            tok = lexer.next();
            if (tok.kind != Token::Kind::Name) throw ParseError("expected a name after '·'");
            Symbol s = scale(Complex{c, 0.0}, lookup(tok.text));
            tok = lexer.next();
            return s;
        }
        if (tok.kind == Token::Kind::Name) {
            if (tok.text == "star") {
                tok = lexer.next();
                if (tok.kind != Token::Kind::LParen) throw ParseError("expected '(' after star");
                tok = lexer.next();
                if (tok.kind != Token::Kind::Name) throw ParseError("expected a name inside star()");
                Symbol s = conjugate(lookup(tok.text));
                tok = lexer.next();
                if (tok.kind != Token::Kind::RParen) throw ParseError("expected ')' after star(name");
                tok = lexer.next();
                return s;
            }
            Symbol s = lookup(tok.text);
            tok = lexer.next();
            return s;
        }
        throw ParseError("expected a term");
    };

    Symbol acc = parse_term();
    while (tok.kind == Token::Kind::Plus || tok.kind == Token::Kind::Times) {
        const bool add = tok.kind == Token::Kind::Plus;
        tok = lexer.next();
        Symbol rhs = parse_term();
        acc = add ? pointwise_sum(acc, rhs) : pointwise_product(acc, rhs);
    }
    if (tok.kind != Token::Kind::End) throw ParseError("trailing input in expression");
    return acc;
}

} // namespace radop
