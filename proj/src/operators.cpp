#include "radop/operators.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <mutex>
#include <random>
#include <unordered_set>

#include "radop/parallel.hpp"

namespace radop {

namespace {

std::vector<double> moduli(std::span<const Complex> z) {
    std::vector<double> r(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) r[j] = std::abs(z[j]);
    return r;
}

// sup over the moduli box [lo, hi] of |zeta^alpha|
double power_bound(const MultiIndex& alpha, std::span<const double> lo,
                   std::span<const double> hi) {
    double v = 1.0;
    for (int j = 0; j < alpha.dim(); ++j) {
        const int e = alpha[j];
        if (e == 0) continue;
        const double r = e > 0 ? hi[static_cast<std::size_t>(j)] : lo[static_cast<std::size_t>(j)];
        v *= std::pow(r, static_cast<double>(e));
    }
    return v;
}

// Indices with sup-norm exactly n, without walking the box interior:
// pick the first axis attaining the bound, pin it to +-n, let earlier axes
// range over (-n, n) and later ones over [-n, n].
void enumerate_surface(int dim, int n, std::vector<MultiIndex>& out) {
    if (n == 0) {
        out.push_back(MultiIndex::zeros(dim));
        return;
    }
    std::vector<int> alpha(static_cast<std::size_t>(dim), 0);
    for (int pin = 0; pin < dim; ++pin) {
        for (int sign = -1; sign <= 1; sign += 2) {
            alpha.assign(static_cast<std::size_t>(dim), 0);
            alpha[static_cast<std::size_t>(pin)] = sign * n;
            // free axes: lo..hi per position
            std::vector<int> free_axes;
            for (int j = 0; j < dim; ++j)
                if (j != pin) free_axes.push_back(j);
            auto lo = [&](int j) { return j < pin ? -(n - 1) : -n; };
            auto hi = [&](int j) { return j < pin ? n - 1 : n; };
            for (int j : free_axes) alpha[static_cast<std::size_t>(j)] = lo(j);
            while (true) {
                out.push_back(MultiIndex(std::span<const int>(alpha)));
                int k = static_cast<int>(free_axes.size()) - 1;
                while (k >= 0) {
                    const int j = free_axes[static_cast<std::size_t>(k)];
                    if (++alpha[static_cast<std::size_t>(j)] <= hi(j)) break;
                    alpha[static_cast<std::size_t>(j)] = lo(j);
                    --k;
                }
                if (k < 0) break;
            }
        }
    }
}

// Laurent coefficients of the inducing function, ||c_alpha||^2 u-hat(alpha),
// grown lazily in graded shells. Growth is serialized; reads of already
// grown shells are lock-free (deque elements are stable under push_back).
class KernelSeries {
public:
    struct Term {
        MultiIndex alpha;
        Complex coeff;
    };

    KernelSeries(const SpaceSpec& space, const Symbol& symbol, NormProviderPtr norms)
        : space_(space), symbol_(symbol), norms_(std::move(norms)) {}

    void grow_to_shell(int n) {
        std::lock_guard<std::mutex> lock(mutex_);
        while (static_cast<int>(shell_end_.size()) <= n) {
            const int shell = static_cast<int>(shell_end_.size());
            std::vector<MultiIndex> surface;
            enumerate_surface(space_.dim(), shell, surface);
            std::sort(surface.begin(), surface.end(), graded_less);
            for (const MultiIndex& alpha : surface) {
                if (!is_allowable(space_, alpha)) continue;
                const Complex u = symbol_.value(alpha);
                terms_.push_back({alpha, norms_->coord_sq(alpha) * u});
            }
            shell_end_.push_back(terms_.size());
        }
    }

    // [begin, end) term offsets of shell n; valid once grown
    std::pair<std::size_t, std::size_t> shell_range(int n) const {
        const std::size_t lo = n == 0 ? 0 : shell_end_[static_cast<std::size_t>(n - 1)];
        return {lo, shell_end_[static_cast<std::size_t>(n)]};
    }

    const Term& term(std::size_t i) const { return terms_[i]; }

    double shell_weight(int n, std::span<const double> lo, std::span<const double> hi) const {
        auto [b, e] = shell_range(n);
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i)
            s += std::abs(terms_[i].coeff) * power_bound(terms_[i].alpha, lo, hi);
        return s;
    }

    bool symbol_has_finite_support() const {
        return symbol_.kind() == Symbol::Kind::Finite ||
               (symbol_.kind() == Symbol::Kind::Sampled &&
                symbol_.sampled_extension() == SampledExtension::ZeroExtend);
    }

    int support_sup_bound() const {
        if (symbol_.kind() == Symbol::Kind::Finite) {
            int b = 0;
            for (const auto& [alpha, v] : symbol_.finite_entries()) b = std::max(b, alpha.sup_norm());
            return b;
        }
        if (symbol_.kind() == Symbol::Kind::Sampled) return symbol_.sampled_box().bound;
        return -1;
    }

private:
    SpaceSpec space_;
    Symbol symbol_;
    NormProviderPtr norms_;
    std::mutex mutex_;
    std::deque<Term> terms_;
    std::vector<std::size_t> shell_end_;
};

std::shared_ptr<KernelSeries> make_series(const RadialOperator& op) {
    return std::make_shared<KernelSeries>(op.space(), op.symbol(), op.norms());
}

struct SeriesSum {
    Complex value{0.0, 0.0};
    bool converged = false;
    int shells_used = 0;
    std::size_t terms_used = 0;
};

// Shell-by-shell summation with a geometric tail estimate; finite-support
// symbols terminate exactly once the shells pass the support. Grows the
// series, so callers must not run it concurrently on a shared instance.
SeriesSum sum_series(KernelSeries& series, std::span<const Complex> zeta, double tol,
                     std::size_t term_budget) {
    SeriesSum out;
    const int support_bound = series.symbol_has_finite_support() ? series.support_sup_bound() : -1;
    double s_prev2 = -1.0, s_prev = -1.0;
    for (int n = 0;; ++n) {
        series.grow_to_shell(n);
        auto [lo, hi] = series.shell_range(n);
        Complex shell_sum{0.0, 0.0};
        double shell_abs = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& t = series.term(i);
            const Complex term = t.coeff * complex_power(zeta, t.alpha);
            shell_sum += term;
            shell_abs += std::abs(term);
        }
        out.value += shell_sum;
        out.terms_used += hi - lo;
        out.shells_used = n + 1;
        if (support_bound >= 0 && n >= support_bound) {
            out.converged = true;
            return out;
        }
        if (out.terms_used > term_budget)
            throw NoConvergence("inducing-function series exceeded term budget");
        if (s_prev >= 0.0 && s_prev2 >= 0.0 && shell_abs < s_prev && s_prev < s_prev2) {
            const double ratio =
                std::max(shell_abs / std::max(s_prev, 1e-300), s_prev / std::max(s_prev2, 1e-300));
            if (ratio < 1.0) {
                const double tail = shell_abs * ratio / (1.0 - ratio);
                if (tail < tol) {
                    out.converged = true;
                    return out;
                }
            }
        }
        s_prev2 = s_prev;
        s_prev = shell_abs;
    }
}

// Per-node moduli of z_j * r_j decide how deep the series must go; the node
// bounds cannot be combined across axes (a small |zeta_2| paired with a
// negative exponent would overestimate wildly), so each node is scanned at
// its own moduli with cached power tables. Returns the max cutoff shell,
// with all shells grown.
int truncation_shell_for_rule(KernelSeries& series, const QuadratureRule& rule,
                              std::span<const Complex> z, double tol,
                              std::size_t term_budget) {
    if (series.symbol_has_finite_support()) {
        const int bound = series.support_sup_bound();
        series.grow_to_shell(bound);
        return bound;
    }
    const int n = rule.dim;
    int max_shell = 0;
    std::vector<std::vector<double>> pos(static_cast<std::size_t>(n));
    std::vector<std::vector<double>> neg(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const auto r = rule.node(i);
        for (int j = 0; j < n; ++j) {
            const double rho = std::abs(z[static_cast<std::size_t>(j)]) *
                               r[static_cast<std::size_t>(j)];
            pos[static_cast<std::size_t>(j)].assign(1, 1.0);
            neg[static_cast<std::size_t>(j)].assign(1, 1.0);
            pos[static_cast<std::size_t>(j)].push_back(rho);
            neg[static_cast<std::size_t>(j)].push_back(rho > 0.0 ? 1.0 / rho : 0.0);
        }
        double s_prev2 = -1.0, s_prev = -1.0;
        for (int m = 0;; ++m) {
            series.grow_to_shell(m);
            auto [b, e] = series.shell_range(m);
            if (e > term_budget)
                throw NoConvergence("kernel truncation exceeded the term budget");
            for (int j = 0; j < n; ++j) {
                auto& pj = pos[static_cast<std::size_t>(j)];
                auto& nj = neg[static_cast<std::size_t>(j)];
                while (static_cast<int>(pj.size()) <= m + 1) {
                    pj.push_back(pj.back() * pj[1]);
                    nj.push_back(nj.back() * nj[1]);
                }
            }
            double s = 0.0;
            for (std::size_t t = b; t < e; ++t) {
                const auto& term = series.term(t);
                double p = std::abs(term.coeff);
                for (int j = 0; j < n; ++j) {
                    const int ej = term.alpha[j];
                    p *= ej >= 0 ? pos[static_cast<std::size_t>(j)][static_cast<std::size_t>(ej)]
                                 : neg[static_cast<std::size_t>(j)][static_cast<std::size_t>(-ej)];
                }
                s += p;
            }
            if (s_prev >= 0.0 && s_prev2 >= 0.0 && s < s_prev && s_prev < s_prev2) {
                const double ratio =
                    std::max(s / std::max(s_prev, 1e-300), s_prev / std::max(s_prev2, 1e-300));
                if (ratio < 1.0 && s * ratio / (1.0 - ratio) < tol) {
                    max_shell = std::max(max_shell, m);
                    break;
                }
            }
            s_prev2 = s_prev;
            s_prev = s;
        }
    }
    return max_shell;
}

void require_tilde_membership(const SpaceSpec& space, std::span<const Complex> zeta) {
    if (static_cast<int>(zeta.size()) != space.dim())
        throw DimensionMismatch("point dimension mismatch");
    const std::vector<double> rho = moduli(zeta);
    if (space.kind() == SpaceSpec::Kind::Bergman) {
        if (!tilde_shadow_contains(space.domain(), rho))
            throw OutsideTildeDomain("point lies outside the tilde domain");
    } else {
        if (!(rho[0] < 1.0)) throw OutsideTildeDomain("point lies outside the unit disk");
    }
}

} // namespace

RadialOperator::RadialOperator(SpaceSpec space, Symbol symbol)
    : space_(std::move(space)), symbol_(std::move(symbol)),
      norms_(std::make_shared<NormProvider>(space_)) {
    if (symbol_.dim() != space_.dim())
        throw DimensionMismatch("symbol dimension does not match space dimension");
}

SupNormReport operator_norm(const RadialOperator& op, const IndexSet& probe) {
    return sup_norm(op.symbol(), probe);
}

std::vector<Complex> analysis_transform(const SpaceSpec& space, const LaurentPoly& f,
                                        const IndexSet& set) {
    if (f.dim() != space.dim()) throw DimensionMismatch("polynomial dimension mismatch");
    for (const auto& [alpha, c] : f.terms())
        if (!is_allowable(space, alpha))
            throw NotAllowable("coefficient at non-allowable index " + alpha.to_string());
    NormProvider norms(space);
    std::vector<Complex> seq(set.size(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < set.size(); ++i) {
        const Complex c = f.coefficient(set.at(i));
        if (c != Complex{0.0, 0.0}) seq[i] = c * std::sqrt(norms.norm_sq(set.at(i)));
    }
    return seq;
}

std::vector<Complex> analysis_transform_quadrature(const SpaceSpec& space, const LaurentPoly& f,
                                                   const IndexSet& set, int points_per_axis,
                                                   int phase_order) {
    if (space.kind() != SpaceSpec::Kind::Bergman)
        throw PreconditionError("quadrature analysis route is defined on Bergman spaces");
    NormProvider norms(space);
    const QuadratureRule rule = weighted_shadow_rule(space.domain(), space.weight(), points_per_axis);
    std::vector<Complex> seq(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        const MultiIndex& alpha = set.at(i);
        auto integrand = [&](std::span<const Complex> w) {
            return f.eval(w) * std::conj(complex_power(w, alpha));
        };
        const IntegrationReport rep =
            integrate_domain(integrand, space.domain(), space.weight(), rule, phase_order);
        seq[i] = rep.value / std::sqrt(norms.norm_sq(alpha));
    }
    return seq;
}

LaurentPoly synthesis_transform(const SpaceSpec& space, std::span<const Complex> seq,
                                const IndexSet& set) {
    if (seq.size() != set.size()) throw DimensionMismatch("sequence/set size mismatch");
    NormProvider norms(space);
    LaurentPoly f(space.dim());
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (seq[i] == Complex{0.0, 0.0}) continue;
        // divide by the same sqrt the analysis multiplied with
        f.set_coefficient(set.at(i), seq[i] / std::sqrt(norms.norm_sq(set.at(i))));
    }
    return f;
}

LaurentPoly apply_diagonal(const RadialOperator& op, const LaurentPoly& f) {
    if (f.dim() != op.space().dim()) throw DimensionMismatch("polynomial dimension mismatch");
    LaurentPoly out(f.dim());
    for (const auto& [alpha, c] : f.terms()) {
        if (!is_allowable(op.space(), alpha))
            throw NotAllowable("coefficient at non-allowable index " + alpha.to_string());
        out.set_coefficient(alpha, op.symbol().value(alpha) * c);
    }
    return out;
}

Complex inducing_function_eval(const RadialOperator& op, std::span<const Complex> zeta,
                               double tol, std::size_t term_budget) {
    require_tilde_membership(op.space(), zeta);
    bool all_zero = true;
    for (const Complex& z : zeta)
        if (z != Complex{0.0, 0.0}) all_zero = false;
    if (all_zero) {
        // only the constant term survives, exactly
        const MultiIndex origin = MultiIndex::zeros(op.space().dim());
        if (!is_allowable(op.space(), origin)) return {0.0, 0.0};
        return op.coord_sq_of(origin) * op.symbol().value(origin);
    }
    auto series = make_series(op);
    SeriesSum sum = sum_series(*series, zeta, tol, term_budget);
    if (!sum.converged)
        throw NoConvergence("inducing-function series did not meet the tail bound");
    return sum.value;
}

Complex apply_integral_direct(const RadialOperator& op, const LaurentPoly& f,
                              std::span<const Complex> z, int shadow_points, int phase_order,
                              double series_tol) {
    const SpaceSpec& space = op.space();
    if (space.kind() != SpaceSpec::Kind::Bergman)
        throw PreconditionError("integral representation applies to Bergman spaces here");
    if (!shadow_contains(space.domain(), moduli(z))) throw OutsideDomain("z outside the domain");
    auto series = make_series(op);
    const QuadratureRule rule = weighted_shadow_rule(space.domain(), space.weight(), shadow_points);
    const int max_shell = truncation_shell_for_rule(*series, rule, z, series_tol, 2'000'000);
    // shells are fully grown: node evaluation below is read-only and safe
    auto integrand = [&](std::span<const Complex> w) {
        std::vector<Complex> zw(w.size());
        for (std::size_t j = 0; j < w.size(); ++j) zw[j] = z[j] * std::conj(w[j]);
        Complex g{0.0, 0.0};
        for (int m = 0; m <= max_shell; ++m) {
            auto [b, e] = series->shell_range(m);
            for (std::size_t i = b; i < e; ++i) {
                const auto& t = series->term(i);
                g += t.coeff * complex_power(zw, t.alpha);
            }
        }
        return f.eval(w) * g;
    };
    const IntegrationReport rep =
        integrate_domain(integrand, space.domain(), space.weight(), rule, phase_order);
    return rep.value;
}

Complex apply_integral(const RadialOperator& op, const LaurentPoly& f,
                       std::span<const Complex> z, const IntegralApplyOptions& options) {
    const SpaceSpec& space = op.space();
    if (space.kind() != SpaceSpec::Kind::Bergman)
        throw PreconditionError("integral representation applies to Bergman spaces here");
    if (f.dim() != space.dim()) throw DimensionMismatch("polynomial dimension mismatch");
    if (!shadow_contains(space.domain(), moduli(z))) throw OutsideDomain("z outside the domain");

    const int n = space.dim();
    const int P = options.phase_order;
    auto series = make_series(op);

    const QuadratureRule rule =
        weighted_shadow_rule(space.domain(), space.weight(), options.shadow_points);
    const int max_shell =
        truncation_shell_for_rule(*series, rule, z, options.series_tol, options.term_budget);

    std::vector<Complex> w_neg(static_cast<std::size_t>(P));
    for (int m = 0; m < P; ++m)
        w_neg[static_cast<std::size_t>(m)] = std::polar(1.0, -2.0 * M_PI * m / P);
    std::size_t phase_count = 1;
    double phase_cell = 1.0;
    for (int j = 0; j < n; ++j) {
        phase_count *= static_cast<std::size_t>(P);
        phase_cell *= 2.0 * M_PI / P;
    }

    const Complex total = blocked_sum<Complex>(
        rule.size(),
        [&](std::size_t i) {
            const auto r = rule.node(i);
            std::vector<Complex> y(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                y[static_cast<std::size_t>(j)] =
                    z[static_cast<std::size_t>(j)] * r[static_cast<std::size_t>(j)];
            // fold coefficients c_alpha y^alpha modulo the phase order:
            // evaluating g on the phase ring is exact for retained terms
            std::vector<Complex> cur(phase_count, Complex{0.0, 0.0});
            for (int m = 0; m <= max_shell; ++m) {
                auto [b, e] = series->shell_range(m);
                for (std::size_t t = b; t < e; ++t) {
                    const auto& term = series->term(t);
                    const Complex cv = term.coeff * complex_power(y, term.alpha);
                    std::size_t bin = 0;
                    for (int j = 0; j < n; ++j) {
                        const int bj = ((term.alpha[j] % P) + P) % P;
                        bin = bin * static_cast<std::size_t>(P) + static_cast<std::size_t>(bj);
                    }
                    cur[bin] += cv;
                }
            }
            // separable DFT: G[k] = sum_b cur[b] e^{-2 pi i b.k / P}
            std::vector<Complex> work(phase_count);
            std::size_t stride = phase_count / static_cast<std::size_t>(P);
            for (int axis = 0; axis < n; ++axis) {
                const std::size_t inner = stride;
                const std::size_t outer = phase_count / (inner * static_cast<std::size_t>(P));
                for (std::size_t o = 0; o < outer; ++o) {
                    for (std::size_t in = 0; in < inner; ++in) {
                        const std::size_t base = o * inner * static_cast<std::size_t>(P) + in;
                        for (int k = 0; k < P; ++k) {
                            Complex acc{0.0, 0.0};
                            for (int b = 0; b < P; ++b) {
                                acc += cur[base + static_cast<std::size_t>(b) * inner] *
                                       w_neg[static_cast<std::size_t>((b * k) % P)];
                            }
                            work[base + static_cast<std::size_t>(k) * inner] = acc;
                        }
                    }
                }
                std::swap(cur, work);
                if (stride > 1) stride /= static_cast<std::size_t>(P);
            }
            // ring quadrature: sum_k f(r e^{i theta_k}) g(z w-bar at theta_k)
            std::vector<Complex> w_node(static_cast<std::size_t>(n));
            Complex ring{0.0, 0.0};
            for (std::size_t k = 0; k < phase_count; ++k) {
                std::size_t rem = k;
                for (int j = n - 1; j >= 0; --j) {
                    const int kj = static_cast<int>(rem % static_cast<std::size_t>(P));
                    rem /= static_cast<std::size_t>(P);
                    w_node[static_cast<std::size_t>(j)] =
                        r[static_cast<std::size_t>(j)] *
                        std::conj(w_neg[static_cast<std::size_t>(kj)]);
                }
                ring += f.eval(w_node) * cur[k];
            }
            double factor = rule.weights[i];
            for (int j = 0; j < n; ++j) factor *= r[static_cast<std::size_t>(j)];
            return factor * phase_cell * ring;
        },
        parallel_enabled());
    return total;
}

LaurentPoly rotation_apply(std::span<const Complex> lambda, const LaurentPoly& f) {
    if (static_cast<int>(lambda.size()) != f.dim())
        throw DimensionMismatch("rotation parameter dimension mismatch");
    for (const Complex& l : lambda)
        if (std::abs(std::abs(l) - 1.0) > 1e-12)
            throw NotUnimodular("rotation parameter is not unimodular");
    LaurentPoly out(f.dim());
    for (const auto& [alpha, c] : f.terms())
        out.set_coefficient(alpha, complex_power(lambda, alpha) * c);
    return out;
}

namespace {

LaurentPoly random_poly(const IndexSet& pool, std::mt19937_64& gen, int max_terms) {
    LaurentPoly f(pool.dim());
    const int terms = 1 + static_cast<int>(gen() % static_cast<std::uint64_t>(max_terms));
    for (int t = 0; t < terms; ++t) {
        const std::size_t rank = static_cast<std::size_t>(gen() % pool.size());
        const Complex c{2.0 * unit_real(gen()) - 1.0, 2.0 * unit_real(gen()) - 1.0};
        f.set_coefficient(pool.at(rank), f.coefficient(pool.at(rank)) + c);
    }
    return f;
}

std::vector<Complex> random_torus_point(int dim, std::mt19937_64& gen) {
    std::vector<Complex> lambda(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
        lambda[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * M_PI * unit_real(gen()));
    return lambda;
}

} // namespace

double radiality_residual_generic(const std::function<LaurentPoly(const LaurentPoly&)>& op,
                                  const SpaceSpec& space, int trials, std::uint64_t seed) {
    if (trials < 1) throw PreconditionError("radiality_residual needs trials >= 1");
    const IndexSet pool = enumerate_allowable(space, IndexBox(space.dim(), 5));
    std::mt19937_64 gen(seed);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        const LaurentPoly f = random_poly(pool, gen, 4);
        const std::vector<Complex> lambda = random_torus_point(space.dim(), gen);
        const LaurentPoly left = op(rotation_apply(lambda, f));
        const LaurentPoly right = rotation_apply(lambda, op(f));
        worst = std::max(worst, LaurentPoly::coeff_distance(left, right));
    }
    return worst;
}

double radiality_residual(const RadialOperator& op, int trials, std::uint64_t seed) {
    return radiality_residual_generic(
        [&op](const LaurentPoly& f) { return apply_diagonal(op, f); }, op.space(), trials, seed);
}

RadialOperator adjoint(const RadialOperator& op) {
    return RadialOperator(op.space(), conjugate(op.symbol()));
}

SpectrumReport spectrum_report(const RadialOperator& op, const IndexSet& probe,
                               double cluster_tol) {
    if (probe.empty()) throw PreconditionError("spectrum probe must be nonempty");
    SpectrumReport report;
    const std::size_t count = probe.size();
    std::vector<Complex> sampled(count);
    parallel_for(count, [&](std::size_t i) { sampled[i] = op.symbol().value(probe.at(i)); });

    // distinct values in first-seen canonical order
    struct BitHash {
        std::size_t operator()(const std::pair<double, double>& p) const noexcept {
            std::uint64_t a, b;
            std::memcpy(&a, &p.first, sizeof(a));
            std::memcpy(&b, &p.second, sizeof(b));
            a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
            return static_cast<std::size_t>(a);
        }
    };
    std::unordered_set<std::pair<double, double>, BitHash> seen;
    seen.reserve(count);
    for (const Complex& v : sampled) {
        if (seen.insert({v.real(), v.imag()}).second) report.values.push_back(v);
    }
    report.attained.assign(report.values.size(), 1);

    // limit points: cluster values sampled on the outer half of the probe
    int max_sup = 0;
    for (const MultiIndex& m : probe.members()) max_sup = std::max(max_sup, m.sup_norm());
    std::vector<Complex> outer;
    for (std::size_t i = 0; i < count; ++i)
        if (probe.at(i).sup_norm() * 2 > max_sup) outer.push_back(sampled[i]);
    std::sort(outer.begin(), outer.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::size_t start = 0;
    auto flush = [&](std::size_t end) {
        if (end - start >= 5) {
            double re_lo = outer[start].real(), re_hi = re_lo;
            double im_lo = outer[start].imag(), im_hi = im_lo;
            Complex centroid{0.0, 0.0};
            for (std::size_t i = start; i < end; ++i) {
                re_lo = std::min(re_lo, outer[i].real());
                re_hi = std::max(re_hi, outer[i].real());
                im_lo = std::min(im_lo, outer[i].imag());
                im_hi = std::max(im_hi, outer[i].imag());
                centroid += outer[i];
            }
            const double diameter = std::hypot(re_hi - re_lo, im_hi - im_lo);
            if (diameter < cluster_tol)
                report.limit_points.push_back(centroid / static_cast<double>(end - start));
        }
        start = end;
    };
    for (std::size_t i = 1; i <= outer.size(); ++i) {
        if (i == outer.size() || std::abs(outer[i] - outer[i - 1]) > cluster_tol) flush(i);
    }

    report.hull = convex_hull(report.values);
    return report;
}

TriState is_compact(const RadialOperator& op) {
    const IndexSet probe = IndexSet::full_box(IndexBox(op.space().dim(), 2));
    switch (classify_decay(op.symbol(), probe)) {
    case OperatorClass::FiniteRank:
    case OperatorClass::CompactCapable:
        return TriState::Yes;
    case OperatorClass::Neither:
        return TriState::No;
    case OperatorClass::Unknown:
        return TriState::Unknown;
    }
    return TriState::Unknown;
}

TriState is_finite_rank(const RadialOperator& op) {
    const IndexSet probe = IndexSet::full_box(IndexBox(op.space().dim(), 2));
    switch (classify_decay(op.symbol(), probe)) {
    case OperatorClass::FiniteRank:
        return TriState::Yes;
    case OperatorClass::CompactCapable:
    case OperatorClass::Neither:
        return TriState::No;
    case OperatorClass::Unknown:
        return TriState::Unknown;
    }
    return TriState::Unknown;
}

RadialOperator reducing_projection(const SpaceSpec& space, const IndexSet& E) {
    for (const MultiIndex& alpha : E.members())
        if (!is_allowable(space, alpha))
            throw NotAllowable("projection index " + alpha.to_string() + " is not allowable");
    return RadialOperator(space, Symbol::indicator(E));
}

double normality_residual(const RadialOperator& op, const IndexBox& box) {
    const IndexSet set = enumerate_allowable(op.space(), box);
    const std::size_t m = set.size();
    if (m == 0) return 0.0;
    NormProvider& norms = *op.norms();
    std::vector<double> sqrt_norm(m);
    for (std::size_t i = 0; i < m; ++i) sqrt_norm[i] = std::sqrt(norms.norm_sq(set.at(i)));

    // matrix of R in the normalized monomial basis, built through the pipeline
    std::vector<Complex> M(m * m, Complex{0.0, 0.0});
    for (std::size_t j = 0; j < m; ++j) {
        LaurentPoly basis = LaurentPoly::monomial(set.at(j), Complex{1.0 / sqrt_norm[j], 0.0});
        const LaurentPoly image = apply_diagonal(op, basis);
        for (std::size_t i = 0; i < m; ++i)
            M[i * m + j] = image.coefficient(set.at(i)) * sqrt_norm[i];
    }
    auto mat = [&](bool conj_first) {
        std::vector<Complex> C(m * m, Complex{0.0, 0.0});
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < m; ++k) {
                const Complex a = conj_first ? std::conj(M[k * m + i]) : M[i * m + k];
                if (a == Complex{0.0, 0.0}) continue;
                for (std::size_t j = 0; j < m; ++j) {
                    const Complex b = conj_first ? M[k * m + j] : std::conj(M[j * m + k]);
                    C[i * m + j] += a * b;
                }
            }
        return C;
    };
    const std::vector<Complex> lhs = mat(true);  // M* M
    const std::vector<Complex> rhs = mat(false); // M M*
    double worst = 0.0;
    for (std::size_t i = 0; i < m * m; ++i) worst = std::max(worst, std::abs(lhs[i] - rhs[i]));
    return worst;
}

FeasibilityReport feasibility_probe(const DomainSpec& domain, const WeightSpec& weight,
                                    int samples, std::uint64_t seed, double tol) {
    if (samples < 1) throw PreconditionError("feasibility probe needs samples >= 1");
    const SpaceSpec space = SpaceSpec::bergman(domain, weight);
    const RadialOperator kernel_op(space, Symbol::one(domain.dim));
    auto series = make_series(kernel_op);

    const auto zs = sample_domain(domain, samples, seed);
    const auto ws = sample_domain(domain, samples, seed ^ 0xabcdef1234567890ull);
    FeasibilityReport report;
    for (int i = 0; i < samples; ++i) {
        FeasibilityReport::Point point;
        point.zeta.resize(static_cast<std::size_t>(domain.dim));
        for (int j = 0; j < domain.dim; ++j)
            point.zeta[static_cast<std::size_t>(j)] =
                zs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                std::conj(ws[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        try {
            SeriesSum sum = sum_series(*series, point.zeta, tol, 1'000'000);
            point.converged = sum.converged;
            point.value = sum.value;
        } catch (const NumericError&) {
            point.converged = false;
        }
        if (!point.converged) report.feasible = false;
        report.points.push_back(std::move(point));
    }
    return report;
}

} // namespace radop
