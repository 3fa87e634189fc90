#include "radop/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "radop/parallel.hpp"

namespace radop {

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
    if (n < 1) throw PreconditionError("gauss_legendre needs n >= 1");
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton on P_n with the Chebyshev-like initial guess
        double z = std::cos(M_PI * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - static_cast<double>(k) * p2) / (k + 1.0);
            }
            pp = static_cast<double>(n) * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[static_cast<std::size_t>(i)] = -z;
        x[static_cast<std::size_t>(n - 1 - i)] = z;
        const double wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[static_cast<std::size_t>(i)] = wi;
        w[static_cast<std::size_t>(n - 1 - i)] = wi;
    }
    return {x, w};
}

namespace {

struct Axis1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

Axis1D gauss_axis(double a, double b, int pts) {
    auto [x, w] = gauss_legendre(pts);
    Axis1D ax;
    ax.nodes.resize(x.size());
    ax.weights.resize(w.size());
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < x.size(); ++i) {
        ax.nodes[i] = mid + half * x[i];
        ax.weights[i] = half * w[i];
    }
    return ax;
}

// tanh-sinh rule on [a, b] with the factor (1 - r^2)^s absorbed; the
// double-exponential decay tames the algebraic endpoint singularity at
// r = 1 for every s > -1 (and any branch point a fractional s leaves).
Axis1D tanh_sinh_power_axis(double a, double b, double s, int pts) {
    // truncate where the weighted tail (1-r)^{1+s} drops below ~e^-40
    const double tau_max = std::asinh(80.0 / (M_PI * (1.0 + s)));
    const int half_count = std::max(24, 2 * pts);
    const double h = tau_max / static_cast<double>(half_count);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    Axis1D ax;
    for (int j = -half_count; j <= half_count; ++j) {
        const double u = h * static_cast<double>(j);
        const double snh = M_PI * std::sinh(u);
        const double one_minus_x = 2.0 / (1.0 + std::exp(snh));  // 1 - tanh(snh/2)
        const double one_plus_x = 2.0 / (1.0 + std::exp(-snh));  // 1 + tanh(snh/2)
        const double r = mid + half * (0.5 * (one_plus_x - one_minus_x));
        const double dist_hi = half * one_minus_x; // b - r, stable
        const double dist_lo = half * one_plus_x;  // r - a
        if (dist_hi <= 0.0 || dist_lo <= 0.0) continue;
        const double w_ts =
            h * half * 0.5 * M_PI * std::cosh(u) * (one_minus_x * one_plus_x);
        // (1 - r^2)^s with the near-1 factor taken from the stable distance
        const double one_minus_r = (1.0 - b) + dist_hi;
        const double weight_factor = std::pow(one_minus_r, s) * std::pow(1.0 + r, s);
        const double w = w_ts * weight_factor;
        if (!std::isfinite(w) || w == 0.0) continue;
        ax.nodes.push_back(r);
        ax.weights.push_back(w);
    }
    return ax;
}

void tensor_axes(const std::vector<Axis1D>& axes, std::vector<double>& nodes,
                 std::vector<double>& weights) {
    const int dim = static_cast<int>(axes.size());
    std::size_t total = 1;
    for (const auto& ax : axes) total *= ax.nodes.size();
    nodes.assign(total * static_cast<std::size_t>(dim), 0.0);
    weights.assign(total, 0.0);
    std::vector<std::size_t> idx(static_cast<std::size_t>(dim), 0);
    for (std::size_t i = 0; i < total; ++i) {
        double wprod = 1.0;
        for (int j = 0; j < dim; ++j) {
            nodes[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] =
                axes[static_cast<std::size_t>(j)].nodes[idx[static_cast<std::size_t>(j)]];
            wprod *= axes[static_cast<std::size_t>(j)].weights[idx[static_cast<std::size_t>(j)]];
        }
        weights[i] = wprod;
        for (int j = dim - 1; j >= 0; --j) {
            if (++idx[static_cast<std::size_t>(j)] < axes[static_cast<std::size_t>(j)].nodes.size()) break;
            idx[static_cast<std::size_t>(j)] = 0;
        }
    }
}

} // namespace

QuadratureRule gauss_rule(std::span<const std::pair<double, double>> intervals,
                          int points_per_axis) {
    if (points_per_axis < 1) throw PreconditionError("gauss_rule needs points_per_axis >= 1");
    if (intervals.empty()) throw PreconditionError("gauss_rule needs at least one interval");
    for (const auto& [a, b] : intervals)
        if (!std::isfinite(a) || !std::isfinite(b) || !(b > a))
            throw PreconditionError("gauss_rule intervals must be bounded with a < b");

    QuadratureRule rule;
    rule.dim = static_cast<int>(intervals.size());
    rule.kind = RuleKind::TensorGauss;
    rule.order = points_per_axis;

    std::vector<Axis1D> fine, coarse;
    const int coarse_pts = std::max(1, points_per_axis > 1 ? points_per_axis - 2 : 1);
    for (const auto& [a, b] : intervals) {
        fine.push_back(gauss_axis(a, b, points_per_axis));
        coarse.push_back(gauss_axis(a, b, coarse_pts));
    }
    tensor_axes(fine, rule.nodes, rule.weights);
    tensor_axes(coarse, rule.coarse_nodes, rule.coarse_weights);
    return rule;
}

QuadratureRule geometric_panel_rule(double a, double b, int panels, int points_per_panel) {
    if (!(b > a)) throw PreconditionError("geometric_panel_rule needs a < b");
    if (panels < 1 || points_per_panel < 1)
        throw PreconditionError("geometric_panel_rule needs panels >= 1 and points >= 1");
    QuadratureRule rule;
    rule.dim = 1;
    rule.kind = RuleKind::TensorGauss;
    rule.order = points_per_panel;
    const double len = b - a;
    auto add_panel = [&](double lo, double hi, bool coarse) {
        Axis1D ax = gauss_axis(lo, hi, coarse ? std::max(1, points_per_panel - 2) : points_per_panel);
        auto& nodes = coarse ? rule.coarse_nodes : rule.nodes;
        auto& weights = coarse ? rule.coarse_weights : rule.weights;
        nodes.insert(nodes.end(), ax.nodes.begin(), ax.nodes.end());
        weights.insert(weights.end(), ax.weights.begin(), ax.weights.end());
    };
    for (int k = 0; k < panels; ++k) {
        const double hi = a + len * std::ldexp(1.0, -k);
        const double lo = a + len * std::ldexp(1.0, -(k + 1));
        add_panel(lo, hi, false);
        add_panel(lo, hi, true);
    }
    // innermost sliver down to the endpoint
    add_panel(a, a + len * std::ldexp(1.0, -panels), false);
    add_panel(a, a + len * std::ldexp(1.0, -panels), true);
    return rule;
}

namespace {

// Ball shadow pulled back to the angle box [0, pi/2]^n:
//   r_j = sin(psi_j) * prod_{i<j} cos(psi_i),
//   dr  = prod_j cos^{n-j}(psi_j) dpsi   (0-based j).
QuadratureRule ball_rule(int n, int pts) {
    auto build = [&](int p, std::vector<double>& nodes, std::vector<double>& weights) {
        std::vector<Axis1D> axes(static_cast<std::size_t>(n), gauss_axis(0.0, M_PI / 2.0, p));
        std::vector<double> psi_nodes, psi_weights;
        tensor_axes(axes, psi_nodes, psi_weights);
        const std::size_t total = psi_weights.size();
        nodes.assign(total * static_cast<std::size_t>(n), 0.0);
        weights.assign(total, 0.0);
        for (std::size_t i = 0; i < total; ++i) {
            double cos_prefix = 1.0;
            double w = psi_weights[i];
            for (int j = 0; j < n; ++j) {
                const double psi = psi_nodes[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                const double c = std::cos(psi);
                nodes[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
                    std::sin(psi) * cos_prefix;
                w *= std::pow(c, n - j);
                cos_prefix *= c;
            }
            weights[i] = w;
        }
    };
    QuadratureRule rule;
    rule.dim = n;
    rule.kind = RuleKind::TensorGauss;
    rule.order = pts;
    build(pts, rule.nodes, rule.weights);
    build(std::max(1, pts - 2), rule.coarse_nodes, rule.coarse_weights);
    return rule;
}

// Ordered simplex 0 <= r_1 < ... < r_n < 1 via r_j = prod_{k>=j} t_k,
// Jacobian prod_k t_k^k (0-based k).
QuadratureRule simplex_rule(int n, int pts) {
    auto build = [&](int p, std::vector<double>& nodes, std::vector<double>& weights) {
        std::vector<Axis1D> axes(static_cast<std::size_t>(n), gauss_axis(0.0, 1.0, p));
        std::vector<double> t_nodes, t_weights;
        tensor_axes(axes, t_nodes, t_weights);
        const std::size_t total = t_weights.size();
        nodes.assign(total * static_cast<std::size_t>(n), 0.0);
        weights.assign(total, 0.0);
        for (std::size_t i = 0; i < total; ++i) {
            double w = t_weights[i];
            double suffix = 1.0;
            for (int j = n - 1; j >= 0; --j) {
                const double t = t_nodes[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)];
                suffix *= t;
                nodes[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = suffix;
                for (int k = 0; k < j; ++k) w *= t; // t^j
            }
            weights[i] = w;
        }
    };
    QuadratureRule rule;
    rule.dim = n;
    rule.kind = RuleKind::TensorGauss;
    rule.order = pts;
    build(pts, rule.nodes, rule.weights);
    build(std::max(1, pts - 2), rule.coarse_nodes, rule.coarse_weights);
    return rule;
}

} // namespace

QuadratureRule shadow_rule(const DomainSpec& domain, int points_per_axis) {
    switch (domain.shadow.kind()) {
    case ShadowKind::Box:
        return gauss_rule(domain.shadow.intervals(), points_per_axis);
    case ShadowKind::Ball:
        return ball_rule(domain.dim, points_per_axis);
    case ShadowKind::OrderedSimplex:
        return simplex_rule(domain.dim, points_per_axis);
    case ShadowKind::Custom:
        throw PreconditionError(
            "custom shadows have no tensor rule; use monte_carlo_shadow_rule or adaptive_rule");
    }
    throw PreconditionError("unknown shadow kind");
}

QuadratureRule weighted_shadow_rule(const DomainSpec& domain, const WeightSpec& weight,
                                    int points_per_axis) {
    if (weight.kind() == WeightSpec::Kind::Constant) {
        QuadratureRule rule = shadow_rule(domain, points_per_axis);
        const double c = weight.constant_value();
        for (double& w : rule.weights) w *= c;
        for (double& w : rule.coarse_weights) w *= c;
        rule.weight_absorbed = true;
        return rule;
    }

    if (weight.kind() == WeightSpec::Kind::RadialPower &&
        domain.shadow.kind() == ShadowKind::Box) {
        const auto& exps = weight.exponents();
        if (static_cast<int>(exps.size()) != domain.dim)
            throw DimensionMismatch("radial-power weight dimension mismatch");
        const auto& intervals = domain.shadow.intervals();
        auto build_axis = [&](int j, int pts) {
            const auto& [a, b] = intervals[static_cast<std::size_t>(j)];
            const double s = exps[static_cast<std::size_t>(j)];
            const bool integer_exp = s == std::floor(s) && s >= 0.0;
            if (!integer_exp && b >= 1.0 - 1e-14) return tanh_sinh_power_axis(a, b, s, pts);
            // away from r = 1 the factor is smooth: evaluate it at the nodes
            Axis1D ax = gauss_axis(a, b, pts);
            for (std::size_t i = 0; i < ax.nodes.size(); ++i) {
                const double t = 1.0 - ax.nodes[i] * ax.nodes[i];
                ax.weights[i] *= std::pow(t, s);
            }
            return ax;
        };
        QuadratureRule rule;
        rule.dim = domain.dim;
        rule.kind = RuleKind::TensorGauss;
        rule.order = points_per_axis;
        rule.weight_absorbed = true;
        std::vector<Axis1D> fine, coarse;
        for (int j = 0; j < domain.dim; ++j) {
            fine.push_back(build_axis(j, points_per_axis));
            coarse.push_back(build_axis(j, std::max(1, points_per_axis - 2)));
        }
        tensor_axes(fine, rule.nodes, rule.weights);
        tensor_axes(coarse, rule.coarse_nodes, rule.coarse_weights);
        return rule;
    }

    // smooth-weight fallback: evaluate the weight at the plain nodes
    QuadratureRule rule = shadow_rule(domain, points_per_axis);
    for (std::size_t i = 0; i < rule.size(); ++i) rule.weights[i] *= weight(rule.node(i));
    for (std::size_t i = 0; i < rule.coarse_size(); ++i)
        rule.coarse_weights[i] *= weight(rule.coarse_node(i));
    rule.weight_absorbed = true;
    return rule;
}

QuadratureRule monte_carlo_shadow_rule(const DomainSpec& domain, std::size_t count,
                                       std::uint64_t seed) {
    if (count < 2) throw PreconditionError("monte_carlo_shadow_rule needs count >= 2");
    QuadratureRule rule;
    rule.dim = domain.dim;
    rule.kind = RuleKind::MonteCarlo;
    rule.seed = seed;
    const auto& bb = domain.shadow.bounding_box();
    double vol_box = 1.0;
    for (const auto& [a, b] : bb) vol_box *= (b - a);
    std::mt19937_64 gen(seed);
    std::vector<double> r(static_cast<std::size_t>(domain.dim));
    const double w_full = vol_box / static_cast<double>(count);
    const std::size_t half = count / 2;
    const double w_half = vol_box / static_cast<double>(half);
    for (std::size_t i = 0; i < count; ++i) {
        for (int j = 0; j < domain.dim; ++j) {
            const auto& [a, b] = bb[static_cast<std::size_t>(j)];
            r[static_cast<std::size_t>(j)] = a + (b - a) * unit_real(gen());
        }
        if (domain.shadow.contains(r)) {
            rule.nodes.insert(rule.nodes.end(), r.begin(), r.end());
            rule.weights.push_back(w_full);
            if (i < half) {
                rule.coarse_nodes.insert(rule.coarse_nodes.end(), r.begin(), r.end());
                rule.coarse_weights.push_back(w_half);
            }
        }
    }
    if (rule.weights.empty())
        throw NumericError("no Monte-Carlo samples landed in shadow of " + domain.name);
    return rule;
}

QuadratureRule adaptive_rule(const DomainSpec& domain) {
    QuadratureRule rule;
    rule.dim = domain.dim;
    rule.kind = RuleKind::AdaptiveSubdivision;
    return rule;
}

namespace {

struct Cell {
    std::vector<double> lo, hi;
    double estimate = 0.0;
    double error = 0.0;
};

// 3-point Gauss per axis, masked by shadow membership.
double cell_estimate(const ShadowIntegrand& f, const DomainSpec& domain, const Cell& c,
                     std::int64_t& evals) {
    const int n = domain.dim;
    std::vector<Axis1D> axes;
    for (int j = 0; j < n; ++j)
        axes.push_back(gauss_axis(c.lo[static_cast<std::size_t>(j)], c.hi[static_cast<std::size_t>(j)], 3));
    std::vector<double> nodes, weights;
    tensor_axes(axes, nodes, weights);
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        std::span<const double> r(nodes.data() + i * static_cast<std::size_t>(n),
                                  static_cast<std::size_t>(n));
        if (!domain.shadow.contains(r)) continue;
        const double v = f(r);
        ++evals;
        if (!std::isfinite(v)) throw NonFinite("integrand not finite inside shadow");
        acc += weights[i] * v;
    }
    return acc;
}

IntegrationReport integrate_adaptive(const ShadowIntegrand& f, const DomainSpec& domain,
                                     const QuadratureOptions& options) {
    const int n = domain.dim;
    std::int64_t evals = 0;
    auto make_cell = [&](std::vector<double> lo, std::vector<double> hi) {
        Cell c;
        c.lo = std::move(lo);
        c.hi = std::move(hi);
        c.estimate = cell_estimate(f, domain, c, evals);
        // refinement residual against the 2^n split
        double split_sum = 0.0;
        const std::size_t parts = 1ull << n;
        for (std::size_t mask = 0; mask < parts; ++mask) {
            Cell sub;
            sub.lo = c.lo;
            sub.hi = c.hi;
            for (int j = 0; j < n; ++j) {
                const double mid = 0.5 * (c.lo[static_cast<std::size_t>(j)] + c.hi[static_cast<std::size_t>(j)]);
                if (mask & (1ull << j))
                    sub.lo[static_cast<std::size_t>(j)] = mid;
                else
                    sub.hi[static_cast<std::size_t>(j)] = mid;
            }
            split_sum += cell_estimate(f, domain, sub, evals);
        }
        c.error = std::abs(split_sum - c.estimate);
        c.estimate = split_sum;
        return c;
    };

    auto cmp = [](const Cell& a, const Cell& b) { return a.error < b.error; };
    std::priority_queue<Cell, std::vector<Cell>, decltype(cmp)> queue(cmp);
    {
        std::vector<double> lo, hi;
        for (const auto& [a, b] : domain.shadow.bounding_box()) {
            lo.push_back(a);
            hi.push_back(b);
        }
        queue.push(make_cell(std::move(lo), std::move(hi)));
    }
    double total = queue.top().estimate;
    double total_err = queue.top().error;
    while (total_err > options.rel_tol * std::max(1.0, std::abs(total))) {
        if (evals > options.budget)
            throw BudgetExhausted("adaptive integration exceeded budget of " +
                                  std::to_string(options.budget) + " evaluations");
        Cell worst = queue.top();
        queue.pop();
        total -= worst.estimate;
        total_err -= worst.error;
        const std::size_t parts = 1ull << n;
        for (std::size_t mask = 0; mask < parts; ++mask) {
            std::vector<double> lo = worst.lo, hi = worst.hi;
            for (int j = 0; j < n; ++j) {
                const double mid = 0.5 * (worst.lo[static_cast<std::size_t>(j)] +
                                          worst.hi[static_cast<std::size_t>(j)]);
                if (mask & (1ull << j))
                    lo[static_cast<std::size_t>(j)] = mid;
                else
                    hi[static_cast<std::size_t>(j)] = mid;
            }
            Cell sub = make_cell(std::move(lo), std::move(hi));
            total += sub.estimate;
            total_err += sub.error;
            queue.push(std::move(sub));
        }
    }
    return {std::complex<double>(total, 0.0), total_err, evals};
}

} // namespace

IntegrationReport integrate_shadow(const ShadowIntegrand& f, const DomainSpec& domain,
                                   const QuadratureRule& rule, const QuadratureOptions& options) {
    if (rule.dim != domain.dim) throw DimensionMismatch("rule/domain dimension mismatch");
    if (rule.kind == RuleKind::AdaptiveSubdivision) return integrate_adaptive(f, domain, options);

    const bool par = parallel_enabled();
    auto eval_set = [&](const std::vector<double>& nodes, const std::vector<double>& weights) {
        const std::size_t count = weights.size();
        return blocked_sum<double>(
            count,
            [&](std::size_t i) {
                std::span<const double> r(nodes.data() + i * static_cast<std::size_t>(rule.dim),
                                          static_cast<std::size_t>(rule.dim));
                const double v = f(r);
                if (!std::isfinite(v)) throw NonFinite("integrand not finite at quadrature node");
                return weights[i] * v;
            },
            par);
    };
    const double fine = eval_set(rule.nodes, rule.weights);
    const double coarse = rule.coarse_size() ? eval_set(rule.coarse_nodes, rule.coarse_weights) : fine;
    IntegrationReport report;
    report.value = std::complex<double>(fine, 0.0);
    report.error_estimate = std::abs(fine - coarse);
    report.evaluations = static_cast<std::int64_t>(rule.size() + rule.coarse_size());
    return report;
}

IntegrationReport integrate_domain(const DomainIntegrand& f, const DomainSpec& domain,
                                   const WeightSpec& weight, const QuadratureRule& rule,
                                   int phase_order) {
    if (phase_order < 1) throw PreconditionError("phase_order must be >= 1");
    if (rule.dim != domain.dim) throw DimensionMismatch("rule/domain dimension mismatch");
    if (rule.kind == RuleKind::AdaptiveSubdivision)
        throw PreconditionError("integrate_domain needs a concrete node rule");

    const int n = domain.dim;
    const int P = phase_order;
    std::vector<std::complex<double>> phase(static_cast<std::size_t>(P));
    for (int k = 0; k < P; ++k) phase[static_cast<std::size_t>(k)] = std::polar(1.0, 2.0 * M_PI * k / P);
    double phase_cell = 1.0;
    std::size_t phase_count = 1;
    for (int j = 0; j < n; ++j) {
        phase_cell *= 2.0 * M_PI / P;
        phase_count *= static_cast<std::size_t>(P);
    }

    const bool par = parallel_enabled();
    auto eval_set = [&](const std::vector<double>& nodes, const std::vector<double>& weights) {
        const std::size_t count = weights.size();
        return blocked_sum<std::complex<double>>(
            count,
            [&](std::size_t i) {
                std::span<const double> r(nodes.data() + i * static_cast<std::size_t>(n),
                                          static_cast<std::size_t>(n));
                double factor = weights[i];
                for (double rj : r) factor *= rj; // polar Jacobian
                if (!rule.weight_absorbed) factor *= weight(r);
                std::complex<double> ring{0.0, 0.0};
                std::vector<std::complex<double>> z(static_cast<std::size_t>(n));
                for (std::size_t k = 0; k < phase_count; ++k) {
                    std::size_t rem = k;
                    for (int j = n - 1; j >= 0; --j) {
                        z[static_cast<std::size_t>(j)] =
                            r[static_cast<std::size_t>(j)] * phase[rem % static_cast<std::size_t>(P)];
                        rem /= static_cast<std::size_t>(P);
                    }
                    ring += f(z);
                }
                const std::complex<double> term = factor * phase_cell * ring;
                if (!std::isfinite(term.real()) || !std::isfinite(term.imag()))
                    throw NonFinite("domain integrand not finite at quadrature node");
                return term;
            },
            par);
    };
    const std::complex<double> fine = eval_set(rule.nodes, rule.weights);
    const std::complex<double> coarse =
        rule.coarse_size() ? eval_set(rule.coarse_nodes, rule.coarse_weights) : fine;
    IntegrationReport report;
    report.value = fine;
    report.error_estimate = std::abs(fine - coarse);
    report.evaluations =
        static_cast<std::int64_t>((rule.size() + rule.coarse_size()) * phase_count);
    return report;
}

} // namespace radop
