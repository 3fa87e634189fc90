#include "radop/space.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <sstream>

#include "radop/parallel.hpp"
#include "radop/quadrature.hpp"

namespace radop {

SpaceSpec SpaceSpec::bergman(DomainSpec domain, WeightSpec weight) {
    if (weight.kind() == WeightSpec::Kind::RadialPower) {
        if (static_cast<int>(weight.exponents().size()) != domain.dim)
            throw DimensionMismatch("radial-power weight dimension mismatch");
        for (const auto& [a, b] : domain.shadow.bounding_box())
            if (b > 1.0 + 1e-12)
                throw PreconditionError("radial-power weights require the shadow inside [0,1]^n");
    }
    SpaceSpec s;
    s.kind_ = Kind::Bergman;
    s.domain_ = std::move(domain);
    s.weight_ = std::move(weight);
    return s;
}

SpaceSpec SpaceSpec::hardy_disk() {
    SpaceSpec s;
    s.kind_ = Kind::HardyDisk;
    s.domain_ = make_disk();
    s.weight_ = WeightSpec::constant(1.0);
    return s;
}

SpaceSpec SpaceSpec::dirichlet_disk() {
    SpaceSpec s;
    s.kind_ = Kind::DirichletDisk;
    s.domain_ = make_disk();
    s.weight_ = WeightSpec::constant(1.0);
    return s;
}

std::string SpaceSpec::describe() const {
    switch (kind_) {
    case Kind::HardyDisk:
        return "hardy-disk";
    case Kind::DirichletDisk:
        return "dirichlet-disk";
    case Kind::Bergman:
        break;
    }
    std::ostringstream os;
    os << "bergman(" << domain_.name << ", dim=" << domain_.dim << ", shadow=";
    switch (domain_.shadow.kind()) {
    case ShadowKind::Box: {
        os << "box[";
        bool first = true;
        for (const auto& [a, b] : domain_.shadow.intervals()) {
            if (!first) os << ";";
            first = false;
            os << a << "," << b;
        }
        os << "]";
        break;
    }
    case ShadowKind::Ball:
        os << "ball";
        break;
    case ShadowKind::OrderedSimplex:
        os << "ordered-simplex";
        break;
    case ShadowKind::Custom:
        os << "custom#" << domain_.shadow.custom_serial();
        break;
    }
    os << ", weight=";
    switch (weight_.kind()) {
    case WeightSpec::Kind::Constant:
        os << "const:" << weight_.constant_value();
        break;
    case WeightSpec::Kind::RadialPower: {
        os << "radial-power:";
        bool first = true;
        for (double s : weight_.exponents()) {
            if (!first) os << ",";
            first = false;
            os << s;
        }
        break;
    }
    case WeightSpec::Kind::Custom:
        os << "custom#" << weight_.custom_serial();
        break;
    }
    os << ")";
    return os.str();
}

std::string SpaceSpec::fingerprint() const {
    const std::string desc = describe();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : desc) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::optional<bool> closed_form_allowable(const SpaceSpec& space, const MultiIndex& alpha) {
    if (alpha.dim() != space.dim()) throw DimensionMismatch("index dimension mismatch");
    switch (space.kind()) {
    case SpaceSpec::Kind::HardyDisk:
    case SpaceSpec::Kind::DirichletDisk:
        return alpha[0] >= 0;
    case SpaceSpec::Kind::Bergman:
        break;
    }
    const WeightSpec& w = space.weight();
    if (w.kind() == WeightSpec::Kind::Custom) return std::nullopt;
    // Constant and radial-power weights only redistribute mass near the
    // outer boundary (integrably, s > -1); finiteness is decided by the
    // behaviour of r^{2 alpha + 1} near the coordinate hyperplanes.
    const ShadowRegion& sh = space.domain().shadow;
    switch (sh.kind()) {
    case ShadowKind::Box: {
        const auto& iv = sh.intervals();
        for (int j = 0; j < alpha.dim(); ++j) {
            if (iv[static_cast<std::size_t>(j)].first == 0.0 && alpha[j] < 0) return false;
        }
        return true;
    }
    case ShadowKind::Ball: {
        for (int j = 0; j < alpha.dim(); ++j)
            if (alpha[j] < 0) return false;
        return true;
    }
    case ShadowKind::OrderedSimplex: {
        // iterated integration from the inner radius out: each stage needs
        // partial_sum(alpha, k) + k >= 1
        long long partial = 0;
        for (int k = 1; k <= alpha.dim(); ++k) {
            partial += alpha[k - 1];
            if (partial + k < 1) return false;
        }
        return true;
    }
    case ShadowKind::Custom:
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Norm integrand over the inner shell {all r_j >= lo} minus {all r_j >= hi}
// (full clip when hi <= 0). The shell splits into axis-pinned pieces whose
// bounding boxes match the clip planes exactly, so the adaptive rule only
// has to resolve the shadow boundary itself.
double shell_norm_integral(const SpaceSpec& space, const MultiIndex& alpha, double lo, double hi,
                           double tol, std::int64_t budget) {
    const DomainSpec& domain = space.domain();
    const int n = domain.dim;
    const ShadowRegion base = domain.shadow;
    const WeightSpec& w = space.weight();
    auto integrand = [&, n](std::span<const double> r) {
        double v = w(r);
        for (int j = 0; j < n; ++j) {
            v *= r[static_cast<std::size_t>(j)]; // Jacobian
            v *= std::pow(r[static_cast<std::size_t>(j)], 2.0 * alpha[j]);
        }
        return v;
    };
    auto integrate_piece = [&](std::vector<std::pair<double, double>> box) -> double {
        for (const auto& [a, b] : box)
            if (a >= b) return 0.0;
        const DomainSpec piece{
            domain.name + "-shell", n,
            ShadowRegion::custom(
                n, [base](std::span<const double> r) { return base.contains(r); },
                std::move(box))};
        const IntegrationReport rep =
            integrate_shadow(integrand, piece, adaptive_rule(piece), {tol, budget});
        return rep.value.real();
    };

    const auto& bb = domain.shadow.bounding_box();
    if (hi <= 0.0) {
        std::vector<std::pair<double, double>> box = bb;
        for (auto& [a, b] : box) a = std::max(a, lo);
        return integrate_piece(std::move(box));
    }
    // piece j: r_j in [lo, hi), r_i >= hi for i < j, r_i >= lo for i > j
    double total = 0.0;
    for (int pin = 0; pin < n; ++pin) {
        std::vector<std::pair<double, double>> box = bb;
        for (int j = 0; j < n; ++j) {
            auto& [a, b] = box[static_cast<std::size_t>(j)];
            if (j < pin)
                a = std::max(a, hi);
            else if (j == pin) {
                a = std::max(a, lo);
                b = std::min(b, hi);
            } else
                a = std::max(a, lo);
        }
        total += integrate_piece(std::move(box));
    }
    return total;
}

} // namespace

bool numeric_allowable(const SpaceSpec& space, const MultiIndex& alpha,
                       const FinitenessProbeOptions& options) {
    if (space.kind() != SpaceSpec::Kind::Bergman)
        throw PreconditionError("numeric finiteness probe applies to Bergman spaces");
    double total = 0.0;
    double prev_delta = -1.0;
    int flat_streak = 0;
    double first = -1.0;
    for (int stage = 0; stage < options.max_stages; ++stage) {
        const double eps = std::ldexp(1.0, -(stage + 2));
        const double outer = stage == 0 ? 0.0 : std::ldexp(1.0, -(stage + 1));
        double delta;
        try {
            // increments only feed ratio tests; modest absolute accuracy is
            // enough as long as it sits below the stabilization threshold
            const double tol = std::max(options.stabilize_rel * 0.02,
                                        prev_delta > 0.0 ? prev_delta * 1e-3 : 0.0);
            delta = shell_norm_integral(space, alpha, eps, outer, tol, 2'000'000);
        } catch (const BudgetExhausted&) {
            throw UndecidableFiniteness("stage integral budget exhausted for " +
                                        alpha.to_string());
        }
        if (!std::isfinite(delta))
            throw UndecidableFiniteness("norm integrand overflowed during exhaustion");
        total += delta;
        if (stage == 0) {
            first = std::max(total, 1e-300);
            continue;
        }
        if (total > options.blowup_factor * first)
            return false; // partial integrals blew past the configured factor
        if (std::abs(delta) <= options.stabilize_rel * std::max(1e-300, std::abs(total)))
            return true;
        if (prev_delta > 0.0) {
            // integrable inner singularities shed increments geometrically
            // (factor <= 1/4 per stage for integer exponents); a near-flat
            // increment sequence is the divergence signature
            if (std::abs(delta) >= 0.9 * prev_delta)
                ++flat_streak;
            else
                flat_streak = 0;
            if (flat_streak >= 5) return false;
        }
        prev_delta = std::abs(delta);
    }
    throw UndecidableFiniteness("finiteness of " + alpha.to_string() +
                                " undecided after exhaustion; supply a closed-form rule");
}

bool is_allowable(const SpaceSpec& space, const MultiIndex& alpha) {
    if (auto decided = closed_form_allowable(space, alpha)) return *decided;
    // custom weights and shadows share one numeric verdict per space instance
    static std::mutex memo_mutex;
    static std::map<std::pair<std::string, std::vector<int>>, bool> memo;
    const std::pair<std::string, std::vector<int>> key{space.fingerprint(), alpha.to_vector()};
    {
        std::lock_guard<std::mutex> lock(memo_mutex);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    const bool verdict = numeric_allowable(space, alpha);
    std::lock_guard<std::mutex> lock(memo_mutex);
    memo.emplace(std::move(key), verdict);
    return verdict;
}

IndexSet enumerate_allowable(const SpaceSpec& space, const IndexBox& box) {
    if (box.dim != space.dim())
        throw DimensionMismatch("box dimension " + std::to_string(box.dim) +
                                " does not match space dimension " + std::to_string(space.dim()));
    const std::uint64_t total = box.count();
    std::vector<char> keep(total, 0);
    // closed-form rules are pure and cheap; the numeric probe is pure too
    parallel_for(total, [&](std::size_t k) {
        keep[k] = is_allowable(space, box.at(k)) ? 1 : 0;
    });
    std::vector<MultiIndex> members;
    for (std::uint64_t k = 0; k < total; ++k)
        if (keep[k]) members.push_back(box.at(k));
    return IndexSet::from_indices(box.dim, std::move(members));
}

} // namespace radop
