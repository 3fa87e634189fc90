#pragma once

#include <optional>
#include <string>

#include "radop/geometry.hpp"
#include "radop/index_set.hpp"
#include "radop/multi_index.hpp"

namespace radop {

// One of: weighted Bergman A2(Omega, omega) with unnormalized volume
// measure, Hardy H2 of the disk, Dirichlet D of the disk. Hardy and
// Dirichlet use area measure normalized to total mass 1, which makes
// ||z^m||^2 = 1 (Hardy) and ||z^m||^2 = max(m,1) (Dirichlet) hold exactly.
class SpaceSpec {
public:
    enum class Kind { Bergman, HardyDisk, DirichletDisk };

    static SpaceSpec bergman(DomainSpec domain, WeightSpec weight);
    static SpaceSpec hardy_disk();
    static SpaceSpec dirichlet_disk();

    Kind kind() const noexcept { return kind_; }
    int dim() const noexcept { return domain_.dim; }
    const DomainSpec& domain() const noexcept { return domain_; }
    const WeightSpec& weight() const noexcept { return weight_; }

    // Stable hash of the canonical JSON form; keys norm caches.
    std::string fingerprint() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Bergman;
    DomainSpec domain_;
    WeightSpec weight_;
};

// Membership in the allowable set Lambda(Omega, omega, 2): whether the
// Laurent monomial with exponent alpha is square-integrable against the
// weight. Catalog shadows and weights decide in closed form; custom ones
// fall back to a numeric divergence probe.
bool is_allowable(const SpaceSpec& space, const MultiIndex& alpha);

IndexSet enumerate_allowable(const SpaceSpec& space, const IndexBox& box);

// Closed-form decision when available (nullopt means "run the numeric test").
std::optional<bool> closed_form_allowable(const SpaceSpec& space, const MultiIndex& alpha);

struct FinitenessProbeOptions {
    double blowup_factor = 1e8;
    double stabilize_rel = 1e-8;
    int max_stages = 18;
};

// Nested-exhaustion divergence probe for the norm integrand of alpha.
// Returns true (finite) / false (divergent) or throws UndecidableFiniteness.
bool numeric_allowable(const SpaceSpec& space, const MultiIndex& alpha,
                       const FinitenessProbeOptions& options = {});

} // namespace radop
