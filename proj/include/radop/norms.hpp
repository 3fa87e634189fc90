#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "radop/quadrature.hpp"
#include "radop/space.hpp"

namespace radop {

struct NormProvenance {
    enum class Kind { ClosedForm, Quadrature, Cache };
    Kind kind = Kind::ClosedForm;
    double error_estimate = 0.0;
};

struct NormEntry {
    double value = 0.0;
    NormProvenance provenance;
};

// Closed form for ||e_alpha||^2 when the (shadow, weight) pair is in the
// catalog; nullopt means "integrate".
std::optional<double> closed_form_norm_sq(const SpaceSpec& space, const MultiIndex& alpha);

struct NormComputeOptions {
    int points_per_axis = 48;
    double rel_tol = 1e-10;
};

// ||e_alpha||^2 for the space; closed form when available, otherwise
// (2 pi)^n * integral over the shadow of r^{2 alpha} * prod r_j * omega.
double monomial_norm_sq(const SpaceSpec& space, const MultiIndex& alpha,
                        const NormComputeOptions& options = {});
NormEntry monomial_norm_entry(const SpaceSpec& space, const MultiIndex& alpha,
                              const NormComputeOptions& options = {});

// Dual coordinate-functional norm 1 / ||e_alpha||^2.
double coordinate_norm_sq(const SpaceSpec& space, const MultiIndex& alpha,
                          const NormComputeOptions& options = {});

class MonomialNormTable {
public:
    MonomialNormTable() = default;
    MonomialNormTable(std::string fingerprint, IndexSet set, std::vector<NormEntry> entries);

    const std::string& fingerprint() const noexcept { return fingerprint_; }
    const IndexSet& set() const noexcept { return set_; }
    std::size_t size() const noexcept { return entries_.size(); }

    double value(const MultiIndex& alpha) const;
    const NormEntry& entry(std::size_t rank) const { return entries_.at(rank); }
    const NormEntry& entry(const MultiIndex& alpha) const;

private:
    std::string fingerprint_;
    IndexSet set_;
    std::vector<NormEntry> entries_;
};

// Persistent JSON-backed cache of norm entries keyed by space fingerprint.
// Corrupt or mismatched files are discarded, never fatal.
class NormCache {
public:
    explicit NormCache(std::string path);

    std::optional<NormEntry> lookup(const std::string& fingerprint, const MultiIndex& alpha) const;
    void store(const std::string& fingerprint, const MultiIndex& alpha, const NormEntry& entry);
    void save() const;
    void clear();

    const std::string& path() const noexcept { return path_; }
    std::size_t entry_count() const;

    // Directory from RADOP_CACHE_DIR (default ".") + fixed file name.
    static std::string default_path();

private:
    void load();

    std::string path_;
    mutable std::mutex mutex_;
    std::map<std::string, std::map<std::vector<int>, NormEntry>> data_;
};

struct BuildStats {
    std::size_t closed_form = 0;
    std::size_t quadrature = 0;
    std::size_t cache_hits = 0;
};

MonomialNormTable build_norm_table(const SpaceSpec& space, const IndexSet& set,
                                   NormCache* cache = nullptr, BuildStats* stats = nullptr,
                                   const NormComputeOptions& options = {});

// Shared lazily-extended norm lookup used by operators; thread-safe.
class NormProvider {
public:
    explicit NormProvider(SpaceSpec space) : space_(std::move(space)) {}

    const SpaceSpec& space() const noexcept { return space_; }
    double norm_sq(const MultiIndex& alpha) const;
    double coord_sq(const MultiIndex& alpha) const { return 1.0 / norm_sq(alpha); }

private:
    SpaceSpec space_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<int>, double> values_;
};

using NormProviderPtr = std::shared_ptr<NormProvider>;

} // namespace radop
