#include "radop/norms.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "radop/parallel.hpp"

namespace radop {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// per-axis integral 2*pi * int_a^b r^{2m+1} dr (constant weight 1)
double axis_moment(double a, double b, long long m) {
    if (m == -1) return kTwoPi * std::log(b / a);
    const double p = 2.0 * static_cast<double>(m) + 2.0;
    return kTwoPi * (std::pow(b, p) - std::pow(a, p)) / p;
}

// log Beta(x, y)
double lbeta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

} // namespace

std::optional<double> closed_form_norm_sq(const SpaceSpec& space, const MultiIndex& alpha) {
    if (alpha.dim() != space.dim()) throw DimensionMismatch("index dimension mismatch");
    switch (space.kind()) {
    case SpaceSpec::Kind::HardyDisk:
        return alpha[0] >= 0 ? std::optional<double>(1.0) : std::nullopt;
    case SpaceSpec::Kind::DirichletDisk:
        if (alpha[0] < 0) return std::nullopt;
        return alpha[0] == 0 ? 1.0 : static_cast<double>(alpha[0]);
    case SpaceSpec::Kind::Bergman:
        break;
    }
    const ShadowRegion& sh = space.domain().shadow;
    const WeightSpec& w = space.weight();
    const int n = space.dim();

    if (w.kind() == WeightSpec::Kind::Constant) {
        const double c = w.constant_value();
        switch (sh.kind()) {
        case ShadowKind::Box: {
            double v = c;
            const auto& iv = sh.intervals();
            for (int j = 0; j < n; ++j) {
                const auto& [a, b] = iv[static_cast<std::size_t>(j)];
                if (a == 0.0 && alpha[j] < 0) return std::nullopt;
                v *= axis_moment(a, b, alpha[j]);
            }
            return v;
        }
        case ShadowKind::Ball: {
            // pi^n * alpha! / (n + |alpha|)!
            long long total = 0;
            double lg = 0.0;
            for (int j = 0; j < n; ++j) {
                if (alpha[j] < 0) return std::nullopt;
                total += alpha[j];
                lg += std::lgamma(static_cast<double>(alpha[j]) + 1.0);
            }
            lg -= std::lgamma(static_cast<double>(n + total) + 1.0);
            return c * std::pow(M_PI, n) * std::exp(lg);
        }
        case ShadowKind::OrderedSimplex: {
            // pi^n / prod_k (sigma_k + k), sigma_k the partial exponent sums
            double denom = 1.0;
            long long partial = 0;
            for (int k = 1; k <= n; ++k) {
                partial += alpha[k - 1];
                const long long d = partial + k;
                if (d < 1) return std::nullopt;
                denom *= static_cast<double>(d);
            }
            return c * std::pow(M_PI, n) / denom;
        }
        case ShadowKind::Custom:
            return std::nullopt;
        }
    }

    if (w.kind() == WeightSpec::Kind::RadialPower && sh.kind() == ShadowKind::Box) {
        // per-axis pi * B(m+1, s+1) when the axis interval is [0, 1)
        const auto& iv = sh.intervals();
        const auto& exps = w.exponents();
        double v = 1.0;
        for (int j = 0; j < n; ++j) {
            const auto& [a, b] = iv[static_cast<std::size_t>(j)];
            if (a != 0.0 || std::abs(b - 1.0) > 1e-14) return std::nullopt;
            if (alpha[j] < 0) return std::nullopt;
            v *= M_PI * std::exp(lbeta(static_cast<double>(alpha[j]) + 1.0,
                                       exps[static_cast<std::size_t>(j)] + 1.0));
        }
        return v;
    }

    return std::nullopt;
}

NormEntry monomial_norm_entry(const SpaceSpec& space, const MultiIndex& alpha,
                              const NormComputeOptions& options) {
    if (!is_allowable(space, alpha))
        throw NotAllowable("monomial " + alpha.to_string() + " is not allowable for " +
                           space.describe());
    if (auto cf = closed_form_norm_sq(space, alpha)) {
        if (!(*cf > 0.0) || !std::isfinite(*cf))
            throw QuadratureFailure("closed-form norm degenerate for " + alpha.to_string());
        return {*cf, {NormProvenance::Kind::ClosedForm, 0.0}};
    }
    if (space.kind() != SpaceSpec::Kind::Bergman)
        throw NotAllowable("negative exponent on a disk sequence space");

    const DomainSpec& domain = space.domain();
    const int n = domain.dim;
    IntegrationReport report;
    auto integrand = [&](std::span<const double> r) {
        double v = 1.0;
        for (int j = 0; j < n; ++j) {
            v *= std::pow(r[static_cast<std::size_t>(j)], 2.0 * alpha[j]);
            v *= r[static_cast<std::size_t>(j)];
        }
        return v;
    };
    if (domain.shadow.kind() == ShadowKind::Custom) {
        auto weighted = [&](std::span<const double> r) { return integrand(r) * space.weight()(r); };
        report = integrate_shadow(weighted, domain, adaptive_rule(domain),
                                  {options.rel_tol * 10.0, 10'000'000});
    } else {
        const QuadratureRule rule = weighted_shadow_rule(domain, space.weight(), options.points_per_axis);
        report = integrate_shadow(integrand, domain, rule);
    }
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale *= kTwoPi;
    const double value = scale * report.value.real();
    if (!(value > 0.0) || !std::isfinite(value))
        throw QuadratureFailure("quadrature produced a degenerate norm for " + alpha.to_string());
    return {value, {NormProvenance::Kind::Quadrature, scale * report.error_estimate}};
}

double monomial_norm_sq(const SpaceSpec& space, const MultiIndex& alpha,
                        const NormComputeOptions& options) {
    return monomial_norm_entry(space, alpha, options).value;
}

double coordinate_norm_sq(const SpaceSpec& space, const MultiIndex& alpha,
                          const NormComputeOptions& options) {
    return 1.0 / monomial_norm_sq(space, alpha, options);
}

MonomialNormTable::MonomialNormTable(std::string fingerprint, IndexSet set,
                                     std::vector<NormEntry> entries)
    : fingerprint_(std::move(fingerprint)), set_(std::move(set)), entries_(std::move(entries)) {
    if (set_.size() != entries_.size())
        throw PreconditionError("norm table size mismatch");
    for (const NormEntry& e : entries_)
        if (!(e.value > 0.0) || !std::isfinite(e.value))
            throw PreconditionError("norm table entries must be positive and finite");
}

double MonomialNormTable::value(const MultiIndex& alpha) const {
    return entries_[set_.rank_of(alpha)].value;
}

const NormEntry& MonomialNormTable::entry(const MultiIndex& alpha) const {
    return entries_[set_.rank_of(alpha)];
}

// ---- cache ----

NormCache::NormCache(std::string path) : path_(std::move(path)) { load(); }

std::string NormCache::default_path() {
    const char* dir = std::getenv("RADOP_CACHE_DIR");
    std::filesystem::path p(dir ? dir : ".");
    return (p / "radop_norm_cache.json").string();
}

void NormCache::load() {
    std::ifstream in(path_);
    if (!in) return;
    nlohmann::json j;
    try {
        in >> j;
    } catch (...) {
        return; // corrupt cache: start empty
    }
    if (!j.is_array()) return;
    for (const auto& block : j) {
        if (!block.is_object() || !block.contains("fingerprint") || !block.contains("entries"))
            continue;
        try {
            const std::string fp = block["fingerprint"].get<std::string>();
            for (const auto& e : block["entries"]) {
                std::vector<int> alpha = e.at(0).get<std::vector<int>>();
                NormEntry entry;
                entry.value = e.at(1).get<double>();
                const auto& prov = e.at(2);
                const std::string kind = prov.at("kind").get<std::string>();
                entry.provenance.kind = kind == "closed-form" ? NormProvenance::Kind::ClosedForm
                                                              : NormProvenance::Kind::Quadrature;
                entry.provenance.error_estimate = prov.value("error", 0.0);
                if (entry.value > 0.0 && std::isfinite(entry.value))
                    data_[fp][std::move(alpha)] = entry;
            }
        } catch (...) {
            continue; // mismatched block: skip it
        }
    }
}

std::optional<NormEntry> NormCache::lookup(const std::string& fingerprint,
                                           const MultiIndex& alpha) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = data_.find(fingerprint);
    if (it == data_.end()) return std::nullopt;
    auto jt = it->second.find(alpha.to_vector());
    if (jt == it->second.end()) return std::nullopt;
    return jt->second;
}

void NormCache::store(const std::string& fingerprint, const MultiIndex& alpha,
                      const NormEntry& entry) {
    std::lock_guard<std::mutex> lock(mutex_);
    data_[fingerprint][alpha.to_vector()] = entry;
}

std::size_t NormCache::entry_count() const {
    std::lock_guard<std::mutex> lock(mutex_);
    std::size_t n = 0;
    for (const auto& [fp, entries] : data_) n += entries.size();
    return n;
}

void NormCache::save() const {
    std::lock_guard<std::mutex> lock(mutex_);
    nlohmann::json out = nlohmann::json::array();
    for (const auto& [fp, entries] : data_) {
        nlohmann::json block;
        block["fingerprint"] = fp;
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [alpha, entry] : entries) {
            nlohmann::json prov;
            prov["kind"] = entry.provenance.kind == NormProvenance::Kind::ClosedForm
                               ? "closed-form"
                               : "quadrature";
            prov["error"] = entry.provenance.error_estimate;
            arr.push_back(nlohmann::json::array({alpha, entry.value, prov}));
        }
        block["entries"] = std::move(arr);
        out.push_back(std::move(block));
    }
    const std::filesystem::path p(path_);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream f(path_);
    f << out.dump(2) << "\n";
}

void NormCache::clear() {
    std::lock_guard<std::mutex> lock(mutex_);
    data_.clear();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
}

MonomialNormTable build_norm_table(const SpaceSpec& space, const IndexSet& set, NormCache* cache,
                                   BuildStats* stats, const NormComputeOptions& options) {
    const std::string fp = space.fingerprint();
    std::vector<NormEntry> entries(set.size());
    std::vector<char> from_cache(set.size(), 0);
    if (cache) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (auto hit = cache->lookup(fp, set.at(i))) {
                entries[i] = *hit;
                entries[i].provenance.kind = NormProvenance::Kind::Cache;
                from_cache[i] = 1;
            }
        }
    }
    std::vector<std::exception_ptr> errors(set.size());
    parallel_for(set.size(), [&](std::size_t i) {
        if (from_cache[i]) return;
        try {
            entries[i] = monomial_norm_entry(space, set.at(i), options);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    });
    std::string failed;
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (errors[i]) {
            if (!failed.empty()) failed += ", ";
            failed += set.at(i).to_string();
        }
    }
    if (!failed.empty()) throw QuadratureFailure("norm table entries failed for: " + failed);

    if (cache) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (!from_cache[i]) {
                NormEntry to_store = entries[i];
                cache->store(fp, set.at(i), to_store);
            }
        }
        cache->save();
    }
    if (stats) {
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (from_cache[i])
                ++stats->cache_hits;
            else if (entries[i].provenance.kind == NormProvenance::Kind::ClosedForm)
                ++stats->closed_form;
            else
                ++stats->quadrature;
        }
    }
    return MonomialNormTable(fp, set, std::move(entries));
}

double NormProvider::norm_sq(const MultiIndex& alpha) const {
    const std::vector<int> key = alpha.to_vector();
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = values_.find(key);
        if (it != values_.end()) return it->second;
    }
    const double v = monomial_norm_sq(space_, alpha);
    std::lock_guard<std::mutex> lock(mutex_);
    values_.emplace(key, v);
    return v;
}

} // namespace radop
