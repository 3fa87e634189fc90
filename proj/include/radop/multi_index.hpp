#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "radop/errors.hpp"

namespace radop {

// Lattice point alpha in Z^n. Storage is inline (no heap) so that large
// index sets stay flat in memory; dimensions up to kMaxDim are supported,
// which covers the whole domain catalog.
class MultiIndex {
public:
    static constexpr int kMaxDim = 8;

    MultiIndex() : dim_(0) { entries_.fill(0); }

    explicit MultiIndex(std::span<const int> entries) {
        if (entries.size() < 1 || entries.size() > kMaxDim)
            throw DimensionMismatch("MultiIndex dimension must be in 1..8");
        dim_ = static_cast<int>(entries.size());
        entries_.fill(0);
        for (int j = 0; j < dim_; ++j) entries_[static_cast<std::size_t>(j)] = entries[static_cast<std::size_t>(j)];
    }

    MultiIndex(std::initializer_list<int> entries)
        : MultiIndex(std::span<const int>(entries.begin(), entries.size())) {}

    static MultiIndex zeros(int dim) {
        std::vector<int> v(static_cast<std::size_t>(dim), 0);
        return MultiIndex(std::span<const int>(v));
    }

    int dim() const noexcept { return dim_; }

    int operator[](int j) const noexcept { return entries_[static_cast<std::size_t>(j)]; }
    int& operator[](int j) noexcept { return entries_[static_cast<std::size_t>(j)]; }

    int sup_norm() const noexcept {
        int m = 0;
        for (int j = 0; j < dim_; ++j) {
            const int a = entries_[static_cast<std::size_t>(j)];
            const int abs_a = a < 0 ? -a : a;
            if (abs_a > m) m = abs_a;
        }
        return m;
    }

    long long degree_sum() const noexcept {
        long long s = 0;
        for (int j = 0; j < dim_; ++j) s += entries_[static_cast<std::size_t>(j)];
        return s;
    }

    bool operator==(const MultiIndex& o) const noexcept {
        if (dim_ != o.dim_) return false;
        for (int j = 0; j < dim_; ++j)
            if (entries_[static_cast<std::size_t>(j)] != o.entries_[static_cast<std::size_t>(j)]) return false;
        return true;
    }
    bool operator!=(const MultiIndex& o) const noexcept { return !(*this == o); }

    std::vector<int> to_vector() const {
        return std::vector<int>(entries_.begin(), entries_.begin() + dim_);
    }

    std::string to_string() const {
        std::string s = "(";
        for (int j = 0; j < dim_; ++j) {
            if (j) s += ",";
            s += std::to_string(entries_[static_cast<std::size_t>(j)]);
        }
        s += ")";
        return s;
    }

private:
    int dim_;
    std::array<int, kMaxDim> entries_{};
};

// Canonical total order: graded by sup-norm, ties broken lexicographically.
// Makes box truncations nested and orderings reproducible.
inline bool graded_less(const MultiIndex& a, const MultiIndex& b) {
    const int sa = a.sup_norm();
    const int sb = b.sup_norm();
    if (sa != sb) return sa < sb;
    for (int j = 0; j < a.dim(); ++j) {
        if (a[j] != b[j]) return a[j] < b[j];
    }
    return false;
}

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        h ^= static_cast<std::uint64_t>(m.dim());
        h *= 1099511628211ull;
        for (int j = 0; j < m.dim(); ++j) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(m[j]));
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// Truncation box {alpha : max_j |alpha_j| <= bound}.
struct IndexBox {
    int dim;
    int bound;

    IndexBox(int d, int n) : dim(d), bound(n) {
        if (d < 1 || d > MultiIndex::kMaxDim)
            throw DimensionMismatch("IndexBox dimension must be in 1..8");
        if (n < 0) throw PreconditionError("IndexBox bound must be >= 0");
    }

    bool contains(const MultiIndex& m) const {
        if (m.dim() != dim) return false;
        return m.sup_norm() <= bound;
    }

    std::uint64_t count() const {
        std::uint64_t c = 1;
        const std::uint64_t side = 2ull * static_cast<std::uint64_t>(bound) + 1ull;
        for (int j = 0; j < dim; ++j) c *= side;
        return c;
    }

    // Mixed-radix decode; enumerates the box without materializing it.
    MultiIndex at(std::uint64_t k) const {
        const std::uint64_t side = 2ull * static_cast<std::uint64_t>(bound) + 1ull;
        MultiIndex m = MultiIndex::zeros(dim);
        for (int j = dim - 1; j >= 0; --j) {
            m[j] = static_cast<int>(k % side) - bound;
            k /= side;
        }
        return m;
    }
};

} // namespace radop
