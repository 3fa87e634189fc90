#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radop/multi_index.hpp"

namespace radop {

// Ordered set of multi-indices in the canonical (graded sup-norm,
// lexicographic tie-break) order. Immutable after construction; rank
// lookup is a binary search on the sorted member list.
class IndexSet {
public:
    IndexSet() : dim_(0) {}

    static IndexSet from_indices(int dim, std::vector<MultiIndex> members);
    static IndexSet full_box(const IndexBox& box);
    // 1-D convenience: {lo, lo+1, ..., hi}.
    static IndexSet range_1d(int lo, int hi);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }

    const MultiIndex& at(std::size_t rank) const;
    std::span<const MultiIndex> members() const noexcept { return members_; }

    bool contains(const MultiIndex& m) const noexcept;
    // Position under the canonical order; throws NotMember.
    std::size_t rank_of(const MultiIndex& m) const;

    bool is_subset_of(const IndexSet& other) const;

private:
    int dim_;
    std::vector<MultiIndex> members_;
};

std::size_t order_rank(const IndexSet& set, const MultiIndex& m);

} // namespace radop
