#include "radop/index_set.hpp"

#include <algorithm>

namespace radop {

IndexSet IndexSet::from_indices(int dim, std::vector<MultiIndex> members) {
    IndexSet s;
    s.dim_ = dim;
    for (const MultiIndex& m : members) {
        if (m.dim() != dim) throw DimensionMismatch("index of dimension " + std::to_string(m.dim()) +
                                                    " in a set of dimension " + std::to_string(dim));
    }
    std::sort(members.begin(), members.end(), graded_less);
    members.erase(std::unique(members.begin(), members.end()), members.end());
    s.members_ = std::move(members);
    return s;
}

IndexSet IndexSet::full_box(const IndexBox& box) {
    std::vector<MultiIndex> members;
    const std::uint64_t n = box.count();
    members.reserve(n);
    for (std::uint64_t k = 0; k < n; ++k) members.push_back(box.at(k));
    return from_indices(box.dim, std::move(members));
}

IndexSet IndexSet::range_1d(int lo, int hi) {
    std::vector<MultiIndex> members;
    members.reserve(static_cast<std::size_t>(hi >= lo ? hi - lo + 1 : 0));
    for (int m = lo; m <= hi; ++m) members.push_back(MultiIndex{m});
    return from_indices(1, std::move(members));
}

const MultiIndex& IndexSet::at(std::size_t rank) const {
    if (rank >= members_.size()) throw OutOfRange("rank " + std::to_string(rank) + " out of range");
    return members_[rank];
}

bool IndexSet::contains(const MultiIndex& m) const noexcept {
    if (m.dim() != dim_) return false;
    auto it = std::lower_bound(members_.begin(), members_.end(), m, graded_less);
    return it != members_.end() && *it == m;
}

std::size_t IndexSet::rank_of(const MultiIndex& m) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), m, graded_less);
    if (it == members_.end() || !(*it == m)) throw NotMember("index " + m.to_string() + " not in set");
    return static_cast<std::size_t>(it - members_.begin());
}

bool IndexSet::is_subset_of(const IndexSet& other) const {
    if (dim_ != other.dim_) return false;
    for (const MultiIndex& m : members_)
        if (!other.contains(m)) return false;
    return true;
}

std::size_t order_rank(const IndexSet& set, const MultiIndex& m) { return set.rank_of(m); }

} // namespace radop
