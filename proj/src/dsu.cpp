#include "linkcensus/dsu.hpp"

#include <numeric>
#include <string>

#include "linkcensus/errors.hpp"

namespace linkcensus {

SignedDsu::SignedDsu(std::size_t size) : parent_(size), rank_(size, 0), parity_(size, 0), sets_(size) {
    std::iota(parent_.begin(), parent_.end(), 0u);
}

int SignedDsu::depth(std::uint32_t x) const {
    int d = 0;
    while (parent_[x] != x) {
        x = parent_[x];
        ++d;
    }
    return d;
}

SignedDsu::Outcome SignedDsu::unite(std::uint32_t x, std::uint32_t y, int rel) {
    const Found fx = find(x);
    const Found fy = find(y);
    if (fx.root == fy.root) return fx.sign * fy.sign == rel ? Outcome::redundant : Outcome::conflict;

    std::uint32_t child = fx.root, parent = fy.root;
    if (rank_[child] > rank_[parent]) std::swap(child, parent);
    // The child root's sign must make sign(x) * sign(y) == rel after linking.
    parity_[child] = (fx.sign * fy.sign * rel) < 0 ? 1 : 0;
    parent_[child] = parent;
    const bool bump = rank_[child] == rank_[parent];
    if (bump) ++rank_[parent];
    journal_.push_back({child, bump});
    --sets_;
    return Outcome::merged;
}

void SignedDsu::rollback(Mark mark) {
    if (mark > journal_.size())
        throw ContractViolation("dsu rollback to mark " + std::to_string(mark) + " beyond journal length " +
                                std::to_string(journal_.size()));
    while (journal_.size() > mark) {
        const Entry e = journal_.back();
        journal_.pop_back();
        const std::uint32_t parent = parent_[e.child];
        if (e.rank_bumped) --rank_[parent];
        parent_[e.child] = e.child;
        parity_[e.child] = 0;
        ++sets_;
    }
}

void SignedDsu::audit() const {
    std::size_t roots = 0;
    for (std::uint32_t x = 0; x < parent_.size(); ++x) {
        if (parent_[x] == x) {
            ++roots;
            if (parity_[x] != 0) throw ContractViolation("root with a non-positive sign");
        } else if (rank_[parent_[x]] <= rank_[x]) {
            throw ContractViolation("rank does not increase towards the root at " + std::to_string(x));
        }
        if (depth(x) > rank_[find(x).root])
            throw ContractViolation("path from " + std::to_string(x) + " is longer than its root's rank");
    }
    if (roots != sets_) throw ContractViolation("set count out of sync");
    if (journal_.size() + sets_ != parent_.size()) throw ContractViolation("journal length out of sync");
}

}  // namespace linkcensus
