#pragma once

#include <cstdint>
#include <vector>

namespace linkcensus {

/// Union-find over elements carrying a relative sign, with union by rank,
/// no path compression, and a journal of merges for exact LIFO undo.
///
/// Each element stores its sign relative to its parent; find() composes the
/// signs along the path, so sign(x) * sign(y) is the relation between x and
/// y whenever they share a root.
class SignedDsu {
public:
    enum class Outcome { merged, redundant, conflict };

    struct Found {
        std::uint32_t root;
        int sign;  // +1 or -1: orientation of x relative to root
    };

    using Mark = std::size_t;

    explicit SignedDsu(std::size_t size = 0);

    std::size_t size() const { return parent_.size(); }
    std::size_t set_count() const { return sets_; }

    Found find(std::uint32_t x) const {
        int sign = 1;
        while (parent_[x] != x) {
            sign *= parity_[x] ? -1 : 1;
            x = parent_[x];
        }
        return {x, sign};
    }

    /// Number of parent links followed by find(x).
    int depth(std::uint32_t x) const;

    /// Records that sign(x) * sign(y) == rel. Conflict leaves the structure untouched.
    Outcome unite(std::uint32_t x, std::uint32_t y, int rel);

    Mark checkpoint() const { return journal_.size(); }
    /// Undoes every merge made since `mark`. Throws ContractViolation when
    /// `mark` lies beyond the current journal.
    void rollback(Mark mark);

    /// Checks acyclicity, rank bounds and journal consistency.
    void audit() const;

private:
    struct Entry {
        std::uint32_t child;   // root that was linked below another
        bool rank_bumped;      // whether the new parent's rank grew
    };

    std::vector<std::uint32_t> parent_;
    std::vector<std::uint8_t> rank_;
    std::vector<std::uint8_t> parity_;  // 1 when the element is reversed relative to its parent
    std::vector<Entry> journal_;
    std::size_t sets_ = 0;
};

}  // namespace linkcensus
