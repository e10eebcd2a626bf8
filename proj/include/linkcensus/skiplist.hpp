#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace linkcensus {

/// A family of disjoint cyclic sequences over a fixed element set, each
/// stored as a skip list closed into a ring by one sentinel node.
///
/// Every level is a doubly-linked ring holding exactly the nodes of the
/// level below whose tower is tall enough. The sentinel is the tallest node
/// of its ring, so find_last() reaches it by always following a node's
/// highest link. Insert, join and split are built from one primitive that
/// exchanges the successors of two nodes at every level; the primitive is
/// its own inverse. Erase unlinks the element's tower and leaves the
/// element's own links in place, so undo can put it straight back. Undo is
/// exact: rings, towers and sentinel assignment are all restored.
class CyclicSkipList {
public:
    using Node = std::uint32_t;
    using Mark = std::size_t;
    static constexpr Node kNone = std::numeric_limits<Node>::max();

    /// Elements are 0..elements-1 and start detached. Tower heights are drawn
    /// once from `seed` with promotion probability 1/2.
    CyclicSkipList(std::size_t elements, std::uint64_t seed);

    std::size_t element_count() const { return elements_; }
    int max_height() const { return max_height_; }
    int height(Node x) const { return height_[x]; }
    bool is_sentinel(Node x) const { return x >= elements_; }
    bool is_live(Node x) const { return x < elements_ && live_[x]; }
    std::size_t cycle_count() const { return active_cycles_; }
    std::size_t live_count() const { return live_count_; }

    /// New cycle holding `order`; returns its sentinel. Elements must be detached.
    Node make_cycle(std::span<const Node> order);

    /// Inserts detached element x directly after `pos`.
    void insert_after(Node pos, Node x);

    /// Detaches x; a cycle left without elements is dissolved.
    void erase(Node x);

    /// a, b in different cycles: the result runs a, next(b), ..., b, next(a), ...
    void join(Node a, Node b);

    /// a != b in one cycle: the result is two cycles, next(a)..b and next(b)..a.
    void split(Node a, Node b);

    /// join and split without the liveness and same-cycle checks, for
    /// callers that already know the answer.
    void join_unchecked(Node a, Node b);
    void split_unchecked(Node a, Node b);

    /// Neighbours along the cycle, skipping the sentinel.
    Node next_element(Node x) const;
    Node prev_element(Node x) const;

    /// Sentinel of x's cycle, found by expected O(log m) forward descent.
    Node find_last(Node x) const;
    std::size_t find_last_steps(Node x) const;
    bool same_cycle(Node x, Node y) const { return find_last(x) == find_last(y); }

    /// Elements of x's cycle in order, starting just after its sentinel.
    std::vector<Node> cycle_elements(Node x) const;
    /// Every cycle, ordered by sentinel.
    std::vector<std::vector<Node>> cycles() const;

    Mark checkpoint() const { return journal_.size(); }
    /// Undoes all surgery since `mark`, strictly in reverse order.
    void rollback(Mark mark);

    /// Verifies ring structure at every level, one sentinel per cycle, and
    /// element conservation. Throws ContractViolation on failure.
    void audit() const;

private:
    enum class Op : std::uint8_t { splice, unlink, reset, alloc, retire, live };
    struct Entry {
        Op op;
        Node a;
        Node b;
    };

    Node& next_at(Node x, int level) { return next_[static_cast<std::size_t>(x) * max_height_ + level]; }
    Node& prev_at(Node x, int level) { return prev_[static_cast<std::size_t>(x) * max_height_ + level]; }
    Node next_at(Node x, int level) const { return next_[static_cast<std::size_t>(x) * max_height_ + level]; }
    Node prev_at(Node x, int level) const { return prev_[static_cast<std::size_t>(x) * max_height_ + level]; }

    void require_live(Node x, const char* what) const {
        if (x >= elements_ || !live_[x]) fail_not_live(x, what);
    }
    [[noreturn]] void fail_not_live(Node x, const char* what) const;
    // An erased element keeps its old links as a snapshot for undo; they
    // are cleared (and saved) only if the element is inserted again.
    void unlink(Node x);
    void relink(Node x);
    void make_detached(Node x);
    void splice(Node a, Node b);  // journaled
    void raw_splice(Node a, Node b);
    void set_live(Node x, bool live);
    Node alloc_sentinel();
    void retire_sentinel(Node s);
    /// Sentinel of x's ring, or kNone if the ring has none.
    Node probe_sentinel(Node x) const;

    std::size_t elements_;
    int max_height_;
    std::vector<std::uint8_t> height_;
    std::vector<Node> next_, prev_;
    std::vector<std::uint8_t> live_;
    std::vector<std::uint8_t> stale_;  // detached node still holding its old links
    std::vector<Node> saved_links_;    // stale links overwritten by a later insert
    std::vector<std::uint8_t> active_;  // per sentinel slot
    std::vector<Node> free_sentinels_;
    std::vector<Entry> journal_;
    std::size_t active_cycles_ = 0;
    std::size_t live_count_ = 0;
};

}  // namespace linkcensus
