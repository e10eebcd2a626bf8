#include "linkcensus/skiplist.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <string>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace {
constexpr int kMaxLevels = 64;
}

CyclicSkipList::CyclicSkipList(std::size_t elements, std::uint64_t seed) : elements_(elements) {
    const std::size_t m = std::max<std::size_t>(elements, 2);
    max_height_ = static_cast<int>(std::bit_width(m - 1)) + 2;  // ceil(log2 m) + 2
    const std::size_t sentinels = elements + 1;
    const std::size_t nodes = elements + sentinels;
    height_.resize(nodes);
    next_.resize(nodes * max_height_);
    prev_.resize(nodes * max_height_);
    live_.assign(elements, 0);
    stale_.assign(nodes, 0);
    active_.assign(sentinels, 0);

    std::mt19937_64 rng(seed);
    for (Node x = 0; x < nodes; ++x) {
        int h = max_height_;
        if (!is_sentinel(x)) {
            h = 1;
            while (h < max_height_ - 1 && (rng() & 1u)) ++h;
        }
        height_[x] = static_cast<std::uint8_t>(h);
        for (int k = 0; k < max_height_; ++k) next_at(x, k) = prev_at(x, k) = x;
    }
    for (std::size_t s = sentinels; s-- > 0;) free_sentinels_.push_back(static_cast<Node>(elements + s));
}

void CyclicSkipList::fail_not_live(Node x, const char* what) const {
    if (x >= elements_) throw ContractViolation(std::string(what) + ": node is not an element");
    throw ContractViolation(std::string(what) + ": element " + std::to_string(x) + " is detached");
}

void CyclicSkipList::unlink(Node x) {
    for (int k = 0; k < height_[x]; ++k) {
        const Node p = prev_at(x, k), n = next_at(x, k);
        next_at(p, k) = n;
        prev_at(n, k) = p;
    }
    stale_[x] = 1;
}

void CyclicSkipList::relink(Node x) {
    for (int k = 0; k < height_[x]; ++k) {
        next_at(prev_at(x, k), k) = x;
        prev_at(next_at(x, k), k) = x;
    }
    stale_[x] = 0;
}

void CyclicSkipList::make_detached(Node x) {
    if (!stale_[x]) return;
    for (int k = 0; k < height_[x]; ++k) {
        saved_links_.push_back(next_at(x, k));
        saved_links_.push_back(prev_at(x, k));
        next_at(x, k) = prev_at(x, k) = x;
    }
    stale_[x] = 0;
    journal_.push_back({Op::reset, x, 0});
}

void CyclicSkipList::raw_splice(Node a, Node b) {
    // For each level, the last node at or before a (resp. b) tall enough to
    // appear on that level. The successors of these two nodes are exchanged.
    Node ca[kMaxLevels], cb[kMaxLevels];
    ca[0] = a;
    cb[0] = b;
    int levels = max_height_;
    auto climb = [this](Node c, int k) -> Node {
        const Node start = c;
        while (height_[c] <= k) {
            c = prev_at(c, k - 1);
            if (c == start) return kNone;
        }
        return c;
    };
    for (int k = 1; k < max_height_; ++k) {
        ca[k] = climb(ca[k - 1], k);
        cb[k] = climb(cb[k - 1], k);
        if (ca[k] == kNone || cb[k] == kNone || ca[k] == cb[k]) {
            levels = k;
            break;
        }
    }
    for (int k = 0; k < levels; ++k) {
        if (ca[k] == cb[k]) break;
        const Node an = next_at(ca[k], k);
        const Node bn = next_at(cb[k], k);
        next_at(ca[k], k) = bn;
        prev_at(bn, k) = ca[k];
        next_at(cb[k], k) = an;
        prev_at(an, k) = cb[k];
    }
}

void CyclicSkipList::splice(Node a, Node b) {
    raw_splice(a, b);
    journal_.push_back({Op::splice, a, b});
}

void CyclicSkipList::set_live(Node x, bool live) {
    live_[x] = live ? 1 : 0;
    live_count_ += live ? 1 : -1;
    journal_.push_back({Op::live, x, live ? 1u : 0u});
}

CyclicSkipList::Node CyclicSkipList::alloc_sentinel() {
    if (free_sentinels_.empty()) throw ContractViolation("sentinel pool exhausted");
    const Node s = free_sentinels_.back();
    free_sentinels_.pop_back();
    active_[s - elements_] = 1;
    ++active_cycles_;
    journal_.push_back({Op::alloc, s, 0});
    make_detached(s);
    return s;
}

void CyclicSkipList::retire_sentinel(Node s) {
    active_[s - elements_] = 0;
    free_sentinels_.push_back(s);
    --active_cycles_;
    journal_.push_back({Op::retire, s, 0});
}

CyclicSkipList::Node CyclicSkipList::make_cycle(std::span<const Node> order) {
    if (order.empty()) throw ContractViolation("make_cycle: empty cycle");
    for (Node x : order) {
        if (x >= elements_) throw ContractViolation("make_cycle: node is not an element");
        if (live_[x]) throw ContractViolation("make_cycle: element " + std::to_string(x) + " is already in a cycle");
    }
    const Node s = alloc_sentinel();
    Node pos = s;
    for (Node x : order) {
        make_detached(x);
        splice(pos, x);
        set_live(x, true);
        pos = x;
    }
    return s;
}

void CyclicSkipList::insert_after(Node pos, Node x) {
    if (!(is_live(pos) || (is_sentinel(pos) && active_[pos - elements_])))
        throw ContractViolation("insert_after: position is not in a cycle");
    if (x >= elements_ || live_[x]) throw ContractViolation("insert_after: element is not detached");
    make_detached(x);
    splice(pos, x);
    set_live(x, true);
}

void CyclicSkipList::erase(Node x) {
    require_live(x, "erase");
    const Node p = prev_at(x, 0);
    unlink(x);
    journal_.push_back({Op::unlink, x, 0});
    set_live(x, false);
    if (is_sentinel(p) && next_at(p, 0) == p) retire_sentinel(p);
}

void CyclicSkipList::join(Node a, Node b) {
    require_live(a, "join");
    require_live(b, "join");
    if (find_last(a) == find_last(b)) throw ContractViolation("join: elements already share a cycle");
    join_unchecked(a, b);
}

void CyclicSkipList::join_unchecked(Node a, Node b) {
    // Dropping b's sentinel first keeps the splice below the height of b's
    // tallest element. The sentinel keeps its links for undo, like an
    // erased element.
    const Node sb = find_last(b);
    unlink(sb);
    journal_.push_back({Op::unlink, sb, 0});
    retire_sentinel(sb);
    splice(a, b);
}

void CyclicSkipList::split(Node a, Node b) {
    require_live(a, "split");
    require_live(b, "split");
    if (a == b) throw ContractViolation("split: identical split points");
    if (find_last(a) != find_last(b)) throw ContractViolation("split: elements are in different cycles");
    split_unchecked(a, b);
}

void CyclicSkipList::split_unchecked(Node a, Node b) {
    splice(a, b);
    // a now lies in next(b)..a; whichever side lost the sentinel gets a new one.
    const bool a_side_has_sentinel = probe_sentinel(a) != kNone;
    const Node s = alloc_sentinel();
    splice(a_side_has_sentinel ? b : a, s);
}

CyclicSkipList::Node CyclicSkipList::next_element(Node x) const {
    require_live(x, "next_element");
    const Node c = next_at(x, 0);
    return is_sentinel(c) ? next_at(c, 0) : c;
}

CyclicSkipList::Node CyclicSkipList::prev_element(Node x) const {
    require_live(x, "prev_element");
    const Node c = prev_at(x, 0);
    return is_sentinel(c) ? prev_at(c, 0) : c;
}

CyclicSkipList::Node CyclicSkipList::find_last(Node x) const {
    require_live(x, "find_last");
    Node c = x;
    while (!is_sentinel(c)) c = next_at(c, height_[c] - 1);
    return c;
}

std::size_t CyclicSkipList::find_last_steps(Node x) const {
    require_live(x, "find_last_steps");
    std::size_t steps = 0;
    Node c = x;
    while (!is_sentinel(c)) {
        c = next_at(c, height_[c] - 1);
        ++steps;
    }
    return steps;
}

CyclicSkipList::Node CyclicSkipList::probe_sentinel(Node x) const {
    Node c = x;
    Node anchor = x;
    while (!is_sentinel(c)) {
        const Node nxt = next_at(c, height_[c] - 1);
        if (height_[nxt] > height_[c])
            anchor = nxt;
        else if (nxt == anchor)
            return kNone;
        c = nxt;
    }
    return c;
}

std::vector<CyclicSkipList::Node> CyclicSkipList::cycle_elements(Node x) const {
    const Node s = is_sentinel(x) ? x : find_last(x);
    std::vector<Node> out;
    for (Node c = next_at(s, 0); c != s; c = next_at(c, 0)) out.push_back(c);
    return out;
}

std::vector<std::vector<CyclicSkipList::Node>> CyclicSkipList::cycles() const {
    std::vector<std::vector<Node>> out;
    for (std::size_t i = 0; i < active_.size(); ++i)
        if (active_[i]) out.push_back(cycle_elements(static_cast<Node>(elements_ + i)));
    return out;
}

void CyclicSkipList::rollback(Mark mark) {
    if (mark > journal_.size())
        throw ContractViolation("skip list rollback to mark " + std::to_string(mark) + " beyond journal length " +
                                std::to_string(journal_.size()));
    while (journal_.size() > mark) {
        const Entry e = journal_.back();
        journal_.pop_back();
        switch (e.op) {
            case Op::splice:
                raw_splice(e.a, e.b);
                break;
            case Op::unlink:
                relink(e.a);
                break;
            case Op::reset: {
                const int h = height_[e.a];
                for (int k = h - 1; k >= 0; --k) {
                    prev_at(e.a, k) = saved_links_.back();
                    saved_links_.pop_back();
                    next_at(e.a, k) = saved_links_.back();
                    saved_links_.pop_back();
                }
                stale_[e.a] = 1;
                break;
            }
            case Op::alloc:
                active_[e.a - elements_] = 0;
                free_sentinels_.push_back(e.a);
                --active_cycles_;
                break;
            case Op::retire:
                if (free_sentinels_.empty() || free_sentinels_.back() != e.a)
                    throw ContractViolation("sentinel pool out of order during rollback");
                free_sentinels_.pop_back();
                active_[e.a - elements_] = 1;
                ++active_cycles_;
                break;
            case Op::live:
                live_[e.a] = e.b ? 0 : 1;
                live_count_ += e.b ? -1 : 1;
                break;
        }
    }
}

void CyclicSkipList::audit() const {
    auto fail = [](const std::string& what) { throw ContractViolation("skip list audit: " + what); };
    std::vector<std::uint8_t> seen(elements_, 0);
    std::size_t cycles = 0, members = 0;
    for (std::size_t i = 0; i < active_.size(); ++i) {
        const Node s = static_cast<Node>(elements_ + i);
        if (!active_[i]) {
            if (stale_[s]) continue;
            for (int k = 0; k < max_height_; ++k)
                if (next_at(s, k) != s || prev_at(s, k) != s) fail("free sentinel is linked");
            continue;
        }
        ++cycles;
        std::vector<Node> ring{s};
        for (Node c = next_at(s, 0); c != s; c = next_at(c, 0)) {
            if (is_sentinel(c)) fail("two sentinels in one cycle");
            if (!live_[c]) fail("detached element inside a cycle");
            if (seen[c]) fail("element in two cycles");
            seen[c] = 1;
            ring.push_back(c);
            if (ring.size() > elements_ + 1) fail("unterminated ring");
        }
        if (ring.size() == 1) fail("empty cycle kept alive");
        members += ring.size() - 1;
        for (int k = 0; k < max_height_; ++k) {
            std::vector<Node> level;
            for (Node c : ring)
                if (height_[c] > k) level.push_back(c);
            for (std::size_t j = 0; j < level.size(); ++j) {
                const Node c = level[j];
                const Node want_next = level[(j + 1) % level.size()];
                if (next_at(c, k) != want_next) fail("level " + std::to_string(k) + " skips a node");
                if (prev_at(want_next, k) != c) fail("level " + std::to_string(k) + " back link broken");
            }
        }
    }
    if (cycles != active_cycles_) fail("cycle count out of sync");
    for (Node x = 0; x < elements_; ++x) {
        if (live_[x] && !seen[x]) fail("live element outside every cycle");
        if (!live_[x] && !stale_[x])
            for (int k = 0; k < height_[x]; ++k)
                if (next_at(x, k) != x || prev_at(x, k) != x) fail("detached element still linked");
    }
    if (members != live_count_) fail("live count out of sync");
}

}  // namespace linkcensus
