#pragma once

// Randomized property checks shared by the unit tests and the acceptance
// binary. Each returns an empty string on success, otherwise a description
// of the first disagreement.

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include "linkcensus/dsu.hpp"
#include "linkcensus/isosig.hpp"
#include "linkcensus/linktrack.hpp"
#include "linkcensus/skiplist.hpp"
#include "linkcensus/validate.hpp"
#include "oracles.hpp"

#define PROP_EXPECT(cond, what)                                                    \
    do {                                                                           \
        if (!(cond)) {                                                             \
            std::ostringstream prop_os;                                            \
            prop_os << "case " << c << ": " << what << " (" #cond ")";             \
            return prop_os.str();                                                  \
        }                                                                          \
    } while (0)

namespace props {

using linkcensus::CyclicSkipList;
using Node = CyclicSkipList::Node;

inline std::string dsu_vs_oracle(int cases, std::uint64_t seed) {
    using linkcensus::SignedDsu;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const int n = 1 + static_cast<int>(rng() % 24);
        SignedDsu d(n);
        oracle::SignedPartition model(n);
        std::vector<std::pair<SignedDsu::Mark, oracle::SignedPartition>> marks;
        const int steps = 1 + static_cast<int>(rng() % 40);
        for (int s = 0; s < steps; ++s) {
            const int op = static_cast<int>(rng() % 10);
            if (op < 6) {
                const int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
                const int rel = rng() % 2 ? 1 : -1;
                const int got = static_cast<int>(d.unite(x, y, rel));
                PROP_EXPECT(got == model.unite(x, y, rel), "unite outcome");
            } else if (op < 8) {
                marks.emplace_back(d.checkpoint(), model);
            } else if (!marks.empty()) {
                d.rollback(marks.back().first);
                model = marks.back().second;
                marks.pop_back();
            }
            const int x = static_cast<int>(rng() % n), y = static_cast<int>(rng() % n);
            const auto fx = d.find(x), fy = d.find(y);
            PROP_EXPECT((fx.root == fy.root) == model.same(x, y), "same set");
            if (model.same(x, y)) PROP_EXPECT(fx.sign * fy.sign == model.relation(x, y), "relative sign");
            PROP_EXPECT(static_cast<int>(d.set_count()) == model.classes(), "set count");
        }
        d.audit();
        d.rollback(0);
        PROP_EXPECT(static_cast<int>(d.set_count()) == n, "full rollback");
    }
    return {};
}

inline std::multiset<std::vector<int>> shape(const CyclicSkipList& s) {
    std::vector<std::vector<int>> out;
    for (const auto& cyc : s.cycles()) out.emplace_back(cyc.begin(), cyc.end());
    return oracle::canonical_cycles(out);
}

// Cycles as read from their sentinels plus each element's sentinel.
struct Snapshot {
    std::vector<std::vector<Node>> cycles;
    std::vector<Node> last;
    bool operator==(const Snapshot&) const = default;
};

inline Snapshot snapshot(const CyclicSkipList& s) {
    Snapshot out{s.cycles(), {}};
    for (Node x = 0; x < s.element_count(); ++x)
        out.last.push_back(s.is_live(x) ? s.find_last(x) : CyclicSkipList::kNone);
    return out;
}

inline std::string skiplist_vs_oracle(int cases, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int c = 0; c < cases; ++c) {
        const int m = 2 + static_cast<int>(rng() % 30);
        CyclicSkipList s(m, rng());
        oracle::CycleModel model(m);
        struct Saved {
            CyclicSkipList::Mark mark;
            Snapshot snap;
            oracle::CycleModel model;
        };
        std::vector<Saved> marks;
        const Snapshot fresh = snapshot(s);
        const auto base = s.checkpoint();
        const int steps = 5 + static_cast<int>(rng() % 40);
        for (int step = 0; step < steps; ++step) {
            std::vector<int> live, detached;
            for (int x = 0; x < m; ++x) (s.is_live(x) ? live : detached).push_back(x);
            PROP_EXPECT(static_cast<int>(s.live_count()) == static_cast<int>(live.size()), "live count");
            auto pick = [&](const std::vector<int>& v) { return v[rng() % v.size()]; };
            const int op = static_cast<int>(rng() % 12);
            if (op < 2 && !detached.empty()) {
                std::shuffle(detached.begin(), detached.end(), rng);
                detached.resize(1 + rng() % detached.size());
                const std::vector<Node> order(detached.begin(), detached.end());
                s.make_cycle(order);
                model.make(detached);
            } else if (op < 4 && !detached.empty() && !live.empty()) {
                const int at = pick(live), x = pick(detached);
                s.insert_after(at, x);
                model.insert_after(at, x);
            } else if (op < 5 && !live.empty()) {
                const int x = pick(live);
                s.erase(x);
                model.erase(x);
            } else if (op < 7 && live.size() >= 2) {
                const int a = pick(live), b = pick(live);
                if (model.same(a, b)) continue;
                s.join(a, b);
                model.join(a, b);
            } else if (op < 9 && live.size() >= 2) {
                const int a = pick(live), b = pick(live);
                if (a == b || !model.same(a, b)) continue;
                s.split(a, b);
                model.split(a, b);
            } else if (op < 10) {
                marks.push_back({s.checkpoint(), snapshot(s), model});
            } else if (!marks.empty()) {
                s.rollback(marks.back().mark);
                PROP_EXPECT(snapshot(s) == marks.back().snap, "rollback restores the exact structure");
                model = marks.back().model;
                marks.pop_back();
            }
            PROP_EXPECT(shape(s) == oracle::canonical_cycles(model.cycles), "cyclic orders");
            PROP_EXPECT(s.cycle_count() == model.cycles.size(), "cycle count");
            if (!live.empty()) {
                const int x = pick(live), y = pick(live);
                if (s.is_live(x) && s.is_live(y)) PROP_EXPECT(s.same_cycle(x, y) == model.same(x, y), "same_cycle");
            }
        }
        s.audit();
        s.rollback(base);
        PROP_EXPECT(snapshot(s) == fresh, "full rollback");
        s.audit();
    }
    return {};
}

struct CostFit {
    std::vector<double> means;  // for m = 2^6 .. 2^14
    double c = 0;               // max of mean / log2 m
};

// Mean find_last step count on one cycle of m elements built by joins.
inline CostFit find_last_cost(std::uint64_t seed, int samples = 2000) {
    std::mt19937_64 rng(seed);
    CostFit fit;
    for (int k = 6; k <= 14; ++k) {
        const std::size_t m = std::size_t{1} << k;
        CyclicSkipList s(m, rng());
        for (Node x = 0; x < m; ++x) {
            const std::vector<Node> one{x};
            s.make_cycle(one);
            if (x > 0) s.join(static_cast<Node>(rng() % x), x);
        }
        double total = 0;
        for (int i = 0; i < samples; ++i) total += static_cast<double>(s.find_last_steps(static_cast<Node>(rng() % m)));
        fit.means.push_back(total / samples);
        fit.c = std::max(fit.c, fit.means.back() / k);
    }
    return fit;
}

inline std::set<std::vector<int>> tracked_cycles(const linkcensus::LinkState& s) {
    std::set<std::vector<int>> out;
    for (const auto& cyc : s.boundary_cycles()) {
        std::vector<int> ids;
        for (const auto& [e, dir] : cyc) ids.push_back(e.index());
        std::sort(ids.begin(), ids.end());
        out.insert(ids);
    }
    return out;
}

struct LinkCounts {
    int passes = 0;
    int prunes = 0;
};

// Random face glue/unglue scripts checked against the from-scratch link
// builder after every step.
inline std::string linktrack_vs_builder(int cases, std::uint64_t seed, LinkCounts* counts = nullptr) {
    using namespace linkcensus;
    std::mt19937_64 rng(seed);
    LinkCounts local;
    for (int c = 0; c < cases; ++c) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int level = c % 4 == 0 ? 1 : 2;
        LinkState state(n, level, rng());
        Triangulation tri(n);
        struct Frame {
            LinkState::Token token;
            FaceSlot a;
            std::string dump;
        };
        std::vector<Frame> stack;
        const std::string fresh = state.dump();
        const int steps = 1 + static_cast<int>(rng() % (3 * n));
        for (int step = 0; step < steps; ++step) {
            std::vector<FaceSlot> open;
            for (int s = 0; s < 4 * n; ++s)
                if (!tri.is_glued(FaceSlot::from_index(s))) open.push_back(FaceSlot::from_index(s));
            if (open.size() >= 2 && rng() % 4 != 0) {
                std::shuffle(open.begin(), open.end(), rng);
                const FaceSlot a = open[0], b = open[1];
                const Perm4 p = extend_face_perm(a.face, b.face, Perm3::from_index(static_cast<int>(rng() % 6)));
                const std::string before = state.dump();
                const int b_before = state.boundary_edges();
                Triangulation next = tri;
                next.glue(a, b, p);
                const bool reversed = validate::check_edges(next).has_value();
                bool orientable = true, spheres = true;
                for (const auto& r : validate::build_links(next)) {
                    orientable = orientable && r.orientable;
                    spheres = spheres && r.is_punctured_sphere();
                }
                const auto got = state.glue_faces(a, b, p);
                PROP_EXPECT((got.verdict == Verdict::prune_edge) == reversed, "edge-reversal verdict");
                const bool want_pass = !reversed && (level == 1 ? orientable : spheres);
                PROP_EXPECT(got.ok() == want_pass, "verdict " << to_string(got.verdict) << " at level " << level);
                if (!got.ok()) {
                    ++local.prunes;
                    PROP_EXPECT(state.dump() == before, "pruned gluing left no trace");
                    continue;
                }
                ++local.passes;
                PROP_EXPECT(state.boundary_edges() == b_before - 6, "boundary count drops by 6");
                stack.push_back({got.token, a, before});
                tri = next;
            } else if (!stack.empty()) {
                state.unglue_faces(stack.back().token);
                PROP_EXPECT(state.dump() == stack.back().dump, "unglue restores the state");
                tri.unglue(stack.back().a);
                stack.pop_back();
            }
            PROP_EXPECT(state.link_components() == validate::build_links(tri).size(), "component count");
            if (level == 2) PROP_EXPECT(tracked_cycles(state) == oracle::boundary_edge_sets(tri), "boundary cycles");
            PROP_EXPECT(state.boundary_edges() == 12 * n - 6 * tri.glued_pairs(), "boundary count");
        }
        state.audit();
        while (!stack.empty()) {
            state.unglue_faces(stack.back().token);
            stack.pop_back();
        }
        PROP_EXPECT(state.dump() == fresh, "full unwind");
    }
    if (counts) *counts = local;
    return {};
}

// Signatures survive `relabels` random relabellings of each sampled
// triangulation on 1..3 tetrahedra.
inline std::string signature_invariance(int triangulations, int relabels, std::uint64_t seed) {
    using namespace linkcensus;
    std::mt19937_64 rng(seed);
    for (int c = 0; c < triangulations; ++c) {
        const int n = 1 + c % 3;
        const auto tri = oracle::random_triangulation(n, rng);
        const auto sig = iso_signature(tri);
        for (int k = 0; k < relabels; ++k) PROP_EXPECT(iso_signature(oracle::shuffle(tri, rng)) == sig, "relabelled signature");
        PROP_EXPECT(iso_signature(from_signature(sig)) == sig, "signature round trip");
    }
    return {};
}

}  // namespace props

#undef PROP_EXPECT
