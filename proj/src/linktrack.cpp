#include "linkcensus/linktrack.hpp"

#include <array>

#include <algorithm>
#include <map>
#include <sstream>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace {

// Corners of triangle (t, v) in ascending order.
std::array<int, 3> corners(int vertex) {
    std::array<int, 3> out{};
    int k = 0;
    for (int w = 0; w < 4; ++w)
        if (w != vertex) out[k++] = w;
    return out;
}

// Endpoints (a, b), a < b, of link edge (t, v, f).
std::pair<int, int> ends(int vertex, int face) {
    const auto fv = face_vertices(face);
    int out[2];
    int k = 0;
    for (int w : fv)
        if (w != vertex) out[k++] = w;
    return {out[0], out[1]};
}

enum FlagKind { kEdgeFlag = 0, kFaceFlag = 1 };

}  // namespace

LinkEdge LinkEdge::from_index(int e) {
    const int t = e / 12;
    const int v = (e % 12) / 3;
    const int j = e % 3;
    const int f = j < face_opposite(v) ? j : j + 1;
    return {t, v, f};
}

int LinkEdge::orientation() const {
    const auto w = corners(vertex);
    return omitted_vertex(face) == w[1] ? -1 : 1;
}

std::string LinkEdge::str() const {
    return std::to_string(tet) + "." + std::to_string(vertex) + "." + std::to_string(face);
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::prune_orient: return "prune(orientation)";
        case Verdict::prune_edge: return "prune(edge reversed)";
        case Verdict::prune_genus: return "prune(genus)";
    }
    return "?";
}

LinkState::LinkState(int size, int level, std::uint64_t seed)
    : size_(size),
      level_(level),
      triangles_(4 * static_cast<std::size_t>(size)),
      edges_(6 * static_cast<std::size_t>(size)),
      rings_(level >= 2 ? 24 * static_cast<std::size_t>(size) : 0, seed),
      edge_glued_(12 * static_cast<std::size_t>(size), 0),
      face_glued_(4 * static_cast<std::size_t>(size), 0),
      boundary_(12 * size) {
    if (size < 1) throw PreconditionError("link state needs at least one tetrahedron");
    if (level < 1 || level > 2) throw PreconditionError("link state level must be 1 or 2");
    if (level_ < 2) return;
    for (int t = 0; t < size; ++t) {
        for (int v = 0; v < 4; ++v) {
            const auto w = corners(v);
            const int e12 = LinkEdge{t, v, face_opposite(w[2])}.index();
            const int e23 = LinkEdge{t, v, face_opposite(w[0])}.index();
            const int e13 = LinkEdge{t, v, face_opposite(w[1])}.index();
            const CyclicSkipList::Node fwd[3] = {node(e12, true), node(e23, true), node(e13, false)};
            const CyclicSkipList::Node rev[3] = {node(e13, true), node(e23, false), node(e12, false)};
            rings_.make_cycle(fwd);
            rings_.make_cycle(rev);
        }
    }
}

LinkState::Record LinkState::mark() const {
    return {triangles_.checkpoint(), edges_.checkpoint(), rings_.checkpoint(), flag_journal_.size(), boundary_};
}

void LinkState::restore(const Record& r) {
    triangles_.rollback(r.triangles);
    edges_.rollback(r.edges);
    rings_.rollback(r.rings);
    while (flag_journal_.size() > r.flags) {
        const auto [kind, index] = flag_journal_.back();
        flag_journal_.pop_back();
        (kind == kEdgeFlag ? edge_glued_ : face_glued_)[index] = 0;
    }
    boundary_ = r.boundary;
}

void LinkState::set_flag(std::vector<std::uint8_t>& flags, int index, int kind) {
    flags[index] = 1;
    flag_journal_.emplace_back(kind, index);
}

LinkState::Token LinkState::push(const Record& r) {
    undo_.push_back(r);
    return {static_cast<std::uint32_t>(undo_.size())};
}

LinkState::Record LinkState::pop(Token token, const char* what) {
    if (undo_.empty() || token.depth != undo_.size())
        throw ContractViolation(std::string(what) + ": token " + std::to_string(token.depth) +
                                " is not the most recent gluing (" + std::to_string(undo_.size()) + " open)");
    const Record r = undo_.back();
    undo_.pop_back();
    return r;
}

SignedDsu::Outcome LinkState::unite_triangles(int x, int y, int d) {
    if (x == y) throw ContractViolation("cannot glue a link edge to itself");
    if (edge_glued_[x] || edge_glued_[y])
        throw ContractViolation("link edge " + LinkEdge::from_index(edge_glued_[x] ? x : y).str() +
                                " is not on the boundary");
    const LinkEdge ex = LinkEdge::from_index(x), ey = LinkEdge::from_index(y);
    return triangles_.unite(ex.triangle(), ey.triangle(), -ex.orientation() * ey.orientation() * d);
}

Verdict LinkState::glue_rings(int x, int y, int d, SignedDsu::Outcome outcome) {
    if (level_ >= 2) {
        // x forwards pairs with y traversed against the gluing; the reversed
        // rings pair up the other way round. The triangle union already said
        // whether the rings can share a cycle, so the unchecked surgery is safe.
        const auto xf = node(x, true), xb = node(x, false);
        const auto y1 = node(y, d < 0), y2 = node(y, d > 0);
        if (outcome == SignedDsu::Outcome::redundant) {
            if (!rings_.same_cycle(xf, y1)) return Verdict::prune_genus;
            rings_.split_unchecked(xf, y1);
            rings_.erase(xf);
            rings_.erase(y1);
            rings_.split_unchecked(xb, y2);
            rings_.erase(xb);
            rings_.erase(y2);
        } else {
            rings_.join_unchecked(xf, y1);
            rings_.erase(xf);
            rings_.erase(y1);
            rings_.join_unchecked(xb, y2);
            rings_.erase(xb);
            rings_.erase(y2);
        }
    }
    set_flag(edge_glued_, x, kEdgeFlag);
    set_flag(edge_glued_, y, kEdgeFlag);
    boundary_ -= 2;
    return Verdict::pass;
}

LinkState::Result LinkState::glue_link_edges(LinkEdge x, LinkEdge y, bool same_direction) {
    const Record r = mark();
    const int d = same_direction ? 1 : -1;
    const auto outcome = unite_triangles(x.index(), y.index(), d);
    const Verdict v =
        outcome == SignedDsu::Outcome::conflict ? Verdict::prune_orient : glue_rings(x.index(), y.index(), d, outcome);
    if (v != Verdict::pass) {
        restore(r);
        return {v, {}};
    }
    return {v, push(r)};
}

void LinkState::unglue_link_edges(Token token) { restore(pop(token, "unglue_link_edges")); }

LinkState::Result LinkState::glue_faces(FaceSlot a, FaceSlot b, Perm4 sigma) {
    if (a == b) throw ContractViolation("cannot glue a face to itself");
    if (face_glued_[a.index()] || face_glued_[b.index()])
        throw ContractViolation("face " + std::to_string(face_glued_[a.index()] ? a.tet : b.tet) + "." +
                                std::to_string(face_glued_[a.index()] ? a.face : b.face) + " is already glued");
    if (image_face(a.face, sigma) != b.face) throw ContractViolation("gluing perm does not carry face a onto face b");

    const Record r = mark();
    const auto fv = face_vertices(a.face);
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            const int u = fv[i], w = fv[j];
            const int sa = EdgeSlot{a.tet, u, w}.index();
            const int sb = EdgeSlot::make(b.tet, sigma[u], sigma[w]).index();
            if (edges_.unite(sa, sb, sigma[u] < sigma[w] ? 1 : -1) == SignedDsu::Outcome::conflict) {
                restore(r);
                return {Verdict::prune_edge, {}};
            }
        }
    }
    // All three triangle unions come before any ring surgery: their outcomes
    // do not depend on the rings, and an orientation prune then costs no
    // surgery to undo.
    std::array<int, 3> xs{}, ys{}, ds{};
    std::array<SignedDsu::Outcome, 3> outcomes{};
    for (int i = 0; i < 3; ++i) {
        const int v = fv[i];
        const auto [p, q] = ends(v, a.face);
        xs[i] = LinkEdge{a.tet, v, a.face}.index();
        ys[i] = LinkEdge{b.tet, sigma[v], b.face}.index();
        ds[i] = sigma[p] < sigma[q] ? 1 : -1;
        outcomes[i] = unite_triangles(xs[i], ys[i], ds[i]);
        if (outcomes[i] == SignedDsu::Outcome::conflict) {
            restore(r);
            return {Verdict::prune_orient, {}};
        }
    }
    for (int i = 0; i < 3; ++i) {
        const Verdict verdict = glue_rings(xs[i], ys[i], ds[i], outcomes[i]);
        if (verdict != Verdict::pass) {
            restore(r);
            return {verdict, {}};
        }
    }
    set_flag(face_glued_, a.index(), kFaceFlag);
    set_flag(face_glued_, b.index(), kFaceFlag);
    return {Verdict::pass, push(r)};
}

void LinkState::unglue_faces(Token token) { restore(pop(token, "unglue_faces")); }

std::vector<std::vector<std::pair<LinkEdge, int>>> LinkState::boundary_cycles() const {
    std::vector<std::vector<std::pair<LinkEdge, int>>> out;
    if (level_ < 2) return out;
    for (const auto& ring : rings_.cycles()) {
        // Keep the ring in which the smallest edge runs forwards.
        const auto it = std::min_element(ring.begin(), ring.end());
        if (*it % 2 != 0) continue;
        std::vector<std::pair<LinkEdge, int>> cycle;
        const std::size_t start = static_cast<std::size_t>(it - ring.begin());
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const auto n = ring[(start + k) % ring.size()];
            cycle.emplace_back(LinkEdge::from_index(static_cast<int>(n / 2)), n % 2 == 0 ? 1 : -1);
        }
        out.push_back(std::move(cycle));
    }
    std::sort(out.begin(), out.end(), [](const auto& p, const auto& q) {
        return p.front().first.index() < q.front().first.index();
    });
    return out;
}

std::vector<std::vector<int>> LinkState::components() const {
    std::map<std::uint32_t, std::vector<int>> by_root;
    for (int t = 0; t < 4 * size_; ++t) by_root[triangles_.find(t).root].push_back(t);
    std::vector<std::vector<int>> out;
    for (auto& [root, members] : by_root) out.push_back(std::move(members));
    std::sort(out.begin(), out.end());
    return out;
}

std::string LinkState::dump() const {
    std::ostringstream os;
    os << "boundary edges: " << boundary_ << "\n";
    os << "components:";
    for (const auto& c : components()) {
        os << " {";
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i] / 4 << "." << c[i] % 4;
        os << "}";
    }
    os << "\n";
    for (const auto& cycle : boundary_cycles()) {
        os << "cycle:";
        for (const auto& [e, dir] : cycle) os << " " << e.str() << (dir > 0 ? "+" : "-");
        os << "\n";
    }
    return os.str();
}

void LinkState::audit() const {
    triangles_.audit();
    edges_.audit();
    const int open = static_cast<int>(std::count(edge_glued_.begin(), edge_glued_.end(), 0));
    if (open != boundary_) throw ContractViolation("boundary count out of sync with glued edges");
    if (level_ < 2) return;
    rings_.audit();
    if (rings_.live_count() != 2 * static_cast<std::size_t>(boundary_))
        throw ContractViolation("ring membership out of sync with boundary edges");
    for (const auto& ring : rings_.cycles()) {
        // The ring through the reversed first node must be this ring backwards.
        const auto twin = rings_.cycle_elements(ring.front() ^ 1u);
        if (twin.size() != ring.size()) throw ContractViolation("boundary ring without a matching reverse");
        const auto at = std::find(twin.begin(), twin.end(), ring.front() ^ 1u) - twin.begin();
        for (std::size_t k = 0; k < ring.size(); ++k) {
            const auto expect = ring[(ring.size() - k) % ring.size()] ^ 1u;
            if (twin[(at + k) % twin.size()] != expect)
                throw ContractViolation("boundary ring without a matching reverse");
        }
        const auto root = triangles_.find(static_cast<std::uint32_t>(ring.front() / 2 / 3)).root;
        for (auto n : ring) {
            if (edge_glued_[n / 2]) throw ContractViolation("glued link edge still on a boundary ring");
            if (triangles_.find(static_cast<std::uint32_t>(n / 2 / 3)).root != root)
                throw ContractViolation("boundary ring spans two link components");
        }
    }
}

}  // namespace linkcensus
