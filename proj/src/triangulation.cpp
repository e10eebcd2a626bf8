#include "linkcensus/triangulation.hpp"

#include <deque>
#include <string>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace {

std::string slot_name(FaceSlot s) { return std::to_string(s.tet) + "." + std::to_string(s.face); }

// Labels the nodes of an undirected signed graph with components numbered in
// order of first appearance. Returns, per node, its class and its sign
// relative to the first node of the class; `consistent` records per class
// whether every edge agreed with the propagated signs.
struct SignedLabelling {
    Partition partition;
    std::vector<int> sign;
    std::vector<bool> consistent;
};

SignedLabelling label_components(int nodes, const std::vector<std::vector<std::pair<int, int>>>& adj) {
    SignedLabelling out;
    out.partition.class_of.assign(nodes, -1);
    out.sign.assign(nodes, 0);
    std::deque<int> queue;
    for (int start = 0; start < nodes; ++start) {
        if (out.partition.class_of[start] >= 0) continue;
        const int cls = out.partition.count++;
        out.consistent.push_back(true);
        out.partition.class_of[start] = cls;
        out.sign[start] = 1;
        queue.push_back(start);
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (auto [w, rel] : adj[u]) {
                if (out.partition.class_of[w] < 0) {
                    out.partition.class_of[w] = cls;
                    out.sign[w] = out.sign[u] * rel;
                    queue.push_back(w);
                } else if (out.sign[w] != out.sign[u] * rel) {
                    out.consistent[cls] = false;
                }
            }
        }
    }
    return out;
}

}  // namespace

Triangulation::Triangulation(int size) : size_(size), partner_(4 * size, -1), perm_(4 * size) {
    if (size < 0) throw PreconditionError("negative triangulation size");
}

std::optional<Gluing> Triangulation::gluing(FaceSlot s) const {
    if (s.tet < 0 || s.tet >= size_ || s.face < 0 || s.face > 3)
        throw PreconditionError("face slot " + slot_name(s) + " out of range");
    if (!is_glued(s)) return std::nullopt;
    return Gluing{partner(s), perm(s)};
}

void Triangulation::glue(FaceSlot a, FaceSlot b, Perm4 p) {
    if (a.tet < 0 || a.tet >= size_ || b.tet < 0 || b.tet >= size_ || a.face < 0 || a.face > 3 || b.face < 0 ||
        b.face > 3)
        throw PreconditionError("face slot out of range in gluing " + slot_name(a) + " -> " + slot_name(b));
    if (a == b) throw PreconditionError("slot " + slot_name(a) + " glued to itself");
    if (is_glued(a)) throw PreconditionError("slot " + slot_name(a) + " is already glued");
    if (is_glued(b)) throw PreconditionError("slot " + slot_name(b) + " is already glued");
    if (image_face(a.face, p) != b.face)
        throw PreconditionError("permutation " + p.str() + " does not carry face " + slot_name(a) + " onto " +
                                slot_name(b));
    partner_[a.index()] = b.index();
    partner_[b.index()] = a.index();
    perm_[a.index()] = p;
    perm_[b.index()] = p.inverse();
    ++glued_pairs_;
}

void Triangulation::unglue(FaceSlot a) {
    if (!is_glued(a)) throw PreconditionError("slot " + slot_name(a) + " is not glued");
    const int b = partner_[a.index()];
    partner_[a.index()] = -1;
    partner_[b] = -1;
    perm_[a.index()] = Perm4{};
    perm_[b] = Perm4{};
    --glued_pairs_;
}

bool Triangulation::is_connected() const {
    if (size_ == 0) return true;
    std::vector<bool> seen(size_, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int reached = 1;
    while (!stack.empty()) {
        const int t = stack.back();
        stack.pop_back();
        for (int f = 0; f < 4; ++f) {
            const int p = partner_[4 * t + f];
            if (p < 0 || seen[p / 4]) continue;
            seen[p / 4] = true;
            ++reached;
            stack.push_back(p / 4);
        }
    }
    return reached == size_;
}

void Triangulation::audit() const {
    int pairs = 0;
    for (int s = 0; s < slot_count(); ++s) {
        const int p = partner_[s];
        if (p < 0) continue;
        const FaceSlot a = FaceSlot::from_index(s);
        if (p == s) throw ContractViolation("slot " + slot_name(a) + " is glued to itself");
        if (partner_[p] != s) throw ContractViolation("gluing at " + slot_name(a) + " is not an involution");
        if (perm_[p] != perm_[s].inverse())
            throw ContractViolation("gluing perms at " + slot_name(a) + " are not mutually inverse");
        if (image_face(a.face, perm_[s]) != p % 4)
            throw ContractViolation("gluing perm at " + slot_name(a) + " misses its partner face");
        if (s < p) ++pairs;
    }
    if (pairs != glued_pairs_) throw ContractViolation("glued pair count out of sync");
}

Partition vertex_classes(const Triangulation& tri) {
    const int n = tri.size();
    std::vector<std::vector<std::pair<int, int>>> adj(4 * n);
    for (int s = 0; s < tri.slot_count(); ++s) {
        const FaceSlot a = FaceSlot::from_index(s);
        if (!tri.is_glued(a)) continue;
        const FaceSlot b = tri.partner(a);
        const Perm4 p = tri.perm(a);
        for (int v : face_vertices(a.face)) adj[4 * a.tet + v].push_back({4 * b.tet + p[v], 1});
    }
    return label_components(4 * n, adj).partition;
}

EdgeClasses edge_classes(const Triangulation& tri) {
    const int n = tri.size();
    std::vector<std::vector<std::pair<int, int>>> adj(6 * n);
    for (int s = 0; s < tri.slot_count(); ++s) {
        const FaceSlot a = FaceSlot::from_index(s);
        if (!tri.is_glued(a)) continue;
        const FaceSlot b = tri.partner(a);
        const Perm4 p = tri.perm(a);
        const auto fv = face_vertices(a.face);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                const int u = fv[i], w = fv[j];
                const EdgeSlot src{a.tet, u, w};
                const EdgeSlot dst = EdgeSlot::make(b.tet, p[u], p[w]);
                const int rel = (p[u] < p[w]) ? 1 : -1;
                adj[src.index()].push_back({dst.index(), rel});
            }
    }
    auto lab = label_components(6 * n, adj);
    return {std::move(lab.partition), std::move(lab.consistent)};
}

bool is_orientable(const Triangulation& tri) {
    if (!tri.is_complete()) throw PreconditionError("orientability requires a complete triangulation");
    if (!tri.is_connected()) throw PreconditionError("orientability requires a connected triangulation");
    const int n = tri.size();
    if (n == 0) return true;
    std::vector<int> sign(n, 0);
    std::deque<int> queue{0};
    sign[0] = 1;
    while (!queue.empty()) {
        const int t = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
            const FaceSlot a{t, f};
            const int u = tri.partner(a).tet;
            const int want = tri.perm(a).is_even() ? -sign[t] : sign[t];
            if (sign[u] == 0) {
                sign[u] = want;
                queue.push_back(u);
            } else if (sign[u] != want) {
                return false;
            }
        }
    }
    return true;
}

Triangulation relabel(const Triangulation& tri, const std::vector<int>& tet_map, const std::vector<Perm4>& vertex_maps) {
    const int n = tri.size();
    if (static_cast<int>(tet_map.size()) != n || static_cast<int>(vertex_maps.size()) != n)
        throw PreconditionError("relabelling has the wrong size");
    Triangulation out(n);
    for (int s = 0; s < tri.slot_count(); ++s) {
        const FaceSlot a = FaceSlot::from_index(s);
        if (!tri.is_glued(a)) continue;
        const FaceSlot b = tri.partner(a);
        if (b.index() < s) continue;
        const Perm4 ra = vertex_maps[a.tet];
        const Perm4 rb = vertex_maps[b.tet];
        const FaceSlot na{tet_map[a.tet], face_opposite(ra[omitted_vertex(a.face)])};
        const FaceSlot nb{tet_map[b.tet], face_opposite(rb[omitted_vertex(b.face)])};
        out.glue(na, nb, rb * tri.perm(a) * ra.inverse());
    }
    return out;
}

}  // namespace linkcensus
