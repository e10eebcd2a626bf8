#include "linkcensus/validate.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "linkcensus/errors.hpp"
#include "linkcensus/isosig.hpp"

namespace linkcensus::validate {

namespace {

int corner_id(int t, int v, int w) { return 16 * t + 4 * v + w; }

// Whether a -> b follows the ascending cyclic order of the corners of the
// triangle at `vertex`.
bool with_cycle(int vertex, int a, int b) {
    int w[3], k = 0;
    for (int x = 0; x < 4; ++x)
        if (x != vertex) w[k++] = x;
    return (a == w[0] && b == w[1]) || (a == w[1] && b == w[2]) || (a == w[2] && b == w[0]);
}

// Connected components of an undirected graph given as adjacency lists;
// labels are assigned in order of the smallest node.
std::vector<int> components_of(const std::vector<std::vector<int>>& adj, int& count) {
    std::vector<int> label(adj.size(), -1);
    count = 0;
    for (std::size_t s = 0; s < adj.size(); ++s) {
        if (label[s] >= 0) continue;
        std::deque<int> queue{static_cast<int>(s)};
        label[s] = count;
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (int y : adj[x])
                if (label[y] < 0) {
                    label[y] = count;
                    queue.push_back(y);
                }
        }
        ++count;
    }
    return label;
}

}  // namespace

std::vector<LinkReport> build_links(const Triangulation& tri) {
    const int n = tri.size();
    std::vector<std::vector<int>> tri_adj(4 * n), corner_adj(16 * n);
    struct Signed {
        int to;
        int rel;
    };
    std::vector<std::vector<Signed>> orient_adj(4 * n);
    std::vector<std::pair<int, int>> boundary;  // (triangle, face) of each unglued link edge

    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const FaceSlot s{t, f};
            const auto fv = face_vertices(f);
            if (!tri.is_glued(s)) {
                for (int v : fv) boundary.emplace_back(4 * t + v, f);
                continue;
            }
            const FaceSlot d = tri.partner(s);
            const Perm4 p = tri.perm(s);
            for (int v : fv) {
                tri_adj[4 * t + v].push_back(4 * d.tet + p[v]);
                int ab[2], k = 0;
                for (int w : fv)
                    if (w != v) {
                        ab[k++] = w;
                        corner_adj[corner_id(t, v, w)].push_back(corner_id(d.tet, p[v], p[w]));
                    }
                const bool here = with_cycle(v, ab[0], ab[1]);
                const bool there = with_cycle(p[v], p[ab[0]], p[ab[1]]);
                orient_adj[4 * t + v].push_back({4 * d.tet + p[v], here != there ? 1 : -1});
            }
        }
    }

    int link_count = 0, corner_count = 0;
    const auto link_of = components_of(tri_adj, link_count);
    const auto corner_of = components_of(corner_adj, corner_count);

    std::vector<LinkReport> out(link_count);
    std::vector<std::vector<int>> members(link_count);
    for (int x = 0; x < 4 * n; ++x) {
        members[link_of[x]].push_back(x);
        ++out[link_of[x]].triangles;
    }
    for (int c = 0; c < link_count; ++c) {
        std::vector<int> seen_corners;
        for (int x : members[c])
            for (int w = 0; w < 4; ++w)
                if (w != x % 4) seen_corners.push_back(corner_of[corner_id(x / 4, x % 4, w)]);
        std::sort(seen_corners.begin(), seen_corners.end());
        out[c].vertices = static_cast<int>(std::unique(seen_corners.begin(), seen_corners.end()) - seen_corners.begin());
    }

    // Boundary cycles: boundary edges meeting at a corner class belong together.
    std::vector<std::vector<int>> bd_adj(boundary.size());
    {
        std::vector<std::vector<int>> at_corner(corner_count);
        for (std::size_t i = 0; i < boundary.size(); ++i) {
            const auto [x, f] = boundary[i];
            for (int w : face_vertices(f))
                if (w != x % 4) at_corner[corner_of[corner_id(x / 4, x % 4, w)]].push_back(static_cast<int>(i));
        }
        for (const auto& list : at_corner)
            for (std::size_t i = 1; i < list.size(); ++i) {
                bd_adj[list[0]].push_back(list[i]);
                bd_adj[list[i]].push_back(list[0]);
            }
    }
    int cycle_count = 0;
    const auto cycle_of = components_of(bd_adj, cycle_count);
    std::vector<std::vector<int>> cycles_in(link_count);
    for (std::size_t i = 0; i < boundary.size(); ++i) {
        ++out[link_of[boundary[i].first]].boundary_edges;
        cycles_in[link_of[boundary[i].first]].push_back(cycle_of[i]);
    }
    for (int c = 0; c < link_count; ++c) {
        auto& cyc = cycles_in[c];
        std::sort(cyc.begin(), cyc.end());
        out[c].boundary_cycles = static_cast<int>(std::unique(cyc.begin(), cyc.end()) - cyc.begin());
    }

    // Orientation by signed breadth-first labelling.
    std::vector<int> sign(4 * n, 0);
    for (int c = 0; c < link_count; ++c) {
        const int start = members[c].front();
        sign[start] = 1;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (const auto& [y, rel] : orient_adj[x]) {
                if (sign[y] == 0) {
                    sign[y] = sign[x] * rel;
                    queue.push_back(y);
                } else if (sign[y] != sign[x] * rel) {
                    out[c].orientable = false;
                }
            }
        }
    }

    for (auto& r : out) {
        r.edges = (3 * r.triangles + r.boundary_edges) / 2;
        r.euler = r.vertices - r.edges + r.triangles;
        const int deficit = 2 - r.euler - r.boundary_cycles;
        r.genus = r.orientable ? deficit / 2 : deficit;
    }
    return out;
}

std::string describe(const LinkReport& r) {
    std::ostringstream os;
    os << "F=" << r.triangles << " E=" << r.edges << " V=" << r.vertices << " chi=" << r.euler
       << " boundary_edges=" << r.boundary_edges << " boundary_cycles=" << r.boundary_cycles
       << " connected=" << (r.connected ? "yes" : "no") << " orientable=" << (r.orientable ? "yes" : "no")
       << " genus=" << r.genus;
    if (r.is_sphere())
        os << " (sphere)";
    else if (r.closed() && r.orientable)
        os << " (closed orientable, genus " << r.genus << ")";
    else if (r.closed())
        os << " (closed non-orientable)";
    return os.str();
}

std::optional<EdgeSlot> check_edges(const Triangulation& tri) {
    const int n = tri.size();
    struct Signed {
        int to;
        int rel;
    };
    std::vector<std::vector<Signed>> adj(6 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const FaceSlot s{t, f};
            if (!tri.is_glued(s)) continue;
            const FaceSlot d = tri.partner(s);
            const Perm4 p = tri.perm(s);
            const auto fv = face_vertices(f);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    const int a = EdgeSlot{t, fv[i], fv[j]}.index();
                    const int b = EdgeSlot::make(d.tet, p[fv[i]], p[fv[j]]).index();
                    const int rel = p[fv[i]] < p[fv[j]] ? 1 : -1;
                    adj[a].push_back({b, rel});
                    adj[b].push_back({a, rel});
                }
        }
    std::vector<int> sign(6 * n, 0);
    for (int s = 0; s < 6 * n; ++s) {
        if (sign[s] != 0) continue;
        sign[s] = 1;
        bool reversed = false;
        std::deque<int> queue{s};
        while (!queue.empty()) {
            const int x = queue.front();
            queue.pop_front();
            for (const auto& [y, rel] : adj[x]) {
                if (sign[y] == 0) {
                    sign[y] = sign[x] * rel;
                    queue.push_back(y);
                } else if (sign[y] != sign[x] * rel) {
                    reversed = true;
                }
            }
        }
        if (reversed) return EdgeSlot::from_index(s);
    }
    return std::nullopt;
}

Verdict is_3manifold(const Triangulation& tri) {
    if (!tri.is_complete()) throw PreconditionError("is_3manifold needs a complete triangulation");
    if (const auto bad = check_edges(tri)) {
        return {false, "edge " + std::to_string(bad->tet) + ":" + std::to_string(bad->lo) + std::to_string(bad->hi) +
                           " is identified with itself in reverse"};
    }
    const auto links = build_links(tri);
    for (std::size_t c = 0; c < links.size(); ++c)
        if (!links[c].is_sphere()) return {false, "link of vertex class " + std::to_string(c) + " is not a sphere: " +
                                                      describe(links[c])};
    return {true, "all vertex links are spheres and no edge is reversed"};
}

namespace {

void all_pairings(std::vector<int>& partner, std::vector<std::vector<int>>& out) {
    const auto it = std::find(partner.begin(), partner.end(), -1);
    if (it == partner.end()) {
        out.push_back(partner);
        return;
    }
    const int a = static_cast<int>(it - partner.begin());
    for (int b = a + 1; b < static_cast<int>(partner.size()); ++b) {
        if (partner[b] != -1) continue;
        partner[a] = b;
        partner[b] = a;
        all_pairings(partner, out);
        partner[a] = partner[b] = -1;
    }
}

std::vector<int> key_of(const Triangulation& tri) {
    std::vector<int> key;
    key.reserve(2 * tri.slot_count());
    for (int s = 0; s < tri.slot_count(); ++s) {
        const FaceSlot fs = FaceSlot::from_index(s);
        key.push_back(tri.partner(fs).index());
        key.push_back(tri.perm(fs).index());
    }
    return key;
}

// Every relabelling of `tri`: all tetrahedron orders and all vertex maps.
template <class Fn>
void for_each_relabelling(const Triangulation& tri, Fn&& fn) {
    const int n = tri.size();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    do {
        std::vector<int> choice(n, 0);
        while (true) {
            std::vector<Perm4> maps(n);
            for (int t = 0; t < n; ++t) maps[t] = Perm4::from_index(choice[t]);
            fn(relabel(tri, order, maps));
            int k = 0;
            while (k < n && ++choice[k] == 24) choice[k++] = 0;
            if (k == n) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
}

}  // namespace

BruteCensus brute_census(int n) {
    if (n < 1 || n > 2) throw PreconditionError("brute_census is limited to 1 or 2 tetrahedra");
    std::vector<int> partner(4 * n, -1);
    std::vector<std::vector<int>> pairings;
    all_pairings(partner, pairings);

    std::set<std::vector<int>> seen;
    BruteCensus out;
    for (const auto& pairing : pairings) {
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < 4 * n; ++a)
            if (a < pairing[a]) pairs.emplace_back(a, pairing[a]);
        int choices = 1;
        for (std::size_t i = 0; i < pairs.size(); ++i) choices *= 6;
        for (int code = 0; code < choices; ++code) {
            Triangulation tri(n);
            int rest = code;
            for (const auto& [a, b] : pairs) {
                const FaceSlot fa = FaceSlot::from_index(a), fb = FaceSlot::from_index(b);
                tri.glue(fa, fb, extend_face_perm(fa.face, fb.face, Perm3::from_index(rest % 6)));
                rest /= 6;
            }
            if (!tri.is_connected() || !is_3manifold(tri).manifold) continue;
            if (seen.count(key_of(tri))) continue;
            for_each_relabelling(tri, [&](const Triangulation& image) { seen.insert(key_of(image)); });
            ++out.classes;
            out.signatures.insert(iso_signature(tri));
        }
    }
    return out;
}

}  // namespace linkcensus::validate
