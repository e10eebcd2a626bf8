#pragma once

#include <array>
#include <compare>

#include "linkcensus/perm.hpp"

namespace linkcensus {

// Face f of a tetrahedron is the vertex triple omitting vertex 3 - f,
// so faces in order are 012, 013, 023, 123.
constexpr int omitted_vertex(int face) { return 3 - face; }
constexpr int face_opposite(int vertex) { return 3 - vertex; }
constexpr bool face_contains(int face, int vertex) { return vertex != omitted_vertex(face); }

/// Sorted vertices of a face.
constexpr std::array<int, 3> face_vertices(int face) {
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != omitted_vertex(face)) out[k++] = v;
    return out;
}

struct FaceSlot {
    int tet = 0;
    int face = 0;

    constexpr int index() const { return 4 * tet + face; }
    static constexpr FaceSlot from_index(int idx) { return {idx / 4, idx % 4}; }
    friend constexpr auto operator<=>(const FaceSlot&, const FaceSlot&) = default;
};

/// Edge {lo, hi} of one tetrahedron; 6 per tetrahedron, directed lo -> hi.
struct EdgeSlot {
    int tet = 0;
    int lo = 0;
    int hi = 1;

    constexpr int local_index() const {
        // 01 02 03 12 13 23
        constexpr int table[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
        return table[lo][hi];
    }
    constexpr int index() const { return 6 * tet + local_index(); }
    static constexpr EdgeSlot from_index(int idx) {
        constexpr int los[6] = {0, 0, 0, 1, 1, 2};
        constexpr int his[6] = {1, 2, 3, 2, 3, 3};
        return {idx / 6, los[idx % 6], his[idx % 6]};
    }
    static constexpr EdgeSlot make(int tet, int a, int b) { return a < b ? EdgeSlot{tet, a, b} : EdgeSlot{tet, b, a}; }
    friend constexpr auto operator<=>(const EdgeSlot&, const EdgeSlot&) = default;
};

/// The unique Perm4 that sends the sorted vertices of `src_face` to
/// `images` and the off-face vertex to the off-face vertex of `dst_face`.
/// Throws InvalidPermutation if `images` repeats a vertex or leaves `dst_face`.
Perm4 extend_face_perm(int src_face, int dst_face, const std::array<int, 3>& images);

/// Same, with the images given as a Perm3 acting on the sorted vertex
/// triple of `dst_face` (choice k is the k-th arrangement in lexicographic order).
Perm4 extend_face_perm(int src_face, int dst_face, Perm3 arrangement);

/// Face that `p` carries `src_face` onto.
constexpr int image_face(int src_face, Perm4 p) { return face_opposite(p[omitted_vertex(src_face)]); }

/// Restriction of a gluing perm to its source face, as a Perm3 on the
/// sorted vertices of the destination face.
Perm3 restrict_to_face(int src_face, Perm4 p);

}  // namespace linkcensus
