#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linkcensus/dsu.hpp"
#include "linkcensus/faces.hpp"
#include "linkcensus/perm.hpp"
#include "linkcensus/skiplist.hpp"

namespace linkcensus {

/// Edge of a vertex-linking triangle: the triangle cuts off vertex `vertex`
/// of tetrahedron `tet`, and the edge lies on face `face` (which contains
/// `vertex`). It runs from the corner on tetrahedron edge {vertex, a}
/// towards {vertex, b}, where a < b are the other vertices of the face.
struct LinkEdge {
    int tet = 0;
    int vertex = 0;
    int face = 0;

    int index() const { return 12 * tet + 3 * vertex + (face < face_opposite(vertex) ? face : face - 1); }
    static LinkEdge from_index(int e);
    int triangle() const { return 4 * tet + vertex; }
    /// +1 when the edge direction agrees with the ascending cyclic order of
    /// the triangle's corners, -1 otherwise.
    int orientation() const;
    std::string str() const;  // "t.v.f"
    friend bool operator==(const LinkEdge&, const LinkEdge&) = default;
};

enum class Verdict { pass, prune_orient, prune_edge, prune_genus };
const char* to_string(Verdict v);

/// Partial vertex links of a partial triangulation on n tetrahedra.
///
/// Level 1 tracks edge identifications and link orientability only; level 2
/// also keeps every boundary cycle in a skip list so that gluings creating
/// genus are caught as they happen. Each boundary cycle is held as two
/// directed rings, one the reverse of the other, so merging components of
/// either orientation never requires reversing a ring.
class LinkState {
public:
    struct Token {
        std::uint32_t depth = 0;
    };
    struct Result {
        Verdict verdict = Verdict::pass;
        Token token{};
        bool ok() const { return verdict == Verdict::pass; }
    };

    LinkState(int size, int level, std::uint64_t seed = 0);

    int size() const { return size_; }
    int level() const { return level_; }

    /// Glues face a to face b, carrying a's vertices by sigma: three edge-class
    /// unions, then the three link-edge gluings. A prune leaves no trace.
    Result glue_faces(FaceSlot a, FaceSlot b, Perm4 sigma);
    void unglue_faces(Token token);

    /// Glues two boundary link edges; `same_direction` says whether x's
    /// direction is carried onto y's.
    Result glue_link_edges(LinkEdge x, LinkEdge y, bool same_direction);
    void unglue_link_edges(Token token);

    int boundary_edges() const { return boundary_; }
    bool is_boundary(LinkEdge e) const { return !edge_glued_[e.index()]; }
    std::size_t link_components() const { return triangles_.set_count(); }
    std::size_t edge_class_count() const { return edges_.set_count(); }
    std::size_t open_tokens() const { return undo_.size(); }

    /// Boundary cycles (level 2 only), each listed once, starting from its
    /// smallest link edge traversed forwards.
    std::vector<std::vector<std::pair<LinkEdge, int>>> boundary_cycles() const;
    /// Triangle ids grouped by link component.
    std::vector<std::vector<int>> components() const;
    std::string dump() const;

    void audit() const;

private:
    struct Record {
        SignedDsu::Mark triangles, edges;
        CyclicSkipList::Mark rings;
        std::size_t flags;
        int boundary;
    };

    Record mark() const;
    void restore(const Record& r);
    SignedDsu::Outcome unite_triangles(int x, int y, int d);
    Verdict glue_rings(int x, int y, int d, SignedDsu::Outcome outcome);
    void set_flag(std::vector<std::uint8_t>& flags, int index, int kind);
    Token push(const Record& r);
    Record pop(Token token, const char* what);

    static CyclicSkipList::Node node(int e, bool forward) { return 2u * e + (forward ? 0u : 1u); }

    int size_;
    int level_;
    SignedDsu triangles_;
    SignedDsu edges_;
    CyclicSkipList rings_;
    std::vector<std::uint8_t> edge_glued_;
    std::vector<std::uint8_t> face_glued_;
    std::vector<std::pair<int, int>> flag_journal_;  // (kind, index)
    std::vector<Record> undo_;
    int boundary_;
};

}  // namespace linkcensus
