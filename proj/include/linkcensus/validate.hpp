#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkcensus/faces.hpp"
#include "linkcensus/triangulation.hpp"

namespace linkcensus::validate {

/// Link of one vertex class, computed from scratch.
struct LinkReport {
    int triangles = 0;
    int edges = 0;     // after identification
    int vertices = 0;  // after identification
    int boundary_edges = 0;
    int boundary_cycles = 0;
    bool connected = true;
    bool orientable = true;
    int euler = 0;
    /// Orientable genus, or the number of cross-caps when non-orientable,
    /// with boundary cycles counted as punctures.
    int genus = 0;

    bool closed() const { return boundary_edges == 0; }
    bool is_sphere() const { return closed() && connected && orientable && euler == 2; }
    bool is_punctured_sphere() const { return connected && orientable && genus == 0; }
};

/// One report per vertex class, ordered by the smallest (tet, vertex) in the
/// class. Partial triangulations are allowed.
std::vector<LinkReport> build_links(const Triangulation& tri);
std::string describe(const LinkReport& r);

/// Empty when no tetrahedron edge is identified with itself in reverse,
/// otherwise the smallest edge slot of the first such class.
std::optional<EdgeSlot> check_edges(const Triangulation& tri);

struct Verdict {
    bool manifold = false;
    std::string reason;
};

/// Requires a complete triangulation (PreconditionError otherwise).
Verdict is_3manifold(const Triangulation& tri);

struct BruteCensus {
    int classes = 0;  // isomorphism classes found by relabelling
    std::set<std::string> signatures;  // one per class; fewer only if signatures collide
};

/// Every connected 3-manifold triangulation on n <= 2 tetrahedra, found by
/// trying all pairings and all gluings and merging isomorphic ones by
/// checking every relabelling. Throws PreconditionError for n outside 1..2.
BruteCensus brute_census(int n);

}  // namespace linkcensus::validate
