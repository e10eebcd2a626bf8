#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "linkcensus/faces.hpp"
#include "linkcensus/perm.hpp"

namespace linkcensus {

struct Gluing {
    FaceSlot dst;
    Perm4 perm;  // vertices of the source tetrahedron -> vertices of dst.tet
    friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// n tetrahedra with a partial, involutive pairing of their 4n faces.
///
/// If slot a is glued to (b, p) then b is glued to (a, p^-1); no slot is
/// glued to itself. The triangulation is complete when every slot is glued.
class Triangulation {
public:
    Triangulation() = default;
    explicit Triangulation(int size);

    int size() const { return size_; }
    int slot_count() const { return 4 * size_; }

    bool is_glued(FaceSlot s) const { return partner_[s.index()] >= 0; }
    std::optional<Gluing> gluing(FaceSlot s) const;

    // Unchecked accessors for hot loops; only meaningful when is_glued(s).
    FaceSlot partner(FaceSlot s) const { return FaceSlot::from_index(partner_[s.index()]); }
    Perm4 perm(FaceSlot s) const { return perm_[s.index()]; }

    /// Glues a to b with a's vertices carried by p. Throws PreconditionError
    /// if either slot is taken, a == b, or p does not carry face a onto face b.
    void glue(FaceSlot a, FaceSlot b, Perm4 p);
    void unglue(FaceSlot a);

    int glued_pairs() const { return glued_pairs_; }
    bool is_complete() const { return glued_pairs_ * 2 == slot_count(); }
    /// Connectivity of the face pairing graph of the current gluings.
    bool is_connected() const;

    /// Throws ContractViolation if the involution invariant is broken.
    void audit() const;

    friend bool operator==(const Triangulation& a, const Triangulation& b) {
        return a.size_ == b.size_ && a.partner_ == b.partner_ && a.perm_ == b.perm_;
    }

private:
    int size_ = 0;
    int glued_pairs_ = 0;
    std::vector<std::int32_t> partner_;
    std::vector<Perm4> perm_;
};

/// A partition of some index set into classes numbered 0..count-1 in order
/// of first appearance.
struct Partition {
    std::vector<int> class_of;
    int count = 0;
};

/// Vertex classes over (tet, vertex) pairs, indexed 4 * tet + vertex.
Partition vertex_classes(const Triangulation& tri);

struct EdgeClasses {
    Partition classes;            // over EdgeSlot::index()
    std::vector<bool> consistent; // per class: false if some member is identified with itself reversed
};

EdgeClasses edge_classes(const Triangulation& tri);

/// Requires a complete, connected triangulation (PreconditionError otherwise).
/// Odd gluings preserve the tetrahedron sign, even gluings flip it.
bool is_orientable(const Triangulation& tri);

/// Applies a relabelling: tetrahedron t becomes tet_map[t], and its vertex v
/// becomes vertex_maps[t][v].
Triangulation relabel(const Triangulation& tri, const std::vector<int>& tet_map,
                      const std::vector<Perm4>& vertex_maps);

}  // namespace linkcensus
