#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "linkcensus/faces.hpp"
#include "linkcensus/triangulation.hpp"

namespace linkcensus {

/// An involution on the 4n face slots without fixed points. Slots may be
/// left unpaired while a pairing is under construction.
class FacePairing {
public:
    FacePairing() = default;
    explicit FacePairing(int size) : size_(size), partner_(4 * size, -1) {}

    /// Throws PreconditionError unless `partner` is a fixed-point-free involution
    /// (entries of -1 mark unpaired slots).
    static FacePairing from_partners(int size, std::vector<int> partner);

    int size() const { return size_; }
    int partner(int slot) const { return partner_[slot]; }
    FaceSlot partner(FaceSlot s) const { return FaceSlot::from_index(partner_[s.index()]); }
    bool is_paired(int slot) const { return partner_[slot] >= 0; }
    void pair(int a, int b);

    bool is_complete() const;
    bool is_connected() const;

    /// Partner slot per slot, the sequence that canonical forms minimise.
    const std::vector<int>& code() const { return partner_; }

    /// Slot pairs (a, b) with a < b, in increasing order of a.
    std::vector<std::pair<FaceSlot, FaceSlot>> pairs() const;

    friend bool operator==(const FacePairing&, const FacePairing&) = default;
    friend auto operator<=>(const FacePairing& a, const FacePairing& b) {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        return a.partner_ <=> b.partner_;
    }

private:
    int size_ = 0;
    std::vector<int> partner_;
};

FacePairing pairing_of(const Triangulation& tri);

/// The induced 4-valent multigraph: loops per node and multiplicities
/// per unordered node pair.
struct FacePairingGraph {
    int nodes = 0;
    std::vector<int> loops;
    std::vector<std::vector<int>> multiplicity;  // symmetric, zero diagonal

    int degree(int node) const;
};

FacePairingGraph graph_of(const FacePairing& fp);

/// Lexicographically least partner sequence over all relabellings of
/// tetrahedra and permutations of the four slots within each tetrahedron.
/// Unpaired slots compare as larger than every slot.
FacePairing canonical_form(const FacePairing& fp);
bool is_canonical(const FacePairing& fp);

/// One canonical representative per isomorphism class of connected
/// complete pairings on n tetrahedra, in increasing order of code.
std::vector<FacePairing> enumerate_pairings(int n);

/// `n ; t.f t.f ...` listing the partner of every slot in order.
std::string to_fpg_line(const FacePairing& fp);
FacePairing parse_fpg_line(std::string_view line);

/// e.g. `loops: 0 x1 | edges: 0-1 x1, 0-2 x1, 1-2 x3`.
std::string describe(const FacePairingGraph& g);

}  // namespace linkcensus
