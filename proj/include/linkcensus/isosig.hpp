#pragma once

#include <string>
#include <string_view>

#include "linkcensus/triangulation.hpp"

namespace linkcensus {

/// Canonical string for the isomorphism class of a complete, connected
/// triangulation (isomorphism = relabelling tetrahedra and their vertices).
///
/// For each choice of starting tetrahedron and starting vertex labelling the
/// remaining tetrahedra are labelled in breadth-first discovery order, each
/// one labelled so that the gluing that discovers it is the identity. The
/// signature is the lexicographically least resulting gluing table, written
/// as one character for n followed by (destination, Perm4 index) per slot.
/// Throws PreconditionError on incomplete or disconnected input.
std::string iso_signature(const Triangulation& tri);

/// The canonically labelled triangulation a signature encodes.
Triangulation from_signature(std::string_view sig);

}  // namespace linkcensus
