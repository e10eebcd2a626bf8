#pragma once

#include <string>
#include <string_view>

#include "linkcensus/triangulation.hpp"

namespace linkcensus {

// One triangulation per line:
//
//   n ; t0f0 t0f1 t0f2 t0f3 ; t1f0 ... ; ...
//
// Each cell is `-` (unglued) or `T:P` (destination tetrahedron, Perm4 index).
// The table style writes cells as `C:013`: a tetrahedron letter followed by
// the images of the face's vertices in ascending order. Both styles parse.
enum class TriStyle { compact, table };

/// Throws ParseError naming the offending slot when the text is malformed,
/// a slot is claimed twice, or a gluing is not mirrored by its partner.
Triangulation parse_tri(std::string_view text);

std::string to_tri(const Triangulation& tri, TriStyle style = TriStyle::compact);

}  // namespace linkcensus
