#pragma once

// Three tetrahedra A, B, C glued so that the single vertex has a torus link.
inline constexpr const char* kTorusLinkTable =
    "3 ; C:013 B:012 A:312 A:230 ; A:013 C:120 C:231 C:302 ; B:301 A:012 B:231 B:302";
