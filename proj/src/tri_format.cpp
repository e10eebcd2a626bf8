#include "linkcensus/tri_format.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <vector>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace {

std::string slot_name(FaceSlot s) { return std::to_string(s.tet) + "." + std::to_string(s.face); }

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        const std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (i > start) out.push_back(s.substr(start, i - start));
    }
    return out;
}

std::optional<int> parse_uint(std::string_view s) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    int v = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        v = v * 10 + (c - '0');
    }
    return v;
}

struct Cell {
    int tet;
    Perm4 perm;
};

Cell parse_cell(std::string_view tok, FaceSlot at) {
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos)
        throw ParseError("bad cell '" + std::string(tok) + "' at slot " + slot_name(at));
    const std::string_view lhs = tok.substr(0, colon);
    const std::string_view rhs = tok.substr(colon + 1);
    if (!lhs.empty() && std::isalpha(static_cast<unsigned char>(lhs[0]))) {
        // Table style: letter tetrahedron, three image vertices.
        if (lhs.size() != 1 || !std::isupper(static_cast<unsigned char>(lhs[0])) || rhs.size() != 3)
            throw ParseError("bad table cell '" + std::string(tok) + "' at slot " + slot_name(at));
        std::array<int, 3> images{};
        for (int i = 0; i < 3; ++i) {
            if (rhs[i] < '0' || rhs[i] > '3')
                throw ParseError("bad vertex in cell '" + std::string(tok) + "' at slot " + slot_name(at));
            images[i] = rhs[i] - '0';
        }
        int missing = 6 - images[0] - images[1] - images[2];
        if (images[0] == images[1] || images[0] == images[2] || images[1] == images[2] || missing < 0 || missing > 3)
            throw ParseError("cell '" + std::string(tok) + "' at slot " + slot_name(at) + " is not a permutation");
        try {
            return {lhs[0] - 'A', extend_face_perm(at.face, face_opposite(missing), images)};
        } catch (const InvalidPermutation& e) {
            throw ParseError("cell '" + std::string(tok) + "' at slot " + slot_name(at) + ": " + e.what());
        }
    }
    const auto tet = parse_uint(lhs);
    const auto perm = parse_uint(rhs);
    if (!tet || !perm || *perm >= Perm4::kCount)
        throw ParseError("bad cell '" + std::string(tok) + "' at slot " + slot_name(at));
    return {*tet, Perm4::from_index(*perm)};
}

}  // namespace

Triangulation parse_tri(std::string_view text) {
    const auto groups = split(trim(text), ';');
    const auto n = parse_uint(trim(groups[0]));
    if (!n || *n == 0) throw ParseError("bad tetrahedron count '" + std::string(trim(groups[0])) + "'");
    const int size = *n;
    if (groups.size() != 1 && static_cast<int>(groups.size()) != size + 1)
        throw ParseError("expected " + std::to_string(size) + " tetrahedron groups, found " +
                         std::to_string(groups.size() - 1));

    std::vector<std::optional<Cell>> cells(4 * size);
    for (int t = 0; t + 1 < static_cast<int>(groups.size()); ++t) {
        const auto toks = tokens(groups[t + 1]);
        if (toks.size() != 4)
            throw ParseError("tetrahedron " + std::to_string(t) + " has " + std::to_string(toks.size()) +
                             " cells, expected 4");
        for (int f = 0; f < 4; ++f) {
            if (toks[f] == "-") continue;
            cells[4 * t + f] = parse_cell(toks[f], {t, f});
        }
    }

    std::vector<int> claimed_by(4 * size, -1);
    for (int s = 0; s < 4 * size; ++s) {
        if (!cells[s]) continue;
        const FaceSlot a = FaceSlot::from_index(s);
        if (cells[s]->tet < 0 || cells[s]->tet >= size)
            throw ParseError("slot " + slot_name(a) + " names tetrahedron " + std::to_string(cells[s]->tet) +
                             " out of range");
        const FaceSlot b{cells[s]->tet, image_face(a.face, cells[s]->perm)};
        if (b == a) throw ParseError("slot " + slot_name(a) + " is glued to itself");
        if (claimed_by[b.index()] >= 0)
            throw ParseError("slot " + slot_name(b) + " is glued twice (from " +
                             slot_name(FaceSlot::from_index(claimed_by[b.index()])) + " and " + slot_name(a) + ")");
        claimed_by[b.index()] = s;
    }

    Triangulation tri(size);
    for (int s = 0; s < 4 * size; ++s) {
        if (!cells[s]) continue;
        const FaceSlot a = FaceSlot::from_index(s);
        const FaceSlot b{cells[s]->tet, image_face(a.face, cells[s]->perm)};
        const auto& back = cells[b.index()];
        if (!back || back->tet != a.tet || back->perm != cells[s]->perm.inverse())
            throw ParseError("gluing at slot " + slot_name(a) + " is not mirrored by slot " + slot_name(b));
        if (s < b.index()) tri.glue(a, b, cells[s]->perm);
    }
    return tri;
}

std::string to_tri(const Triangulation& tri, TriStyle style) {
    if (style == TriStyle::table && tri.size() > 26)
        throw PreconditionError("table style supports at most 26 tetrahedra");
    std::ostringstream os;
    os << tri.size();
    for (int t = 0; t < tri.size(); ++t) {
        os << " ;";
        for (int f = 0; f < 4; ++f) {
            os << ' ';
            const FaceSlot a{t, f};
            if (!tri.is_glued(a)) {
                os << '-';
                continue;
            }
            const FaceSlot b = tri.partner(a);
            const Perm4 p = tri.perm(a);
            if (style == TriStyle::compact) {
                os << b.tet << ':' << p.index();
            } else {
                os << static_cast<char>('A' + b.tet) << ':';
                for (int v : face_vertices(f)) os << p[v];
            }
        }
    }
    return os.str();
}

}  // namespace linkcensus
