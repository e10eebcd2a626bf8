#include "linkcensus/isosig.hpp"

#include <vector>

#include "linkcensus/errors.hpp"

namespace linkcensus {

namespace {

constexpr std::string_view kAlphabet = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";

int decode_char(char c) {
    const auto pos = kAlphabet.find(c);
    if (pos == std::string_view::npos) throw ParseError(std::string("bad signature character '") + c + "'");
    return static_cast<int>(pos);
}

// Writes the labelled gluing table for one starting choice into `code`,
// abandoning the walk as soon as it compares greater than `best`.
// Returns true if `code` is strictly smaller than `best`.
bool walk(const Triangulation& tri, int start, Perm4 start_map, const std::vector<std::uint8_t>& best, bool have_best,
          std::vector<std::uint8_t>& code, std::vector<int>& label, std::vector<Perm4>& rho,
          std::vector<int>& old_of) {
    const int n = tri.size();
    std::fill(label.begin(), label.end(), -1);
    label[start] = 0;
    rho[start] = start_map;
    old_of[0] = start;
    int next = 1;
    bool smaller = !have_best;
    std::size_t pos = 0;
    for (int i = 0; i < n; ++i) {
        const int t = old_of[i];
        const Perm4 inv = rho[t].inverse();
        for (int fn = 0; fn < 4; ++fn) {
            const FaceSlot a{t, face_opposite(inv[omitted_vertex(fn)])};
            const FaceSlot b = tri.partner(a);
            const Perm4 sigma = tri.perm(a);
            if (label[b.tet] < 0) {
                label[b.tet] = next;
                old_of[next++] = b.tet;
                rho[b.tet] = rho[t] * sigma.inverse();
            }
            const std::uint8_t dest = static_cast<std::uint8_t>(label[b.tet]);
            const std::uint8_t perm = static_cast<std::uint8_t>((rho[b.tet] * sigma * inv).index());
            for (std::uint8_t v : {dest, perm}) {
                if (!smaller) {
                    if (v > best[pos]) return false;
                    if (v < best[pos]) smaller = true;
                }
                code[pos++] = v;
            }
        }
    }
    return smaller;
}

}  // namespace

std::string iso_signature(const Triangulation& tri) {
    const int n = tri.size();
    if (n == 0 || !tri.is_complete()) throw PreconditionError("signature requires a complete triangulation");
    if (!tri.is_connected()) throw PreconditionError("signature requires a connected triangulation");
    if (n >= static_cast<int>(kAlphabet.size())) throw PreconditionError("signature supports at most 61 tetrahedra");

    std::vector<std::uint8_t> best(8 * n), code(8 * n);
    std::vector<int> label(n), old_of(n);
    std::vector<Perm4> rho(n);
    bool have_best = false;
    for (int start = 0; start < n; ++start)
        for (int p = 0; p < Perm4::kCount; ++p) {
            if (walk(tri, start, Perm4::from_index(p), best, have_best, code, label, rho, old_of)) {
                best.swap(code);
                have_best = true;
            }
        }

    std::string sig;
    sig.reserve(1 + best.size());
    sig.push_back(kAlphabet[n]);
    for (auto v : best) sig.push_back(kAlphabet[v]);
    return sig;
}

Triangulation from_signature(std::string_view sig) {
    if (sig.empty()) throw ParseError("empty signature");
    const int n = decode_char(sig[0]);
    if (n == 0 || static_cast<int>(sig.size()) != 1 + 8 * n)
        throw ParseError("signature length does not match its tetrahedron count");
    Triangulation tri(n);
    for (int s = 0; s < 4 * n; ++s) {
        const int dest = decode_char(sig[1 + 2 * s]);
        const int perm = decode_char(sig[2 + 2 * s]);
        if (dest >= n || perm >= Perm4::kCount) throw ParseError("signature entry out of range");
        const FaceSlot a = FaceSlot::from_index(s);
        const Perm4 p = Perm4::from_index(perm);
        const FaceSlot b{dest, image_face(a.face, p)};
        if (tri.is_glued(a)) {
            if (tri.partner(a) != b || tri.perm(a) != p) throw ParseError("signature gluings are inconsistent");
            continue;
        }
        try {
            tri.glue(a, b, p);
        } catch (const PreconditionError& e) {
            throw ParseError(std::string("signature gluings are inconsistent: ") + e.what());
        }
    }
    return tri;
}

}  // namespace linkcensus
