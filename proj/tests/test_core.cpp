#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "linkcensus/errors.hpp"
#include "linkcensus/isosig.hpp"
#include "linkcensus/perm.hpp"
#include "linkcensus/tri_format.hpp"
#include "linkcensus/triangulation.hpp"
#include "oracles.hpp"
#include "properties.hpp"

using namespace linkcensus;

TEST_CASE("perm indices follow lexicographic order of images") {
    CHECK(Perm4::from_index(0).is_identity());
    CHECK(Perm4::from_images({0, 1, 3, 2}).index() == 1);
    CHECK(Perm4::from_images({3, 2, 1, 0}).index() == 23);
    CHECK(Perm3::from_images({2, 1, 0}).index() == 5);
    for (int i = 1; i < 24; ++i) {
        std::array<int, 4> a{}, b{};
        for (int v = 0; v < 4; ++v) a[v] = Perm4::from_index(i - 1)[v], b[v] = Perm4::from_index(i)[v];
        CHECK(a < b);
    }
    CHECK_THROWS_AS(Perm4::from_images({0, 0, 1, 2}), InvalidPermutation);
    CHECK_THROWS_AS(Perm4::from_images({0, 1, 2, 4}), InvalidPermutation);
}

TEST_CASE("perm group laws") {
    for (int i = 0; i < 24; ++i) {
        const Perm4 p = Perm4::from_index(i);
        CHECK((p * p.inverse()).is_identity());
        CHECK((p.inverse() * p).is_identity());
        for (int j = 0; j < 24; ++j) {
            const Perm4 q = Perm4::from_index(j);
            for (int v = 0; v < 4; ++v) CHECK((p * q)[v] == p[q[v]]);
            CHECK((p * q).sign() == p.sign() * q.sign());
        }
    }
    int odd = 0;
    for (int i = 0; i < 24; ++i) odd += Perm4::from_index(i).is_even() ? 0 : 1;
    CHECK(odd == 12);
}

TEST_CASE("faces and edge slots") {
    CHECK(face_vertices(0) == std::array<int, 3>{0, 1, 2});
    CHECK(face_vertices(3) == std::array<int, 3>{1, 2, 3});
    for (int i = 0; i < 12; ++i) CHECK(EdgeSlot::from_index(i).index() == i);
    CHECK(EdgeSlot::make(1, 3, 0).index() == 6 + 2);
    for (int f = 0; f < 4; ++f)
        for (int g = 0; g < 4; ++g)
            for (int k = 0; k < 6; ++k) {
                const Perm4 p = extend_face_perm(f, g, Perm3::from_index(k));
                CHECK(image_face(f, p) == g);
                CHECK(restrict_to_face(f, p).index() == k);
            }
    CHECK_THROWS_AS(extend_face_perm(0, 3, std::array<int, 3>{0, 1, 2}), InvalidPermutation);
}

TEST_CASE("glue keeps the involution and rejects bad input") {
    Triangulation tri(2);
    const Perm4 p = extend_face_perm(0, 1, Perm3::from_index(4));
    tri.glue({0, 0}, {1, 1}, p);
    CHECK(tri.partner({1, 1}) == FaceSlot{0, 0});
    CHECK(tri.perm({1, 1}) == p.inverse());
    CHECK_THROWS_AS(tri.glue({0, 0}, {1, 2}, extend_face_perm(0, 2, Perm3::from_index(0))), PreconditionError);
    CHECK_THROWS_AS(tri.glue({0, 1}, {1, 2}, extend_face_perm(1, 3, Perm3::from_index(0))), PreconditionError);
    CHECK_THROWS_AS(tri.glue({0, 1}, {0, 1}, Perm4::from_index(0)), PreconditionError);
    tri.unglue({1, 1});
    CHECK(!tri.is_glued({0, 0}));
    CHECK(tri.glued_pairs() == 0);
    tri.audit();
}

TEST_CASE("tri format round trips in both styles") {
    std::mt19937_64 rng(7);
    for (int rep = 0; rep < 500; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 5);
        const auto tri = oracle::random_triangulation(n, rng, static_cast<int>(rng() % (2 * n + 1)));
        CHECK(parse_tri(to_tri(tri)) == tri);
        CHECK(parse_tri(to_tri(tri, TriStyle::table)) == tri);
    }
    CHECK(parse_tri("2").glued_pairs() == 0);
}

TEST_CASE("tri parse errors name the slot") {
    auto message = [](const char* text) {
        try {
            parse_tri(text);
        } catch (const ParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(message("1 ; 0:0 - - -").find("0.0") != std::string::npos);
    CHECK(message("2 ; 1:0 1:1 - - ; 0:0 - - -").find("twice") != std::string::npos);
    CHECK(message("2 ; 1:0 - - - ; 0:1 - - -").find("mirrored") != std::string::npos);
    CHECK(message("2 ; 5:0 - - - ; - - - -").find("out of range") != std::string::npos);
    CHECK(message("2 ; 1:0 - - -").find("groups") != std::string::npos);
    CHECK(message("x").find("count") != std::string::npos);
}

TEST_CASE("torus-link example: classes") {
    const auto tri = parse_tri(kTorusLinkTable);
    CHECK(tri.is_complete());
    CHECK(vertex_classes(tri).count == 1);
    const auto edges = edge_classes(tri);
    CHECK(edges.classes.count == 3);
    for (bool ok : edges.consistent) CHECK(ok);
    CHECK(to_tri(tri, TriStyle::table) == kTorusLinkTable);
}

TEST_CASE("signature is invariant under relabelling") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const auto tri = oracle::random_triangulation(n, rng);
        const auto sig = iso_signature(tri);
        CHECK(sig.size() == 1 + 8 * static_cast<std::size_t>(n));
        for (int k = 0; k < 20; ++k) CHECK(iso_signature(oracle::shuffle(tri, rng)) == sig);
        const auto back = from_signature(sig);
        CHECK(iso_signature(back) == sig);
    }
}

TEST_CASE("signature survives a thousand relabellings per triangulation") {
    CHECK(props::signature_invariance(30, 1000, 17) == "");
}

TEST_CASE("signature rejects incomplete or disconnected input") {
    CHECK_THROWS_AS(iso_signature(parse_tri("1 ; 0:1 0:1 - -")), PreconditionError);
    Triangulation two(2);
    for (int t = 0; t < 2; ++t) {
        two.glue({t, 0}, {t, 1}, extend_face_perm(0, 1, Perm3::from_index(0)));
        two.glue({t, 2}, {t, 3}, extend_face_perm(2, 3, Perm3::from_index(0)));
    }
    CHECK(two.is_complete());
    CHECK_THROWS_AS(iso_signature(two), PreconditionError);
    CHECK_THROWS_AS(from_signature("!"), ParseError);
}

TEST_CASE("orientability of small examples") {
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 300; ++rep) {
        const auto tri = oracle::random_triangulation(1 + static_cast<int>(rng() % 4), rng);
        // Orientable iff tetrahedron signs can be chosen with every gluing odd
        // relative to them: brute force over sign vectors.
        const int n = tri.size();
        bool any = false;
        for (int mask = 0; mask < (1 << n) && !any; ++mask) {
            bool ok = true;
            for (int s = 0; s < 4 * n && ok; ++s) {
                const FaceSlot a = FaceSlot::from_index(s);
                const int sa = (mask >> a.tet) & 1, sb = (mask >> tri.partner(a).tet) & 1;
                ok = tri.perm(a).is_even() == (sa != sb);
            }
            any = ok;
        }
        CHECK(is_orientable(tri) == any);
    }
}
