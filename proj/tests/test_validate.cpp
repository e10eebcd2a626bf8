#include <doctest.h>

#include "fixtures.hpp"
#include "linkcensus/errors.hpp"
#include "linkcensus/tri_format.hpp"
#include "linkcensus/validate.hpp"

using namespace linkcensus;

TEST_CASE("torus-link table: one closed orientable genus-1 link") {
    const auto tri = parse_tri(kTorusLinkTable);
    const auto links = validate::build_links(tri);
    REQUIRE(links.size() == 1);
    const auto& r = links[0];
    CHECK(r.closed());
    CHECK(r.connected);
    CHECK(r.orientable);
    CHECK(r.triangles == 12);
    CHECK(r.euler == 0);
    CHECK(r.genus == 1);
    CHECK(!r.is_sphere());
    CHECK(!validate::check_edges(tri));
    const auto v = validate::is_3manifold(tri);
    CHECK(!v.manifold);
    CHECK(!v.reason.empty());
}

TEST_CASE("a lone tetrahedron has four disc links") {
    const auto links = validate::build_links(Triangulation(1));
    REQUIRE(links.size() == 4);
    for (const auto& r : links) {
        CHECK(r.triangles == 1);
        CHECK(r.boundary_edges == 3);
        CHECK(r.boundary_cycles == 1);
        CHECK(r.euler == 1);
        CHECK(r.is_punctured_sphere());
    }
    CHECK_THROWS_AS(validate::is_3manifold(Triangulation(1)), PreconditionError);
}

TEST_CASE("brute census class counts") {
    const auto one = validate::brute_census(1), two = validate::brute_census(2);
    CHECK(one.classes == 4);
    CHECK(two.classes == 17);
    CHECK(one.signatures.size() == 4);
    CHECK(two.signatures.size() == 17);
    CHECK_THROWS_AS(validate::brute_census(3), PreconditionError);
}
