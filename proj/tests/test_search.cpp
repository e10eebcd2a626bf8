#include <doctest.h>

#include <cmath>
#include <random>

#include "linkcensus/bound.hpp"
#include "linkcensus/errors.hpp"
#include "linkcensus/isosig.hpp"
#include "linkcensus/search.hpp"
#include "linkcensus/validate.hpp"

using namespace linkcensus;

namespace {

SearchConfig cfg(int n, int level, Mode mode = Mode::all) {
    SearchConfig c;
    c.size = n;
    c.pruning = level;
    c.mode = mode;
    return c;
}

}  // namespace

TEST_CASE("small census counts") {
    const std::array<std::array<std::uint64_t, 3>, 3> want{{{4, 4, 0}, {17, 16, 1}, {81, 76, 5}}};
    for (int n = 1; n <= 3; ++n) {
        const auto r = enumerate(cfg(n, 2));
        CHECK(r.total() == want[n - 1][0]);
        CHECK(r.orientable() == want[n - 1][1]);
        CHECK(r.nonorientable() == want[n - 1][2]);
    }
}

TEST_CASE("pruning levels keep the same signatures") {
    for (int n = 1; n <= 3; ++n) {
        const auto s0 = enumerate(cfg(n, 0)).signatures();
        CHECK(enumerate(cfg(n, 1)).signatures() == s0);
        CHECK(enumerate(cfg(n, 2)).signatures() == s0);
    }
    const auto r1 = enumerate(cfg(4, 1)), r2 = enumerate(cfg(4, 2));
    CHECK(r1.signatures() == r2.signatures());
    CHECK(r2.stats().nodes < r1.stats().nodes);
}

TEST_CASE("search agrees with the brute-force census") {
    for (int n = 1; n <= 2; ++n) {
        const auto sigs = enumerate(cfg(n, 2)).signatures();
        const auto brute = validate::brute_census(n).signatures;
        CHECK(std::vector<std::string>(brute.begin(), brute.end()) == sigs);
    }
}

TEST_CASE("every kept triangulation is a 3-manifold with the recorded orientability") {
    const auto r = enumerate(cfg(3, 2));
    for (const auto& p : r.pairings)
        for (const auto& [sig, orientable] : p.sigs) {
            const auto tri = from_signature(sig);
            CHECK(validate::is_3manifold(tri).manifold);
            CHECK(is_orientable(tri) == orientable);
        }
}

TEST_CASE("orientable and non-orientable modes") {
    for (int level = 1; level <= 2; ++level) {
        CHECK(enumerate(cfg(2, level, Mode::orientable)).total() == 16);
        CHECK(enumerate(cfg(2, level, Mode::nonorientable)).total() == 1);
        const auto o = enumerate(cfg(3, level, Mode::orientable));
        CHECK(o.total() == 76);
        CHECK(o.nonorientable() == 0);
        CHECK(enumerate(cfg(3, level, Mode::nonorientable)).total() == 5);
    }
    CHECK(enumerate(cfg(3, 0, Mode::nonorientable)).total() == 5);
}

TEST_CASE("jobs: split and merge reproduce a direct run exactly") {
    for (int level = 1; level <= 2; ++level)
        for (int depth : {0, 1, 3, 20}) {
            CAPTURE(level);
            CAPTURE(depth);
            // Full-depth splits make one job per leaf, so keep those small.
            const auto config = cfg(depth > 8 ? 3 : 4, level);
            const auto direct = enumerate(config);
            auto plan = split_jobs(config, depth);
            std::vector<PairingResult> parts = plan.frontier;
            std::mt19937_64 rng(depth);
            std::shuffle(plan.jobs.begin(), plan.jobs.end(), rng);
            for (const auto& job : plan.jobs) parts.push_back(run_job(parse_job_line(to_job_line(job))));
            std::shuffle(parts.begin(), parts.end(), rng);
            const auto merged = merge(config, parts);
            CHECK(merged.signatures() == direct.signatures());
            CHECK(merged.stats() == direct.stats());
            CHECK(merged.total() == direct.total());
            REQUIRE(merged.pairings.size() == direct.pairings.size());
            for (std::size_t i = 0; i < direct.pairings.size(); ++i) CHECK(merged.pairings[i].stats == direct.pairings[i].stats);
        }
}

TEST_CASE("parallel run matches the serial run") {
    const auto config = cfg(4, 2);
    const auto serial = enumerate(config);
    const auto par = enumerate_parallel(config, 3, 2);
    CHECK(par.signatures() == serial.signatures());
    CHECK(par.stats() == serial.stats());
}

TEST_CASE("result text round trips") {
    const auto config = cfg(3, 2);
    const auto r = enumerate(config);
    const auto [back_config, parts] = parse_result_text(to_result_text(config, r.pairings));
    CHECK(back_config == config);
    const auto again = merge(back_config, parts);
    CHECK(again.signatures() == r.signatures());
    CHECK(again.stats() == r.stats());
    CHECK(again.orientable() == r.orientable());
    CHECK_THROWS_AS(parse_result_text("result n=3\npairing x\n"), ParseError);
}

TEST_CASE("a job whose prefix fails its own tests is corrupt") {
    const auto config = cfg(3, 2);
    auto plan = split_jobs(config, 2);
    REQUIRE(!plan.jobs.empty());
    auto job = plan.jobs.front();
    // Replacing the first choice by one that glues a face onto itself reversed.
    bool corrupted = false;
    for (int perm = 0; perm < 24 && !corrupted; ++perm) {
        auto bad = job;
        bad.prefix[0].perm = perm;
        try {
            run_job(bad);
        } catch (const CorruptJob&) {
            corrupted = true;
        }
    }
    CHECK(corrupted);
    CHECK_THROWS_AS(parse_job_line("job n=3 | 0.1 |"), ParseError);
    CHECK_THROWS_AS(parse_job_line(to_job_line(job) + " 99=0:0"), ParseError);
}

TEST_CASE("runs are deterministic and seed-independent in content") {
    auto a = cfg(4, 2);
    auto b = a;
    b.seed = 12345;
    const auto ra = enumerate(a), rb = enumerate(b), ra2 = enumerate(a);
    CHECK(ra.signatures() == rb.signatures());
    CHECK(ra.stats() == ra2.stats());
    CHECK(summary_line(ra) == summary_line(ra2));
    CHECK(summary_line(ra) == "n=4 mode=all total=577 orientable=532 nonorientable=45 nodes=" + std::to_string(ra.stats().nodes));
}

TEST_CASE("config checks") {
    CHECK_THROWS_AS(cfg(0, 2).check(), PreconditionError);
    CHECK_THROWS_AS(cfg(2, 3).check(), PreconditionError);
    CHECK(parse_mode("non-orientable") == Mode::nonorientable);
    CHECK_THROWS_AS(parse_mode("sideways"), ParseError);
}

TEST_CASE("bound values") {
    const auto b9 = bound(9);
    CHECK(b9.numerator == "12887032383225");
    CHECK(b9.denominator == "2");
    CHECK(b9.scientific == "6.4435e+12");
    CHECK(std::abs(b9.approx / 6.4435e12 - 1) < 5e-5);
    CHECK(bound(1).scientific == "4.5000e+00");
    CHECK_THROWS_AS(bound(0), PreconditionError);
}
