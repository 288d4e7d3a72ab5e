#include <catch2/catch_amalgamated.hpp>

#include "mcfa/rng.hpp"
#include "mcfa/stats.hpp"

using namespace mcfa;

TEST_CASE("identical (seed, stream) gives bitwise identical output") {
    RandomSource src{7};
    RandomStream a = src.stream("x");
    RandomStream b = src.stream("x");
    for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());

    RandomStream c = src.stream("x");
    RandomStream d = src.stream("x");
    for (int i = 0; i < 100; ++i) REQUIRE(c.normal() == d.normal());
}

TEST_CASE("named sub-streams differ from each other and across seeds") {
    RandomSource src{7};
    RandomStream a = src.stream("x");
    RandomStream b = src.stream("y");
    RandomStream c = src.stream("x", 1);
    RandomStream d = RandomSource{8}.stream("x");
    REQUIRE(a.next_u64() != b.next_u64());
    REQUIRE(c.next_u64() != d.next_u64());
}

TEST_CASE("normal moments") {
    RandomStream g(123, "moments");
    RunningStats mean, sq;
    const long n = 200000;
    for (long i = 0; i < n; ++i) {
        const double x = g.normal();
        mean.add(x);
        sq.add(x * x);
    }
    REQUIRE(std::abs(mean.mean()) < 4.0 / std::sqrt(static_cast<double>(n)));
    REQUIRE(std::abs(sq.mean() - 1.0) < 1e-2);
}

TEST_CASE("uniform01 range and mean") {
    RandomStream g(5, "uniform");
    RunningStats acc;
    for (int i = 0; i < 100000; ++i) {
        const double u = g.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        acc.add(u);
    }
    REQUIRE(std::abs(acc.mean() - 0.5) < 0.005);
}
