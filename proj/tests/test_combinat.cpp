#include <stdexcept>

#include "doctest.h"
#include "excov/combinat.hpp"

using namespace excov;
using namespace excov::combinat;

TEST_CASE("binomial: small values and edge cases") {
    CHECK(binomial(0, 0) == 1);
    CHECK(binomial(5, 0) == 1);
    CHECK(binomial(5, 5) == 1);
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(31, 5) == 169911);
    CHECK(binomial(31, 21) == binomial(31, 10));
    CHECK(binomial(5, 6) == 0);
    CHECK(binomial(5, -1) == 0);
}

TEST_CASE("binomial: Pascal identity across the memo table") {
    for (int n = 1; n <= 64; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
    // the table reaches the full sweep domain
    CHECK(binomial(512, 1) == 512);
    CHECK(binomial(512, 256) == binomial(511, 255) + binomial(511, 256));
    CHECK(binomial_memo(512, 256) == binomial(512, 256));
}

TEST_CASE("ceil_div / floor_div") {
    CHECK(ceil_div(ExactInt(7), ExactInt(2)) == 4);
    CHECK(floor_div(ExactInt(7), ExactInt(2)) == 3);
    CHECK(ceil_div(ExactInt(8), ExactInt(2)) == 4);
    CHECK(floor_div(ExactInt(8), ExactInt(2)) == 4);
    CHECK(ceil_div(ExactInt(0), ExactInt(5)) == 0);
}

TEST_CASE("phi: covering count of an i-subset by t-subsets") {
    // phi(n,t,i) = i * C(n-i, t-i+1): pick the excluded element of x, then
    // fill the block with the remaining i-1 elements plus t-i+1 outside ones.
    for (int n = 4; n <= 12; ++n)
        for (int t = 1; t < n; ++t)
            for (int i = 1; i <= t + 1; ++i)
                CHECK(phi(n, t, i) == ExactInt(i) * binomial(n - i, t - i + 1));

    // double count: C(n,i)*phi = C(n,t) * (i-sets covered by a fixed t-set)
    //             = C(n,t) * C(t,i-1) * (n-t)
    for (int n = 5; n <= 10; ++n)
        for (int t = 1; t < n; ++t)
            for (int i = 1; i <= t + 1; ++i)
                CHECK(binomial(n, i) * phi(n, t, i) ==
                      binomial(n, t) * binomial(t, i - 1) * ExactInt(n - t));

    // the hardest targets: (t+1)-sets have exactly t+1 covering blocks
    CHECK(phi(31, 5, 6) == 6);
    CHECK(phi(10, 3, 4) == 4);
}

TEST_CASE("simple_lower: pinned values and formula") {
    CHECK(simple_lower(31, 5) == 28319);
    CHECK(simple_lower(31, 21) == 2016008);
    for (int n = 5; n <= 12; ++n)
        for (int t = 1; t < n; ++t)
            CHECK(simple_lower(n, t) == ceil_div(binomial(n, t + 1), ExactInt(n - t)));
}

TEST_CASE("schoenheim_lower: pinned Table values") {
    CHECK(schoenheim_lower(31, 5) == 33981);
    CHECK(schoenheim_lower(31, 21) == 2103660);
    CHECK(schoenheim_lower(31, 25) == 29450);
    // iterating ceilings can only tighten the plain ratio bound
    for (int n = 5; n <= 16; ++n)
        for (int t = 1; t < n; ++t)
            CHECK(schoenheim_lower(n, t) >= simple_lower(n, t));
}

TEST_CASE("decaen_lower: pinned Table values") {
    CHECK(decaen_lower(31, 5) == 32724);
    CHECK(decaen_lower(31, 21) == 1920008);
    CHECK(decaen_lower(31, 25) == 25244);
}

TEST_CASE("DesignParams: derived code quantities") {
    DesignParams p(31, 5, 6);
    CHECK(p.k() == 25);
    CHECK(p.d() == 7);
    CHECK(p.dual_distance() == 26);
    CHECK_THROWS_AS(DesignParams(5, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(DesignParams(5, 5, 5), std::invalid_argument);
    CHECK_THROWS_AS(DesignParams(5, 3, 2), std::invalid_argument);
}
