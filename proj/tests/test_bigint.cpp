#include "doctest.h"

#include <random>
#include <stdexcept>

#include "qweyl/bigint.hpp"

using qweyl::BigInt;

TEST_CASE("small integer arithmetic agrees with long long") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<long long> dist(-1000000000ll, 1000000000ll);
    for (int k = 0; k < 2000; ++k) {
        long long a = dist(rng), b = dist(rng);
        CHECK((BigInt(a) + BigInt(b)).to_ll() == a + b);
        CHECK((BigInt(a) - BigInt(b)).to_ll() == a - b);
        CHECK((BigInt(a) * BigInt(b)).to_ll() == a * b);
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
        CHECK((BigInt(a) == BigInt(b)) == (a == b));
    }
}

TEST_CASE("decimal printing") {
    CHECK(BigInt(0).to_string() == "0");
    CHECK(BigInt(-1).to_string() == "-1");
    CHECK(BigInt(1234567890123456789ll).to_string() == "1234567890123456789");
    // 30! computed by repeated multiplication, against the known value
    BigInt f(1);
    for (int k = 2; k <= 30; ++k) f *= BigInt(k);
    CHECK(f.to_string() == "265252859812191058636308480000000");
}

TEST_CASE("associativity and distributivity on random values") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long long> dist(-1ll << 60, 1ll << 60);
    for (int k = 0; k < 500; ++k) {
        BigInt a(dist(rng)), b(dist(rng)), c(dist(rng));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a - a == BigInt(0));
    }
}

TEST_CASE("overflow guard on to_ll") {
    BigInt big(1ll << 62);
    big = big * BigInt(16);
    CHECK_THROWS_AS((void)big.to_ll(), std::overflow_error);
}
