#include <doctest.h>

#include "petaluma/numeric.hpp"

using namespace petaluma;

TEST_CASE("factorials and binomials") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(11) == 39916800);
    CHECK(binomial(7, 4) == 35);
    CHECK(binomial(4, 7) == 0);
    CHECK(binomial(64, 16) == Int("488526937079580"));
    CHECK(multinomial({1, 1, 1, 1}) == 24);
    CHECK(multinomial({2, 2, 2, 2}) == 2520);
    // denominator of P[lk(L_64) = k]
    CHECK(multinomial({16, 16, 16, 16}) == Int("662122768410971464603908403461821400"));
}

TEST_CASE("rational serialization") {
    CHECK(rat_str(Rat(7, 960)) == "7/960");
    CHECK(rat_str(Rat(-3, 1)) == "-3");
    CHECK(parse_rat("5119/2419200") == Rat(5119, 2419200));
    CHECK(parse_rat("-7") == Rat(-7));
    CHECK(parse_rat(rat_str(Rat(-812143, 677376000))) == Rat(-812143, 677376000));
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("bernoulli numbers") {
    const auto B = bernoulli_numbers(10);
    CHECK(B[0] == 1);
    CHECK(B[1] == Rat(-1, 2));
    CHECK(B[2] == Rat(1, 6));
    CHECK(B[3] == 0);
    CHECK(B[4] == Rat(-1, 30));
    CHECK(B[8] == Rat(-1, 30));
    CHECK(B[10] == Rat(5, 66));
}

TEST_CASE("polynomial interpolation") {
    // n(n-1)/24 from three points
    const auto p = interpolate_polynomial({{0, 0}, {1, 0}, {2, Rat(1, 12)}});
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 0);
    CHECK(p[1] == Rat(-1, 24));
    CHECK(p[2] == Rat(1, 24));
    CHECK(poly_eval(p, 5) == Rat(5 * 4, 24));

    const auto c = interpolate_polynomial({{1, Rat(3)}, {4, Rat(3)}, {9, Rat(3)}});
    CHECK(c == std::vector<Rat>{Rat(3)});

    CHECK_THROWS_AS(interpolate_polynomial({{1, 2}, {1, 3}}), std::invalid_argument);
}
