#include <doctest.h>

#include <algorithm>

#include "petaluma/gauss.hpp"
#include "petaluma/sampling.hpp"

using namespace petaluma;

namespace {

const char* CP_V3_TEXT =
    "1 2>5:f 4>1:f 3>6:f\n"
    "1 5>2:f 4>1:f 3>6:f\n"
    "1 3>6:f 4>2:f 5>1:f\n"
    "1 5>2:f 4>6:f 3>1:f\n"
    "1 4>1:f 3>5:f 2>6:f\n"
    "1 2>4:+ 3>1:+\n"
    "-1 2>4:- 3>1:-\n";

ArrowTerm crossed_term(SignConstraint first, SignConstraint second) {
    ArrowTerm t;
    t.coefficient = 1;
    t.arrows = {{2, 4}, {3, 1}};
    t.constraints = {first, second};
    return t;
}

GaussDiagram random_star_diagram(SampleRng& rng, int n) {
    PetalKnot k;
    k.n = n;
    k.perm = random_perm(rng, 2 * n + 1);
    return star_gauss_diagram(k);
}

}  // namespace

TEST_CASE("pairing on the trefoil diagram") {
    const GaussDiagram d = star_gauss_diagram(PetalKnot::from_perm({0, 3, 1, 4, 2}));
    using SC = SignConstraint;
    CHECK(pairing(crossed_term(SC::Plus, SC::Plus), d) == 2);
    CHECK(pairing(crossed_term(SC::Plus, SC::Minus), d) == 1);
    CHECK(pairing(crossed_term(SC::Minus, SC::Plus), d) == 0);
    CHECK(pairing(crossed_term(SC::Minus, SC::Minus), d) == 0);
    // c2 = <(+,+)> - <(-,+)> - <(+,-)> + <(-,-)> = 2 - 0 - 1 + 0 = 1
    CHECK(c2(d) == 1);
    CHECK(pairing(crossed_term(SC::Free, SC::Free), d) == 1);
    GaussDiagram empty;
    CHECK(pairing(crossed_term(SC::Free, SC::Free), empty) == 0);
}

TEST_CASE("both c2 arrow diagrams give the same knot invariant") {
    ArrowTerm reversed;  // the other crossed diagram from the paper's figure
    reversed.coefficient = 1;
    reversed.arrows = {{4, 2}, {1, 3}};
    reversed.constraints = {SignConstraint::Free, SignConstraint::Free};
    GaussFormula alt;
    alt.terms = {reversed};
    SampleRng rng(3, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const GaussDiagram d = random_star_diagram(rng, 2 + (int)rng.below(4));
        CHECK(evaluate(alt, d) == Rat(c2(d)));
    }
}

TEST_CASE("invariant values on standard knots") {
    const GaussDiagram tre = star_gauss_diagram(PetalKnot::from_perm({0, 3, 1, 4, 2}));
    CHECK(c2(tre) == 1);
    CHECK(v3(tre) == 1);
    const GaussDiagram mir = star_gauss_diagram(mirror(PetalKnot::from_perm({0, 3, 1, 4, 2})));
    CHECK(c2(mir) == 1);
    CHECK(v3(mir) == -1);
    CHECK(c2(GaussDiagram{}) == 0);
    CHECK(v3(GaussDiagram{}) == 0);

    // torus knots T(2, 2n+1) via pi(k) = nk mod (2n+1): c2 = C(n+2, 4)
    for (int n = 2; n <= 5; ++n) {
        const int N = 2 * n + 1;
        Perm p(N);
        for (int k = 0; k < N; ++k) p[k] = (n * k) % N;
        const long long expect = (long long)((Int)binomial(n + 2, 4)).convert_to<long long>();
        CHECK(c2(star_gauss_diagram(PetalKnot::from_perm(p))) == expect);
    }
}

TEST_CASE("formula text round-trip and validation") {
    const GaussFormula& f = v3_formula();
    const GaussFormula back = parse_formula(formula_to_text(f));
    SampleRng rng(5, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const GaussDiagram d = random_star_diagram(rng, 2 + (int)rng.below(3));
        CHECK(evaluate(back, d) == evaluate(f, d));
    }
    CHECK_THROWS_AS(parse_formula(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_formula("1 2>2:f"), std::invalid_argument);   // degenerate arrow
    CHECK_THROWS_AS(parse_formula("1 2>4:f 3>4:f"), std::invalid_argument);  // reused slot
    CHECK_THROWS_AS(parse_formula("1 2>4:x"), std::invalid_argument);
}

TEST_CASE("v3 agrees with the independent degree-3 formula") {
    const GaussFormula cp = parse_formula(CP_V3_TEXT);
    SampleRng rng(7, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const GaussDiagram d = random_star_diagram(rng, 2 + (int)rng.below(3));
        CHECK(Rat(v3(d)) == evaluate(cp, d));
        CHECK(evaluate(v3_formula(), d) == evaluate(cp, d));
    }
}

TEST_CASE("invariance under basepoint rotation") {
    SampleRng rng(11, 0);
    for (int trial = 0; trial < 15; ++trial) {
        const GaussDiagram d = random_star_diagram(rng, 2 + (int)rng.below(2));
        const long long a2 = c2(d), a3 = v3(d);
        for (int s = 1; s < 2 * d.m; ++s) {
            const GaussDiagram r = rotate_basepoint(d, s);
            CHECK(c2(r) == a2);
            CHECK(v3(r) == a3);
        }
    }
}

TEST_CASE("fast star c2 equals the generic engine") {
    // all of S5
    Perm p = {0, 1, 2, 3, 4};
    do {
        CHECK(c2_star_fast(p) == c2(star_gauss_diagram(PetalKnot::from_perm(p))));
    } while (std::next_permutation(p.begin(), p.end()));
    // random larger permutations
    SampleRng rng(13, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const int n = 3 + (int)rng.below(3);  // S7, S9, S11
        const Perm q = random_perm(rng, 2 * n + 1);
        CHECK(c2_star_fast(q) == c2(star_gauss_diagram(PetalKnot::from_perm(q))));
    }
}

TEST_CASE("star geometry tables") {
    for (int n = 1; n <= 6; ++n) {
        const auto xs = star_crossings(n);
        CHECK((int)xs.size() == (2 * n + 1) * (n - 1));
        for (const auto& x : xs) {
            CHECK(x.lo < x.hi);
            CHECK(x.pos_lo < x.pos_hi);  // first passage lies on the lower segment
            CHECK(x.base_sign == ((x.lo + x.hi) % 2 == 0 ? 1 : -1));
        }
    }
}

TEST_CASE("compiled star formulas match the generic engine") {
    SampleRng rng(19, 0);
    for (int n = 2; n <= 5; ++n) {
        const StarCompiledFormula fc2(c2_formula(), n);
        const StarCompiledFormula fv3(v3_formula(), n);
        CHECK(fc2.denom() == 1);
        CHECK(fv3.denom() == 2);
        for (int trial = 0; trial < 12; ++trial) {
            const Perm p = random_perm(rng, 2 * n + 1);
            const GaussDiagram d = star_gauss_diagram(PetalKnot::from_perm(p));
            CHECK(fc2.evaluate(p) == Rat(c2(d)));
            CHECK(fc2.evaluate_scaled(p) == c2(d));
            CHECK(fv3.evaluate(p) == Rat(v3(d)));
            CHECK(fv3.evaluate_scaled(p) == 2 * v3(d));
            CHECK(fv3.evaluate_scaled(p) % 2 == 0);
        }
    }
}

TEST_CASE("exact sums over the full symmetric group") {
    // sum of c2 over S5 is 5! / 12; sum of v3 over S5 vanishes by mirror symmetry
    Perm p = {0, 1, 2, 3, 4};
    long long sum_c2 = 0, sum_v3 = 0, sum_v3_sq = 0;
    const StarCompiledFormula fv3(v3_formula(), 2);
    do {
        sum_c2 += c2_star_fast(p);
        const long long v = fv3.evaluate_scaled(p) / 2;
        sum_v3 += v;
        sum_v3_sq += v * v;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(sum_c2 == 10);
    CHECK(sum_v3 == 0);
    CHECK(Rat(sum_v3_sq, 120) == Rat(1, 12));  // E[v3^2] at n = 2
}
