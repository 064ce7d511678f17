#include <doctest.h>

#include <algorithm>

#include "petaluma/moments.hpp"

using namespace petaluma;

TEST_CASE("exact distributions for tiny n") {
    const ValueDistribution c0 = exact_distribution(Invariant::C2, 0);
    CHECK(c0.total == 1);
    CHECK(c0.counts.at(0) == 1);
    const ValueDistribution v1 = exact_distribution(Invariant::V3, 1);
    CHECK(v1.total == 6);
    CHECK(v1.counts.size() == 1);
    CHECK(v1.counts.at(0) == 6);
}

TEST_CASE("exact c2 distribution over S5") {
    const ValueDistribution d = exact_distribution(Invariant::C2, 2);
    CHECK(d.total == 120);
    Int sum = 0, count = 0;
    for (const auto& [v, c] : d.counts) {
        sum += v * c;
        count += c;
    }
    CHECK(count == 120);
    CHECK(Rat(sum, 120) == Rat(1, 12));
    CHECK(moment(d, 0) == 1);
    CHECK(moment(d, 1) == Rat(1, 12));
}

TEST_CASE("exact v3 distribution over S5 matches direct enumeration") {
    const ValueDistribution d = exact_distribution(Invariant::V3, 2);
    CHECK(d.total == 120);
    std::map<long long, Int> direct;
    const StarCompiledFormula f(v3_formula(), 2);
    Perm p = {0, 1, 2, 3, 4};
    do {
        direct[f.evaluate_scaled(p) / 2] += 1;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(d.counts == direct);
    CHECK(moment(d, 1) == 0);
    CHECK(moment(d, 3) == 0);
    CHECK(moment(d, 2) == Rat(1, 12));
}

TEST_CASE("thread count does not change the result") {
    const ValueDistribution a = exact_distribution(Invariant::C2, 3, 1);
    const ValueDistribution b = exact_distribution(Invariant::C2, 3, 5);
    CHECK(a.counts == b.counts);
    CHECK(a.total == b.total);
}

TEST_CASE("moment polynomials from small-n data") {
    // E[c2] through n = 0, 1, 2 pins down n(n-1)/24
    std::vector<std::pair<Rat, Rat>> pts;
    for (int n = 0; n <= 2; ++n)
        pts.emplace_back(n, moment(exact_distribution(Invariant::C2, n), 1));
    CHECK(interpolate_polynomial(pts) == paper_polynomials().e_c2);
}

TEST_CASE("displayed polynomials evaluate correctly") {
    const auto& pp = paper_polynomials();
    CHECK(poly_eval(pp.e_c2, 2) == Rat(1, 12));
    CHECK(poly_eval(pp.e_c2, 1) == 0);
    CHECK(poly_eval(pp.e_c2_sq, 1) == 0);
    CHECK(poly_eval(pp.e_c2_sq, 2) == Rat(1, 12));
    CHECK(poly_eval(pp.e_c2_cu, 0) == 0);
    CHECK(poly_eval(pp.e_c2_cu, 1) == 0);
    CHECK(poly_eval(pp.e_v3_sq, 1) == 0);
    CHECK(poly_eval(pp.e_v3_sq, 2) == Rat(1, 12));
    // leading coefficients give the limiting normalized moments
    CHECK(pp.e_c2.back() == Rat(1, 24));
    CHECK(pp.e_c2_sq.back() == Rat(7, 960));
    CHECK(pp.e_c2_cu.back() == Rat(5119, 2419200));
}

TEST_CASE("star model expectation") {
    CHECK(star_model_expectation_c2(1) == 0);
    CHECK(star_model_expectation_c2(2) == Rat(1, 2));
    CHECK(star_model_expectation_c2(10) == Rat(1000 - 10, 12));
    CHECK(star_model_exact_e_c2(1) == 0);
    CHECK(star_model_exact_e_c2(2) == Rat(1, 2));
}

TEST_CASE("beta table") {
    const auto beta = beta_table(8);
    CHECK(beta[2] == Rat(1, 12));
    CHECK(beta[3] == 0);
    CHECK(beta[4] == Rat(1, 720));
    CHECK(beta[6] == Rat(1, 30240));
    CHECK(beta[8] == Rat(1, 1209600));
}

TEST_CASE("limiting moments of c2 / n^2") {
    CHECK(limit_moment_c2(1) == Rat(1, 24));
    CycleCensus census;
    CHECK(limit_moment_c2(2, &census) == Rat(7, 960));
    const CycleCensus expect = {
        {{{2, 1}, {2, 1}}, 6},
        {{{2, -1}, {2, -1}}, 16},
        {{{4, 1}}, 32},
        {{{4, -1}}, 16},
    };
    CHECK(census == expect);
    CHECK(limit_moment_c2(3) == Rat(5119, 2419200));
}

TEST_CASE("fourier coefficients of the degree-3 weight systems vanish") {
    const FourierReport r = fourier_vanishing_check();
    CHECK(r.passed);
    CHECK(r.violations.empty());
    CHECK(r.diagram_counts.at(4) == 102);
    CHECK(r.diagram_counts.at(5) == 50);
    CHECK(r.diagram_counts.at(6) == 10);
}

TEST_CASE("work budgets") {
    CHECK_THROWS_AS(exact_distribution(Invariant::C2, 6), BudgetError);
    CHECK_THROWS_AS(exact_distribution(Invariant::V3, 5), BudgetError);
    CHECK_THROWS_AS(exact_distribution(Invariant::V3, 5, 0, true), BudgetError);
    CHECK_THROWS_AS(limit_moment_c2(5), BudgetError);
    CHECK_THROWS_AS(star_model_exact_e_c2(4), BudgetError);
}
