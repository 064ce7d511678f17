#include <doctest.h>

#include <algorithm>
#include <set>

#include "petaluma/diagrams.hpp"
#include "petaluma/sampling.hpp"

using namespace petaluma;

namespace {

// Independent count of strict interior crossings of a grid diagram.
int grid_crossings_brute(const GridDiagram& g) {
    const int m = (int)g.sigma.size();
    int count = 0;
    for (int i = 0; i < m; ++i) {
        const int vx = g.sigma[i];
        const int vy0 = g.pi[i], vy1 = g.pi[(i + 1) % m];
        for (int j = 0; j < m; ++j) {
            const int hy = g.pi[j];
            const int hx0 = g.sigma[(j - 1 + m) % m], hx1 = g.sigma[j];
            const bool x_inside = std::min(hx0, hx1) < vx && vx < std::max(hx0, hx1);
            const bool y_inside = std::min(vy0, vy1) < hy && hy < std::max(vy0, vy1);
            if (x_inside && y_inside) ++count;
        }
    }
    return count;
}

}  // namespace

TEST_CASE("star crossing order matches the four-part proposition") {
    CHECK(star_crossing_order(4, 0) == std::vector<int>{6, 4, 2, 7, 5, 3});
    CHECK(star_crossing_order(10, 12) ==
          std::vector<int>{9, 7, 5, 3, 1, 20, 18, 16, 14, 10, 8, 6, 4, 2, 0, 19, 17, 15});
    CHECK(star_crossing_order(1, 0).empty());
    CHECK_THROWS_AS(star_crossing_order(4, 9), std::invalid_argument);
}

TEST_CASE("star crossing order covers every non-adjacent pair once") {
    for (int n = 2; n <= 6; ++n) {
        const int N = 2 * n + 1;
        std::multiset<std::pair<int, int>> pairs;
        for (int a = 0; a < N; ++a) {
            const auto order = star_crossing_order(n, a);
            CHECK((int)order.size() == 2 * n - 2);
            for (int x : order) pairs.insert({std::min(a, x), std::max(a, x)});
        }
        // each crossing is seen from both of its segments, and only from those
        CHECK((int)pairs.size() == 2 * N * (n - 1));
        for (const auto& pr : std::set<std::pair<int, int>>(pairs.begin(), pairs.end()))
            CHECK(pairs.count(pr) == 2);
    }
}

TEST_CASE("trefoil star diagram") {
    const PetalKnot k = PetalKnot::from_perm({0, 3, 1, 4, 2});
    const GaussDiagram d = star_gauss_diagram(k);
    REQUIRE(d.m == 5);
    d.validate();
    // Crossings in first-visit order: (0,2) (0,3) (1,3) (1,4) (2,4).
    CHECK(d.signs == std::vector<int>{1, -1, 1, 1, 1});
    // Interchange format round-trips to the same diagram.
    const GaussDiagram back = parse_gauss_code(to_gauss_code(d));
    CHECK(back.m == d.m);
    CHECK(back.signs == d.signs);
    for (int i = 0; i < 2 * d.m; ++i) {
        CHECK(back.endpoints[i].id == d.endpoints[i].id);
        CHECK(back.endpoints[i].role == d.endpoints[i].role);
    }
}

TEST_CASE("degenerate diagrams") {
    CHECK(star_gauss_diagram(PetalKnot::from_perm({0})).m == 0);
    CHECK(star_gauss_diagram(PetalKnot::from_perm({0, 1, 2})).m == 0);
    CHECK_THROWS_AS(PetalKnot::from_perm({0, 1}), std::invalid_argument);       // even length
    CHECK_THROWS_AS(PetalKnot::from_perm({0, 0, 1}), std::invalid_argument);    // not a bijection
    CHECK_THROWS_AS(PetalLink::from_perm({0, 1, 2}), std::invalid_argument);    // not 4n
    CHECK_THROWS_AS(parse_gauss_code("O1+ U2-"), std::invalid_argument);
    CHECK_THROWS_AS(parse_gauss_code("O1+ O1+"), std::invalid_argument);
}

TEST_CASE("mirror reflects heights and keeps the crossing set") {
    const PetalKnot k = PetalKnot::from_perm({0, 3, 1, 4, 2});
    const PetalKnot m = mirror(k);
    CHECK(m.perm == Perm{4, 1, 3, 0, 2});
    const GaussDiagram d = star_gauss_diagram(k);
    const GaussDiagram dm = star_gauss_diagram(m);
    REQUIRE(dm.m == d.m);
    for (int i = 0; i < d.m; ++i) CHECK(dm.signs[i] == -d.signs[i]);
}

TEST_CASE("petal to grid uses the odd-step column order") {
    const PetalKnot k1 = PetalKnot::from_perm({0, 1, 2});
    CHECK(petal_to_grid(k1).sigma == Perm{0, 1, 2});
    CHECK(petal_to_grid(k1).pi == Perm{0, 1, 2});
    const PetalKnot k2 = PetalKnot::from_perm({0, 3, 1, 4, 2});
    CHECK(petal_to_grid(k2).sigma == Perm{0, 2, 4, 1, 3});
    CHECK(petal_to_grid(k2).pi == Perm{0, 3, 1, 4, 2});
}

TEST_CASE("grid crossing count matches a direct geometric scan") {
    SampleRng rng(17, 0);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 3 + (int)rng.below(28);
        GridDiagram g;
        g.sigma = random_perm(rng, m);
        g.pi = random_perm(rng, m);
        const GaussDiagram d = grid_gauss_diagram(g);
        d.validate();
        CHECK(d.m == grid_crossings_brute(g));
    }
    GridDiagram id2{{0, 1}, {0, 1}};
    CHECK(grid_gauss_diagram(id2).m == 0);
}

TEST_CASE("basepoint rotation") {
    const PetalKnot k = PetalKnot::from_perm({0, 3, 1, 4, 2});
    const GaussDiagram d = star_gauss_diagram(k);
    const GaussDiagram same = rotate_basepoint(d, 0);
    CHECK(same.endpoints[0].id == d.endpoints[0].id);
    const GaussDiagram r = rotate_basepoint(d, 3);
    r.validate();
    CHECK(r.m == d.m);
    CHECK(r.endpoints[0].id == d.endpoints[3].id);
    CHECK(r.endpoints[0].role == d.endpoints[3].role);
    CHECK_THROWS_AS(rotate_basepoint(d, -1), std::invalid_argument);
}

TEST_CASE("permutation helpers") {
    CHECK(is_permutation({2, 0, 1}));
    CHECK_FALSE(is_permutation({2, 2, 1}));
    CHECK(inverse({2, 0, 1}) == Perm{1, 2, 0});
}
