#pragma once

#include <map>
#include <vector>

#include "petaluma/diagrams.hpp"
#include "petaluma/numeric.hpp"

namespace petaluma {

enum class Step : unsigned char { Right, Left, Up, Down };

struct LatticeWalk {
    std::vector<Step> steps;
};

// lk(L_4n) = sum_{x in X, y in Y, x > y} S(x) S(y), with X the heights of
// component one and S(x) = (-1)^(pi^-1(x)).
long long linking_number(const PetalLink& l);

// The walk gamma: heights visited in increasing order; heights of component
// one move in x, the others in y, each in the direction of its sign S.
LatticeWalk walk_from(const PetalLink& l);

// A(gamma) = sum of (-y) dx over the walk, in exact integer arithmetic.
long long area(const LatticeWalk& w);

struct AreaDistribution {
    std::map<long long, Int> counts;
    Int total;
};

// Z_{l,r,u,d}(A): number of walks with the given step counts per area value,
// via the paper's recurrence.  Big-integer exact; throws BudgetError if the
// DP table would exceed the configured memory budget.
AreaDistribution z_table(int l, int r, int u, int d);

// Reference oracle: enumerate all step orderings directly.  Exponential;
// intended for small inputs in tests (l+r+u+d <= ~14).
AreaDistribution z_table_bruteforce(int l, int r, int u, int d);

// P[lk(L_4n) = k] = Z_{n,n,n,n}(k) / multinomial(4n; n,n,n,n).
AreaDistribution exact_lk_distribution(int n);

// Theorem 4 limit for lk(L_4n)/4n.
double limit_density(double x);  // pi / cosh^2(2 pi x)
double limit_cdf(double x);      // (1 + tanh(2 pi x)) / 2

// Lambda_k = k! [z^k] (z/2)/sin(z/2): limiting moments of lk(L_4n)/2n.
// Note the normalization: Theorem 4 divides by 4n, the moments by 2n.
Rat limit_lk_moment(unsigned k);

}  // namespace petaluma
