#pragma once

#include <map>
#include <string>
#include <vector>

#include "petaluma/gauss.hpp"
#include "petaluma/numeric.hpp"

namespace petaluma {

enum class Invariant { C2, V3 };

struct ValueDistribution {
    Invariant invariant;
    int n;
    std::map<long long, Int> counts;  // invariant value -> number of permutations
    Int total;                        // = (2n+1)!
};

// Full enumeration of S_{2n+1}.  Budget: c2 up to n=5 (n=6 only with
// allow_large, ~6.2e9 evaluations), v3 up to n=4.  Deterministic and
// independent of the thread count.
ValueDistribution exact_distribution(Invariant inv, int n, unsigned threads = 0,
                                     bool allow_large = false);

Rat moment(const ValueDistribution& dist, unsigned k);

// The moment polynomials displayed in the paper, as ascending coefficients
// in n, plus the star-model expectation.
struct PaperPolynomials {
    std::vector<Rat> e_c2;      // C(n,2)/12 = (n^2 - n)/24
    std::vector<Rat> e_c2_sq;   // (7n^4 - 2n^3 - 3n^2 - 2n)/960
    std::vector<Rat> e_c2_cu;   // (5119n^6 - ... - 1512n)/2419200
    std::vector<Rat> e_v3_sq;   // (9298n^6 - ... - 1794n)/5443200
};
const PaperPolynomials& paper_polynomials();

// E[c2] in the star model with independent uniform crossing signs.
Rat star_model_expectation_c2(int n);  // (n^3 - n)/12

// Exact star-model expectation by enumerating all 2^m sign assignments
// (m = (2n+1)(n-1) crossings); feasible for n <= 2 plus a margin.
Rat star_model_exact_e_c2(int n);

// beta_l = (-1)^(l/2+1) B_l / l! for even l >= 2, else 0.
std::vector<Rat> beta_table(unsigned max_l);

// lambda_k, the limiting moment E[(c2/n^2)^k], via the cycle formula over
// quadruple partitions of [4k].  Budget: k <= 4.  If census is non-null it
// receives pattern counts keyed by the sorted (cycle length, sign) profile.
using CycleCensus = std::map<std::vector<std::pair<int, int>>, Int>;
Rat limit_moment_c2(unsigned k, CycleCensus* census = nullptr);

// Verification of Lemma "j3masstransfer": enumerate the numbered arrow
// diagrams over J = {1..j}, j = 4,5,6, and assert the low-order discrete
// Fourier coefficients vanish for every sigma.
struct FourierReport {
    bool passed = true;
    std::map<int, int> diagram_counts;       // j -> |U_J| (a priori)
    std::vector<std::string> violations;     // "(j, sigma, I)" entries
};
FourierReport fourier_vanishing_check();

}  // namespace petaluma
