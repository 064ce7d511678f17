#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "petaluma/diagrams.hpp"
#include "petaluma/numeric.hpp"

namespace petaluma {

enum class SignConstraint : signed char { Minus = -1, Free = 0, Plus = 1 };

// One arrow diagram of a Gauss diagram formula.  Slots are 1..2*arity
// counterclockwise from the base point; each arrow is tail -> head
// (over-passage to under-passage).
struct ArrowTerm {
    Rat coefficient;
    std::vector<std::pair<int, int>> arrows;       // (tail_slot, head_slot)
    std::vector<SignConstraint> constraints;       // parallel to arrows

    int arity() const { return (int)arrows.size(); }
    void validate() const;  // throws std::invalid_argument
};

struct GaussFormula {
    std::vector<ArrowTerm> terms;

    void validate() const;  // nonempty, all terms valid
};

// <term, D>: sum over order/direction-preserving injections of the term's
// arrows into d's arrows, weighted by coefficient, free-arrow signs, and
// sign-constraint indicators.
Rat pairing(const ArrowTerm& term, const GaussDiagram& d);
Rat evaluate(const GaussFormula& f, const GaussDiagram& d);

// The crossed-arrow c2 formula and the 14-term GPV formula for v3.
const GaussFormula& c2_formula();
const GaussFormula& v3_formula();

// Integer-valued wrappers (throw std::logic_error if the pairing is not an
// integer, which would indicate a corrupted formula table).
long long c2(const GaussDiagram& d);
long long v3(const GaussDiagram& d);

// Text format, one term per line:  "<coeff> <tail>><head>:<f|+|-> ..."
// '#' starts a comment.  Example: "1/2 5>2:f 1>4:f 6>3:f"
std::string formula_to_text(const GaussFormula& f);
GaussFormula parse_formula(const std::string& text);

// --- Fast evaluation on star diagrams -------------------------------------

// c2 of the star diagram of an odd permutation in O(N^2), by factorizing the
// paper's Q-set sum.  Agrees with c2(star_gauss_diagram(...)) everywhere.
long long c2_star_fast(const Perm& pi);

// Crossing geometry of the (2n+1)-star diagram; independent of pi.
struct StarCrossing {
    int lo, hi;        // segment pair, lo < hi
    int pos_lo, pos_hi;  // traversal positions of the two passages (base 0)
    int base_sign;     // (-1)^(lo+hi); crossing sign = base_sign * (asc ? +1 : -1)
};
std::vector<StarCrossing> star_crossings(int n);

// A formula specialized to the fixed star geometry of one n: endpoint
// positions don't depend on pi, so every (crossing tuple, ascending mask)
// pair reduces to a precomputed weight.  Evaluation is then a table scan.
class StarCompiledFormula {
public:
    StarCompiledFormula(const GaussFormula& f, int n);

    // Value of the formula on K_{2n+1}(pi), as an exact rational.
    Rat evaluate(const Perm& pi) const;

    // Numerator with respect to denom(); avoids rational arithmetic in hot loops.
    long long evaluate_scaled(const Perm& pi) const;

    // Same, but with the ascending flag of each crossing given directly; this
    // is the star model, where the flags are free coin flips.
    long long evaluate_scaled_flags(const std::vector<unsigned char>& ascending) const;

    size_t crossing_count() const { return crossings_.size(); }
    const Int& denom() const { return denom_; }

private:
    struct Entry {
        std::vector<int> crossings;      // indices into crossings_
        std::vector<long long> weights;  // indexed by ascending-bit mask
    };
    int n_;
    Int denom_;
    std::vector<StarCrossing> crossings_;
    std::vector<Entry> entries_;
};

}  // namespace petaluma
