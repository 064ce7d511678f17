#pragma once

#include <string>
#include <vector>

namespace petaluma {

// One-line notation, 0-based: values are a bijection on {0,...,m-1}.
using Perm = std::vector<int>;

bool is_permutation(const Perm& p);
Perm inverse(const Perm& p);

// Petal knot K_{2n+1}(pi): 2n+1 petals, perm[i] = height of strand i over the
// central point.
struct PetalKnot {
    int n;
    Perm perm;  // length 2n+1

    static PetalKnot from_perm(Perm p);  // throws std::invalid_argument
};

// Two-component petal link L_{4n}(pi); strands 0..2n-1 form component one,
// 2n..4n-1 component two (0-based shift of the paper's 1..2n / 2n+1..4n).
struct PetalLink {
    int n;
    Perm perm;  // length 4n

    static PetalLink from_perm(Perm p);
};

// Grid diagram: corner k sits at (sigma(k), pi(k)); vertical edges always
// cross over horizontal ones.
struct GridDiagram {
    Perm sigma;
    Perm pi;
};

enum class Role : unsigned char { Over, Under };

struct GaussEndpoint {
    int id;     // crossing id, 0..m-1
    Role role;
};

// Based circular word of crossing endpoints plus per-crossing signs.
struct GaussDiagram {
    int m = 0;
    std::vector<GaussEndpoint> endpoints;  // length 2m, circle order from base point
    std::vector<int> signs;                // per crossing id, +1/-1

    void validate() const;  // throws std::invalid_argument on malformed data
};

// Arrow form used by the formula engine: tail = over-passage position,
// head = under-passage position (arrow directed over -> under).
struct Arrow {
    int tail;
    int head;
    int sign;
};
std::vector<Arrow> diagram_arrows(const GaussDiagram& d);

// Crossing order along segment alpha of the (2n+1)-star diagram, as in the
// paper's four-part proposition.  Returns the 2n-2 non-adjacent segments.
std::vector<int> star_crossing_order(int n, int alpha);

// Gauss diagram of the star diagram of k, traversing segments
// base, base+1, ..., base+2n (mod 2n+1) from the base point.
GaussDiagram star_gauss_diagram(const PetalKnot& k, int base_segment = 0);

GaussDiagram grid_gauss_diagram(const GridDiagram& g);
GridDiagram petal_to_grid(const PetalKnot& k);

// Reflection: perm'(i) = 2n - perm(i); flips every crossing.
PetalKnot mirror(const PetalKnot& k);

// Cyclic shift of the endpoint sequence by `steps` (0 <= steps < 2m).
GaussDiagram rotate_basepoint(const GaussDiagram& d, int steps);

// Interchange format: "O1+ U2- O3+ U1+ O2- U3+" (ids are 1-based on the wire).
std::string to_gauss_code(const GaussDiagram& d);
GaussDiagram parse_gauss_code(const std::string& line);

}  // namespace petaluma
