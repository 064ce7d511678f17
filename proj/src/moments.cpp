#include "petaluma/moments.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <memory>
#include <sstream>

#include "petaluma/parallel.hpp"

namespace petaluma {

namespace {

// Enumerate S_N in blocks fixed by their first `prefix` entries, so workers
// can split the block range without materializing any permutation list.
struct BlockPlan {
    int N;
    int prefix;            // 0, 1 or 2
    std::uint64_t blocks;  // N * (N-1) for prefix 2, etc.
};

BlockPlan plan_blocks(int N) {
    if (N >= 8) return {N, 2, (std::uint64_t)N * (N - 1)};
    if (N >= 4) return {N, 1, (std::uint64_t)N};
    return {N, 0, 1};
}

Perm block_start(const BlockPlan& plan, std::uint64_t block) {
    std::vector<int> avail(plan.N);
    for (int i = 0; i < plan.N; ++i) avail[i] = i;
    Perm p;
    std::vector<std::uint64_t> digits;
    if (plan.prefix == 2) {
        digits = {block / (std::uint64_t)(plan.N - 1), block % (std::uint64_t)(plan.N - 1)};
    } else if (plan.prefix == 1) {
        digits = {block};
    }
    for (std::uint64_t d : digits) {
        p.push_back(avail[d]);
        avail.erase(avail.begin() + d);
    }
    p.insert(p.end(), avail.begin(), avail.end());
    return p;
}

}  // namespace

ValueDistribution exact_distribution(Invariant inv, int n, unsigned threads, bool allow_large) {
    if (n < 0) throw std::invalid_argument("exact_distribution: n < 0");
    if (inv == Invariant::C2) {
        if (n > 6 || (n == 6 && !allow_large))
            throw BudgetError("exact_distribution: c2 enumeration capped at n=5 "
                              "(n=6 needs allow_large)");
    } else {
        if (n > 4) throw BudgetError("exact_distribution: v3 enumeration capped at n=4");
    }
    const int N = 2 * n + 1;
    const BlockPlan plan = plan_blocks(N);

    // v3 goes through the compiled star formula (value = scaled/2); c2 has a
    // dedicated O(N^2) evaluator.
    std::unique_ptr<StarCompiledFormula> compiled;
    if (inv == Invariant::V3 && n >= 2)
        compiled = std::make_unique<StarCompiledFormula>(v3_formula(), n);

    const unsigned nthreads = effective_threads(threads);
    std::vector<std::map<long long, long long>> partial(nthreads ? nthreads : 1);

    parallel_chunks(plan.blocks, threads, [&](unsigned tid, std::uint64_t lo, std::uint64_t hi) {
        auto& local = partial[tid];
        for (std::uint64_t b = lo; b < hi; ++b) {
            Perm p = block_start(plan, b);
            const auto tail = p.begin() + plan.prefix;
            do {
                long long v;
                if (inv == Invariant::C2) {
                    v = c2_star_fast(p);
                } else if (compiled) {
                    const long long s = compiled->evaluate_scaled(p);
                    v = s / 2;  // formula denominator is 2; integrality checked in tests
                } else {
                    v = 0;  // n <= 1: unknot
                }
                ++local[v];
            } while (std::next_permutation(tail, p.end()));
        }
    });

    ValueDistribution dist;
    dist.invariant = inv;
    dist.n = n;
    dist.total = factorial(N);
    for (const auto& m : partial)
        for (const auto& [v, c] : m) dist.counts[v] += c;
    Int check = 0;
    for (const auto& [v, c] : dist.counts) check += c;
    if (check != dist.total) throw std::logic_error("exact_distribution: lost permutations");
    return dist;
}

Rat moment(const ValueDistribution& dist, unsigned k) {
    Int num = 0;
    for (const auto& [v, c] : dist.counts) {
        Int p = 1;
        for (unsigned i = 0; i < k; ++i) p *= v;
        num += p * c;
    }
    return Rat(num, dist.total);
}

const PaperPolynomials& paper_polynomials() {
    static const PaperPolynomials p = [] {
        PaperPolynomials q;
        auto scaled = [](std::vector<long long> cs, long long den) {
            std::vector<Rat> out;
            for (long long c : cs) out.emplace_back(c, den);
            return out;
        };
        q.e_c2 = scaled({0, -1, 1}, 24);
        q.e_c2_sq = scaled({0, -2, -3, -2, 7}, 960);
        q.e_c2_cu = scaled({0, -1512, -914, 3465, -3125, -3033, 5119}, 2419200);
        q.e_v3_sq = scaled({0, -1794, -1433, 2175, -7145, -1101, 9298}, 5443200);
        return q;
    }();
    return p;
}

Rat star_model_expectation_c2(int n) {
    return Rat(Int(n) * n * n - n, 12);
}

Rat star_model_exact_e_c2(int n) {
    if (n < 2) return 0;
    const int m = (2 * n + 1) * (n - 1);
    if (m > 24) throw BudgetError("star_model_exact_e_c2: 2^" + std::to_string(m) +
                                  " sign assignments is over budget");
    StarCompiledFormula compiled(c2_formula(), n);
    std::vector<unsigned char> asc(m);
    Int sum = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << m); ++mask) {
        for (int i = 0; i < m; ++i) asc[i] = (mask >> i) & 1;
        sum += compiled.evaluate_scaled_flags(asc);
    }
    return Rat(sum, Int(compiled.denom()) << m);
}

std::vector<Rat> beta_table(unsigned max_l) {
    const auto B = bernoulli_numbers(max_l);
    std::vector<Rat> beta(max_l + 1, Rat(0));
    for (unsigned l = 2; l <= max_l; l += 2) {
        beta[l] = B[l] / Rat(factorial(l));
        if ((l / 2) % 2 == 0) beta[l] = -beta[l];  // (-1)^(l/2+1)
    }
    return beta;
}

namespace {

// Cycle profile of the directed multigraph G(T-bar'): vertices ceil(x/2),
// edges t3 -> t1 and t2 -> t4 per quadruple.
struct CycleOut {
    Rat weight;                              // product of sign * beta_l, or 0
    std::vector<std::pair<int, int>> profile;  // sorted (length, sign)
};

CycleOut cycles_weight(const std::vector<std::array<int, 4>>& quads, const std::vector<Rat>& beta) {
    const int verts = (int)quads.size() * 2;
    std::vector<std::pair<int, int>> edges;  // (from, to), vertices 1-based
    for (const auto& q : quads) {
        edges.push_back({(q[2] + 1) / 2, (q[0] + 1) / 2});
        edges.push_back({(q[1] + 1) / 2, (q[3] + 1) / 2});
    }
    std::vector<std::vector<int>> at(verts + 1);  // vertex -> incident edge ids
    for (int e = 0; e < (int)edges.size(); ++e) {
        at[edges[e].first].push_back(e);
        at[edges[e].second].push_back(e);
    }
    std::vector<char> used(edges.size(), 0);
    CycleOut out;
    out.weight = 1;
    for (int start = 1; start <= verts; ++start) {
        for (int e0 : at[start]) {
            if (used[e0]) continue;
            int len = 0, fwd = 0, v = start, e = e0;
            while (true) {
                used[e] = 1;
                ++len;
                if (edges[e].first == v) {
                    ++fwd;
                    v = edges[e].second;
                } else {
                    v = edges[e].first;
                }
                int next = -1;
                for (int e2 : at[v])
                    if (!used[e2]) { next = e2; break; }
                if (next < 0) break;
                e = next;
            }
            const int sign = (fwd % 2 == 0) ? 1 : -1;
            out.profile.push_back({len, sign});
            if (len % 2 == 1 || len >= (int)beta.size())
                out.weight = 0;
            else
                out.weight *= Rat(sign) * beta[len];
        }
    }
    std::sort(out.profile.begin(), out.profile.end());
    return out;
}

}  // namespace

Rat limit_moment_c2(unsigned k, CycleCensus* census) {
    if (k == 0) return 1;
    if (k > 4) throw BudgetError("limit_moment_c2: k capped at 4");
    const auto beta = beta_table(10);
    const unsigned total_elems = 4 * k;
    Rat total = 0;
    const Int kfact = factorial(k);

    // Unordered partitions of [4k] into quadruples; each stands for k! ordered
    // ones (all give the same merged graph up to relabeling of the quadruples,
    // which does not change the cycle structure).
    std::vector<std::array<int, 4>> quads;
    auto rec = [&](auto&& self, std::uint32_t remaining) -> void {
        if (!remaining) {
            const CycleOut c = cycles_weight(quads, beta);
            total += c.weight * Rat(kfact);
            if (census) (*census)[c.profile] += kfact;
            return;
        }
        const int first = std::countr_zero(remaining);
        std::uint32_t rest = remaining & (remaining - 1);
        std::vector<int> pool;
        for (std::uint32_t m = rest; m; m &= m - 1) pool.push_back(std::countr_zero(m));
        const int p = (int)pool.size();
        for (int i = 0; i < p; ++i)
            for (int j = i + 1; j < p; ++j)
                for (int l = j + 1; l < p; ++l) {
                    quads.push_back({first + 1, pool[i] + 1, pool[j] + 1, pool[l] + 1});
                    self(self, rest & ~((1u << pool[i]) | (1u << pool[j]) | (1u << pool[l])));
                    quads.pop_back();
                }
    };
    rec(rec, (total_elems >= 32) ? ~0u : ((1u << total_elems) - 1));
    return total / Rat(factorial(2 * k));
}

// --- Fourier vanishing check ------------------------------------------------

namespace {

using Slots = std::vector<std::pair<int, int>>;  // (tail_slot, head_slot)

const std::vector<Slots>& gpv_three_arrow() {
    static const std::vector<Slots> d = {
        {{5, 2}, {1, 4}, {6, 3}}, {{2, 5}, {4, 1}, {3, 6}}, {{5, 2}, {1, 4}, {3, 6}},
        {{2, 5}, {4, 1}, {6, 3}}, {{1, 4}, {5, 3}, {6, 2}}, {{4, 1}, {3, 5}, {2, 6}},
        {{6, 3}, {4, 2}, {1, 5}}, {{3, 6}, {2, 4}, {5, 1}}, {{5, 2}, {1, 3}, {4, 6}},
        {{2, 5}, {3, 1}, {6, 4}},
    };
    return d;
}

struct Numbered {
    const Slots* diagram;
    std::vector<int> nu;  // slot (1-based index-1) -> number in 1..j
    int kind;             // 0: unsigned 3-arrow, 1: type A pair, 2: type B pair
};

// All non-decreasing surjections of `slots` slots onto {1..j}.
std::vector<std::vector<int>> numberings(int slots, int j) {
    std::vector<std::vector<int>> out;
    std::vector<int> gaps(slots - 1);  // gaps[i] = 1 if number increases after slot i
    auto rec = [&](auto&& self, int i, int used) -> void {
        if (i == slots - 1) {
            if (used != j) return;
            std::vector<int> nu(slots);
            nu[0] = 1;
            for (int s = 1; s < slots; ++s) nu[s] = nu[s - 1] + gaps[s - 1];
            out.push_back(std::move(nu));
            return;
        }
        for (int g = 0; g <= 1; ++g) {
            if (used + g > j) continue;
            gaps[i] = g;
            self(self, i + 1, used + g);
        }
    };
    rec(rec, 0, 1);
    return out;
}

std::vector<Numbered> enumerate_numbered(int j) {
    std::vector<Numbered> out;
    for (const auto& d : gpv_three_arrow())
        for (auto& nu : numberings(6, j)) out.push_back({&d, nu, 0});
    if (j == 4) {
        static const Slots type_a = {{4, 2}, {1, 3}};
        static const Slots type_b = {{2, 4}, {3, 1}};
        out.push_back({&type_a, {1, 2, 3, 4}, 1});
        out.push_back({&type_b, {1, 2, 3, 4}, 2});
    }
    return out;
}

// c(S, eps): coefficient of the induced signed Gauss diagram in the GPV
// formula, or 0 when the numbering is incompatible with a star diagram.
int coefficient(const Numbered& s, const std::array<int, 7>& eps) {
    const Slots& d = *s.diagram;
    // no self-arrows, no repeated pairs
    std::vector<std::pair<int, int>> pairs;
    for (const auto& [t, h] : d) {
        const int a = s.nu[t - 1], b = s.nu[h - 1];
        if (a == b) return 0;
        pairs.push_back(std::minmax(a, b));
    }
    std::sort(pairs.begin(), pairs.end());
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) return 0;

    // Tips that share a number must appear in the order of the crossing-order
    // proposition, which depends on the parities eps.
    std::map<int, std::vector<std::pair<int, int>>> tips;  // number -> (slot, other)
    for (const auto& [t, h] : d) {
        tips[s.nu[t - 1]].push_back({t, s.nu[h - 1]});
        tips[s.nu[h - 1]].push_back({h, s.nu[t - 1]});
    }
    for (auto& [alpha, lst] : tips) {
        if (lst.size() < 2) continue;
        std::sort(lst.begin(), lst.end());
        std::vector<int> actual;
        for (const auto& [slot, x] : lst) actual.push_back(x);
        auto part = [&, alpha = alpha](int x) {
            const bool opp = eps[x] != eps[alpha];
            if (x < alpha && opp) return 0;
            if (x > alpha && !opp) return 1;
            if (x < alpha && !opp) return 2;
            return 3;
        };
        std::vector<int> expected = actual;
        std::sort(expected.begin(), expected.end(),
                  [&](int a, int b) { return std::pair(part(a), -a) < std::pair(part(b), -b); });
        if (actual != expected) return 0;
    }

    // Arrow signs: ascending iff the head slot precedes the tail slot.
    std::vector<int> signs;
    for (const auto& [t, h] : d) {
        int sg = eps[s.nu[t - 1]] * eps[s.nu[h - 1]];
        if (!(h < t)) sg = -sg;
        signs.push_back(sg);
    }
    if (s.kind == 0) return signs[0] * signs[1] * signs[2];
    if (s.kind == 1) return signs[0] == 1 ? signs[1] : 0;   // appears with + only
    return signs[0] == -1 ? signs[1] : 0;                   // appears with - only
}

}  // namespace

FourierReport fourier_vanishing_check() {
    FourierReport report;
    const std::map<int, int> min_order = {{6, 6}, {5, 4}, {4, 2}};
    for (int j = 4; j <= 6; ++j) {
        const auto U = enumerate_numbered(j);
        report.diagram_counts[j] = (int)U.size();
        std::vector<int> sigma(j);
        for (int i = 0; i < j; ++i) sigma[i] = i + 1;
        do {
            auto sg = [&](int num) { return sigma[num - 1]; };
            // f(eps) = sum of c(S, eps) over S compatible with sigma
            std::vector<long long> f(1u << j, 0);
            for (std::uint32_t bits = 0; bits < (1u << j); ++bits) {
                std::array<int, 7> eps{};
                for (int i = 0; i < j; ++i) eps[i + 1] = (bits >> i) & 1 ? -1 : 1;
                long long tot = 0;
                for (const auto& S : U) {
                    bool ok = true;
                    for (const auto& [t, h] : *S.diagram) {
                        const int a = S.nu[t - 1], b = S.nu[h - 1];
                        if (a != b && !(sg(a) > sg(b))) { ok = false; break; }
                    }
                    if (ok) tot += coefficient(S, eps);
                }
                f[bits] = tot;
            }
            // low-order Fourier coefficients over Z_2^j
            for (std::uint32_t I = 0; I < (1u << j); ++I) {
                if (std::popcount(I) >= min_order.at(j)) continue;
                long long coeff = 0;
                for (std::uint32_t bits = 0; bits < (1u << j); ++bits)
                    coeff += (std::popcount(bits & I) % 2 ? -f[bits] : f[bits]);
                if (coeff != 0) {
                    report.passed = false;
                    std::ostringstream msg;
                    msg << "j=" << j << " sigma=(";
                    for (int i = 0; i < j; ++i) msg << (i ? "," : "") << sigma[i];
                    msg << ") I={";
                    bool first = true;
                    for (int i = 0; i < j; ++i)
                        if (I & (1u << i)) {
                            msg << (first ? "" : ",") << i + 1;
                            first = false;
                        }
                    msg << "} coeff=" << coeff;
                    report.violations.push_back(msg.str());
                }
            }
        } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
    return report;
}

}  // namespace petaluma
