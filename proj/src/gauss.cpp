#include "petaluma/gauss.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/integer/common_factor.hpp>

namespace petaluma {

void ArrowTerm::validate() const {
    if (arrows.empty()) throw std::invalid_argument("arrow term: no arrows");
    if (constraints.size() != arrows.size())
        throw std::invalid_argument("arrow term: constraints/arrows size mismatch");
    std::set<int> slots;
    for (const auto& [t, h] : arrows) {
        slots.insert(t);
        slots.insert(h);
    }
    const int k = 2 * arity();
    if ((int)slots.size() != k || *slots.begin() != 1 || *slots.rbegin() != k)
        throw std::invalid_argument("arrow term: slots must be a permutation of 1..2*arity");
}

void GaussFormula::validate() const {
    if (terms.empty()) throw std::invalid_argument("formula: no terms");
    for (const auto& t : terms) t.validate();
}

namespace {

// A term's arrows sorted by tail slot, with constraints kept aligned.
struct CanonTerm {
    const ArrowTerm* term;
    std::vector<std::pair<int, int>> shape;        // (tail_slot, head_slot), sorted
    std::vector<SignConstraint> constraints;
};

CanonTerm canonicalize(const ArrowTerm& t) {
    std::vector<int> order(t.arrows.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return t.arrows[a].first < t.arrows[b].first; });
    CanonTerm c;
    c.term = &t;
    for (int i : order) {
        c.shape.push_back(t.arrows[i]);
        c.constraints.push_back(t.constraints[i]);
    }
    return c;
}

// Slot pattern of a concrete arrow tuple: sort the 2a endpoint positions, map
// to slots 1..2a, and list (tail_slot, head_slot) by increasing tail slot.
// signs_out receives the matched arrows' signs in the same order.
void combo_shape(const Arrow* const* combo, int a,
                 std::vector<std::pair<int, int>>& shape_out, std::vector<int>& signs_out) {
    std::array<std::pair<int, int>, 6> eps;  // (position, 2*arrowIdx + isHead)
    for (int i = 0; i < a; ++i) {
        eps[2 * i] = {combo[i]->tail, 2 * i};
        eps[2 * i + 1] = {combo[i]->head, 2 * i + 1};
    }
    std::sort(eps.begin(), eps.begin() + 2 * a);
    std::array<int, 3> tail_slot{}, head_slot{};
    for (int s = 0; s < 2 * a; ++s) {
        const int code = eps[s].second;
        (code % 2 ? head_slot : tail_slot)[code / 2] = s + 1;
    }
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.begin() + a,
              [&](int x, int y) { return tail_slot[x] < tail_slot[y]; });
    shape_out.clear();
    signs_out.clear();
    for (int i = 0; i < a; ++i) {
        shape_out.emplace_back(tail_slot[order[i]], head_slot[order[i]]);
        signs_out.push_back(combo[order[i]]->sign);
    }
}

Rat match_weight(const CanonTerm& ct, const std::vector<std::pair<int, int>>& shape,
                 const std::vector<int>& signs) {
    if (ct.shape != shape) return 0;
    Rat w = ct.term->coefficient;
    for (size_t i = 0; i < signs.size(); ++i) {
        switch (ct.constraints[i]) {
            case SignConstraint::Free:
                if (signs[i] < 0) w = -w;
                break;
            case SignConstraint::Plus:
                if (signs[i] < 0) return 0;
                break;
            case SignConstraint::Minus:
                if (signs[i] > 0) return 0;
                break;
        }
    }
    return w;
}

template <typename Visit>
void for_each_combo(int m, int a, Visit&& visit) {
    std::array<int, 3> idx{};
    auto rec = [&](auto&& self, int depth, int start) -> void {
        if (depth == a) {
            visit(idx);
            return;
        }
        for (int i = start; i <= m - (a - depth); ++i) {
            idx[depth] = i;
            self(self, depth + 1, i + 1);
        }
    };
    rec(rec, 0, 0);
}

Rat evaluate_terms(const std::vector<const ArrowTerm*>& terms, const GaussDiagram& d) {
    Rat total = 0;
    if (terms.empty() || d.m == 0) return total;
    std::map<int, std::vector<CanonTerm>> by_arity;
    for (const ArrowTerm* t : terms) by_arity[t->arity()].push_back(canonicalize(*t));
    const auto arrows = diagram_arrows(d);
    std::vector<std::pair<int, int>> shape;
    std::vector<int> signs;
    for (const auto& [a, cterms] : by_arity) {
        if (a > 3) throw std::invalid_argument("formula engine supports arity <= 3");
        if (a > d.m) continue;
        for_each_combo(d.m, a, [&](const std::array<int, 3>& idx) {
            const Arrow* combo[3];
            for (int i = 0; i < a; ++i) combo[i] = &arrows[idx[i]];
            combo_shape(combo, a, shape, signs);
            for (const auto& ct : cterms) total += match_weight(ct, shape, signs);
        });
    }
    return total;
}

}  // namespace

Rat pairing(const ArrowTerm& term, const GaussDiagram& d) {
    term.validate();
    return evaluate_terms({&term}, d);
}

Rat evaluate(const GaussFormula& f, const GaussDiagram& d) {
    f.validate();
    std::vector<const ArrowTerm*> terms;
    for (const auto& t : f.terms) terms.push_back(&t);
    return evaluate_terms(terms, d);
}

namespace {

ArrowTerm make_term(const Rat& coeff, std::initializer_list<std::array<int, 3>> arrows) {
    // each entry: {tail_slot, head_slot, constraint(-1/0/+1)}
    ArrowTerm t;
    t.coefficient = coeff;
    for (const auto& a : arrows) {
        t.arrows.emplace_back(a[0], a[1]);
        t.constraints.push_back(static_cast<SignConstraint>(a[2]));
    }
    return t;
}

constexpr int F = 0, P = 1, M = -1;

}  // namespace

const GaussFormula& c2_formula() {
    static const GaussFormula f = [] {
        GaussFormula g;
        g.terms.push_back(make_term(1, {{{2, 4, F}}, {{3, 1, F}}}));
        g.validate();
        return g;
    }();
    return f;
}

const GaussFormula& v3_formula() {
    // The GPV table row evaluates to 2*v3, hence the 1/2 coefficients.
    static const GaussFormula f = [] {
        GaussFormula g;
        const Rat h(1, 2);
        g.terms.push_back(make_term(h, {{{5, 2, F}}, {{1, 4, F}}, {{6, 3, F}}}));
        g.terms.push_back(make_term(h, {{{2, 5, F}}, {{4, 1, F}}, {{3, 6, F}}}));
        g.terms.push_back(make_term(h, {{{5, 2, F}}, {{1, 4, F}}, {{3, 6, F}}}));
        g.terms.push_back(make_term(h, {{{2, 5, F}}, {{4, 1, F}}, {{6, 3, F}}}));
        g.terms.push_back(make_term(h, {{{1, 4, F}}, {{5, 3, F}}, {{6, 2, F}}}));
        g.terms.push_back(make_term(h, {{{4, 1, F}}, {{3, 5, F}}, {{2, 6, F}}}));
        g.terms.push_back(make_term(h, {{{6, 3, F}}, {{4, 2, F}}, {{1, 5, F}}}));
        g.terms.push_back(make_term(h, {{{3, 6, F}}, {{2, 4, F}}, {{5, 1, F}}}));
        g.terms.push_back(make_term(h, {{{5, 2, F}}, {{1, 3, F}}, {{4, 6, F}}}));
        g.terms.push_back(make_term(h, {{{2, 5, F}}, {{3, 1, F}}, {{6, 4, F}}}));
        g.terms.push_back(make_term(h, {{{4, 2, P}}, {{1, 3, P}}}));
        g.terms.push_back(make_term(-h, {{{4, 2, P}}, {{1, 3, M}}}));
        g.terms.push_back(make_term(h, {{{2, 4, M}}, {{3, 1, P}}}));
        g.terms.push_back(make_term(-h, {{{2, 4, M}}, {{3, 1, M}}}));
        g.validate();
        return g;
    }();
    return f;
}

namespace {

long long as_integer(const Rat& r, const char* what) {
    if (denominator(r) != 1)
        throw std::logic_error(std::string(what) + ": non-integer value " + rat_str(r));
    return numerator(r).convert_to<long long>();
}

}  // namespace

long long c2(const GaussDiagram& d) { return as_integer(evaluate(c2_formula(), d), "c2"); }
long long v3(const GaussDiagram& d) { return as_integer(evaluate(v3_formula(), d), "v3"); }

std::string formula_to_text(const GaussFormula& f) {
    std::ostringstream out;
    for (const auto& t : f.terms) {
        out << rat_str(t.coefficient);
        for (size_t i = 0; i < t.arrows.size(); ++i) {
            out << ' ' << t.arrows[i].first << '>' << t.arrows[i].second << ':';
            switch (t.constraints[i]) {
                case SignConstraint::Free: out << 'f'; break;
                case SignConstraint::Plus: out << '+'; break;
                case SignConstraint::Minus: out << '-'; break;
            }
        }
        out << '\n';
    }
    return out.str();
}

GaussFormula parse_formula(const std::string& text) {
    GaussFormula f;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream in(line);
        std::string coeff_tok;
        if (!(in >> coeff_tok)) continue;
        ArrowTerm t;
        t.coefficient = parse_rat(coeff_tok);
        std::string tok;
        while (in >> tok) {
            const auto gt = tok.find('>');
            const auto colon = tok.find(':');
            if (gt == std::string::npos || colon == std::string::npos || colon < gt ||
                colon + 2 != tok.size())
                throw std::invalid_argument("formula: bad arrow token '" + tok + "'");
            const int tail = std::stoi(tok.substr(0, gt));
            const int head = std::stoi(tok.substr(gt + 1, colon - gt - 1));
            t.arrows.emplace_back(tail, head);
            switch (tok.back()) {
                case 'f': t.constraints.push_back(SignConstraint::Free); break;
                case '+': t.constraints.push_back(SignConstraint::Plus); break;
                case '-': t.constraints.push_back(SignConstraint::Minus); break;
                default: throw std::invalid_argument("formula: bad constraint in '" + tok + "'");
            }
        }
        f.terms.push_back(std::move(t));
    }
    f.validate();
    return f;
}

// --- Fast star-diagram evaluation ------------------------------------------

long long c2_star_fast(const Perm& pi) {
    const int N = (int)pi.size();
    if (N % 2 == 0) throw std::invalid_argument("c2_star_fast: need odd-length permutation");
    // Factorization of the Q-set sum; validated against the formula engine.
    long long total = 0;

    // Generic quadruples a<b<g<d: -s(a)s(b)s(g)s(d) I[pi(a)<pi(g)] I[pi(d)<pi(b)].
    // L[b][g] = sum_{a<b} s(a) I[pi(a)<pi(g)], R[b][g] = sum_{d>g} s(d) I[pi(d)<pi(b)].
    // reused across calls: full enumerations call this tens of millions of times
    static thread_local std::vector<int> L, R;
    L.resize((size_t)N * N);
    R.resize((size_t)N * N);
    for (int g = 0; g < N; ++g) {
        int acc = 0;
        for (int b = 0; b < N; ++b) {
            L[(size_t)b * N + g] = acc;
            if (pi[b] < pi[g]) acc += (b % 2 == 0) ? 1 : -1;
        }
    }
    for (int b = 0; b < N; ++b) {
        int acc = 0;
        for (int g = N - 1; g >= 0; --g) {
            R[(size_t)b * N + g] = acc;
            if (pi[g] < pi[b]) acc += (g % 2 == 0) ? 1 : -1;
        }
    }
    for (int b = 0; b < N; ++b) {
        const int sb = (b % 2 == 0) ? 1 : -1;
        for (int g = b + 1; g < N; ++g) {
            const int sg = (g % 2 == 0) ? 1 : -1;
            total -= (long long)sb * sg * L[(size_t)b * N + g] * R[(size_t)b * N + g];
        }
    }

    // a=b<g<d with g=a, d!=a (mod 2): +I[pi(g)>pi(a)] I[pi(d)<pi(a)].
    for (int a = 0; a < N; ++a) {
        long long same_above = 0;  // g in (a,d), g=a mod 2, pi(g)>pi(a)
        for (int d = a + 1; d < N; ++d) {
            if ((d - a) % 2 == 1) {
                if (pi[d] < pi[a]) total += same_above;
            } else if (pi[d] > pi[a]) {
                ++same_above;
            }
        }
    }

    // a<b=g<d, all same parity: -(#{a<b: pi(a)<pi(b)})(#{d>b: pi(d)<pi(b)}).
    for (int b = 0; b < N; ++b) {
        long long na = 0, nd = 0;
        for (int a = b % 2; a < b; a += 2)
            if (pi[a] < pi[b]) ++na;
        for (int d = b + 2; d < N; d += 2)
            if (pi[d] < pi[b]) ++nd;
        total -= na * nd;
    }

    // a<b<g=d with a!=g, b=g (mod 2): +I[pi(a)<pi(g)] I[pi(b)>pi(g)].
    for (int g = 0; g < N; ++g) {
        long long opp_below = 0;  // a<b, a!=g mod 2, pi(a)<pi(g)
        for (int b = 0; b < g; ++b) {
            if ((g - b) % 2 == 1) {
                if (pi[b] < pi[g]) ++opp_below;
            } else if (pi[b] > pi[g]) {
                total += opp_below;
            }
        }
    }
    return total;
}

std::vector<StarCrossing> star_crossings(int n) {
    const int N = 2 * n + 1;
    std::vector<StarCrossing> out;
    if (n < 2) return out;
    std::vector<int> index(N * N, -1);
    int pos = 0;
    for (int a = 0; a < N; ++a) {
        for (int x : star_crossing_order(n, a)) {
            const int lo = std::min(a, x), hi = std::max(a, x);
            int& idx = index[lo * N + hi];
            if (idx < 0) {
                idx = (int)out.size();
                StarCrossing c;
                c.lo = lo;
                c.hi = hi;
                c.pos_lo = pos;  // first passage is on the lower segment
                c.pos_hi = -1;
                c.base_sign = ((lo + hi) % 2 == 0) ? 1 : -1;
                out.push_back(c);
            } else {
                out[idx].pos_hi = pos;
            }
            ++pos;
        }
    }
    return out;
}

StarCompiledFormula::StarCompiledFormula(const GaussFormula& f, int n) : n_(n) {
    f.validate();
    crossings_ = star_crossings(n);
    denom_ = 1;
    for (const auto& t : f.terms)
        denom_ = boost::integer::lcm(denom_, Int(denominator(t.coefficient)));

    std::map<int, std::vector<CanonTerm>> by_arity;
    for (const auto& t : f.terms) by_arity[t.arity()].push_back(canonicalize(t));

    const int m = (int)crossings_.size();
    std::vector<std::pair<int, int>> shape;
    std::vector<int> signs;
    for (const auto& [a, cterms] : by_arity) {
        if (a > 3) throw std::invalid_argument("star compiler supports arity <= 3");
        if (a > m) continue;
        for_each_combo(m, a, [&](const std::array<int, 3>& idx) {
            Entry e;
            e.weights.assign(1u << a, 0);
            bool any = false;
            for (unsigned mask = 0; mask < (1u << a); ++mask) {
                Arrow arr[3];
                const Arrow* combo[3];
                for (int i = 0; i < a; ++i) {
                    const StarCrossing& c = crossings_[idx[i]];
                    const bool asc = mask & (1u << i);
                    arr[i].tail = asc ? c.pos_hi : c.pos_lo;
                    arr[i].head = asc ? c.pos_lo : c.pos_hi;
                    arr[i].sign = asc ? c.base_sign : -c.base_sign;
                    combo[i] = &arr[i];
                }
                combo_shape(combo, a, shape, signs);
                Rat w = 0;
                for (const auto& ct : cterms) w += match_weight(ct, shape, signs);
                if (w != 0) {
                    e.weights[mask] = Int(w * denom_).convert_to<long long>();
                    any = true;
                }
            }
            if (any) {
                e.crossings.assign(idx.begin(), idx.begin() + a);
                entries_.push_back(std::move(e));
            }
        });
    }
}

long long StarCompiledFormula::evaluate_scaled(const Perm& pi) const {
    if ((int)pi.size() != 2 * n_ + 1)
        throw std::invalid_argument("compiled formula: permutation size mismatch");
    std::vector<unsigned char> asc(crossings_.size());
    for (size_t i = 0; i < crossings_.size(); ++i)
        asc[i] = pi[crossings_[i].lo] < pi[crossings_[i].hi];
    return evaluate_scaled_flags(asc);
}

long long StarCompiledFormula::evaluate_scaled_flags(const std::vector<unsigned char>& asc) const {
    if (asc.size() != crossings_.size())
        throw std::invalid_argument("compiled formula: flag vector size mismatch");
    long long total = 0;
    for (const auto& e : entries_) {
        unsigned mask = 0;
        for (size_t i = 0; i < e.crossings.size(); ++i)
            mask |= unsigned(asc[e.crossings[i]]) << i;
        total += e.weights[mask];
    }
    return total;
}

Rat StarCompiledFormula::evaluate(const Perm& pi) const {
    return Rat(Int(evaluate_scaled(pi)), denom_);
}

}  // namespace petaluma
