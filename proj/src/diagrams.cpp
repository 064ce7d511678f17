#include "petaluma/diagrams.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace petaluma {

bool is_permutation(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= (int)p.size() || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Perm inverse(const Perm& p) {
    Perm inv(p.size());
    for (size_t i = 0; i < p.size(); ++i) inv[p[i]] = (int)i;
    return inv;
}

PetalKnot PetalKnot::from_perm(Perm p) {
    if (p.empty() || p.size() % 2 == 0)
        throw std::invalid_argument("petal knot permutation must have odd length");
    if (!is_permutation(p)) throw std::invalid_argument("not a permutation");
    PetalKnot k;
    k.n = ((int)p.size() - 1) / 2;
    k.perm = std::move(p);
    return k;
}

PetalLink PetalLink::from_perm(Perm p) {
    if (p.empty() || p.size() % 4 != 0)
        throw std::invalid_argument("petal link permutation length must be 4n");
    if (!is_permutation(p)) throw std::invalid_argument("not a permutation");
    PetalLink l;
    l.n = (int)p.size() / 4;
    l.perm = std::move(p);
    return l;
}

void GaussDiagram::validate() const {
    if ((int)endpoints.size() != 2 * m || (int)signs.size() != m)
        throw std::invalid_argument("gauss diagram: size mismatch");
    std::vector<int> over(m, 0), under(m, 0);
    for (const auto& e : endpoints) {
        if (e.id < 0 || e.id >= m) throw std::invalid_argument("gauss diagram: bad id");
        (e.role == Role::Over ? over : under)[e.id]++;
    }
    for (int i = 0; i < m; ++i) {
        if (over[i] != 1 || under[i] != 1)
            throw std::invalid_argument("gauss diagram: each id needs one over and one under");
        if (signs[i] != 1 && signs[i] != -1)
            throw std::invalid_argument("gauss diagram: sign must be +/-1");
    }
}

std::vector<Arrow> diagram_arrows(const GaussDiagram& d) {
    std::vector<Arrow> arrows(d.m);
    for (int pos = 0; pos < (int)d.endpoints.size(); ++pos) {
        const auto& e = d.endpoints[pos];
        if (e.role == Role::Over)
            arrows[e.id].tail = pos;
        else
            arrows[e.id].head = pos;
    }
    for (int i = 0; i < d.m; ++i) arrows[i].sign = d.signs[i];
    return arrows;
}

std::vector<int> star_crossing_order(int n, int alpha) {
    const int N = 2 * n + 1;
    if (alpha < 0 || alpha >= N) throw std::invalid_argument("star_crossing_order: alpha out of range");
    std::vector<int> out;
    if (n < 2) return out;
    out.reserve(2 * n - 2);
    auto adjacent = [&](int x) {
        return x == alpha || x == (alpha + 1) % N || x == (alpha + N - 1) % N;
    };
    // Four parts per the proposition; decreasing inside each part.
    for (int x = alpha - 1; x >= 0; --x)
        if (!adjacent(x) && (alpha - x) % 2 == 1) out.push_back(x);
    for (int x = N - 1; x > alpha; --x)
        if (!adjacent(x) && (x - alpha) % 2 == 0) out.push_back(x);
    for (int x = alpha - 1; x >= 0; --x)
        if (!adjacent(x) && (alpha - x) % 2 == 0) out.push_back(x);
    for (int x = N - 1; x > alpha; --x)
        if (!adjacent(x) && (x - alpha) % 2 == 1) out.push_back(x);
    return out;
}

GaussDiagram star_gauss_diagram(const PetalKnot& k, int base_segment) {
    const int n = k.n;
    const int N = 2 * n + 1;
    GaussDiagram d;
    if (n < 2) return d;  // 1 or 3 petals: no crossings
    // Crossing ids keyed by the unordered segment pair, in order of first visit.
    std::vector<int> id(N * N, -1);
    const auto& pi = k.perm;
    for (int s = 0; s < N; ++s) {
        const int a = (base_segment + s) % N;
        for (int x : star_crossing_order(n, a)) {
            const int lo = std::min(a, x), hi = std::max(a, x);
            int& cid = id[lo * N + hi];
            if (cid < 0) {
                cid = d.m++;
                const bool ascending = pi[lo] < pi[hi];
                int sign = ((lo + hi) % 2 == 0) ? 1 : -1;
                if (!ascending) sign = -sign;
                d.signs.push_back(sign);
            }
            const bool over = pi[a] > pi[x];
            d.endpoints.push_back({cid, over ? Role::Over : Role::Under});
        }
    }
    return d;
}

GaussDiagram grid_gauss_diagram(const GridDiagram& g) {
    const int m = (int)g.sigma.size();
    if ((int)g.pi.size() != m) throw std::invalid_argument("grid: sigma/pi length mismatch");
    if (!is_permutation(g.sigma) || !is_permutation(g.pi))
        throw std::invalid_argument("grid: sigma and pi must be permutations");

    // Vertical edge i: x = sigma(i), y runs pi(i) -> pi(i+1).
    // Horizontal edge j: y = pi(j), x runs sigma(j-1) -> sigma(j).
    // Strict interior intersections only; shared corners never count.
    std::map<std::pair<int, int>, int> sign_of;  // (vertical i, horizontal j) -> sign
    for (int i = 0; i < m; ++i) {
        const int y0 = g.pi[i], y1 = g.pi[(i + 1) % m];
        for (int j = 0; j < m; ++j) {
            const int x0 = g.sigma[(j + m - 1) % m], x1 = g.sigma[j];
            if (std::min(y0, y1) < g.pi[j] && g.pi[j] < std::max(y0, y1) &&
                std::min(x0, x1) < g.sigma[i] && g.sigma[i] < std::max(x0, x1)) {
                const int vdir = y1 > y0 ? 1 : -1;
                const int hdir = x1 > x0 ? 1 : -1;
                // Orientation sign of (over, under) = ((0,vdir),(hdir,0)) as a basis.
                sign_of[{i, j}] = -vdir * hdir;
            }
        }
    }

    GaussDiagram d;
    d.m = (int)sign_of.size();
    d.signs.resize(d.m);
    std::map<std::pair<int, int>, int> id;
    int next = 0;
    // Traversal from corner (sigma(0), pi(0)): V0, H1, V1, H2, ..., V_{m-1}, H0.
    auto emit = [&](std::pair<int, int> key, Role role) {
        auto it = id.find(key);
        if (it == id.end()) {
            it = id.emplace(key, next++).first;
            d.signs[it->second] = sign_of.at(key);
        }
        d.endpoints.push_back({it->second, role});
    };
    for (int i = 0; i < m; ++i) {
        const int y0 = g.pi[i], y1 = g.pi[(i + 1) % m];
        std::vector<int> js;
        for (const auto& [key, s] : sign_of)
            if (key.first == i) js.push_back(key.second);
        std::sort(js.begin(), js.end(), [&](int a, int b) {
            return y1 > y0 ? g.pi[a] < g.pi[b] : g.pi[a] > g.pi[b];
        });
        for (int j : js) emit({i, j}, Role::Over);

        const int jj = (i + 1) % m;
        const int x0 = g.sigma[(jj + m - 1) % m], x1 = g.sigma[jj];
        std::vector<int> vs;
        for (const auto& [key, s] : sign_of)
            if (key.second == jj) vs.push_back(key.first);
        std::sort(vs.begin(), vs.end(), [&](int a, int b) {
            return x1 > x0 ? g.sigma[a] < g.sigma[b] : g.sigma[a] > g.sigma[b];
        });
        for (int vi : vs) emit({vi, jj}, Role::Under);
    }
    return d;
}

GridDiagram petal_to_grid(const PetalKnot& k) {
    if (k.n < 1) throw std::invalid_argument("petal_to_grid: need n >= 1");
    const int N = 2 * k.n + 1;
    GridDiagram g;
    g.sigma.resize(N);
    for (int i = 0; i < N; ++i) g.sigma[i] = (k.n * i) % N;
    g.pi = k.perm;
    return g;
}

PetalKnot mirror(const PetalKnot& k) {
    PetalKnot r = k;
    for (int& v : r.perm) v = 2 * k.n - v;
    return r;
}

GaussDiagram rotate_basepoint(const GaussDiagram& d, int steps) {
    if (steps < 0 || steps > 2 * d.m) throw std::invalid_argument("rotate_basepoint: bad step count");
    GaussDiagram r = d;
    std::rotate(r.endpoints.begin(), r.endpoints.begin() + (steps % std::max(1, 2 * d.m)),
                r.endpoints.end());
    return r;
}

std::string to_gauss_code(const GaussDiagram& d) {
    std::ostringstream out;
    for (size_t i = 0; i < d.endpoints.size(); ++i) {
        const auto& e = d.endpoints[i];
        if (i) out << ' ';
        out << (e.role == Role::Over ? 'O' : 'U') << (e.id + 1)
            << (d.signs[e.id] > 0 ? '+' : '-');
    }
    return out.str();
}

GaussDiagram parse_gauss_code(const std::string& line) {
    GaussDiagram d;
    std::istringstream in(line);
    std::string tok;
    std::map<int, int> sign_seen;
    while (in >> tok) {
        if (tok.size() < 3 || (tok[0] != 'O' && tok[0] != 'U'))
            throw std::invalid_argument("gauss code: bad token '" + tok + "'");
        const char sc = tok.back();
        if (sc != '+' && sc != '-')
            throw std::invalid_argument("gauss code: bad sign in '" + tok + "'");
        int id;
        try {
            id = std::stoi(tok.substr(1, tok.size() - 2)) - 1;
        } catch (const std::exception&) {
            throw std::invalid_argument("gauss code: bad id in '" + tok + "'");
        }
        const int sign = sc == '+' ? 1 : -1;
        auto it = sign_seen.find(id);
        if (it != sign_seen.end() && it->second != sign)
            throw std::invalid_argument("gauss code: inconsistent sign for crossing");
        sign_seen[id] = sign;
        d.endpoints.push_back({id, tok[0] == 'O' ? Role::Over : Role::Under});
    }
    d.m = (int)sign_seen.size();
    d.signs.resize(d.m);
    for (const auto& [id, s] : sign_seen) {
        if (id < 0 || id >= d.m) throw std::invalid_argument("gauss code: ids must be 1..m");
        d.signs[id] = s;
    }
    d.validate();
    return d;
}

}  // namespace petaluma
