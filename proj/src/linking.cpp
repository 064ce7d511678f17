#include "petaluma/linking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace petaluma {

long long linking_number(const PetalLink& l) {
    const int N = 4 * l.n;
    const Perm pos = inverse(l.perm);
    // in_x[h]: height h belongs to component one (strands 0..2n-1).
    std::vector<char> in_x(N), sign(N);
    for (int h = 0; h < N; ++h) {
        in_x[h] = pos[h] < 2 * l.n;
        sign[h] = (pos[h] % 2 == 0) ? 1 : -1;
    }
    long long lk = 0;
    for (int x = 0; x < N; ++x) {
        if (!in_x[x]) continue;
        for (int y = 0; y < x; ++y)
            if (!in_x[y]) lk += (int)sign[x] * (int)sign[y];
    }
    return lk;
}

LatticeWalk walk_from(const PetalLink& l) {
    const int N = 4 * l.n;
    const Perm pos = inverse(l.perm);
    LatticeWalk w;
    w.steps.reserve(N);
    for (int h = 0; h < N; ++h) {
        const bool x_axis = pos[h] < 2 * l.n;
        const bool plus = pos[h] % 2 == 0;
        w.steps.push_back(x_axis ? (plus ? Step::Right : Step::Left)
                                 : (plus ? Step::Up : Step::Down));
    }
    return w;
}

long long area(const LatticeWalk& w) {
    long long y = 0, a = 0;
    for (Step s : w.steps) {
        switch (s) {
            case Step::Right: a -= y; break;
            case Step::Left: a += y; break;
            case Step::Up: ++y; break;
            case Step::Down: --y; break;
        }
    }
    return a;
}

AreaDistribution z_table(int l, int r, int u, int d) {
    if (l < 0 || r < 0 || u < 0 || d < 0) throw std::invalid_argument("z_table: negative counts");
    const long long amax = (long long)(l + r) * std::max(u, d);
    const long long width = 2 * amax + 1;
    const size_t slab = (size_t)(r + 1) * (u + 1) * (d + 1) * (size_t)width;
    const double bytes = 2.0 * slab * sizeof(Int);
    if (bytes > budget_gb() * 1e9)
        throw BudgetError("z_table: DP would need ~" + std::to_string(bytes / 1e9) +
                          " GB, over PETALUMA_BUDGET_GB");

    std::vector<Int> prev(slab), cur(slab);
    auto cell = [&](std::vector<Int>& buf, int ri, int ui, int di) -> Int* {
        return &buf[(((size_t)ri * (u + 1) + ui) * (d + 1) + di) * width + amax];
    };
    for (int li = 0; li <= l; ++li) {
        for (int ri = 0; ri <= r; ++ri)
            for (int ui = 0; ui <= u; ++ui)
                for (int di = 0; di <= d; ++di) {
                    Int* out = cell(cur, ri, ui, di);
                    const long long bound =
                        std::min(amax, (long long)(li + ri) * std::max(ui, di));
                    const long long shift = ui - di;
                    const Int* from_l = li ? cell(prev, ri, ui, di) : nullptr;
                    const Int* from_r = ri ? cell(cur, ri - 1, ui, di) : nullptr;
                    const Int* from_u = ui ? cell(cur, ri, ui - 1, di) : nullptr;
                    const Int* from_d = di ? cell(cur, ri, ui, di - 1) : nullptr;
                    // Buffers are reused across the outer loop, so clear the
                    // whole row: stale values outside the support would leak
                    // into later reads otherwise.
                    for (long long a = -amax; a < -bound; ++a) out[a] = 0;
                    for (long long a = bound + 1; a <= amax; ++a) out[a] = 0;
                    for (long long a = -bound; a <= bound; ++a) {
                        Int v = 0;
                        // Z_{l-1,r,u,d}(A+u-d) + Z_{l,r-1,u,d}(A-u+d)
                        //   + Z_{l,r,u-1,d}(A) + Z_{l,r,u,d-1}(A)
                        if (from_l && std::abs(a + shift) <= amax) v += from_l[a + shift];
                        if (from_r && std::abs(a - shift) <= amax) v += from_r[a - shift];
                        if (from_u) v += from_u[a];
                        if (from_d) v += from_d[a];
                        out[a] = std::move(v);
                    }
                    if (li + ri + ui + di == 0) out[0] = 1;
                }
        std::swap(prev, cur);
    }
    AreaDistribution dist;
    dist.total = 0;
    const Int* last = cell(prev, r, u, d);
    for (long long a = -amax; a <= amax; ++a)
        if (last[a] != 0) {
            dist.counts[a] = last[a];
            dist.total += last[a];
        }
    if (l + r + u + d == 0) {
        dist.counts[0] = 1;
        dist.total = 1;
    }
    return dist;
}

AreaDistribution z_table_bruteforce(int l, int r, int u, int d) {
    std::vector<Step> steps;
    steps.insert(steps.end(), l, Step::Left);
    steps.insert(steps.end(), r, Step::Right);
    steps.insert(steps.end(), u, Step::Up);
    steps.insert(steps.end(), d, Step::Down);
    std::sort(steps.begin(), steps.end());
    AreaDistribution dist;
    dist.total = 0;
    LatticeWalk w;
    do {
        w.steps = steps;
        dist.counts[area(w)] += 1;
        dist.total += 1;
    } while (std::next_permutation(steps.begin(), steps.end()));
    return dist;
}

AreaDistribution exact_lk_distribution(int n) {
    if (n < 1) throw std::invalid_argument("exact_lk_distribution: need n >= 1");
    return z_table(n, n, n, n);
}

double limit_density(double x) {
    const double c = std::cosh(2 * M_PI * x);
    return M_PI / (c * c);
}

double limit_cdf(double x) { return (1 + std::tanh(2 * M_PI * x)) / 2; }

Rat limit_lk_moment(unsigned k) {
    // Series inversion: sin(z/2)/(z/2) = sum_m (-1)^m z^{2m} / ((2m+1)! 4^m),
    // then Lambda_k = k! [z^k] of the reciprocal.
    std::vector<Rat> denom(k + 1);
    for (unsigned m = 0; 2 * m <= k; ++m) {
        Rat term(1, factorial(2 * m + 1));
        term /= Int(1) << (2 * m);
        denom[2 * m] = (m % 2 == 0) ? term : -term;
    }
    std::vector<Rat> inv(k + 1);
    inv[0] = 1;
    for (unsigned i = 1; i <= k; ++i) {
        Rat s = 0;
        for (unsigned j = 1; j <= i; ++j) s += denom[j] * inv[i - j];
        inv[i] = -s;
    }
    return inv[k] * Rat(factorial(k));
}

}  // namespace petaluma
