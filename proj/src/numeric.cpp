#include "petaluma/numeric.hpp"

#include <utility>

namespace petaluma {

Int factorial(unsigned n) {
    Int f = 1;
    for (unsigned i = 2; i <= n; ++i) f *= i;
    return f;
}

Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int b = 1;
    for (unsigned i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

Int multinomial(const std::vector<unsigned>& parts) {
    unsigned n = 0;
    for (unsigned p : parts) n += p;
    Int m = factorial(n);
    for (unsigned p : parts) m /= factorial(p);
    return m;
}

std::string rat_str(const Rat& r) {
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

std::vector<Rat> bernoulli_numbers(unsigned max_index) {
    // Standard recurrence: sum_{j=0}^{m} C(m+1,j) B_j = 0 for m >= 1.
    std::vector<Rat> B(max_index + 1);
    B[0] = 1;
    for (unsigned m = 1; m <= max_index; ++m) {
        Rat s = 0;
        for (unsigned j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * B[j];
        B[m] = -s / Rat(m + 1);
    }
    return B;
}

Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x) {
    Rat v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
}

std::vector<Rat> interpolate_polynomial(const std::vector<std::pair<Rat, Rat>>& points) {
    const size_t n = points.size();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw std::invalid_argument("interpolation: duplicate abscissa " +
                                            rat_str(points[i].first));
    // Lagrange basis, accumulated coefficient-wise in exact rationals.
    std::vector<Rat> result(n, Rat(0));
    for (size_t i = 0; i < n; ++i) {
        std::vector<Rat> basis{Rat(1)};  // product of (x - x_j)/(x_i - x_j)
        Rat denom = 1;
        for (size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            denom *= points[i].first - points[j].first;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (size_t c = 0; c < basis.size(); ++c) {
                next[c] -= basis[c] * points[j].first;
                next[c + 1] += basis[c];
            }
            basis = std::move(next);
        }
        const Rat scale = points[i].second / denom;
        for (size_t c = 0; c < basis.size(); ++c) result[c] += basis[c] * scale;
    }
    while (result.size() > 1 && result.back() == 0) result.pop_back();
    return result;
}

}  // namespace petaluma
