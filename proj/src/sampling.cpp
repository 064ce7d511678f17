#include "petaluma/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <stdexcept>

#include "petaluma/parallel.hpp"

namespace petaluma {

namespace {

constexpr std::uint64_t GOLDEN = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

}  // namespace

SampleRng::SampleRng(std::uint64_t seed, std::uint64_t index)
    : state(mix64(seed ^ mix64(index * GOLDEN + 1))) {}

std::uint64_t SampleRng::next() {
    state += GOLDEN;
    return mix64(state);
}

std::uint32_t SampleRng::below(std::uint32_t bound) {
    if (bound < 2) return 0;
    const std::uint64_t span = std::uint64_t(1) << 32;
    const std::uint64_t limit = span - span % bound;
    std::uint64_t r;
    do {
        r = next() >> 32;
    } while (r >= limit);
    return (std::uint32_t)(r % bound);
}

Perm random_perm(SampleRng& rng, int length) {
    Perm p(length);
    for (int i = 0; i < length; ++i) p[i] = i;
    for (int i = length - 1; i > 0; --i)
        std::swap(p[i], p[rng.below((std::uint32_t)i + 1)]);
    return p;
}

std::vector<long long> sample(const SampleConfig& config) {
    if (config.count < 1) throw std::invalid_argument("sample: count must be >= 1");
    if (config.size < 1) throw std::invalid_argument("sample: size must be >= 1");
    const int n = config.size;

    // Shared read-only evaluator for models that need one.
    std::unique_ptr<StarCompiledFormula> compiled;
    if (config.model == Model::Star ||
        (config.model == Model::PetalumaKnot && config.invariant == Invariant::V3)) {
        const long long m = (long long)(2 * n + 1) * (n - 1);
        const bool pairs_only = config.invariant == Invariant::C2;
        if ((pairs_only && m > 4000) || (!pairs_only && m > 200))
            throw BudgetError("sample: star compilation too large for n=" + std::to_string(n));
        compiled = std::make_unique<StarCompiledFormula>(
            config.invariant == Invariant::C2 ? c2_formula() : v3_formula(), n);
    }
    if (config.model == Model::Grid && config.size > 64)
        throw BudgetError("sample: grid model capped at m=64");

    std::vector<long long> values(config.count);
    parallel_chunks(config.count, config.threads,
                    [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
        std::vector<unsigned char> flags;
        for (std::uint64_t i = lo; i < hi; ++i) {
            SampleRng rng(config.seed, i);
            long long v = 0;
            switch (config.model) {
                case Model::PetalumaKnot: {
                    const Perm p = random_perm(rng, 2 * n + 1);
                    if (config.invariant == Invariant::C2) {
                        v = c2_star_fast(p);
                    } else {
                        v = compiled ? compiled->evaluate_scaled(p) / 2 : 0;
                    }
                    break;
                }
                case Model::PetalumaLink: {
                    PetalLink l;
                    l.n = n;
                    l.perm = random_perm(rng, 4 * n);
                    v = linking_number(l);
                    break;
                }
                case Model::Star: {
                    flags.resize(compiled->crossing_count());
                    for (auto& f : flags) f = (unsigned char)(rng.next() >> 63);
                    const long long s = compiled->evaluate_scaled_flags(flags);
                    const long long den = compiled->denom().convert_to<long long>();
                    v = s / den;  // c2 is integral; v3 integrality asserted in tests
                    break;
                }
                case Model::Grid: {
                    GridDiagram g;
                    g.sigma = random_perm(rng, n);
                    g.pi = random_perm(rng, n);
                    const GaussDiagram d = grid_gauss_diagram(g);
                    v = config.invariant == Invariant::C2 ? c2(d) : v3(d);
                    break;
                }
            }
            values[i] = v;
        }
    });
    return values;
}

Counts3 positivity_ratio(const std::vector<long long>& values) {
    Counts3 c;
    for (long long v : values) {
        if (v > 0)
            ++c.pos;
        else if (v < 0)
            ++c.neg;
        else
            ++c.zero;
    }
    return c;
}

SummaryStats summarize(const std::vector<long long>& values) {
    SummaryStats s;
    s.counts = positivity_ratio(values);
    if (values.empty()) return s;
    double mean = 0;
    for (long long v : values) mean += (double)v;
    mean /= (double)values.size();
    double var = 0;
    for (long long v : values) var += ((double)v - mean) * ((double)v - mean);
    s.mean = mean;
    s.variance = values.size() > 1 ? var / (double)(values.size() - 1) : 0;
    return s;
}

Histogram make_histogram(const std::vector<long long>& values, double scale) {
    if (values.empty() || scale == 0) throw std::invalid_argument("make_histogram: empty input");
    std::vector<double> xs(values.size());
    for (size_t i = 0; i < values.size(); ++i) xs[i] = (double)values[i] / scale;
    std::sort(xs.begin(), xs.end());
    const double iqr = xs[(size_t)(0.75 * (xs.size() - 1))] - xs[(size_t)(0.25 * (xs.size() - 1))];
    const double fd = 2 * iqr / std::cbrt((double)xs.size());
    Histogram h;
    if (fd <= 0 || xs.back() == xs.front()) {
        h.lo = xs.front();
        h.bin_width = 1;
        h.bins.assign(1, values.size());
        return h;
    }
    h.lo = xs.front();
    h.bin_width = fd;
    const size_t nbins = (size_t)std::floor((xs.back() - xs.front()) / fd) + 1;
    h.bins.assign(nbins, 0);
    for (double x : xs) {
        size_t b = (size_t)((x - h.lo) / h.bin_width);
        if (b >= nbins) b = nbins - 1;
        ++h.bins[b];
    }
    return h;
}

double cdf_distance(std::vector<std::pair<double, double>> atoms,
                    const std::function<double(double)>& cdf) {
    std::sort(atoms.begin(), atoms.end());
    double sup = 0, cum = 0;
    for (const auto& [x, p] : atoms) {
        sup = std::max(sup, std::abs(cum - cdf(x)));  // just below the atom
        cum += p;
        sup = std::max(sup, std::abs(cum - cdf(x)));  // at the atom
    }
    return sup;
}

double cdf_distance(const std::vector<long long>& samples, double scale,
                    const std::function<double(double)>& cdf) {
    std::map<long long, std::uint64_t> freq;
    for (long long v : samples) ++freq[v];
    std::vector<std::pair<double, double>> atoms;
    for (const auto& [v, c] : freq)
        atoms.emplace_back((double)v / scale, (double)c / (double)samples.size());
    return cdf_distance(std::move(atoms), cdf);
}

double cdf_distance(const AreaDistribution& dist, double scale,
                    const std::function<double(double)>& cdf) {
    std::vector<std::pair<double, double>> atoms;
    const double total = dist.total.convert_to<double>();
    for (const auto& [v, c] : dist.counts)
        atoms.emplace_back((double)v / scale, c.convert_to<double>() / total);
    return cdf_distance(std::move(atoms), cdf);
}

}  // namespace petaluma
