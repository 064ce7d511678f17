#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "petaluma/linking.hpp"
#include "petaluma/moments.hpp"

namespace petaluma {

enum class Model { PetalumaKnot, PetalumaLink, Star, Grid };

struct SampleConfig {
    Model model = Model::PetalumaKnot;
    Invariant invariant = Invariant::C2;  // PetalumaLink always yields lk
    int size = 2;                         // n for petal/star models, m for grid
    std::uint64_t count = 1;
    std::uint64_t seed = 0;
    unsigned threads = 0;                 // 0 = hardware default
};

// Counter-based generator: each sample index gets its own stream derived from
// (seed, index), so results do not depend on the thread count.
struct SampleRng {
    std::uint64_t state;

    SampleRng(std::uint64_t seed, std::uint64_t index);
    std::uint64_t next();                // splitmix64
    std::uint32_t below(std::uint32_t bound);  // unbiased
};

Perm random_perm(SampleRng& rng, int length);

// Value stream, ordered by sample index.
std::vector<long long> sample(const SampleConfig& config);

struct Counts3 {
    std::uint64_t pos = 0, neg = 0, zero = 0;
};
Counts3 positivity_ratio(const std::vector<long long>& values);

struct SummaryStats {
    double mean = 0, variance = 0;
    Counts3 counts;
};
SummaryStats summarize(const std::vector<long long>& values);

struct Histogram {
    double lo = 0, bin_width = 1;
    std::vector<std::uint64_t> bins;
};
// Freedman-Diaconis width over the normalized values value/scale.
Histogram make_histogram(const std::vector<long long>& values, double scale);

// Sup-norm distance between a discrete distribution (atoms (x, p), p summing
// to 1) and a reference CDF; the Kolmogorov statistic of the comparison.
double cdf_distance(std::vector<std::pair<double, double>> atoms,
                    const std::function<double(double)>& cdf);
// Conveniences for the two shapes we compare against the tanh limit.
double cdf_distance(const std::vector<long long>& samples, double scale,
                    const std::function<double(double)>& cdf);
double cdf_distance(const AreaDistribution& dist, double scale,
                    const std::function<double(double)>& cdf);

}  // namespace petaluma
