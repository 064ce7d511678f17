#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace petaluma {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Thrown when a computation would exceed the configured memory/work budget
// (see PETALUMA_BUDGET_GB).  The CLI maps this to exit code 3.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double budget_gb() {
    if (const char* env = std::getenv("PETALUMA_BUDGET_GB")) {
        char* end = nullptr;
        double v = std::strtod(env, &end);
        if (end != env && v > 0) return v;
    }
    return 4.0;
}

Int factorial(unsigned n);
Int binomial(unsigned n, unsigned k);
Int multinomial(const std::vector<unsigned>& parts);

// Serialize a rational as "p/q" ("p" when q == 1); parse the same format back.
std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);

// Exact Bernoulli numbers B_0..B_max (B_1 = -1/2 convention).
std::vector<Rat> bernoulli_numbers(unsigned max_index);

// Exact polynomial evaluation, coefficients in ascending degree order.
Rat poly_eval(const std::vector<Rat>& coeffs, const Rat& x);

// Lagrange interpolation through (x_i, y_i); returns ascending coefficients.
// Throws std::invalid_argument on duplicate abscissae.
std::vector<Rat> interpolate_polynomial(const std::vector<std::pair<Rat, Rat>>& points);

}  // namespace petaluma
