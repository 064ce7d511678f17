#include <CLI11.hpp>
#include <json.hpp>

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "petaluma/diagrams.hpp"
#include "petaluma/gauss.hpp"
#include "petaluma/linking.hpp"
#include "petaluma/moments.hpp"
#include "petaluma/sampling.hpp"

using json = nlohmann::json;
using namespace petaluma;

namespace {

std::string g_meta;  // "# meta: <argv...>"

// Write to --out atomically (temp + rename), or to stdout when no --out.
void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    const std::string tmp = out_path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream f(tmp, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + tmp);
        f << content;
        if (!f.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, out_path);
}

Perm parse_perm(const std::string& csv) {
    Perm p;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) p.push_back(std::stoi(tok));
    if (!is_permutation(p)) throw CLI::ValidationError("--perm", "not a permutation of 0..m-1");
    return p;
}

int run_invariant(const std::string& perm_csv, const std::string& inv, const std::string& via) {
    const Perm p = parse_perm(perm_csv);
    long long v;
    if (inv == "lk") {
        v = linking_number(PetalLink::from_perm(p));
    } else {
        const PetalKnot k = PetalKnot::from_perm(p);
        GaussDiagram d = via == "grid" && k.n >= 1 ? grid_gauss_diagram(petal_to_grid(k))
                                                   : star_gauss_diagram(k);
        v = inv == "c2" ? c2(d) : v3(d);
    }
    std::cout << v << "\n";
    return 0;
}

int run_sample(const SampleConfig& cfg, const std::string& format, const std::string& out) {
    const auto values = sample(cfg);
    std::ostringstream os;
    os << g_meta << "\n";
    if (format == "json") {
        const SummaryStats st = summarize(values);
        json j;
        j["model"] = cfg.model == Model::PetalumaKnot   ? "petaluma-knot"
                     : cfg.model == Model::PetalumaLink ? "petaluma-link"
                     : cfg.model == Model::Star         ? "star"
                                                        : "grid";
        j["n"] = cfg.size;
        j["N"] = cfg.count;
        j["seed"] = cfg.seed;
        j["mean"] = st.mean;
        j["variance"] = st.variance;
        j["pos"] = st.counts.pos;
        j["neg"] = st.counts.neg;
        j["zero"] = st.counts.zero;
        os << j.dump(2) << "\n";
    } else if (format == "histogram") {
        const double scale = cfg.model == Model::PetalumaLink ? 4.0 * cfg.size : 1.0;
        const Histogram h = make_histogram(values, scale);
        os << "bin_lo,bin_hi,count\n";
        for (size_t b = 0; b < h.bins.size(); ++b)
            os << h.lo + b * h.bin_width << "," << h.lo + (b + 1) * h.bin_width << ","
               << h.bins[b] << "\n";
    } else {
        os << "value\n";
        for (long long v : values) os << v << "\n";
    }
    emit(out, os.str());
    return 0;
}

int run_lk_dist(int n, const std::string& out) {
    const AreaDistribution dist = exact_lk_distribution(n);
    std::ostringstream os;
    os << g_meta << "\nvalue,count,probability\n";
    for (const auto& [v, c] : dist.counts)
        os << v << "," << c.str() << "," << rat_str(Rat(c, dist.total)) << "\n";
    emit(out, os.str());
    return 0;
}

int run_exact_dist(const std::string& inv, int n, unsigned threads, bool allow_large,
                   const std::string& out) {
    const ValueDistribution dist =
        exact_distribution(inv == "c2" ? Invariant::C2 : Invariant::V3, n, threads, allow_large);
    std::ostringstream os;
    os << g_meta << "\nvalue,count,probability\n";
    for (const auto& [v, c] : dist.counts)
        os << v << "," << c.str() << "," << rat_str(Rat(c, dist.total)) << "\n";
    emit(out, os.str());
    return 0;
}

int run_moments(const std::string& inv, int n_max, unsigned k, unsigned threads, bool allow_large,
                const std::string& out) {
    const Invariant iv = inv == "c2" ? Invariant::C2 : Invariant::V3;
    json j;
    j["invariant"] = inv;
    j["n_range"] = {0, n_max};
    j["k"] = k;
    std::vector<std::pair<Rat, Rat>> points;
    for (int n = 0; n <= n_max; ++n) {
        const Rat m = moment(exact_distribution(iv, n, threads, allow_large), k);
        points.emplace_back(Rat(n), m);
        j["values"].push_back({{"n", n}, {"moment", rat_str(m)}});
    }
    const auto fitted = interpolate_polynomial(points);
    for (const auto& c : fitted) j["fitted_polynomial"].push_back(rat_str(c));

    const PaperPolynomials& pp = paper_polynomials();
    const std::vector<Rat>* ref = nullptr;
    if (iv == Invariant::C2 && k == 1) ref = &pp.e_c2;
    if (iv == Invariant::C2 && k == 2) ref = &pp.e_c2_sq;
    if (iv == Invariant::C2 && k == 3) ref = &pp.e_c2_cu;
    if (iv == Invariant::V3 && k == 2) ref = &pp.e_v3_sq;
    if (ref) {
        // The fit matches the paper if every enumerated moment lies on the
        // paper's polynomial (the fit itself may have lower degree if n_max
        // is small, so compare pointwise).
        bool match = true;
        for (const auto& [x, y] : points)
            if (poly_eval(*ref, x) != y) match = false;
        j["paper_match"] = match;
    }
    std::ostringstream os;
    os << g_meta << "\n" << j.dump(2) << "\n";
    emit(out, os.str());
    return 0;
}

int run_limit_moments(const std::string& inv, unsigned k) {
    if (inv == "lk") {
        std::cout << rat_str(limit_lk_moment(k)) << "\n";
    } else {
        std::cout << rat_str(limit_moment_c2(k)) << "\n";
    }
    return 0;
}

int run_limit_cdf(int grid, double range, const std::string& out) {
    std::ostringstream os;
    os << g_meta << "\nx,density,cdf\n";
    for (int i = 0; i < grid; ++i) {
        const double x = -range + 2 * range * i / (grid - 1);
        os << x << "," << limit_density(x) << "," << limit_cdf(x) << "\n";
    }
    emit(out, os.str());
    return 0;
}

struct CheckList {
    int failures = 0;
    void check(bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    }
};

void verify_formulas(CheckList& c, const std::string& v3_file) {
    const PetalKnot tre = PetalKnot::from_perm({0, 3, 1, 4, 2});
    c.check(c2(star_gauss_diagram(tre)) == 1, "c2(trefoil) == 1");
    c.check(v3(star_gauss_diagram(tre)) == 1, "v3(trefoil) == 1");
    c.check(v3(star_gauss_diagram(mirror(tre))) == -1, "v3(mirror trefoil) == -1");
    for (int n = 2; n <= 6; ++n) {
        Perm p(2 * n + 1);
        for (int i = 0; i < 2 * n + 1; ++i) p[i] = n * i % (2 * n + 1);
        c.check(c2_star_fast(p) == binomial(n + 2, 4).convert_to<long long>(),
                "c2(torus n=" + std::to_string(n) + ") == C(n+2,4)");
    }
    c.check(limit_lk_moment(2) == Rat(1, 12) && limit_lk_moment(4) == Rat(7, 240),
            "Lambda_2 == 1/12, Lambda_4 == 7/240");
    CycleCensus census;
    c.check(limit_moment_c2(1) == Rat(1, 24), "lambda_1 == 1/24");
    c.check(limit_moment_c2(2, &census) == Rat(7, 960), "lambda_2 == 7/960");
    c.check(limit_moment_c2(3) == Rat(5119, 2419200), "lambda_3 == 5119/2419200");
    const Rat e = moment(exact_distribution(Invariant::C2, 2), 1);
    c.check(e == Rat(1, 12), "E[c2] at n=2 == 1/12");
    c.check(star_model_exact_e_c2(2) == star_model_expectation_c2(2),
            "star model E[c2] at n=2: enumeration == (n^3-n)/12");
    if (!v3_file.empty()) {
        std::ifstream f(v3_file);
        if (!f) throw std::runtime_error("cannot read " + v3_file);
        std::stringstream buf;
        buf << f.rdbuf();
        const GaussFormula alt = parse_formula(buf.str());
        bool agree = true;
        std::mt19937 rng(7);
        for (int trial = 0; trial < 40 && agree; ++trial) {
            const int n = 2 + (int)(rng() % 3);
            Perm p(2 * n + 1);
            for (size_t i = 0; i < p.size(); ++i) p[i] = (int)i;
            std::shuffle(p.begin(), p.end(), rng);
            const GaussDiagram d = star_gauss_diagram(PetalKnot::from_perm(p));
            agree = evaluate(alt, d) == evaluate(v3_formula(), d);
        }
        c.check(agree, "formula file agrees with built-in v3 on random knots");
    }
}

void verify_invariance(CheckList& c, unsigned threads) {
    (void)threads;
    std::mt19937 rng(20240817);
    bool pipelines = true, mirrors = true, basepoints = true;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + (int)(rng() % 4);
        Perm p(2 * n + 1);
        for (size_t i = 0; i < p.size(); ++i) p[i] = (int)i;
        std::shuffle(p.begin(), p.end(), rng);
        const PetalKnot k = PetalKnot::from_perm(p);
        const GaussDiagram s = star_gauss_diagram(k);
        const GaussDiagram g = grid_gauss_diagram(petal_to_grid(k));
        if (c2(s) != c2(g) || v3(s) != v3(g)) pipelines = false;
        const GaussDiagram sm = star_gauss_diagram(mirror(k));
        if (c2(sm) != c2(s) || v3(sm) != -v3(s)) mirrors = false;
        if (trial < 25) {
            for (int base = 1; base < 2 * n + 1; ++base) {
                const GaussDiagram r = star_gauss_diagram(k, base);
                if (c2(r) != c2(s) || v3(r) != v3(s)) basepoints = false;
            }
        }
    }
    c.check(pipelines, "star and grid pipelines agree (c2, v3)");
    c.check(mirrors, "mirror symmetry: c2 even, v3 odd");
    c.check(basepoints, "base-point independence of c2 and v3");
}

int run_verify(const std::string& suite, const std::string& v3_file, unsigned threads) {
    CheckList c;
    if (suite == "formulas" || suite == "all") verify_formulas(c, v3_file);
    if (suite == "fourier" || suite == "all") {
        const FourierReport rep = fourier_vanishing_check();
        c.check(rep.diagram_counts.at(4) == 102 && rep.diagram_counts.at(5) == 50 &&
                    rep.diagram_counts.at(6) == 10,
                "arrow diagram counts 102/50/10");
        c.check(rep.passed, "Fourier coefficients vanish (|J|=4,5,6)");
        for (const auto& v : rep.violations) std::cout << "  violation: " << v << "\n";
    }
    if (suite == "invariance" || suite == "all") verify_invariance(c, threads);
    if (c.failures) {
        std::cout << c.failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all checks passed\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::ostringstream meta;
    meta << "# meta:";
    for (int i = 0; i < argc; ++i) meta << " " << argv[i];
    g_meta = meta.str();

    CLI::App app{"Petaluma random knot model: finite type invariants, distributions, limits"};
    app.require_subcommand(1);

    // invariant
    auto* inv_cmd = app.add_subcommand("invariant", "evaluate one invariant of one permutation");
    std::string perm_csv, inv_name = "c2", via = "star";
    inv_cmd->add_option("--perm", perm_csv, "comma-separated heights, e.g. 0,3,1,4,2")->required();
    inv_cmd->add_option("--invariant", inv_name)->check(CLI::IsMember({"c2", "v3", "lk"}));
    inv_cmd->add_option("--via", via)->check(CLI::IsMember({"star", "grid"}));

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo sampling of invariant values");
    SampleConfig cfg;
    std::string model_name = "petaluma-knot", sample_inv = "c2", format = "csv", out;
    sample_cmd->add_option("--model", model_name)
        ->check(CLI::IsMember({"petaluma-knot", "petaluma-link", "star", "grid"}));
    sample_cmd->add_option("--n,--size", cfg.size, "n (petal/star) or m (grid)")->required();
    sample_cmd->add_option("--count,-N", cfg.count)->required();
    sample_cmd->add_option("--seed", cfg.seed);
    sample_cmd->add_option("--invariant", sample_inv)->check(CLI::IsMember({"c2", "v3"}));
    sample_cmd->add_option("--threads", cfg.threads);
    sample_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json", "histogram"}));
    sample_cmd->add_option("--out", out);

    // lk-dist
    auto* lk_cmd = app.add_subcommand("lk-dist", "exact linking number distribution");
    int lk_n = 1;
    lk_cmd->add_option("--n", lk_n)->required();
    lk_cmd->add_option("--out", out);

    // exact-dist
    auto* dist_cmd = app.add_subcommand("exact-dist", "exact invariant distribution over S_{2n+1}");
    int dist_n = 2;
    unsigned threads = 0;
    bool allow_large = false;
    std::string dist_inv = "c2";
    dist_cmd->add_option("--invariant", dist_inv)->check(CLI::IsMember({"c2", "v3"}));
    dist_cmd->add_option("--n", dist_n)->required();
    dist_cmd->add_option("--threads", threads);
    dist_cmd->add_flag("--allow-large", allow_large, "permit the n=6 c2 enumeration");
    dist_cmd->add_option("--out", out);

    // moments
    auto* mom_cmd = app.add_subcommand("moments", "exact moments and fitted polynomial");
    int n_max = 4;
    unsigned mk = 1;
    std::string mom_inv = "c2";
    mom_cmd->add_option("--invariant", mom_inv)->check(CLI::IsMember({"c2", "v3"}));
    mom_cmd->add_option("--n-max", n_max)->required();
    mom_cmd->add_option("--k", mk)->required();
    mom_cmd->add_option("--threads", threads);
    mom_cmd->add_flag("--allow-large", allow_large);
    mom_cmd->add_option("--out", out);

    // limit-moments
    auto* lim_cmd = app.add_subcommand("limit-moments", "limiting moments (lambda_k / Lambda_k)");
    std::string lim_inv = "c2";
    unsigned lk_k = 2;
    lim_cmd->add_option("--invariant", lim_inv)->check(CLI::IsMember({"c2", "lk"}));
    lim_cmd->add_option("--k", lk_k)->required();

    // limit-cdf
    auto* cdf_cmd = app.add_subcommand("limit-cdf", "tanh limit law of lk/4n on a grid");
    int grid = 1001;
    double range = 1.5;
    cdf_cmd->add_option("--grid", grid)->check(CLI::Range(2, 100000000));
    cdf_cmd->add_option("--range", range);
    cdf_cmd->add_option("--out", out);

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "internal consistency suites");
    std::string suite = "all", v3_file;
    ver_cmd->add_option("--suite", suite)
        ->check(CLI::IsMember({"formulas", "fourier", "invariance", "all"}));
    ver_cmd->add_option("--v3-formula", v3_file, "alternate v3 formula file to cross-check");
    ver_cmd->add_option("--threads", threads);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*inv_cmd) return run_invariant(perm_csv, inv_name, via);
        if (*sample_cmd) {
            cfg.model = model_name == "petaluma-knot"   ? Model::PetalumaKnot
                        : model_name == "petaluma-link" ? Model::PetalumaLink
                        : model_name == "star"          ? Model::Star
                                                        : Model::Grid;
            cfg.invariant = sample_inv == "c2" ? Invariant::C2 : Invariant::V3;
            return run_sample(cfg, format, out);
        }
        if (*lk_cmd) return run_lk_dist(lk_n, out);
        if (*dist_cmd) return run_exact_dist(dist_inv, dist_n, threads, allow_large, out);
        if (*mom_cmd) return run_moments(mom_inv, n_max, mk, threads, allow_large, out);
        if (*lim_cmd) return run_limit_moments(lim_inv, lk_k);
        if (*cdf_cmd) return run_limit_cdf(grid, range, out);
        if (*ver_cmd) return run_verify(suite, v3_file, threads);
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
