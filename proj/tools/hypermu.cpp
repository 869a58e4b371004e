// Command line front end: verification suites, scans, boundary limits,
// growth envelope, probes, and the lattice recursion simulator.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hypermu/treesim.hpp"
#include "hypermu/verify.hpp"

namespace {

using namespace hypermu;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct CommonOpts {
    double E = 2.5;
    double eps = 0.5;
    std::uint64_t n = 100000;
    std::uint64_t seed = 42;
    double p = 2.0;
    unsigned jobs = 0;
    std::string out;
    std::string format = "json";
    bool verbose = false;
};

unsigned env_jobs() {
    if (const char* s = std::getenv("HYPERMU_JOBS")) {
        const long v = std::strtol(s, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 0;
}

void emit(const std::string& text, const CommonOpts& opts) {
    if (opts.out.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(opts.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + opts.out);
    f << text << '\n';
}

template <typename Report>
void emit_report(const Report& r, const CommonOpts& opts) {
    emit(opts.format == "csv" ? to_csv(r) : to_json(r, opts.verbose), opts);
}

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_p = false) {
    cmd->add_option("--E", opts.E, "half-width of the spectral rectangle, in (0, 2*sqrt(2))");
    cmd->add_option("--eps", opts.eps, "height of the spectral rectangle");
    cmd->add_option("--n", opts.n, "sample count");
    cmd->add_option("--seed", opts.seed, "random seed");
    if (with_p) cmd->add_option("--p", opts.p, "moment exponent, > 1");
    cmd->add_option("--jobs", opts.jobs, "worker threads (default: HYPERMU_JOBS or all cores)");
    cmd->add_option("--out", opts.out, "output path (default: stdout)");
    cmd->add_option("--format", opts.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_flag("--verbose", opts.verbose, "include per-item rows in reports");
}

Region make_region(const CommonOpts& opts) {
    Region rg;
    rg.E = opts.E;
    rg.eps = opts.eps;
    rg.validate();
    return rg;
}

// --config file.json supplies defaults for any long option not given on the
// command line; explicit flags win.
std::vector<std::string> apply_config(int argc, char** argv) {
    std::vector<std::string> args;
    std::string config_path;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        if (a == "--config" && i + 1 < argc) {
            config_path = argv[++i];
        } else if (a.rfind("--config=", 0) == 0) {
            config_path = a.substr(9);
        } else {
            args.push_back(a);
        }
    }
    if (config_path.empty()) return args;

    std::ifstream f(config_path);
    if (!f) throw std::runtime_error("cannot read config file: " + config_path);
    nlohmann::json j;
    f >> j;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string flag = "--" + it.key();
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) present = true;
        if (present) continue;
        args.push_back(flag);
        if (it.value().is_boolean()) {
            if (!it.value().get<bool>()) args.pop_back();
        } else if (it.value().is_string()) {
            args.push_back(it.value().get<std::string>());
        } else {
            args.push_back(it.value().dump());
        }
    }
    return args;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"hyperbolic contraction verification toolkit"};
    app.require_subcommand(1);
    app.footer("--config file.json supplies defaults for any long flag; explicit flags win.");

    CommonOpts opts;
    opts.jobs = env_jobs();
    bool failed_check = false;

    // identities
    auto* identities = app.add_subcommand("identities", "randomized/exact identity residuals");
    bool exact = false;
    double threshold = 1e-9;
    add_common(identities, opts);
    identities->add_flag("--exact", exact, "verify over Gaussian rationals");
    identities->add_option("--residual-threshold", threshold, "max residual accepted");
    identities->callback([&] {
        IdentitySuiteConfig cfg;
        cfg.n = opts.n;
        cfg.seed = opts.seed;
        cfg.region = make_region(opts);
        cfg.exact = exact;
        cfg.jobs = opts.jobs;
        cfg.threshold = threshold;
        const IdentityReport r = run_identity_suite(cfg);
        emit_report(r, opts);
        failed_check = !r.pass;
    });

    // scan-mu2
    auto* scan2 = app.add_subcommand("scan-mu2", "grid supremum of the one-step factor");
    GridSpec grid2;
    std::string grid_arg;
    add_common(scan2, opts);
    scan2->add_option("--grid", grid_arg, "re,im,lambda_re counts (e.g. 40,40,11)");
    scan2->add_option("--refine", grid2.refinement, "argmax refinement depth");
    scan2->callback([&] {
        grid2.collect_cells = opts.verbose;
        if (!grid_arg.empty()) {
            std::size_t a = 0, b = 0, c = 0;
            if (std::sscanf(grid_arg.c_str(), "%zu,%zu,%zu", &a, &b, &c) != 3)
                throw CLI::ValidationError("--grid expects three comma separated counts");
            grid2.n_re = a;
            grid2.n_im = b;
            grid2.n_lambda_re = c;
        }
        const ScanReport r = scan_mu2(make_region(opts), grid2, opts.jobs);
        emit_report(r, opts);
        failed_check = r.counterexample;
    });

    // scan-mu3
    auto* scan3 = app.add_subcommand("scan-mu3", "near-boundary supremum of the two-level factor");
    GridSpec grid3;
    double im_floor = 1e-2;
    bool with_q = false;
    add_common(scan3, opts, /*with_p=*/true);
    scan3->add_option("--im-floor", im_floor, "starting height of the dyadic schedule");
    scan3->add_option("--im-floor-end", grid3.im_floor_end, "final height of the schedule");
    scan3->add_flag("--with-q", with_q, "draw random potentials instead of q = 0");
    scan3->callback([&] {
        grid3.collect_cells = opts.verbose;
        if (!(opts.p > 1.0)) throw CLI::ValidationError("--p must exceed 1");
        Region rg = make_region(opts);
        rg.im_floor = im_floor;
        const ScanReport r = scan_mu3(opts.p, rg, grid3, !with_q, opts.jobs, opts.seed);
        emit_report(r, opts);
        failed_check = r.counterexample;
    });

    // limit
    auto* limit = app.add_subcommand("limit", "extrapolated boundary limit along a named path");
    std::string path_name = "sigma1";
    double x = 1.0, lambda0 = 0.5, psi = 0.7853981633974483, alpha = 0.0;
    add_common(limit, opts);
    limit->add_option("--path", path_name,
                      "sigma1 | sigma1-iinf | sigma2 | sigma3 | sigma4 | skew:a:b | iinf-check");
    limit->add_option("--x", x, "base boundary point");
    limit->add_option("--lambda0", lambda0, "real part of the spectral parameter");
    limit->add_option("--psi", psi, "approach phase for sigma4/iinf-check");
    limit->add_option("--alpha", alpha, "polar split of (r2, Im lambda) for sigma4/iinf-check");
    limit->callback([&] {
        std::optional<PathSpec> path;
        if (path_name == "sigma1") path = PathSpec::sigma1(x, lambda0);
        else if (path_name == "sigma1-iinf") path = PathSpec::sigma1(x, lambda0, true);
        else if (path_name == "sigma2") path = PathSpec::sigma2(x, lambda0);
        else if (path_name == "sigma3") path = PathSpec::sigma3(x, lambda0);
        else if (path_name == "sigma4") path = PathSpec::sigma4(psi, lambda0, alpha);
        else if (path_name == "iinf-check") path = PathSpec::iinf_check(psi, lambda0, alpha);
        else if (path_name.rfind("skew:", 0) == 0) {
            double a = 1, b = 3;
            if (std::sscanf(path_name.c_str(), "skew:%lf:%lf", &a, &b) != 2)
                throw CLI::ValidationError("skew path spelling is skew:a:b");
            path = PathSpec::skew(a, b, x, lambda0);
        } else {
            throw CLI::ValidationError("unknown path: " + path_name);
        }
        const LimitReport r = limit_along_path(*path);
        emit_report(r, opts);
        failed_check = !r.converged;
    });

    // growth
    auto* growth = app.add_subcommand("growth", "growth envelope of the composed map");
    double q_max = 1e3, c_k = 1.0;
    add_common(growth, opts, /*with_p=*/true);
    growth->add_option("--q-max", q_max, "largest potential magnitude sampled");
    growth->add_option("--c-k", c_k, "compact-core threshold on the cd sum");
    growth->callback([&] {
        if (!(opts.p > 1.0)) throw CLI::ValidationError("--p must exceed 1");
        const EnvelopeReport r =
            growth_envelope(opts.p, make_region(opts), opts.n, opts.seed, q_max, c_k, opts.jobs);
        emit_report(r, opts);
        failed_check = !(r.max_ratio > 0) || !std::isfinite(r.max_ratio) ||
                       r.doubling_change > 0.10;
    });

    // probe
    auto* probe = app.add_subcommand("probe", "convexity and isometry residuals");
    add_common(probe, opts);
    probe->callback([&] {
        const ProbeReport r = convexity_isometry_probe(opts.n, opts.seed);
        emit_report(r, opts);
        failed_check = !r.pass;
    });

    // simulate
    auto* simulate = app.add_subcommand("simulate", "lattice recursion population dynamics");
    SimConfig sim;
    std::string law = "uniform";
    add_common(simulate, opts, /*with_p=*/true);
    simulate->add_option("--population", sim.population, "population size");
    simulate->add_option("--generations", sim.generations, "generation count");
    simulate->add_option("--eta", sim.eta, "Im(lambda) > 0");
    simulate->add_option("--eta-end", sim.eta_end,
                         "final Im(lambda) of a geometric per-generation decay");
    simulate->add_option("--delta", sim.delta, "potential half-width");
    simulate->add_option("--dist", law, "potential law: uniform | bernoulli")
        ->check(CLI::IsMember({"uniform", "bernoulli"}));
    simulate->callback([&] {
        sim.E = opts.E;
        sim.p = opts.p;
        sim.seed = opts.seed;
        sim.jobs = opts.jobs;
        sim.law = law == "bernoulli" ? PotentialLaw::Bernoulli : PotentialLaw::Uniform;
        if (std::abs(sim.E) >= kBandEdge)
            throw CLI::ValidationError("--E must lie inside (-2*sqrt(2), 2*sqrt(2))");
        sim.validate();
        const MomentSeries s = run(sim);
        emit_report(s.to_report(), opts);
        failed_check = s.early_stop;
    });

    // profile
    auto* profile = app.add_subcommand("profile", "fixed point height over the energy band");
    std::string e_range = "0:2.8:15";
    std::string eta_range = "1e-2:1e-8:7";
    add_common(profile, opts);
    profile->add_option("--E-range", e_range, "start:stop:count for the energy sweep");
    profile->add_option("--eta-range", eta_range, "start:stop:count, log spaced");
    profile->callback([&] {
        double a = 0, b = 0;
        std::size_t n = 0;
        if (std::sscanf(e_range.c_str(), "%lf:%lf:%zu", &a, &b, &n) != 3 || n < 2)
            throw CLI::ValidationError("--E-range expects start:stop:count");
        const std::vector<double> energies = linspace(a, b, n);
        if (std::sscanf(eta_range.c_str(), "%lf:%lf:%zu", &a, &b, &n) != 3 || n < 2)
            throw CLI::ValidationError("--eta-range expects start:stop:count");
        const std::vector<double> etas = geomspace(a, b, n);
        emit_report(fixed_point_profile(energies, etas).to_report(), opts);
    });

    try {
        const std::vector<std::string> args = apply_config(argc, argv);
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return kExitPass; // --help
        std::cerr << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return failed_check ? kExitCheckFailed : kExitPass;
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
