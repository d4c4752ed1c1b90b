#include "elgin/cli.hpp"

#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "elgin/density.hpp"
#include "elgin/expected.hpp"
#include "elgin/montecarlo.hpp"
#include "elgin/series.hpp"
#include "elgin/variance.hpp"

namespace elgin::cli {

namespace {

using nlohmann::json;

struct Validation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& flag, const std::string& value, const std::string& accepted) {
    if (!ok) throw Validation("flag=" + flag + " value=" + value + " accepted=" + accepted);
}

std::string out_path(const std::string& p) {
    const char* dir = std::getenv("ELGIN_OUT_DIR");
    if (!dir || p.empty() || p.front() == '/') return p;
    return std::string(dir) + "/" + p;
}

void emit(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(out_path(path));
    if (!f) throw std::runtime_error("cannot open output file: " + out_path(path));
    f << payload;
}

struct GridSpec {
    double lo = -2.5, hi = 2.5;
    int count = 401;
};

GridSpec parse_grid(const std::string& s) {
    GridSpec g;
    if (s.empty()) return g;
    char c1, c2;
    std::istringstream in(s);
    if (!(in >> g.lo >> c1 >> g.hi >> c2 >> g.count) || c1 != ':' || c2 != ':' || in.peek() != EOF)
        throw Validation("flag=--grid value=" + s + " accepted=lo:hi:count");
    require(g.hi > g.lo && g.count >= 2, "--grid", s, "hi>lo, count>=2");
    return g;
}

long check_even_n(long n, long max_n, const std::string& flag = "--n") {
    require(n >= 2 && n % 2 == 0 && n <= max_n, flag, std::to_string(n),
            "even integer in [2," + std::to_string(max_n) + "]");
    return n;
}

// ---- expected ----------------------------------------------------------

int cmd_expected(long n, double tau, double alpha, bool has_tau, bool has_alpha,
                 const std::string& route, int order, const std::string& out) {
    check_even_n(n, 10000);
    require(has_tau != has_alpha, "--tau/--alpha", "", "exactly one of the two");
    double tau_eff = tau;
    if (has_alpha) {
        require(alpha > 0.0 && alpha * alpha < static_cast<double>(n), "--alpha",
                std::to_string(alpha), "0 < alpha, alpha^2 < N");
        tau_eff = 1.0 - alpha * alpha / static_cast<double>(n);
    } else {
        require(tau >= 0.0 && tau < 1.0, "--tau", std::to_string(tau), "[0,1)");
    }

    json j;
    j["n"] = n;
    j["tau"] = tau_eff;
    j["alpha"] = has_alpha ? alpha : std::sqrt(static_cast<double>(n) * (1.0 - tau_eff));
    j["route"] = route;
    if (route == "exact") {
        j["value"] = expected::expected_exact(n, tau_eff);
    } else if (route == "residue") {
        require(n <= 2048, "--n", std::to_string(n), "residue route needs N <= 2048");
        j["value"] = expected::expected_exact_residue(n, tau_eff);
    } else if (route == "asymptotic") {
        expected::ExpansionResult r;
        if (has_alpha) {
            require(order >= 2 && order <= 8, "--order", std::to_string(order), "[2,8]");
            r = expected::expected_asymptotic_ah(alpha, n, order);
        } else {
            require(order >= 1 && order <= 5, "--order", std::to_string(order), "[1,5]");
            r = expected::expected_asymptotic_elliptic(tau_eff, n, order);
            if (r.regime_warning)
                std::cerr << "warning: N(1-tau) is small; the fixed-tau expansion is "
                             "outside its regime, consider --alpha\n";
        }
        j["value"] = r.value;
        json terms = json::array();
        for (auto& [label, v] : r.terms) terms.push_back({{"label", label}, {"value", v}});
        j["terms"] = terms;
        j["order"] = r.order;
    } else {
        throw Validation("flag=--route value=" + route + " accepted=exact|residue|asymptotic");
    }
    emit(out, j.dump(2));
    return 0;
}

// ---- density ------------------------------------------------------------

int cmd_density(long n, double tau, double alpha, bool has_tau, bool has_alpha,
                const std::string& route, const std::string& grid_s, std::string format,
                const std::string& out) {
    check_even_n(n, 2048);
    require(has_tau != has_alpha, "--tau/--alpha", "", "exactly one of the two");
    double tau_eff = tau;
    if (has_alpha) {
        require(alpha > 0.0 && alpha * alpha < static_cast<double>(n), "--alpha",
                std::to_string(alpha), "0 < alpha, alpha^2 < N");
        tau_eff = 1.0 - alpha * alpha / static_cast<double>(n);
    } else {
        require(tau > 0.0 && tau <= 1.0, "--tau", std::to_string(tau), "(0,1]");
    }
    GridSpec g = parse_grid(grid_s);
    auto grid = density::make_grid(g.lo, g.hi, g.count);

    density::DensityCurve curve;
    if (route == "exact") {
        curve = density::density_curve_exact(n, tau_eff, grid);
    } else if (route == "limit") {
        double a = has_alpha ? alpha : std::sqrt(static_cast<double>(n) * (1.0 - tau_eff));
        curve = density::density_curve_limit(a, grid);
    } else {
        throw Validation("flag=--route value=" + route + " accepted=exact|limit");
    }

    if (format == "csv") {
        std::ostringstream s;
        s << "x,rho,route\n";
        s.precision(17);
        for (size_t i = 0; i < curve.grid.size(); ++i)
            s << curve.grid[i] << ',' << curve.values[i] << ',' << curve.route << '\n';
        emit(out, s.str());
    } else if (format == "json") {
        json j;
        j["n"] = n;
        j["tau"] = tau_eff;
        j["route"] = curve.route;
        j["x"] = curve.grid;
        j["rho"] = curve.values;
        emit(out, j.dump(2));
    } else {
        throw Validation("flag=--format value=" + format + " accepted=csv|json");
    }
    return 0;
}

// ---- variance -----------------------------------------------------------

int cmd_variance(long n, double tau, double alpha, bool has_tau, bool has_alpha,
                 const std::string& route, const std::string& out) {
    check_even_n(n, 256);
    require(has_tau != has_alpha, "--tau/--alpha", "", "exactly one of the two");
    double tau_eff = tau, alpha_eff = alpha;
    if (has_alpha) {
        require(alpha > 0.0 && alpha * alpha < static_cast<double>(n), "--alpha",
                std::to_string(alpha), "0 < alpha, alpha^2 < N");
        tau_eff = 1.0 - alpha * alpha / static_cast<double>(n);
    } else {
        require(tau > 0.0 && tau < 1.0, "--tau", std::to_string(tau), "(0,1)");
        alpha_eff = std::sqrt(static_cast<double>(n) * (1.0 - tau));
    }

    json j;
    j["n"] = n;
    j["alpha"] = alpha_eff;
    j["tau"] = tau_eff;
    j["route"] = route;
    j["r_alpha"] = variance::r_alpha(alpha_eff);
    double e = expected::expected_exact(n, tau_eff);
    if (route == "quadrature") {
        auto r = variance::variance_exact(n, tau_eff);
        j["v"] = r.v;
        j["e"] = r.e;
        j["ratio"] = r.ratio;
        j["s2_contribution"] = r.s2_contribution;
        j["quad_error"] = r.quad_error;
        j["converged"] = r.converged;
        if (!r.converged)
            std::cerr << "warning: quadrature tolerance not reached, achieved " << r.quad_error
                      << "\n";
    } else if (route == "sum") {
        auto [one, two] = variance::kernel_double_sum(n, alpha_eff);
        double v = 2.0 * e - 2.0 * static_cast<double>(n) * (one + two);
        j["v"] = v;
        j["e"] = e;
        j["ratio"] = v / e;
        j["sum_I"] = one;
        j["sum_II"] = two;
    } else if (route == "limit") {
        double r = variance::r_alpha(alpha_eff);
        j["v"] = r * e;
        j["e"] = e;
        j["ratio"] = r;
    } else {
        throw Validation("flag=--route value=" + route + " accepted=quadrature|sum|limit");
    }
    emit(out, j.dump(2));
    return 0;
}

// ---- sample -------------------------------------------------------------

struct SampleOpts {
    long n = 256;
    double tau = 0.0, alpha = 0.0;
    bool has_tau = false, has_alpha = false;
    bool user_n = false, user_samples = false;
    std::string dist = "gaussian";
    long samples = 256;
    uint64_t seed = 1;
    std::string out, hist_path, scatter_path, preset;
    double hist_lo = -2.2, hist_hi = 2.2;
    int hist_bins = 20;
};

// Presets pre-fill the figure parameters; explicit flags win.
void apply_preset(SampleOpts& o) {
    if (o.preset.empty()) return;
    std::string p = o.preset;
    auto set_n = [&o](long n) {
        if (!o.user_n) o.n = n;
    };
    auto set_samples = [&o](long s) {
        if (!o.user_samples) o.samples = s;
    };
    auto set_alpha = [&o](double a) {
        if (!o.has_tau && !o.has_alpha) {
            o.alpha = a;
            o.has_alpha = true;
        }
    };
    if (p == "fig1") {
        set_n(4096);
        set_samples(1);
        if (!o.has_tau && !o.has_alpha) {
            o.tau = 0.5;
            o.has_tau = true;
        }
        if (o.scatter_path.empty()) o.scatter_path = "scatter.csv";
    } else if (p == "fig2a") {
        set_n(256);
        set_samples(256);
        set_alpha(1.0);
    } else if (p == "fig2b") {
        set_n(64);
        set_samples(100000);
        set_alpha(1.0);
    } else if (p.rfind("fig3:alpha=", 0) == 0) {
        set_n(256);
        set_samples(256);
        set_alpha(std::stod(p.substr(11)));
        if (o.hist_path.empty()) o.hist_path = "hist.csv";
    } else {
        throw Validation("flag=--preset value=" + p + " accepted=fig1|fig2a|fig2b|fig3:alpha=K");
    }
}

int cmd_sample(SampleOpts o) {
    apply_preset(o);
    require(o.n >= 1, "--n", std::to_string(o.n), ">= 1");
    require(o.samples >= 1, "--samples", std::to_string(o.samples), ">= 1");
    if (!o.has_tau && !o.has_alpha) {
        o.has_alpha = true;  // default regime
        if (o.alpha == 0.0) o.alpha = 1.0;
    }
    require(o.has_tau != o.has_alpha, "--tau/--alpha", "", "at most one of the two");
    double tau_eff = o.tau;
    if (o.has_alpha) {
        require(o.alpha > 0.0 && o.alpha * o.alpha < static_cast<double>(o.n), "--alpha",
                std::to_string(o.alpha), "0 < alpha, alpha^2 < N");
        tau_eff = 1.0 - o.alpha * o.alpha / static_cast<double>(o.n);
    } else {
        require(tau_eff >= 0.0 && tau_eff <= 1.0, "--tau", std::to_string(tau_eff), "[0,1]");
    }

    mc::EnsembleSpec spec{o.n, tau_eff, mc::parse_dist(o.dist), o.seed};
    mc::HistogramSpec hist{o.hist_lo, o.hist_hi, o.hist_bins};
    bool want_scatter = !o.scatter_path.empty();
    auto stats = mc::run_experiment(spec, o.samples, hist, want_scatter);

    json j;
    j["n"] = o.n;
    j["tau"] = tau_eff;
    if (o.has_alpha) j["alpha"] = o.alpha;
    j["dist"] = o.dist;
    j["samples"] = o.samples;
    j["seed"] = o.seed;
    j["count_mean"] = stats.count_mean;
    j["count_variance"] = stats.count_variance;
    j["count_stderr"] = stats.count_stderr;
    j["total_real"] = stats.total_real;
    j["parity_ok"] = stats.parity_ok;
    if (want_scatter)
        j["inside_ellipse_fraction"] = mc::ellipse_inside_fraction(stats.scatter, tau_eff);
    emit(o.out, j.dump(2));

    if (!o.hist_path.empty()) {
        std::ostringstream s;
        s << "bin_lo,bin_hi,count\n";
        s.precision(17);
        double w = (hist.hi - hist.lo) / hist.bins;
        for (int b = 0; b < hist.bins; ++b)
            s << (hist.lo + b * w) << ',' << (hist.lo + (b + 1) * w) << ',' << stats.hist_counts[b]
              << '\n';
        emit(o.hist_path, s.str());
    }
    if (want_scatter) {
        std::ostringstream s;
        s << "re,im\n";
        s.precision(17);
        for (auto [re, im] : stats.scatter) s << re << ',' << im << '\n';
        emit(o.scatter_path, s.str());
    }
    return 0;
}

// ---- verify -------------------------------------------------------------

int cmd_verify(const std::string& suite) {
    require(suite == "identities", "--suite", suite, "identities");
    long failures = 0;
    auto report = [&failures](const std::string& name, bool ok) {
        std::cout << name << ": " << (ok ? "exact" : "FAIL") << "\n";
        if (!ok) ++failures;
    };

    {
        bool ok = true;
        for (long k = 0; k <= 30 && ok; ++k) {
            auto q = series::gen_q(k, static_cast<int>(k + 1));
            Rat two_pow(1);
            for (long i = 0; i <= k; ++i) two_pow *= 2;
            ok = q[0] == Rat(1) && q[1] == rat_frac(k + 1, 2) && q[k + 1] == 1 / two_pow;
        }
        report("q anchors (k <= 30)", ok);
    }
    {
        bool ok = true;
        for (long n : {4L, 8L, 12L, 16L})
            for (long k = 0; k <= n - 2 && ok; ++k)
                ok = series::residue_a(n, k) == series::residue_a_closed(n, k);
        report("residue duality for a_{N,k} (N in {4,8,12,16})", ok);
    }
    {
        bool ok = true;
        for (long n : {8L, 12L, 16L})
            for (long k = 0; k <= 6 && ok; ++k)
                for (long nn = 0; nn <= 3 && ok; ++nn)
                    ok = series::residue_a_n(n, k, nn) == series::residue_a_n_closed(n, k, nn);
        report("double-residue duality for a_{N,k}^n (N in {8,12,16})", ok);
    }
    {
        auto a = series::a_coefficients(40);
        bool ok = true;
        for (long k = 0; k <= 40 && ok; ++k) ok = a[k] == series::a_closed(k);
        report("a_k recombination (k <= 40)", ok);
    }
    {
        bool ok = true;
        for (long k = 0; k <= 200 && ok; ++k) ok = series::comb_identity(k);
        report("central binomial double-factorial identity (k <= 200)", ok);
    }
    {
        bool ok = expected::a_l_tau_exact(1, Rat(0)) == Rat(-3, 8) &&
                  expected::a_l_tau_exact(2, Rat(0)) == Rat(-3, 128) &&
                  expected::a_l_tau_exact(3, Rat(0)) == Rat(27, 1024) &&
                  expected::a_l_tau_exact(4, Rat(0)) == Rat(499, 32768);
        report("elliptic expansion coefficients at tau = 0", ok);
    }
    return failures == 0 ? 0 : 1;
}

// ---- coeffs -------------------------------------------------------------

int cmd_coeffs(const std::string& kind, long k, int max, const std::string& tau_s, double alpha,
               const std::string& out) {
    series::CoefficientTable t;
    t.kind = kind;
    require(max >= 0, "--max", std::to_string(max), ">= 0");
    if (kind == "q" || kind == "p_hat" || kind == "p") {
        require(k >= 0, "--k", std::to_string(k), ">= 0");
        t.index = k;
        t.rats = (kind == "q")       ? series::gen_q(k, max)
                 : (kind == "p_hat") ? series::gen_p_hat(k, max)
                                     : series::gen_p(k, max);
    } else if (kind == "a_l") {
        require(max >= 1, "--max", std::to_string(max), ">= 1");
        Rat tau = rat_parse(tau_s.empty() ? "0" : tau_s);
        require(tau >= 0 && tau < 1, "--tau", tau_s, "[0,1) as rational p/q or decimal");
        for (int l = 1; l <= max; ++l) t.rats.push_back(expected::a_l_tau_exact(l, tau));
    } else if (kind == "c_l") {
        require(alpha > 0.0 && alpha <= 50.0, "--alpha", std::to_string(alpha), "(0,50]");
        require(max >= 1 && max <= 8, "--max", std::to_string(max), "[1,8]");
        for (int l = 1; l <= max; ++l) t.reals.push_back(expected::c_l_alpha(l, alpha));
    } else if (kind == "d_s") {
        require(alpha > 0.0 && alpha <= 50.0, "--alpha", std::to_string(alpha), "(0,50]");
        for (int s = 0; s <= max; ++s) t.reals.push_back(expected::d_coeff(s, alpha));
    } else if (kind == "a_k") {
        require(max <= 60, "--max", std::to_string(max), "<= 60");
        t.rats = series::a_coefficients(max);
    } else if (kind == "a_k_n") {
        require(k >= 0, "--k", std::to_string(k), ">= 0");
        t.index = k;
        for (long nn = 0; nn <= max; ++nn) t.rats.push_back(series::a_limit(k, nn));
    } else {
        throw Validation("flag=--kind value=" + kind + " accepted=q|p_hat|p|a_l|c_l|d_s|a_k|a_k_n");
    }
    emit(out, t.to_json_string());
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"real eigenvalues of real elliptic Ginibre matrices"};
    app.require_subcommand(1);

    int threads = 0;
    if (const char* t = std::getenv("ELGIN_THREADS")) threads = std::atoi(t);
    app.add_option("--threads", threads, "worker thread hint (default: OpenMP)");

    // expected
    auto* exp_cmd = app.add_subcommand("expected", "expected number of real eigenvalues");
    long e_n = 2;
    double e_tau = 0.0, e_alpha = 0.0;
    std::string e_route = "exact", e_out;
    int e_order = 3;
    exp_cmd->add_option("--n", e_n, "matrix size (even)")->required();
    auto* e_tau_opt = exp_cmd->add_option("--tau", e_tau, "non-Hermiticity parameter in [0,1)");
    auto* e_alpha_opt = exp_cmd->add_option("--alpha", e_alpha, "almost-Hermitian parameter");
    e_tau_opt->excludes(e_alpha_opt);
    exp_cmd->add_option("--route", e_route, "exact|residue|asymptotic");
    exp_cmd->add_option("--order", e_order, "expansion order for --route asymptotic");
    exp_cmd->add_option("--out", e_out, "output path (default stdout)");

    // density
    auto* den_cmd = app.add_subcommand("density", "density of real eigenvalues");
    long d_n = 256;
    double d_tau = 0.0, d_alpha = 0.0;
    std::string d_route = "exact", d_grid = "-2.5:2.5:401", d_out, d_format = "csv";
    den_cmd->add_option("--n", d_n, "matrix size (even, <= 2048)")->required();
    auto* d_tau_opt = den_cmd->add_option("--tau", d_tau, "non-Hermiticity parameter in (0,1]");
    auto* d_alpha_opt = den_cmd->add_option("--alpha", d_alpha, "almost-Hermitian parameter");
    d_tau_opt->excludes(d_alpha_opt);
    den_cmd->add_option("--route", d_route, "exact|limit");
    den_cmd->add_option("--grid", d_grid, "lo:hi:count");
    den_cmd->add_option("--format", d_format, "csv|json");
    den_cmd->add_option("--out", d_out, "output path, or literal csv/json for stdout");

    // variance
    auto* var_cmd = app.add_subcommand("variance", "variance of the real-eigenvalue count");
    long v_n = 64;
    double v_tau = 0.0, v_alpha = 0.0;
    std::string v_route = "quadrature", v_out;
    var_cmd->add_option("--n", v_n, "matrix size (even, <= 256)")->required();
    auto* v_tau_opt = var_cmd->add_option("--tau", v_tau, "non-Hermiticity parameter in (0,1)");
    auto* v_alpha_opt = var_cmd->add_option("--alpha", v_alpha, "almost-Hermitian parameter");
    v_tau_opt->excludes(v_alpha_opt);
    var_cmd->add_option("--route", v_route, "quadrature|sum|limit");
    var_cmd->add_option("--out", v_out, "output path (default stdout)");

    // sample
    auto* smp_cmd = app.add_subcommand("sample", "Monte Carlo sampling of the ensemble");
    SampleOpts s;
    smp_cmd->add_option("--n", s.n, "matrix size");
    auto* s_tau_opt = smp_cmd->add_option("--tau", s.tau, "non-Hermiticity parameter in [0,1]");
    auto* s_alpha_opt = smp_cmd->add_option("--alpha", s.alpha, "almost-Hermitian parameter");
    s_tau_opt->excludes(s_alpha_opt);
    smp_cmd->add_option("--dist", s.dist, "gaussian|uniform|rademacher");
    smp_cmd->add_option("--samples", s.samples, "number of samples");
    smp_cmd->add_option("--seed", s.seed, "RNG seed");
    smp_cmd->add_option("--out", s.out, "stats JSON path (default stdout)");
    smp_cmd->add_option("--hist", s.hist_path, "histogram CSV path");
    smp_cmd->add_option("--scatter", s.scatter_path, "complex-eigenvalue scatter CSV path");
    smp_cmd->add_option("--hist-lo", s.hist_lo, "histogram lower edge");
    smp_cmd->add_option("--hist-hi", s.hist_hi, "histogram upper edge");
    smp_cmd->add_option("--hist-bins", s.hist_bins, "histogram bin count");
    smp_cmd->add_option("--preset", s.preset, "fig1|fig2a|fig2b|fig3:alpha=K");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run the exact-identity suite");
    std::string suite = "identities";
    ver_cmd->add_option("--suite", suite, "identities");

    // coeffs
    auto* cf_cmd = app.add_subcommand("coeffs", "export coefficient tables as JSON");
    std::string c_kind = "q", c_tau, c_out;
    long c_k = 0;
    int c_max = 8;
    double c_alpha_v = 1.0;
    cf_cmd->add_option("--kind", c_kind, "q|p_hat|p|a_l|c_l|d_s|a_k|a_k_n")->required();
    cf_cmd->add_option("--k", c_k, "row index for q/p_hat/p/a_k_n");
    cf_cmd->add_option("--max", c_max, "highest index to emit");
    cf_cmd->add_option("--tau", c_tau, "tau as p/q or decimal (a_l)");
    cf_cmd->add_option("--alpha", c_alpha_v, "alpha (c_l, d_s)");
    cf_cmd->add_option("--out", c_out, "output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::string msg = e.what();
        for (auto& ch : msg)
            if (ch == '\n') ch = ' ';
        std::cerr << "error: parse " << msg << "\n";
        return 2;
    }

    if (threads > 0) omp_set_num_threads(threads);

    try {
        if (*exp_cmd)
            return cmd_expected(e_n, e_tau, e_alpha, static_cast<bool>(*e_tau_opt),
                                static_cast<bool>(*e_alpha_opt), e_route, e_order, e_out);
        if (*den_cmd) {
            if (d_out == "csv" || d_out == "json") {  // `--out csv` shorthand
                d_format = d_out;
                d_out.clear();
            }
            return cmd_density(d_n, d_tau, d_alpha, static_cast<bool>(*d_tau_opt),
                               static_cast<bool>(*d_alpha_opt), d_route, d_grid, d_format, d_out);
        }
        if (*var_cmd)
            return cmd_variance(v_n, v_tau, v_alpha, static_cast<bool>(*v_tau_opt),
                                static_cast<bool>(*v_alpha_opt), v_route, v_out);
        if (*smp_cmd) {
            s.has_tau = static_cast<bool>(*s_tau_opt);
            s.has_alpha = static_cast<bool>(*s_alpha_opt);
            s.user_n = smp_cmd->count("--n") > 0;
            s.user_samples = smp_cmd->count("--samples") > 0;
            return cmd_sample(s);
        }
        if (*ver_cmd) return cmd_verify(suite);
        if (*cf_cmd) return cmd_coeffs(c_kind, c_k, c_max, c_tau, c_alpha_v, c_out);
    } catch (const Validation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: invalid-argument detail=" << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: runtime detail=" << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

int run(int argc, char** argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args);
}

}  // namespace elgin::cli
