// deltalab: command-line surface over the divisor-error-term experiments.
// One subcommand per verification object; every run emits deterministic CSV
// (stdout by default, atomic file write with --out).
//
// Exit codes: 0 success, 2 usage, 3 precondition refusal, 4 budget exceeded,
// 5 checkpoint corruption.

#include <CLI11.hpp>

#include <charconv>
#include <complex>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "deltalab/dispatch.hpp"
#include "deltalab/errors.hpp"
#include "deltalab/expsums.hpp"
#include "deltalab/format.hpp"
#include "deltalab/identities.hpp"
#include "deltalab/moments.hpp"
#include "deltalab/parallel.hpp"
#include "deltalab/sieves.hpp"
#include "deltalab/spacing.hpp"
#include "deltalab/suites.hpp"
#include "deltalab/summatory.hpp"
#include "deltalab/voronoi.hpp"

namespace {

using namespace deltalab;

struct Options {
    std::string out_path;
    int threads = 0;
    bool no_quarter = false;
    u64 seed = suites::kDefaultSeed;

    // numeric parameters, shared across subcommands where names coincide
    double x_real = 1.0;
    u64 x_int = 1;
    u64 x_max = 1;
    u64 t = 2;
    u64 n_trunc = 1;
    u64 samples = 1;
    u64 n_max = 1;
    unsigned k = 1;
    double z = 1.0;
    u64 m = 1, m1 = 1, m2 = 1, h = 1, l = 1, n1 = 1, n2 = 1, n = 1;
    double alpha = 0.5, beta = 0.5, tol = 0.0, delta = 0.0, big_x = 1.0;
    u64 h_max = 1;
    u64 n_terms = 1000;
    u64 trials = 100;
    u64 count = 100;
    double cap = 1.0;
    u64 segment_size = sieves::kDefaultSegmentCapacity;
    std::string checkpoint;
    std::string grid_spec;
    bool grid_given = false;
    std::string mode = "ones";
    double stats_t = 0.0;

    bool quarter() const { return !no_quarter; }
};

std::string run_delta(const Options& o) {
    i64 big_d = summatory::divisor_summatory(static_cast<u64>(std::floor(o.x_real)));
    double d = summatory::delta_from_big_d(big_d, o.x_real, o.quarter());
    std::string csv = "x,D,delta\n";
    csv += format_double(o.x_real) + "," + format_i64(big_d) + "," + format_double(d) + "\n";
    return csv;
}

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<u64> parse_grid(const std::string& spec) {
    std::vector<u64> grid;
    std::size_t start = 0;
    while (start < spec.size()) {
        std::size_t comma = spec.find(',', start);
        if (comma == std::string::npos) comma = spec.size();
        std::string field = spec.substr(start, comma - start);
        u64 v = 0;
        auto res = std::from_chars(field.data(), field.data() + field.size(), v);
        if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
            throw usage_error("--grid expects comma-separated integers, got '" + field + "'");
        grid.push_back(v);
        start = comma + 1;
    }
    if (grid.empty()) throw usage_error("--grid must name at least one point");
    return grid;
}

std::string run_sweep(const Options& o) {
    std::vector<u64> grid = o.grid_given ? parse_grid(o.grid_spec)
                                         : moments::default_sweep_grid(o.x_max);
    auto report =
        moments::prime_moment_sweep(grid, o.segment_size, o.checkpoint, o.quarter());
    return moments::sweep_csv(report);
}

std::string run_mean_square(const Options& o) {
    double integral = moments::continuous_mean_square(o.t, o.quarter());
    double main = zeta_constant_C() / (6.0 * M_PI * M_PI) *
                  std::pow(static_cast<double>(o.t), 1.5);
    std::string csv = "T,integral,main,ratio\n";
    csv += format_u64(o.t) + "," + format_double(integral) + "," + format_double(main) +
           "," + format_double(integral / main) + "\n";
    return csv;
}

std::string run_discrete_mean_square(const Options& o) {
    double d2 = moments::discrete_mean_square(o.x_int, o.quarter());
    std::string csv = "x,D2\n";
    csv += format_u64(o.x_int) + "," + format_double(d2) + "\n";
    return csv;
}

std::string run_furuya(const Options& o) {
    auto r = moments::furuya_check(o.x_int);
    std::string csv = "x,D2,C2,residual,normalized\n";
    csv += format_u64(o.x_int) + "," + format_double(r.d2) + "," + format_double(r.c2) +
           "," + format_double(r.residual) + "," + format_double(r.normalized) + "\n";
    return csv;
}

std::string run_shifted_moment(const Options& o) {
    auto r = moments::shifted_delta_moment(o.t, o.h_max, o.quarter());
    std::string csv = "T,Hmax,value,normalized\n";
    csv += format_u64(o.t) + "," + format_u64(o.h_max) + "," + format_double(r.value) +
           "," + format_double(r.normalized) + "\n";
    return csv;
}

std::string run_voronoi(const Options& o) {
    if (o.stats_t > 0.0) {
        auto stats = voronoi::voronoi_residual_stats(static_cast<u64>(o.stats_t), o.n_trunc,
                                                     o.samples, o.quarter());
        std::string csv = "T,N,samples,sup_ratio_max,mean_first_power,mean_square\n";
        csv += format_u64(static_cast<u64>(o.stats_t)) + "," + format_u64(o.n_trunc) + "," +
               format_u64(o.samples) + "," + format_double(stats.sup_ratio_max) + "," +
               format_double(stats.mean_first_power) + "," +
               format_double(stats.mean_square) + "\n";
        return csv;
    }
    auto e = voronoi::delta2(o.x_real, o.n_trunc, o.quarter());
    double total = summatory::delta(o.x_real, o.quarter());
    std::string csv = "x,N,delta,delta1,delta2,sup_ratio\n";
    csv += format_double(o.x_real) + "," + format_u64(o.n_trunc) + "," +
           format_double(total) + "," + format_double(e.delta1) + "," +
           format_double(e.delta2) + "," + format_double(e.sup_ratio) + "\n";
    return csv;
}

std::string run_hb_verify(const Options& o) {
    double dev = identities::verify_heath_brown(o.n_max, o.k, o.z);
    std::string csv = "n_max,k,z,max_deviation\n";
    csv += format_u64(o.n_max) + "," + format_u64(o.k) + "," + format_double(o.z) + "," +
           format_double(dev) + "\n";
    return csv;
}

std::string run_spacing(const Options& o) {
    spacing::SpacingInstance inst{o.m1, o.m2, o.h, o.alpha, o.beta, o.tol};
    u64 count = spacing::count_spacing_B(inst);
    double bound = spacing::proposition_bound(inst);
    std::string csv = "M1,M2,H,alpha,beta,tol,count,bound,ratio\n";
    csv += format_u64(o.m1) + "," + format_u64(o.m2) + "," + format_u64(o.h) + "," +
           format_double(o.alpha) + "," + format_double(o.beta) + "," +
           format_double(o.tol) + "," + format_u64(count) + "," + format_double(bound) +
           "," + format_double(static_cast<double>(count) / bound) + "\n";
    return csv;
}

std::string run_quadruplets(const Options& o) {
    u64 count = spacing::count_quadruplets_N(o.m, o.delta, o.alpha);
    double M = static_cast<double>(o.m);
    double bound = M * M + o.delta * M * M * M * M;  // Robert-Sargos with eps = 0
    std::string csv = "M,delta,alpha,count,bound,ratio\n";
    csv += format_u64(o.m) + "," + format_double(o.delta) + "," + format_double(o.alpha) +
           "," + format_u64(count) + "," + format_double(bound) + "," +
           format_double(static_cast<double>(count) / bound) + "\n";
    return csv;
}

std::string run_close_pairs(const Options& o) {
    u64 count = spacing::count_close_pairs(o.n, o.big_x);
    double bound = (1.0 + 2.0 * std::sqrt(2.0 * static_cast<double>(o.n)) / o.big_x) *
                   static_cast<double>(o.n);
    std::string csv = "N,X,count,bound,ratio\n";
    csv += format_u64(o.n) + "," + format_double(o.big_x) + "," + format_u64(count) + "," +
           format_double(bound) + "," + format_double(static_cast<double>(count) / bound) +
           "\n";
    return csv;
}

std::string run_pair_proximity(const Options& o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> point(0.0, 100.0);
    std::string csv = "trial,lhs,rhs,ok\n";
    for (u64 trial = 0; trial < o.trials; ++trial) {
        std::vector<double> a(o.count), b(o.count);
        for (double& v : a) v = point(rng);
        for (double& v : b) v = point(rng);
        auto r = spacing::pair_proximity_check(a, b, o.delta);
        csv += format_u64(trial) + "," + format_u64(r.lhs) + "," + format_double(r.rhs) +
               "," + (static_cast<double>(r.lhs) <= r.rhs ? "1" : "0") + "\n";
    }
    return csv;
}

std::string run_t_sum(const Options& o) {
    auto r = spacing::T_sum(o.n1, o.n2, o.alpha, o.beta);
    std::string csv = "N1,N2,alpha,beta,value,bound,ratio\n";
    csv += format_u64(o.n1) + "," + format_u64(o.n2) + "," + format_double(o.alpha) + "," +
           format_double(o.beta) + "," + format_double(r.value) + "," +
           format_double(r.bound) + "," + format_double(r.bound_ratio) + "\n";
    return csv;
}

std::string run_expsum_suite(const Options& o) {
    auto rows = suites::expsum_suite(o.seed);
    // the seed rides along so a violating run can be replayed exactly
    std::string csv = "check,instances,violations,worst,seed\n";
    for (const auto& r : rows)
        csv += r.check + "," + format_u64(r.instances) + "," + format_u64(r.violations) +
               "," + format_double(r.worst) + "," + format_u64(o.seed) + "\n";
    return csv;
}

std::string run_type_sum(const Options& o) {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
    std::vector<expsums::cd> xi(o.h), eta;
    for (auto& v : xi) {
        double a = angle(rng);
        v = {o.cap * std::cos(a), o.cap * std::sin(a)};
    }
    expsums::EtaMode mode;
    if (o.mode == "ones") {
        mode = expsums::EtaMode::ones;
    } else if (o.mode == "log") {
        mode = expsums::EtaMode::log;
    } else {
        mode = expsums::EtaMode::arbitrary;
        eta.resize(o.l);
        for (auto& v : eta) {
            double a = angle(rng);
            v = {std::cos(a), std::sin(a)};
        }
    }
    auto inst = expsums::make_type_sum(o.m1, o.m2, o.h, o.l, mode, std::move(xi),
                                       std::move(eta), o.cap);
    auto r = expsums::type_sum_eval(inst);
    std::string csv = "M1,M2,H,L,x,mode,abs_value,bound,ratio\n";
    csv += format_u64(o.m1) + "," + format_u64(o.m2) + "," + format_u64(o.h) + "," +
           format_u64(o.l) + "," + format_u64(r.x) + "," + o.mode + "," +
           format_double(r.abs_value) + "," + format_double(r.bound) + "," +
           format_double(r.ratio) + "\n";
    return csv;
}

std::string run_constants(const Options& o) {
    auto r = moments::constant_C(o.n_terms);
    std::string csv =
        "n_terms,value,partial_sum,tail_bound,oracle,difference,c_over_6pi2,c_over_4pi2\n";
    csv += format_u64(o.n_terms) + "," + format_double(r.value) + "," +
           format_double(r.partial_sum) + "," + format_double(r.tail_bound) + "," +
           format_double(r.oracle) + "," + format_double(r.difference) + "," +
           format_double(r.oracle / (6.0 * M_PI * M_PI)) + "," +
           format_double(r.oracle / (4.0 * M_PI * M_PI)) + "\n";
    return csv;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"divisor-error-term experiments"};
    app.set_help_flag("--help", "print usage");  // frees -h / --h for block sizes
    app.require_subcommand(1);
    app.fallthrough();
    app.option_defaults()->ignore_case(false);
    app.add_option("--threads", o.threads, "worker threads (0 = machine parallelism)");
    app.add_option("--out", o.out_path, "write CSV atomically to this path");
    app.add_flag("--no-quarter", o.no_quarter, "drop the -1/4 term of Delta");
    app.add_option("--seed", o.seed, "seed for randomized subcommands");

    auto* c_delta = app.add_subcommand("delta", "D(x) and Delta(x) at a point");
    c_delta->add_option("--x", o.x_real, "evaluation point")->required()->check(CLI::Range(1.0, 4e18));

    auto* c_sweep = app.add_subcommand("sweep", "prime moment sweep S(x) vs (C/4pi^2) sum sqrt(p)");
    c_sweep->add_option("--x-max", o.x_max, "sweep bound")->required();
    c_sweep->add_option("--grid", o.grid_spec, "comma-separated grid (default decades x{1,2,5})");
    c_sweep->add_option("--segment-size", o.segment_size, "sieve segment size");
    c_sweep->add_option("--checkpoint", o.checkpoint, "append-only checkpoint CSV");

    auto* c_ms = app.add_subcommand("mean-square", "continuous mean square of Delta");
    c_ms->add_option("--t", o.t, "upper integration bound")->required();

    auto* c_dms = app.add_subcommand("discrete-mean-square", "sum of Delta^2 over integers");
    c_dms->add_option("--x", o.x_int, "upper bound")->required();

    auto* c_fur = app.add_subcommand("furuya", "discrete-vs-continuous difference formula");
    c_fur->add_option("--x", o.x_int, "evaluation point")->required();

    auto* c_shift = app.add_subcommand("shifted-moment", "integer shifted-Delta moment surrogate");
    c_shift->add_option("--t", o.t, "dyadic base")->required();
    c_shift->add_option("--h-max", o.h_max, "largest shift")->required();

    auto* c_vor = app.add_subcommand("voronoi", "truncated Voronoi expansion and residual");
    c_vor->add_option("--x", o.x_real, "evaluation point");
    c_vor->add_option("--n-trunc", o.n_trunc, "truncation N")->required();
    c_vor->add_option("--stats-t", o.stats_t, "residual stats over [T, 2T]");
    c_vor->add_option("--samples", o.samples, "grid points for stats");

    auto* c_hb = app.add_subcommand("hb-verify", "Heath-Brown identity exact verification");
    c_hb->add_option("--n-max", o.n_max, "verify all n <= n_max")->required();
    c_hb->add_option("--k", o.k, "identity order")->required();
    c_hb->add_option("--z", o.z, "cutoff z")->required();

    auto* c_spc = app.add_subcommand("spacing", "sixtuplet count B and its three-term bound");
    c_spc->add_option("--m1", o.m1)->required();
    c_spc->add_option("--m2", o.m2)->required();
    c_spc->add_option("--h", o.h)->required();
    c_spc->add_option("--alpha", o.alpha)->required();
    c_spc->add_option("--beta", o.beta)->required();
    c_spc->add_option("--tol", o.tol)->required();

    auto* c_quad = app.add_subcommand("quadruplets", "Robert-Sargos quadruplet count");
    c_quad->add_option("--m", o.m)->required();
    c_quad->add_option("--delta", o.delta)->required();
    c_quad->add_option("--alpha", o.alpha)->required();

    auto* c_cp = app.add_subcommand("close-pairs", "Iwaniec-Sarkozy close pair count");
    c_cp->add_option("--n", o.n)->required();
    c_cp->add_option("--x", o.big_x, "the X of the window (2X)^{-1}")->required();

    auto* c_pp = app.add_subcommand("pair-proximity", "randomized pair-proximity inequality");
    c_pp->add_option("--count", o.count, "list length");
    c_pp->add_option("--delta", o.delta)->required();
    c_pp->add_option("--trials", o.trials);

    auto* c_ts = app.add_subcommand("t-sum", "T(N1,N2,alpha,beta) exact sum vs bound");
    c_ts->add_option("--n1", o.n1)->required();
    c_ts->add_option("--n2", o.n2)->required();
    c_ts->add_option("--alpha", o.alpha)->required();
    c_ts->add_option("--beta", o.beta)->required();

    auto* c_es = app.add_subcommand("expsum-suite", "randomized exponential-sum inequality suite");

    auto* c_type = app.add_subcommand("type-sum", "Type I / Type II bilinear sum vs bound");
    c_type->add_option("--m1", o.m1)->required();
    c_type->add_option("--m2", o.m2)->required();
    c_type->add_option("--h", o.h)->required();
    c_type->add_option("--l", o.l)->required();
    c_type->add_option("--mode", o.mode, "ones | log | arbitrary")
        ->check(CLI::IsMember({"ones", "log", "arbitrary"}));
    c_type->add_option("--cap", o.cap, "coefficient cap for xi");

    auto* c_const = app.add_subcommand("constants", "the constant C and its oracle");
    c_const->add_option("--n-terms", o.n_terms, "series terms")->required();

    for (auto* sub : app.get_subcommands([](CLI::App*) { return true; }))
        sub->set_help_flag("--help", "print usage");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        deltalab::set_thread_count(o.threads);
        o.grid_given = c_sweep->count("--grid") > 0;
        std::string csv;
        if (app.got_subcommand(c_delta)) csv = run_delta(o);
        else if (app.got_subcommand(c_sweep)) csv = run_sweep(o);
        else if (app.got_subcommand(c_ms)) csv = run_mean_square(o);
        else if (app.got_subcommand(c_dms)) csv = run_discrete_mean_square(o);
        else if (app.got_subcommand(c_fur)) csv = run_furuya(o);
        else if (app.got_subcommand(c_shift)) csv = run_shifted_moment(o);
        else if (app.got_subcommand(c_vor)) csv = run_voronoi(o);
        else if (app.got_subcommand(c_hb)) csv = run_hb_verify(o);
        else if (app.got_subcommand(c_spc)) csv = run_spacing(o);
        else if (app.got_subcommand(c_quad)) csv = run_quadruplets(o);
        else if (app.got_subcommand(c_cp)) csv = run_close_pairs(o);
        else if (app.got_subcommand(c_pp)) csv = run_pair_proximity(o);
        else if (app.got_subcommand(c_ts)) csv = run_t_sum(o);
        else if (app.got_subcommand(c_es)) csv = run_expsum_suite(o);
        else if (app.got_subcommand(c_type)) csv = run_type_sum(o);
        else if (app.got_subcommand(c_const)) csv = run_constants(o);

        if (o.out_path.empty()) {
            std::cout << csv;
        } else {
            deltalab::write_file_atomic(o.out_path, csv);
        }
        return 0;
    } catch (const usage_error& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const deltalab::precondition_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const deltalab::budget_error& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 4;
    } catch (const deltalab::checkpoint_error& e) {
        std::cerr << "checkpoint: " << e.what() << "\n";
        return 5;
    } catch (const deltalab::convergence_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
