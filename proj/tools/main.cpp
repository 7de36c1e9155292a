#include <CLI11.hpp>
#include <iostream>

#include "rkvp/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{
        "rkvp: meshless reproducing-kernel collocation solver for the "
        "time-fractional Vakhnenko-Parkes equation"};
    app.require_subcommand(1);
    app.footer("Environment: RKHS_VP_THREADS caps internal parallelism.");

    rkvp::cli::RunConfig cfg;

    auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--alpha", cfg.alpha, "fractional order in (0,1]");
        sub->add_option("--n", cfg.n, "collocation density per axis");
        sub->add_option("--c", cfg.c, "soliton wave speed");
        sub->add_option("--mode", cfg.mode, "fractional coupling")
            ->check(CLI::IsMember({"conformable", "caputo"}));
        sub->add_option("--domain", cfg.domain, "domain bounds a,b,T")
            ->delimiter(',')
            ->expected(3);
        sub->add_option("--max-iter", cfg.max_iter, "outer iteration cap");
        sub->add_option("--tol", cfg.tol, "outer fixed-point tolerance");
        sub->add_option("--resolution", cfg.resolution, "samples per axis");
        sub->add_option("--out", cfg.out, "output CSV path");
        sub->set_config("--config", "", "key=value config file; flags override");
        return sub;
    };

    CLI::App* exact =
        add_common(app.add_subcommand("exact", "export the exact soliton field"));
    exact->add_option("--slice-t", cfg.slice_t, "export a 1-D slice at this t");
    exact->add_option("--gnuplot", cfg.gnuplot, "also write a gnuplot script");

    CLI::App* solve =
        add_common(app.add_subcommand("solve", "run the collocation solver"));
    solve->add_option("--data", cfg.data, "boundary data source")
        ->check(CLI::IsMember({"exact", "constant"}));
    solve->add_option("--gnuplot", cfg.gnuplot, "also write a gnuplot script");

    add_common(app.add_subcommand("table1", "error table over alpha blocks"));

    CLI::App* conv = add_common(
        app.add_subcommand("convergence", "error vs n study with orders"));
    conv->add_option("--n-list", cfg.n_list, "grid densities, e.g. 4,8")
        ->delimiter(',');
    conv->add_option("--inject-errors", cfg.inject_errors,
                     "test hook: synthetic linf values matching --n-list")
        ->delimiter(',');

    CLI::App* kc = app.add_subcommand("kernel-check", "kernel property suites");
    kc->add_option("--perturb", cfg.perturb,
                   "test hook: shift one kernel coefficient by this amount");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? rkvp::cli::kExitOk : rkvp::cli::kExitUsage;
    }

    const std::string sub = app.get_subcommands().front()->get_name();
    return rkvp::cli::dispatch(sub, cfg, std::cout);
}
