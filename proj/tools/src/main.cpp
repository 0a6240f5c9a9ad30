#include <CLI11.hpp>

#include "runners.hpp"

using namespace bergman::cli;

int main(int argc, char** argv) {
    CLI::App app{"weighted norms of entire functions under radial psh weights:\n"
                 "piecewise-log weight families, a global-openness counterexample,\n"
                 "and a cutoff + minimal-norm dbar approximation engine (n = 1)"};
    app.require_subcommand(1);

    NormParams norm;
    CLI::App* norm_cmd = app.add_subcommand("norm", "weighted monomial or series norm");
    norm_cmd->add_option("--weight", norm.weight_path, "weight-spec JSON file");
    norm_cmd->add_option("--alpha", norm.alpha, "monomial multi-index")->delimiter(',');
    norm_cmd->add_option("--series", norm.series_path, "mode-series JSON file");
    norm_cmd->add_option("--region", norm.region, "whole|ball|exterior|annulus");
    norm_cmd->add_option("--t-min", norm.t_min)->each([&](std::string) { norm.has_t_min = true; });
    norm_cmd->add_option("--t-max", norm.t_max)->each([&](std::string) { norm.has_t_max = true; });
    norm_cmd->add_option("--out", norm.out, "JSON report path (CSV written alongside)");
    norm_cmd->add_option("--config", norm.config_path, "JSON config overriding flags");

    CLI::App* integ_cmd = app.add_subcommand("integrability", "finiteness dichotomy tools");
    SweepParams sweep;
    CLI::App* sweep_cmd =
        integ_cmd->add_subcommand("sweep", "threshold vs dyadic vs quadrature sweep");
    sweep_cmd->add_option("--n", sweep.n, "dimension");
    sweep_cmd->add_option("--alpha", sweep.alpha_range, "range a..b for |alpha|");
    sweep_cmd->add_option("--N", sweep.n_range, "range lo..hi for the weight slope");
    sweep_cmd->add_option("--K", sweep.dyadic_depth, "dyadic partial-sum depth");
    sweep_cmd->add_option("--out", sweep.out);
    sweep_cmd->add_option("--config", sweep.config_path);

    CLI::App* cex_cmd = app.add_subcommand("counterexample",
                                           "piecewise-log weight family and its series");
    CexBuildParams build;
    CLI::App* build_cmd = cex_cmd->add_subcommand("build", "construct an instance");
    build_cmd->add_option("--n", build.n, "dimension");
    build_cmd->add_option("--kmax", build.k_max, "truncation depth");
    build_cmd->add_option("--out", build.out, "instance JSON path");
    build_cmd->add_option("--config", build.config_path);

    CexVerifyParams verify;
    CLI::App* verify_cmd = cex_cmd->add_subcommand("verify", "re-audit an instance file");
    verify_cmd->add_option("instance", verify.instance_path, "instance JSON path");
    verify_cmd->add_option("--out", verify.out);
    verify_cmd->add_option("--config", verify.config_path);

    ApproxParams approx;
    CLI::App* approx_root = app.add_subcommand("approx", "dbar approximation engine");
    CLI::App* approx_cmd = approx_root->add_subcommand("run", "run a (j, N) grid");
    approx_cmd->add_option("--f", approx.f_path, "mode-series JSON for f");
    approx_cmd->add_option("--weights", approx.weights_path,
                           "weight-sequence JSON (or counterexample instance)");
    approx_cmd->add_option("--eps", approx.eps, "tilt strength in (0, 1]");
    approx_cmd->add_option("--N", approx.levels, "cutoff levels")->delimiter(',');
    approx_cmd->add_option("--j", approx.members, "member indices")->delimiter(',');
    approx_cmd->add_option("--cr-samples", approx.cr_samples);
    approx_cmd->add_option("--seed", approx.seed, "seed for the residual sample points");
    approx_cmd->add_option("--out", approx.out);
    approx_cmd->add_option("--config", approx.config_path);

    BoundsParams bounds;
    CLI::App* bounds_root = app.add_subcommand("bounds", "solution-estimate constants");
    CLI::App* bounds_cmd =
        bounds_root->add_subcommand("coefficient", "minimize (1+1/t)/(1-(1+t)r)");
    bounds_cmd->add_option("--r", bounds.r_values, "r values in (0,1)")->delimiter(',');
    bounds_cmd->add_option("--out", bounds.out);
    bounds_cmd->add_option("--config", bounds.config_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    if (norm_cmd->parsed()) return run_norm(norm);
    if (sweep_cmd->parsed()) return run_sweep(sweep);
    if (build_cmd->parsed()) return run_cex_build(build);
    if (verify_cmd->parsed()) return run_cex_verify(verify);
    if (approx_cmd->parsed()) return run_approx(approx);
    if (bounds_cmd->parsed()) return run_bounds(bounds);
    return kConfigError;
}
