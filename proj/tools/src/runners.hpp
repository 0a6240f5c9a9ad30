#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bergman::cli {

enum ExitCode {
    kOk = 0,
    kConfigError = 2,
    kAuditFailure = 3,
    kUnexpectedDivergence = 4,
};

struct NormParams {
    std::string weight_path;
    std::string series_path;  // alternative to alpha
    std::vector<int> alpha;   // multi-index; empty means all zeros
    std::string region = "whole";
    double t_min = 0, t_max = 0;
    bool has_t_min = false, has_t_max = false;
    std::string out = "norm.json";
    std::string config_path;
};

struct SweepParams {
    int n = 1;
    std::string alpha_range = "0..3";
    std::string n_range = "1..9";  // the weight growth exponent N
    int dyadic_depth = 40;
    std::string out = "integrability_sweep.json";
    std::string config_path;
};

struct CexBuildParams {
    int n = 1;
    int k_max = 12;
    std::string out = "instance.json";
    std::string config_path;
};

struct CexVerifyParams {
    std::string instance_path;
    std::string out = "counterexample_report.json";
    std::string config_path;
};

struct ApproxParams {
    std::string f_path;
    std::string weights_path;
    double eps = 1.0;
    std::vector<int> levels = {2, 3, 4};  // N values
    std::vector<int> members = {3, 4, 5}; // j values
    int cr_samples = 100;
    std::uint64_t seed = 0x9e3779b9;
    std::string out = "approx_report.json";
    std::string config_path;
};

struct BoundsParams {
    std::vector<double> r_values = {0.1, 0.25, 0.5, 0.9};
    std::string out = "coefficient_report.json";
    std::string config_path;
};

int run_norm(NormParams params);
int run_sweep(SweepParams params);
int run_cex_build(CexBuildParams params);
int run_cex_verify(CexVerifyParams params);
int run_approx(ApproxParams params);
int run_bounds(BoundsParams params);

/// Worker count for embarrassingly parallel sweep cells; reads
/// BERGMAN_WORKERS (>= 1), defaulting to 1.
int worker_count();

/// Derive the CSV path sitting next to a JSON report.
std::string csv_sibling(const std::string& json_path);

}  // namespace bergman::cli
