#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "bergman/log_real.hpp"
#include "bergman/mode_series.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/radial_profile.hpp"

namespace bergman::dbar {

/// psi(t) = -log(log(e + e^{2t})), the slowly varying auxiliary weight whose
/// sublevel sets carve out the cutoff's transition annulus.
double psi_value(double t);
double psi_prime(double t);
double psi_second(double t);

/// Radial cutoff c(t) = chi(log(-eps*psi) - log N): identically 1 while
/// -psi <= N/(2 eps), identically 0 once -psi >= N/eps, cubic-smoothstep in
/// between.  max|chi'| = 1.5/log 2 < 3.
struct CutoffProfile {
    int level = 2;    // N
    double eps = 1;   // 0 < eps <= 1
    double t_half = 0;  // inner edge of the transition (c == 1 below)
    double t_full = 0;  // outer edge (c == 0 above)

    double chi(double x) const;
    double chi_prime(double x) const;
    double argument(double t) const;  // log(-eps*psi(t)) - log N
    double value(double t) const;     // c(t)
    double dc_dt(double t) const;
};

CutoffProfile build_cutoff(int level, double eps);

/// Scalar curvature audit for a tilted radial weight (n = 1): the margin
/// (1/2)(g'' + eps*psi'') - (eps^2/4) psi'^2, which multiplying by 4r^2 turns
/// into the form inequality the estimate needs.  Affine kinks contribute
/// nonnegative slope jumps, checked separately.
struct CurvatureReport {
    bool pass = false;
    double worst_margin = 0;
    double worst_margin_t = 0;
    double worst_jump = 0;  // smallest one-sided slope jump across a kink
    double worst_jump_t = 0;
};

CurvatureReport curvature_check(const RadialWeight& tilted, double eps,
                                double t_lo = -20, double t_hi = 200,
                                int points = 2201);

enum class ModeStatus { Projected, Dropped };

/// One mode of the minimal solution u of dbar(u) = f * dbar(c):
/// u_k = a_k z^k p(t) with p = c - 1 + kappa (Projected; kappa chosen so
/// u_k is orthogonal to z^k) or p = c (Dropped; z^k is not integrable, so
/// orthogonality is vacuous and p = c is the only profile staying in L^2).
struct ModeSolution {
    int k = 0;
    ModeStatus status = ModeStatus::Projected;
    double kappa = 1.0;             // in [0,1) when Projected, 1 when Dropped
    LogReal coeff;                   // a_k
    LogReal u_norm_sq;               // ||u_k||^2 under the tilted member weight
    LogReal mode_norm;               // m_k, zero marker when Dropped
    double ortho_residual = 0;       // |<u_k, z^k>| relative, independent route
    double t_cross = 0;              // where c - 1 + kappa changes sign
};

struct SolutionSet {
    CutoffProfile cutoff;
    RadialWeight weight;  // the tilted member weight
    std::vector<ModeSolution> modes;
    LogReal u_norm_sq_total;
};

/// Mode-diagonal minimal-norm solution (n = 1 only).  Exploits radial
/// orthogonality: each mode is an explicit 1-D projection, so the global
/// minimal solution is exactly computable from two integrals per mode.
SolutionSet minimal_solution(const ModeSeries& f, const RadialWeight& tilted_weight,
                             const CutoffProfile& cutoff);

/// Holomorphic approximant F = f*c - u and its measured norms.
struct Approximant {
    ModeSeries series{1};     // coefficients a_k (1 - kappa_k), dropped -> 0
    LogReal err_sq_limit;     // ||F - f||^2 under the tilted limit weight
    LogReal norm_sq_member;   // ||F||^2 under the tilted member weight
    LogReal f_norm_sq_limit;  // ||f||^2 under the tilted limit weight
    LogReal fc_norm_sq_member;  // ||f*c||^2, the triangle-bound first term
};

Approximant approximant(const ModeSeries& f, const SolutionSet& sol,
                        const RadialWeight& tilted_limit);

/// The weighted estimate the construction leans on, audited with measured
/// numbers: ||u||^2 <= 24 * int |v|^2_Theta e^{-g} (Theta the tilt form of
/// psi) <= (864/N^2) * int_annulus |f|^2 e^{-g}.
struct BoundAudit {
    LogReal lhs;     // ||u||^2
    LogReal rhs24;   // 24 * weighted transition integral
    LogReal cap;     // (864/N^2) * plain annulus mass of f
    double lhs_over_rhs = 0;
    double lhs_over_cap = 0;
    bool pass = false;
};

BoundAudit berndtsson_audit(const ModeSeries& f, const SolutionSet& sol);

/// Finite-difference Cauchy-Riemann residual of u against v at quasi-random
/// points inside the transition annulus; returns the max relative residual.
double cr_residual_max(const ModeSeries& f, const SolutionSet& sol,
                       int samples = 100, std::uint64_t seed = 0x9e3779b9);

/// Norm of u after adding delta * z^k to a Projected mode; minimality means
/// this strictly exceeds the mode's own norm for either sign of delta.
LogReal perturbed_mode_norm_sq(const SolutionSet& sol, int k, double delta_rel);

/// The solution-estimate coefficient (1 + 1/t) / (1 - (1+t) r) and its
/// minimum 1/(1-sqrt(r))^2 at t* = 1/sqrt(r) - 1; requires (1+t) r < 1.
double hormander_coefficient(double r, double t);

struct CoefficientMinimum {
    double t_star = 0;
    double min_value = 0;           // 1/(1-sqrt r)^2, unconstrained in t
    double constrained_t = 0;       // argmin over 0 < t < 1 (infimum point)
    double constrained_value = 0;
    double six_bound = 0;           // 6/(1-r)^2, always >= min_value
};

CoefficientMinimum minimize_coefficient(double r);

/// One (member index, cutoff level) cell of an approximation run.
struct ApproxCell {
    int j = 0;
    int level = 0;
    double eps = 1;
    SolutionSet solution;
    Approximant approx;
    BoundAudit bound;
    CurvatureReport curvature;
    double cr_residual = 0;
};

ApproxCell run_approximation(const ModeSeries& f, const WeightSequence& seq, int j,
                             int level, double eps, int cr_samples = 100,
                             std::uint64_t seed = 0x9e3779b9);

}  // namespace bergman::dbar
