#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/counterexample.hpp"
#include "bergman/dbar.hpp"
#include "test_support.hpp"

using namespace bergman;
using namespace bergman::dbar;
using bergman::test::rel_err;

namespace {

WeightSequence family() { return counterexample::build_weights(1, 6); }

ModeSeries two_mode_f() {
    ModeSeries f(1);
    f.set_first_variable(1, LogReal::one());
    f.set_first_variable(2, LogReal::from_double(0.5));
    return f;
}

}  // namespace

TEST_CASE("psi helpers") {
    CHECK(psi_value(0.0) == doctest::Approx(-0.27251388050258340).epsilon(1e-12));
    CHECK(psi_value(-40.0) == doctest::Approx(0.0));
    CHECK(psi_prime(2.0) < 0.0);
    // finite-difference agreement of the analytic derivatives
    for (double t : {-3.0, 0.0, 1.0, 4.0, 30.0}) {
        double h = 1e-5;
        double fd1 = (psi_value(t + h) - psi_value(t - h)) / (2 * h);
        double fd2 = (psi_value(t + h) - 2 * psi_value(t) + psi_value(t - h)) / (h * h);
        CHECK(psi_prime(t) == doctest::Approx(fd1).epsilon(1e-7));
        CHECK(psi_second(t) == doctest::Approx(fd2).epsilon(1e-4));
    }
}

TEST_CASE("cutoff construction") {
    CutoffProfile c = build_cutoff(3, 1.0);
    // closed-form inversion, frozen from the independent root-find oracle
    CHECK(c.t_half == doctest::Approx(2.2252253884491581).epsilon(1e-12));
    CHECK(c.t_full == doctest::Approx(10.042768459022096).epsilon(1e-12));
    // the transition really is where -eps*psi crosses N/2 and N
    CHECK(-c.eps * psi_value(c.t_half) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(-c.eps * psi_value(c.t_full) == doctest::Approx(3.0).epsilon(1e-12));

    CHECK(c.value(c.t_half - 1.0) == 1.0);
    CHECK(c.value(c.t_full + 1.0) == 0.0);
    CHECK(c.value(-50.0) == 1.0);

    // |chi'| <= 3 with the smoothstep's actual max 1.5/log 2
    double worst = 0;
    double prev = 2.0;
    bool monotone = true;
    for (int i = 0; i <= 10000; ++i) {
        double x = -std::log(2.0) * (1.0 - i / 10000.0);
        worst = std::max(worst, std::fabs(c.chi_prime(x)));
        double cx = c.chi(x);
        monotone = monotone && cx <= prev + 1e-15;
        prev = cx;
    }
    CHECK(worst <= 3.0);
    CHECK(worst == doctest::Approx(1.5 / std::log(2.0)).epsilon(1e-6));
    CHECK(monotone);

    CHECK_THROWS_AS(build_cutoff(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(build_cutoff(3, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(build_cutoff(3, 0.0), std::invalid_argument);
    // N/eps so large that t_full = e^{N/eps}/2 would overflow a double
    CHECK_THROWS_AS(build_cutoff(800, 1.0), std::invalid_argument);
}

TEST_CASE("curvature margins") {
    WeightSequence seq = family();
    // eps = 0 reduces to plain convexity of the member weight
    RadialWeight bare(seq.weights[2].profile, 1);
    CHECK(curvature_check(bare, 0.0).pass);

    for (double eps : {0.25, 0.5, 1.0}) {
        for (int j = 1; j <= 5; ++j) {
            RadialWeight tilted(seq.weights[j - 1].profile.with_term(tilt_term(eps)), 1);
            CurvatureReport report = curvature_check(tilted, eps);
            CHECK(report.pass);
            CHECK(report.worst_margin >= -1e-10);
            CHECK(report.worst_jump >= 0.0);
        }
    }
    // a genuinely concave profile fails
    RadialWeight bad(RadialProfile({loglog_term(3.0)}, {}), 1);
    CHECK(!curvature_check(bad, 0.0).pass);
}

TEST_CASE("minimal solution modes") {
    WeightSequence seq = family();
    ModeSeries f = two_mode_f();
    RadialWeight tilted(seq.weights[2].profile.with_term(tilt_term(1.0)), 1);
    SolutionSet sol = minimal_solution(f, tilted, build_cutoff(3, 1.0));
    REQUIRE(sol.modes.size() == 2);
    for (const ModeSolution& m : sol.modes) {
        CHECK(m.status == ModeStatus::Projected);
        CHECK(m.kappa >= 0.0);
        CHECK(m.kappa < 1.0);
        CHECK(m.ortho_residual < 1e-8);
        CHECK(m.u_norm_sq.sign() == 1);
    }
    // dbar-exactness at quasi-random points in the transition annulus
    CHECK(cr_residual_max(f, sol) < 1e-6);

    // minimality: nudging any projected mode grows the norm, both signs
    for (double delta : {1e-3, -1e-3}) {
        LogReal perturbed = perturbed_mode_norm_sq(sol, 1, delta);
        CHECK(perturbed > sol.modes[0].u_norm_sq);
    }
    CHECK_THROWS_AS(perturbed_mode_norm_sq(sol, 9, 1e-3), std::invalid_argument);
}

TEST_CASE("dropped modes") {
    WeightSequence seq = family();
    // member 1 tilted has slope 3: every mode k >= 1 is outside the space
    RadialWeight tilted(seq.weights[0].profile.with_term(tilt_term(1.0)), 1);
    ModeSeries f = two_mode_f();
    SolutionSet sol = minimal_solution(f, tilted, build_cutoff(3, 1.0));
    for (const ModeSolution& m : sol.modes) {
        CHECK(m.status == ModeStatus::Dropped);
        CHECK(m.kappa == 1.0);
        CHECK(m.u_norm_sq.sign() == 1);  // compact support keeps u in L^2
    }
    // mode 0 stays projected (exponent 2 < slope 3)
    ModeSeries with_const(1);
    with_const.set_first_variable(0, LogReal::one());
    with_const.set_first_variable(1, LogReal::one());
    SolutionSet mixed = minimal_solution(with_const, tilted, build_cutoff(3, 1.0));
    CHECK(mixed.modes[0].status == ModeStatus::Projected);
    CHECK(mixed.modes[1].status == ModeStatus::Dropped);

    // the approximant zeroes dropped coefficients entirely
    RadialWeight limit(seq.limit.profile.with_term(tilt_term(1.0)), 1);
    Approximant apx = approximant(f, sol, limit);
    CHECK(apx.series.modes().empty());
    CHECK(bergman::relative_difference(apx.err_sq_limit, apx.f_norm_sq_limit) < 1e-12);

    // the estimate holds for dropped modes too: z^k c is the unique (hence
    // minimal) L^2 solution on those modes
    BoundAudit audit = berndtsson_audit(f, sol);
    CHECK(audit.pass);
    CHECK(audit.lhs_over_rhs <= 1.0);

    // from the second member on (tail slope 7+2 and up), z_1 is never dropped
    ModeSeries z1(1);
    z1.set_first_variable(1, LogReal::one());
    for (size_t j = 2; j <= seq.weights.size(); ++j) {
        RadialWeight member(seq.weights[j - 1].profile.with_term(tilt_term(1.0)), 1);
        SolutionSet s = minimal_solution(z1, member, build_cutoff(3, 1.0));
        CHECK(s.modes[0].status == ModeStatus::Projected);
    }
}

TEST_CASE("approximant convergence in the cutoff level") {
    WeightSequence seq = family();
    ModeSeries f = two_mode_f();
    double prev_kappa[2] = {2.0, 2.0};
    LogReal prev_err;
    bool have_prev = false;
    for (int level : {2, 3, 4, 5}) {
        ApproxCell cell = run_approximation(f, seq, 3, level, 1.0);
        // kappa and the approximation error shrink as the cutoff widens
        for (size_t m = 0; m < cell.solution.modes.size(); ++m) {
            CHECK(cell.solution.modes[m].kappa <= prev_kappa[m]);
            prev_kappa[m] = cell.solution.modes[m].kappa;
        }
        if (have_prev) CHECK(cell.approx.err_sq_limit <= prev_err);
        prev_err = cell.approx.err_sq_limit;
        have_prev = true;
        CHECK(cell.approx.err_sq_limit < cell.approx.f_norm_sq_limit);

        // coefficients converge to f's: a_k (1 - kappa_k)
        for (const auto& [alpha, coeff] : cell.approx.series.modes()) {
            LogReal target = f.coeff(alpha);
            CHECK(coeff <= target);
            if (level >= 4)
                CHECK(bergman::relative_difference(coeff, target) < 1e-6);
        }
    }
}

TEST_CASE("empty f") {
    WeightSequence seq = family();
    ModeSeries zero(1);
    ApproxCell cell = run_approximation(zero, seq, 3, 3, 1.0);
    CHECK(cell.solution.modes.empty());
    CHECK(cell.approx.err_sq_limit.is_zero());
    CHECK(cell.approx.series.modes().empty());
}

TEST_CASE("f outside the limit space is rejected") {
    WeightSequence seq = family();  // truncated limit slope N_8 = 19
    ModeSeries f(1);
    f.set_first_variable(40, LogReal::one());
    CHECK_THROWS_AS(run_approximation(f, seq, 3, 3, 1.0), std::domain_error);
}

TEST_CASE("solution estimate audit") {
    WeightSequence seq = family();
    ModeSeries f = two_mode_f();
    for (int j : {3, 4, 5})
        for (int level : {2, 3, 4}) {
            ApproxCell cell = run_approximation(f, seq, j, level, 1.0);
            CHECK(cell.bound.pass);
            CHECK(cell.bound.lhs_over_rhs <= 1.0);
            CHECK(cell.bound.lhs_over_cap <= 1.0);
            CHECK(cell.bound.rhs24 <= cell.bound.cap * LogReal::from_double(1 + 1e-9));
            CHECK(cell.cr_residual < 1e-6);
            CHECK(cell.curvature.pass);

            // triangle decomposition: ||F|| <= ||f c|| + ||u||
            double f_norm = std::sqrt(cell.approx.norm_sq_member.to_double());
            double fc = std::sqrt(cell.approx.fc_norm_sq_member.to_double());
            double u = std::sqrt(cell.solution.u_norm_sq_total.to_double());
            CHECK(f_norm <= fc + u + 1e-12);

            // ||f c||^2 is dominated by the f-mass below the outer edge
            LogReal ball_mass;
            for (const auto& [alpha, coeff] : f.modes()) {
                auto v = quad::monomial_norm(cell.solution.weight, alpha,
                                             quad::Region::ball(cell.solution.cutoff.t_full));
                ball_mass += coeff.squared() * v.value;
            }
            CHECK(cell.approx.fc_norm_sq_member <=
                  ball_mass * LogReal::from_double(1 + 1e-9));
        }
}

TEST_CASE("estimate coefficient minimization") {
    CHECK(hormander_coefficient(0.5, 0.41421356237309515) ==
          doctest::Approx(11.656854249492380).epsilon(1e-12));
    CHECK_THROWS_AS(hormander_coefficient(0.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(hormander_coefficient(0.5, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(hormander_coefficient(1.5, 0.1), std::invalid_argument);

    CoefficientMinimum half = minimize_coefficient(0.5);
    CHECK(half.t_star == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
    CHECK(half.min_value == doctest::Approx(11.656854249492380).epsilon(1e-12));
    CHECK(half.six_bound == doctest::Approx(24.0));

    CoefficientMinimum quarter = minimize_coefficient(0.25);
    CHECK(quarter.min_value == doctest::Approx(4.0));
    CHECK(quarter.six_bound == doctest::Approx(6.0 / (0.75 * 0.75)));
    CHECK(quarter.min_value <= quarter.six_bound);

    // below r = 1/4 the minimizer leaves (0,1); both minima are reported
    CoefficientMinimum tenth = minimize_coefficient(0.1);
    CHECK(tenth.t_star > 1.0);
    CHECK(tenth.constrained_t == 1.0);
    CHECK(tenth.constrained_value == doctest::Approx(2.5));
    CHECK(tenth.min_value == doctest::Approx(2.1388339901650319).epsilon(1e-12));

    // brute-force grid oracle matches the closed form
    for (double r : {0.1, 0.25, 0.5, 0.9}) {
        CoefficientMinimum m = minimize_coefficient(r);
        double lo = 1e-9, hi = 1.0 / r - 1.0 - 1e-12, best = 1e300;
        double best_t = lo;
        for (int round = 0; round < 6; ++round) {
            const int cells = 4000;
            best = 1e300;
            for (int i = 0; i <= cells; ++i) {
                double t = lo + (hi - lo) * i / double(cells);
                double v = hormander_coefficient(r, t);
                if (v < best) { best = v; best_t = t; }
            }
            double width = (hi - lo) / cells;
            lo = std::max(best_t - 2 * width, 1e-12);
            hi = std::min(best_t + 2 * width, 1.0 / r - 1.0 - 1e-12);
        }
        CHECK(std::fabs(best - m.min_value) < 1e-9);
        CHECK(m.min_value <= m.six_bound);
    }
}
