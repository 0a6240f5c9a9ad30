#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "bergman/counterexample.hpp"
#include "bergman/json_io.hpp"
#include "bergman/radial_profile.hpp"
#include "test_support.hpp"

using namespace bergman;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kLog2 = std::log(2.0);
}

TEST_CASE("primitive evaluation") {
    RadialProfile max1 = profile_max_one_t();
    CHECK(max1.value(0.0) == 1.0);
    CHECK(max1.value(2.5) == 2.5);

    RadialProfile lin = profile_linear(7.0);
    CHECK(lin.value(kLog2) == doctest::Approx(4.852030263919617).epsilon(1e-15));

    RadialProfile psi({loglog_term(1.0)}, {});
    // -log(log(e+1)) at t = 0, frozen from a high-precision evaluation
    CHECK(psi.value(0.0) == doctest::Approx(-0.27251388050258340).epsilon(1e-12));
    // the loglog term vanishes at -inf and decays like -log(2t) at +inf
    CHECK(psi.value(-40.0) == doctest::Approx(0.0));
    CHECK(psi.value(1e6) == doctest::Approx(-std::log(2e6)).epsilon(1e-6));
}

TEST_CASE("asymptotic slopes") {
    CHECK(profile_linear(7.0).tail_slope() == 7.0);
    CHECK(profile_max_one_t().tail_slope() == 1.0);
    RadialProfile tilted = profile_max_one_t().with_term(tilt_term(1.0));
    CHECK(tilted.tail_slope() == doctest::Approx(3.0));
    CHECK(RadialProfile({loglog_term(1.0)}, {}).tail_slope() == 0.0);
    CHECK(testing::gaussian_profile().tail_slope() == kInf);
    // head slopes: only open-ended linear terms reach t -> -inf
    CHECK(profile_linear(5.0).head_slope() == 5.0);
    CHECK(profile_max_one_t().head_slope() == 0.0);
}

TEST_CASE("construction validation") {
    // breakpoint edges must be declared
    CHECK_THROWS_AS(RadialProfile({Term{TermKind::Constant, 1.0, -kInf, 0.5}}, {}),
                    std::invalid_argument);
    // discontinuity across a declared breakpoint is rejected
    std::vector<Term> jump{Term{TermKind::Constant, 0.0, -kInf, 0.0},
                           Term{TermKind::Constant, 1.0, 0.0, kInf}};
    CHECK_THROWS_AS(RadialProfile(jump, {0.0}), std::invalid_argument);
    // continuous piecewise switch is accepted
    std::vector<Term> ok{Term{TermKind::Constant, 1.0, -kInf, 0.0},
                         Term{TermKind::Linear, 2.0, 0.0, kInf},
                         Term{TermKind::Constant, 1.0, 0.0, kInf}};
    RadialProfile p(ok, {0.0});
    CHECK(p.value(-1.0) == 1.0);
    CHECK(p.value(1.0) == doctest::Approx(3.0));
    // declaring a decreasing profile psh fails with a located witness
    CHECK_THROWS_AS(RadialProfile({Term{TermKind::Linear, -1.0}}, {}, true),
                    std::invalid_argument);
    CHECK_THROWS_AS(RadialWeight(profile_max_one_t(), 0), std::invalid_argument);
}

TEST_CASE("psh audit") {
    CHECK(check_psh(profile_max_one_t()).pass);
    CHECK(check_psh(testing::gaussian_profile()).pass);

    // two-piece profile: flat 1, then slope 7 from log 2 (value-matched)
    double c2 = 1.0 - 7.0 * kLog2;
    std::vector<Term> phi2{Term{TermKind::MaxOneT, 0.0, -kInf, kLog2},
                           Term{TermKind::Constant, c2, kLog2, kInf},
                           Term{TermKind::Linear, 7.0, kLog2, kInf}};
    CHECK(check_psh(RadialProfile(phi2, {kLog2})).pass);

    PshReport bad = check_psh(RadialProfile({Term{TermKind::Linear, -1.0}}, {}));
    CHECK(!bad.pass);
    CHECK(bad.worst_monotonicity < -1e-10);

    // the loglog term alone is not convex
    CHECK(!check_psh(RadialProfile({loglog_term(1.0)}, {})).pass);

    CHECK_THROWS_AS(check_psh(profile_max_one_t(), 0.0, 1.0, 50), std::invalid_argument);
}

TEST_CASE("piecewise-log family: continuity and convexity") {
    WeightSequence seq = counterexample::build_weights(1, 6);
    // continuity at every breakpoint, within 1e-12 relative
    for (const RadialWeight& w : seq.weights) {
        for (double b : w.profile.breakpoints()) {
            double left = w.profile.value(b - 1e-13);
            double right = w.profile.value(b + 1e-13);
            double scale = std::max({1.0, std::fabs(left), std::fabs(right)});
            CHECK(std::fabs(left - right) / scale < 1e-11);
        }
        CHECK(check_psh(w.profile).pass);
    }
    CHECK(check_psh(seq.limit.profile).pass);

    // tilted members plus the loglog term stay convex-nondecreasing for eps <= 1
    for (double eps : {0.25, 0.5, 1.0}) {
        for (int j = 1; j <= 5; ++j) {
            RadialProfile combined = seq.weights[j - 1]
                                         .profile.with_term(tilt_term(eps))
                                         .with_term(loglog_term(eps));
            CHECK(check_psh(combined).pass);
        }
    }
}

TEST_CASE("sequence audit") {
    WeightSequence seq = counterexample::build_weights(1, 5);
    SequenceAudit audit = audit_sequence(seq);
    CHECK(audit.pass);
    CHECK(audit.worst_violation >= -1e-12);
    // member j agrees with the limit at least up to log(j+1)
    for (size_t j = 1; j <= seq.weights.size(); ++j)
        CHECK(audit.agreement_t[j - 1] + 0.05 >= std::log(static_cast<double>(j + 1)));

    // a decreasing pair fails
    WeightSequence bad{{RadialWeight(profile_constant(2.0), 1),
                        RadialWeight(profile_constant(1.0), 1)},
                       RadialWeight(profile_constant(3.0), 1)};
    CHECK(!audit_sequence(bad).pass);
}

TEST_CASE("weight json round-trips exactly") {
    bergman::test::Rng rng(7);
    WeightSequence seq = counterexample::build_weights(1, 4);
    std::vector<RadialWeight> cases = seq.weights;
    cases.push_back(seq.limit);
    cases.emplace_back(seq.weights[2].profile.with_term(tilt_term(rng.uniform())), 1);
    for (int i = 0; i < 20; ++i) {
        double slope = std::floor(rng.in(1, 40));
        cases.emplace_back(profile_linear(slope).with_term(loglog_term(rng.uniform())),
                           1 + rng.below(3));
    }
    for (const RadialWeight& w : cases) {
        RadialWeight back = io::weight_from_json(io::weight_to_json(w));
        REQUIRE(back.dimension == w.dimension);
        REQUIRE(back.profile.terms().size() == w.profile.terms().size());
        for (size_t i = 0; i < w.profile.terms().size(); ++i) {
            const Term& a = w.profile.terms()[i];
            const Term& b = back.profile.terms()[i];
            CHECK(a.kind == b.kind);
            CHECK(a.param == b.param);  // bit-exact
            CHECK(a.t_min == b.t_min);
            CHECK(a.t_max == b.t_max);
        }
        CHECK(back.profile.breakpoints() == w.profile.breakpoints());
    }
    // the Gaussian oracle primitive is not part of the file vocabulary
    CHECK_THROWS_AS(io::weight_to_json(RadialWeight(testing::gaussian_profile(), 1)),
                    std::invalid_argument);
}
