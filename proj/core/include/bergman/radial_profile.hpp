#pragma once

#include <limits>
#include <string>
#include <vector>

namespace bergman {

/// Primitive building blocks for radial weight profiles g(t), t = log r.
///
/// The vocabulary is deliberately closed: every weight handled by this
/// library is a piecewise sum of these terms, which is what makes tail
/// slopes (and hence finiteness of weighted integrals) exactly decidable.
enum class TermKind {
    Constant,       ///< c
    Linear,         ///< N * t
    MaxOneT,        ///< max(1, t); kink at t = 1
    LogOnePlusR2,   ///< eps * log(1 + e^{2t}), the weight tilt eps*log(1+|z|^2)
    NegLogLogER2,   ///< c * (-log(log(e + e^{2t})))
    GaussR2,        ///< a * e^{2t}; quadrature oracle only, not part of the
                    ///< file vocabulary (see bergman::testing)
};

/// One primitive term, active on the half-open window [t_min, t_max).
struct Term {
    TermKind kind = TermKind::Constant;
    double param = 0.0;  // c / N / eps / a; ignored for MaxOneT
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();

    double value(double t) const;
    long double value_ld(long double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;
    /// Contribution to lim_{t->+inf} g(t)/t (may be +inf) resp. t -> -inf.
    double tail_slope() const;
    double head_slope() const;
};

/// A radial weight profile g(t) = sum of active terms, with declared
/// breakpoints where the active term set switches.
///
/// Invariants enforced at construction:
///  - every finite term window endpoint is listed among the breakpoints;
///  - g is continuous across every breakpoint (1e-12 relative);
///  - when declared psh, g is nondecreasing and convex in t (sampled audit,
///    radial psh == convex nondecreasing in log r).
class RadialProfile {
public:
    /// The zero profile (no terms).
    RadialProfile() : declared_psh_(false) {}
    RadialProfile(std::vector<Term> terms, std::vector<double> breakpoints,
                  bool declared_psh = false);

    double value(double t) const;
    long double value_ld(long double t) const;
    /// Derivative of the smooth part (one-sided at breakpoints: the side the
    /// half-open windows select, i.e. the right side).
    double derivative(double t) const;
    double second_derivative(double t) const;

    /// lim_{t->+inf} g(t)/t; +inf when a Gaussian term owns the tail.
    double tail_slope() const;
    /// lim_{t->-inf} g(t)/t (nonzero only for Linear terms open to -inf).
    double head_slope() const;

    const std::vector<Term>& terms() const { return terms_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool declared_psh() const { return declared_psh_; }

    /// Breakpoints plus term-internal kinks (MaxOneT at t = 1 when covered):
    /// the points where quadrature must split and audits must densify.
    std::vector<double> kink_points() const;

    /// Profile with one more term laid over the whole line (used for tilting
    /// a weight or adding the loglog term); breakpoints unchanged.
    RadialProfile with_term(const Term& extra, bool declared_psh = false) const;

private:
    void check_continuity() const;

    std::vector<Term> terms_;
    std::vector<double> breakpoints_;
    bool declared_psh_;
};

/// Result of the sampled convexity/monotonicity audit.
struct PshReport {
    bool pass = false;
    double worst_convexity = 0;    // most negative secant-slope increment
    double worst_convexity_t = 0;  // grid location of the worst increment
    double worst_monotonicity = 0; // most negative first difference
    double worst_monotonicity_t = 0;
    int points = 0;
};

/// Sampled psh audit on [t_lo, t_hi] with at least `min_points` samples;
/// the grid densifies near every kink (10 extra points within +-1e-3).
/// Violation tolerance is 1e-10 on slope increments and first differences.
PshReport check_psh(const RadialProfile& profile, double t_lo, double t_hi,
                    int min_points = 1000);
/// Same, on the default window spanning all kinks +- 10.
PshReport check_psh(const RadialProfile& profile);

struct RadialWeight {
    RadialProfile profile;
    int dimension = 1;  // n >= 1

    RadialWeight() = default;
    RadialWeight(RadialProfile p, int n);
};

/// Monotone sequence of radial weights with its limit weight.
struct WeightSequence {
    std::vector<RadialWeight> weights;
    RadialWeight limit;
};

struct SequenceAudit {
    bool pass = false;
    double worst_violation = 0;  // most negative g_{j+1} - g_j (or limit - g_j)
    double worst_t = 0;
    int worst_pair = -1;
    /// Largest grid t up to which g_j == g_limit (1e-12), one entry per j.
    std::vector<double> agreement_t;
};

/// Pointwise monotonicity audit g_1 <= g_2 <= ... <= g_limit on a grid
/// spanning all kinks +- 10 (tolerance 1e-12 relative).
SequenceAudit audit_sequence(const WeightSequence& seq, int min_points = 1000);

// Profile builders for the weights this library works with.
RadialProfile profile_constant(double c);
RadialProfile profile_linear(double slope);
/// max(1, t): the seed weight of the piecewise-log family.
RadialProfile profile_max_one_t();
Term tilt_term(double eps);     // eps * log(1 + e^{2t}) over the whole line
Term loglog_term(double coeff); // coeff * (-log(log(e + e^{2t})))

namespace testing {
/// a * |z|^2 as a profile: the closed-form quadrature oracle weight.
/// Deliberately outside the serializable vocabulary.
RadialProfile gaussian_profile(double a = 1.0);
}  // namespace testing

}  // namespace bergman
