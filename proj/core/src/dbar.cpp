#include "bergman/dbar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman::dbar {

using quad::QuadVerdict;
using quad::Region;
using quad::integrate_log;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kAuditSlack = 1e-9;

// L(t) = log(e + e^{2t}) >= 1, so that psi = -log L.
double big_l(double t) {
    double u = 2 * t;
    if (u > 1) return u + std::log1p(std::exp(1 - u));
    return 1 + std::log1p(std::exp(u - 1));
}
double sigma_e(double t) { return 1.0 / (1.0 + std::exp(1.0 - 2.0 * t)); }

// t with -eps*psi(t) = s, i.e. L = e^{s/eps}: t = (1/2) log(e^L - e).
double invert_minus_eps_psi(double s, double eps) {
    double l = std::exp(s / eps);
    return 0.5 * (l + std::log1p(-std::exp(1.0 - l)));
}

double frac(double x) { return x - std::floor(x); }

}  // namespace

double psi_value(double t) { return -std::log(big_l(t)); }

double psi_prime(double t) { return -2.0 * sigma_e(t) / big_l(t); }

double psi_second(double t) {
    double l = big_l(t), s = sigma_e(t);
    return -4.0 * s * (1.0 - s) / l + 4.0 * s * s / (l * l);
}

double CutoffProfile::chi(double x) const {
    if (x <= -kLn2) return 1.0;
    if (x >= 0.0) return 0.0;
    double y = (x + kLn2) / kLn2;
    return 1.0 - y * y * (3.0 - 2.0 * y);
}

double CutoffProfile::chi_prime(double x) const {
    if (x <= -kLn2 || x >= 0.0) return 0.0;
    double y = (x + kLn2) / kLn2;
    return -6.0 * y * (1.0 - y) / kLn2;
}

double CutoffProfile::argument(double t) const {
    double minus_psi = std::log(big_l(t));  // -psi >= 0, -> 0 as t -> -inf
    if (minus_psi <= 0.0) return -kInf;
    return std::log(eps * minus_psi) - std::log(static_cast<double>(level));
}

double CutoffProfile::value(double t) const { return chi(argument(t)); }

double CutoffProfile::dc_dt(double t) const {
    double x = argument(t);
    if (x <= -kLn2 || x >= 0.0) return 0.0;
    // d/dt log(-eps*psi) = psi'/psi
    double l = big_l(t);
    double dlog = 2.0 * sigma_e(t) / (l * std::log(l));
    return chi_prime(x) * dlog;
}

CutoffProfile build_cutoff(int level, double eps) {
    if (level < 2) throw std::invalid_argument("build_cutoff: level must be >= 2");
    if (!(eps > 0.0) || eps > 1.0)
        throw std::invalid_argument("build_cutoff: eps must lie in (0, 1]");
    // the outer edge sits at t = e^{N/eps}/2, which must itself fit a double
    if (level / eps > 700.0)
        throw std::invalid_argument(
            "build_cutoff: transition radius exceeds representable log-radius range");
    CutoffProfile c;
    c.level = level;
    c.eps = eps;
    c.t_half = invert_minus_eps_psi(level / 2.0, eps);
    c.t_full = invert_minus_eps_psi(static_cast<double>(level), eps);
    return c;
}

CurvatureReport curvature_check(const RadialWeight& tilted, double eps,
                                double t_lo, double t_hi, int points) {
    if (tilted.dimension != 1)
        throw std::invalid_argument("curvature_check: n = 1 only");
    if (points < 100) throw std::invalid_argument("curvature_check: too few points");

    const RadialProfile& g = tilted.profile;
    auto margin = [&](double t) {
        double p = psi_prime(t);
        return 0.5 * (g.second_derivative(t) + eps * psi_second(t)) -
               0.25 * eps * eps * p * p;
    };

    CurvatureReport report;
    report.worst_margin = kInf;
    report.worst_jump = kInf;

    std::vector<double> grid;
    grid.reserve(points + 4 * g.kink_points().size());
    for (int i = 0; i < points; ++i)
        grid.push_back(t_lo + (t_hi - t_lo) * i / double(points - 1));
    for (double b : g.kink_points())
        for (double d : {1e-6, 1e-3})
            for (double s : {-1.0, 1.0}) grid.push_back(b + s * d);
    std::erase_if(grid, [&](double t) { return t < t_lo || t > t_hi; });

    for (double t : grid) {
        double m = margin(t);
        if (m < report.worst_margin) {
            report.worst_margin = m;
            report.worst_margin_t = t;
        }
    }
    // Kinks carry a nonnegative curvature atom iff the slope jumps upward.
    for (double b : g.kink_points()) {
        if (b < t_lo || b > t_hi) continue;
        double jump = g.derivative(b + 1e-9) - g.derivative(b - 1e-9);
        if (jump < report.worst_jump) {
            report.worst_jump = jump;
            report.worst_jump_t = b;
        }
    }
    if (report.worst_jump == kInf) report.worst_jump = 0;
    report.pass = report.worst_margin >= -1e-10 && report.worst_jump >= -1e-10;
    return report;
}

namespace {

// log |c(t) - 1 + kappa| evaluated so that the constant plateaus keep full
// precision even when kappa underflows a plain double.
struct SolutionProfile {
    const CutoffProfile* cutoff;
    double kappa;      // may be any real; Projected modes have kappa in [0,1)
    double log_kappa;  // log |kappa|, from the LogReal ratio

    double log_abs_p(double t) const {
        if (t <= cutoff->t_half) return log_kappa;
        if (t >= cutoff->t_full)
            return kappa <= 1.0 ? std::log1p(-kappa) : std::log(kappa - 1.0);
        return std::log(std::fabs(cutoff->value(t) - 1.0 + kappa));
    }
    double p(double t) const { return cutoff->value(t) - 1.0 + kappa; }
};

}  // namespace

SolutionSet minimal_solution(const ModeSeries& f, const RadialWeight& tilted_weight,
                             const CutoffProfile& cutoff) {
    if (tilted_weight.dimension != 1)
        throw std::invalid_argument("minimal_solution: n = 1 only");
    if (f.dimension() != 1)
        throw std::invalid_argument("minimal_solution: series dimension mismatch");

    const RadialProfile& g = tilted_weight.profile;
    SolutionSet sol{cutoff, tilted_weight, {}, LogReal::zero()};

    std::vector<double> base_splits = g.kink_points();
    base_splits.push_back(cutoff.t_half);
    base_splits.push_back(cutoff.t_full);

    for (const auto& [alpha, coeff] : f.modes()) {
        ModeSolution mode;
        mode.k = alpha.parts[0];
        mode.coeff = coeff;
        const int exponent = 2 * mode.k + 2;
        auto log_w = [&](double t) { return exponent * t - g.value(t); };

        std::vector<double> splits = base_splits;
        auto peaks = quad::mode_split_points(g, exponent, Region::whole());
        splits.insert(splits.end(), peaks.begin(), peaks.end());

        QuadVerdict mk = quad::monomial_norm(tilted_weight, alpha, Region::whole());
        if (mk.finite) {
            mode.status = ModeStatus::Projected;
            mode.mode_norm = mk.value;

            // kappa = int (1-c) w / int w : the unique constant making
            // u_k = a z^k (c - 1 + kappa) orthogonal to z^k.
            quad::LogQuadResult iw =
                integrate_log(log_w, 0, 0, true, true, splits);
            auto log_one_minus_c = [&](double t) {
                if (t <= cutoff.t_half) return -kInf;
                if (t >= cutoff.t_full) return 0.0;
                return std::log1p(-cutoff.value(t));
            };
            quad::LogQuadResult i1mc = integrate_log(
                [&](double t) { return log_w(t) + log_one_minus_c(t); },
                cutoff.t_half, 0, false, true, splits);
            LogReal kappa_lr = LogReal::from_log(+1, i1mc.log_value - iw.log_value);
            mode.kappa = kappa_lr.to_double();

            SolutionProfile prof{&cutoff, mode.kappa, kappa_lr.log_magnitude()};

            // crossing of c = 1 - kappa inside the transition
            double a = cutoff.t_half, b = cutoff.t_full;
            for (int it = 0; it < 200; ++it) {
                double m = 0.5 * (a + b);
                (prof.p(m) > 0 ? a : b) = m;
            }
            mode.t_cross = 0.5 * (a + b);

            std::vector<double> psplits = splits;
            psplits.push_back(mode.t_cross);
            quad::LogQuadResult unorm = integrate_log(
                [&](double t) { return log_w(t) + 2.0 * prof.log_abs_p(t); }, 0, 0,
                true, true, psplits);
            mode.u_norm_sq =
                coeff.squared() * quad::angular_constant(1, alpha) *
                LogReal::from_log(+1, unorm.log_value);

            // Orthogonality re-checked by an independent split of the signed
            // integral at the crossing point.
            quad::LogQuadResult pos = integrate_log(
                [&](double t) { return log_w(t) + prof.log_abs_p(t); }, 0,
                mode.t_cross, true, false, splits);
            quad::LogQuadResult neg = integrate_log(
                [&](double t) { return log_w(t) + prof.log_abs_p(t); },
                mode.t_cross, 0, false, true, splits);
            LogReal p_mass = LogReal::from_log(+1, pos.log_value);
            LogReal n_mass = LogReal::from_log(+1, neg.log_value);
            mode.ortho_residual = relative_difference(p_mass, n_mass);
        } else {
            // z^k is not in the space: no orthogonality constraint, and
            // p = c is the one profile with compact support in t.
            mode.status = ModeStatus::Dropped;
            mode.kappa = 1.0;
            mode.mode_norm = LogReal::zero();
            mode.ortho_residual = 0.0;
            mode.t_cross = cutoff.t_half;
            auto log_c = [&](double t) {
                if (t <= cutoff.t_half) return 0.0;
                if (t >= cutoff.t_full) return -kInf;
                return std::log(cutoff.value(t));
            };
            quad::LogQuadResult unorm = integrate_log(
                [&](double t) { return log_w(t) + 2.0 * log_c(t); }, 0,
                cutoff.t_full, true, false, splits);
            mode.u_norm_sq = coeff.squared() * quad::angular_constant(1, alpha) *
                             LogReal::from_log(+1, unorm.log_value);
        }
        sol.u_norm_sq_total += mode.u_norm_sq;
        sol.modes.push_back(std::move(mode));
    }
    return sol;
}

Approximant approximant(const ModeSeries& f, const SolutionSet& sol,
                        const RadialWeight& tilted_limit) {
    if (tilted_limit.dimension != 1)
        throw std::invalid_argument("approximant: n = 1 only");
    if (f.modes().size() != sol.modes.size())
        throw std::invalid_argument("approximant: solution does not match f");
    Approximant out{ModeSeries(1), {}, {}, {}, {}};

    const CutoffProfile& cutoff = sol.cutoff;
    const RadialProfile& g = sol.weight.profile;
    std::vector<double> splits = g.kink_points();
    splits.push_back(cutoff.t_half);
    splits.push_back(cutoff.t_full);

    for (const ModeSolution& mode : sol.modes) {
        MultiIndex alpha = MultiIndex::first_variable(1, mode.k);
        QuadVerdict m_lim = quad::monomial_norm(tilted_limit, alpha, Region::whole());
        if (!m_lim.finite)
            throw std::domain_error(
                "approximant: f does not lie in the limit space (mode " +
                std::to_string(mode.k) + ")");
        LogReal a_sq = mode.coeff.squared();
        out.f_norm_sq_limit += a_sq * m_lim.value;

        const int exponent = 2 * mode.k + 2;
        auto log_w = [&](double t) { return exponent * t - g.value(t); };
        auto log_c = [&](double t) {
            if (t <= cutoff.t_half) return 0.0;
            if (t >= cutoff.t_full) return -kInf;
            return std::log(cutoff.value(t));
        };
        quad::LogQuadResult fc = integrate_log(
            [&](double t) { return log_w(t) + 2.0 * log_c(t); }, 0, cutoff.t_full,
            true, false, splits);
        out.fc_norm_sq_member += a_sq * quad::angular_constant(1, alpha) *
                                 LogReal::from_log(+1, fc.log_value);

        if (mode.status == ModeStatus::Projected) {
            LogReal kappa = LogReal::from_double(mode.kappa);
            LogReal one_minus = LogReal::one() - kappa;
            out.series.set(alpha, mode.coeff * one_minus);
            out.err_sq_limit += (mode.coeff * kappa).squared() * m_lim.value;
            out.norm_sq_member += (mode.coeff * one_minus).squared() * mode.mode_norm;
        } else {
            out.err_sq_limit += a_sq * m_lim.value;  // coefficient dropped to 0
        }
    }
    return out;
}

BoundAudit berndtsson_audit(const ModeSeries& f, const SolutionSet& sol) {
    const CutoffProfile& cutoff = sol.cutoff;
    const RadialProfile& g = sol.weight.profile;
    const double n_level = cutoff.level;

    std::vector<double> splits = g.kink_points();

    BoundAudit audit;
    audit.lhs = sol.u_norm_sq_total;

    for (const auto& [alpha, coeff] : f.modes()) {
        const int exponent = 2 * alpha.order() + 2;
        auto log_w = [&](double t) { return exponent * t - g.value(t); };
        LogReal a_sq = coeff.squared();
        LogReal ang = quad::angular_constant(1, alpha);

        // |v|^2 against the tilt form of psi collapses to |f|^2 chi'^2/(eps psi)^2.
        quad::LogQuadResult rhs = integrate_log(
            [&](double t) {
                double cp = cutoff.chi_prime(cutoff.argument(t));
                if (cp == 0.0) return -kInf;
                double minus_eps_psi = cutoff.eps * std::log(big_l(t));
                return log_w(t) + 2.0 * std::log(std::fabs(cp)) -
                       2.0 * std::log(minus_eps_psi);
            },
            cutoff.t_half, cutoff.t_full, false, false, splits);
        audit.rhs24 += LogReal::from_double(24.0) * a_sq * ang *
                       LogReal::from_log(+1, rhs.log_value);

        quad::LogQuadResult annulus = integrate_log(
            log_w, cutoff.t_half, cutoff.t_full, false, false, splits);
        audit.cap += LogReal::from_double(864.0 / (n_level * n_level)) * a_sq * ang *
                     LogReal::from_log(+1, annulus.log_value);
    }

    if (audit.rhs24.is_zero() || audit.cap.is_zero()) {
        audit.pass = audit.lhs.is_zero();  // nothing to solve against
        return audit;
    }
    audit.lhs_over_rhs = (audit.lhs / audit.rhs24).to_double();
    audit.lhs_over_cap = (audit.lhs / audit.cap).to_double();
    audit.pass = audit.lhs_over_rhs <= 1.0 + kAuditSlack &&
                 audit.lhs_over_cap <= 1.0 + kAuditSlack;
    return audit;
}

double cr_residual_max(const ModeSeries& f, const SolutionSet& sol, int samples,
                       std::uint64_t seed) {
    const CutoffProfile& cutoff = sol.cutoff;
    using cplx = std::complex<double>;

    auto p_of = [&](const ModeSolution& m, double t) {
        return m.status == ModeStatus::Projected
                   ? cutoff.value(t) - 1.0 + m.kappa
                   : cutoff.value(t);
    };
    auto u_of = [&](cplx z) {
        double t = std::log(std::abs(z));
        cplx total = 0;
        for (const ModeSolution& m : sol.modes) {
            cplx zk = 1;
            for (int i = 0; i < m.k; ++i) zk *= z;
            total += m.coeff.to_double() * zk * p_of(m, t);
        }
        return total;
    };
    auto v_of = [&](cplx z) {
        double t = std::log(std::abs(z));
        cplx fz = 0;
        for (const auto& [alpha, coeff] : f.modes()) {
            cplx zk = 1;
            for (int i = 0; i < alpha.parts[0]; ++i) zk *= z;
            fz += coeff.to_double() * zk;
        }
        return fz * cutoff.dc_dt(t) / (2.0 * std::conj(z));
    };

    // Quasi-random (golden/plastic Kronecker) points in the middle 90% of the
    // transition, where chi' is bounded away from zero.
    const double kGolden = 0.6180339887498949;
    const double kPlastic = 0.7548776662466927;
    double s1 = frac(seed * 2.3283064365386963e-10);
    double s2 = frac(seed * 7.4505805969238281e-9);
    const double x_lo = -0.95 * kLn2, x_hi = -0.05 * kLn2;

    double worst = 0;
    for (int i = 1; i <= samples; ++i) {
        double x = x_lo + (x_hi - x_lo) * frac(kGolden * i + s1);
        double theta = 2 * std::numbers::pi * frac(kPlastic * i + s2);
        double s = cutoff.level * std::exp(x);  // -eps*psi at the sample
        double t = invert_minus_eps_psi(s, cutoff.eps);
        cplx z = std::polar(std::exp(t), theta);

        double h = std::abs(z) * 1e-6;
        cplx dx = (u_of(z + h) - u_of(z - h)) / (2 * h);
        cplx dy = (u_of(z + cplx(0, h)) - u_of(z - cplx(0, h))) / (2 * h);
        cplx dbar_u = 0.5 * (dx + cplx(0, 1) * dy);
        cplx v = v_of(z);
        double denom = std::abs(v);
        if (denom == 0) continue;
        worst = std::max(worst, std::abs(dbar_u - v) / denom);
    }
    return worst;
}

LogReal perturbed_mode_norm_sq(const SolutionSet& sol, int k, double delta_rel) {
    const ModeSolution* mode = nullptr;
    for (const ModeSolution& m : sol.modes)
        if (m.k == k) mode = &m;
    if (!mode || mode->status != ModeStatus::Projected)
        throw std::invalid_argument("perturbed_mode_norm_sq: no such Projected mode");

    // u + delta*a*z^k shifts kappa by delta_rel inside the same profile.
    const CutoffProfile& cutoff = sol.cutoff;
    const RadialProfile& g = sol.weight.profile;
    double kappa = mode->kappa + delta_rel;
    SolutionProfile prof{&cutoff, kappa, std::log(std::fabs(kappa))};

    const int exponent = 2 * k + 2;
    std::vector<double> splits = g.kink_points();
    splits.push_back(cutoff.t_half);
    splits.push_back(cutoff.t_full);
    if (kappa > 0 && kappa < 1) {
        double a = cutoff.t_half, b = cutoff.t_full;
        for (int it = 0; it < 200; ++it) {
            double m = 0.5 * (a + b);
            (prof.p(m) > 0 ? a : b) = m;
        }
        splits.push_back(0.5 * (a + b));
    }
    auto peaks = quad::mode_split_points(g, exponent, Region::whole());
    splits.insert(splits.end(), peaks.begin(), peaks.end());

    quad::LogQuadResult res = integrate_log(
        [&](double t) { return exponent * t - g.value(t) + 2.0 * prof.log_abs_p(t); },
        0, 0, true, true, splits);
    return mode->coeff.squared() *
           quad::angular_constant(1, MultiIndex::first_variable(1, k)) *
           LogReal::from_log(+1, res.log_value);
}

double hormander_coefficient(double r, double t) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("hormander_coefficient: r in (0,1)");
    if (!(t > 0)) throw std::invalid_argument("hormander_coefficient: t must be > 0");
    if (!((1 + t) * r < 1))
        throw std::invalid_argument("hormander_coefficient: requires (1+t) r < 1");
    return (1 + 1 / t) / (1 - (1 + t) * r);
}

CoefficientMinimum minimize_coefficient(double r) {
    if (!(r > 0 && r < 1)) throw std::invalid_argument("minimize_coefficient: r in (0,1)");
    CoefficientMinimum m;
    m.t_star = 1.0 / std::sqrt(r) - 1.0;
    double s = 1.0 - std::sqrt(r);
    m.min_value = 1.0 / (s * s);
    if (m.t_star < 1.0) {
        m.constrained_t = m.t_star;
        m.constrained_value = m.min_value;
    } else {
        // domain (0, min(1, 1/r - 1)) with the coefficient decreasing up to
        // t*; the infimum sits at the excluded right end t = 1
        m.constrained_t = 1.0;
        m.constrained_value = 2.0 / (1.0 - 2.0 * r);
    }
    m.six_bound = 6.0 / ((1 - r) * (1 - r));
    return m;
}

ApproxCell run_approximation(const ModeSeries& f, const WeightSequence& seq, int j,
                             int level, double eps, int cr_samples,
                             std::uint64_t seed) {
    if (j < 1 || j > static_cast<int>(seq.weights.size()))
        throw std::invalid_argument("run_approximation: member index out of range");
    if (seq.limit.dimension != 1)
        throw std::invalid_argument("run_approximation: n = 1 only");

    RadialWeight member(seq.weights[j - 1].profile.with_term(tilt_term(eps)), 1);
    RadialWeight limit(seq.limit.profile.with_term(tilt_term(eps)), 1);

    ApproxCell cell;
    cell.j = j;
    cell.level = level;
    cell.eps = eps;
    cell.solution = minimal_solution(f, member, build_cutoff(level, eps));
    cell.approx = approximant(f, cell.solution, limit);
    cell.bound = berndtsson_audit(f, cell.solution);
    cell.curvature = curvature_check(member, eps);
    cell.cr_residual = cr_residual_max(f, cell.solution, cr_samples, seed);
    return cell;
}

}  // namespace bergman::dbar
