#include "bergman/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bergman {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPshTol = 1e-10;       // slope-increment / first-difference floor
constexpr double kContinuityTol = 1e-12;  // relative, at breakpoints
constexpr double kSeqTol = 1e-12;

// log(e + e^{2t}), stable for all t.
template <class F>
F log_e_plus_exp2t(F t) {
    F u = 2 * t;
    if (u > F(1)) return u + std::log1p(std::exp(F(1) - u));
    return F(1) + std::log1p(std::exp(u - F(1)));
}

// log(1 + e^{2t})
template <class F>
F log_one_plus_exp2t(F t) {
    F u = 2 * t;
    if (u > F(0)) return u + std::log1p(std::exp(-u));
    return std::log1p(std::exp(u));
}

double sigma_e(double t) { return 1.0 / (1.0 + std::exp(1.0 - 2.0 * t)); }
double sigma_1(double t) { return 1.0 / (1.0 + std::exp(-2.0 * t)); }

}  // namespace

double Term::value(double t) const { return static_cast<double>(value_ld(t)); }

long double Term::value_ld(long double t) const {
    switch (kind) {
        case TermKind::Constant: return param;
        case TermKind::Linear: return param * t;
        case TermKind::MaxOneT: return t > 1 ? t : 1.0L;
        case TermKind::LogOnePlusR2: return param * log_one_plus_exp2t(t);
        case TermKind::NegLogLogER2: return param * (-std::log(log_e_plus_exp2t(t)));
        case TermKind::GaussR2: return param * std::exp(2 * t);
    }
    return 0;
}

double Term::derivative(double t) const {
    switch (kind) {
        case TermKind::Constant: return 0;
        case TermKind::Linear: return param;
        case TermKind::MaxOneT: return t >= 1 ? 1.0 : 0.0;
        case TermKind::LogOnePlusR2: return param * 2 * sigma_1(t);
        case TermKind::NegLogLogER2: {
            double w = log_e_plus_exp2t(t);
            return param * (-2 * sigma_e(t) / w);
        }
        case TermKind::GaussR2: return param * 2 * std::exp(2 * t);
    }
    return 0;
}

double Term::second_derivative(double t) const {
    switch (kind) {
        case TermKind::Constant:
        case TermKind::Linear:
        case TermKind::MaxOneT: return 0;
        case TermKind::LogOnePlusR2: {
            double s = sigma_1(t);
            return param * 4 * s * (1 - s);
        }
        case TermKind::NegLogLogER2: {
            double w = log_e_plus_exp2t(t);
            double s = sigma_e(t);
            return param * (-4 * s * (1 - s) / w + 4 * s * s / (w * w));
        }
        case TermKind::GaussR2: return param * 4 * std::exp(2 * t);
    }
    return 0;
}

double Term::tail_slope() const {
    switch (kind) {
        case TermKind::Constant: return 0;
        case TermKind::Linear: return param;
        case TermKind::MaxOneT: return 1;
        case TermKind::LogOnePlusR2: return 2 * param;
        case TermKind::NegLogLogER2: return 0;
        case TermKind::GaussR2:
            return param > 0 ? kInf : (param < 0 ? -kInf : 0);
    }
    return 0;
}

double Term::head_slope() const { return kind == TermKind::Linear ? param : 0.0; }

RadialProfile::RadialProfile(std::vector<Term> terms, std::vector<double> breakpoints,
                             bool declared_psh)
    : terms_(std::move(terms)), breakpoints_(std::move(breakpoints)),
      declared_psh_(declared_psh) {
    if (std::adjacent_find(breakpoints_.begin(), breakpoints_.end(),
                           [](double a, double b) { return a >= b; }) !=
        breakpoints_.end())
        throw std::invalid_argument("RadialProfile: breakpoints must be strictly increasing");
    for (const Term& term : terms_) {
        if (!(term.t_min < term.t_max))
            throw std::invalid_argument("RadialProfile: empty term window");
        for (double edge : {term.t_min, term.t_max}) {
            if (!std::isfinite(edge)) continue;
            if (std::find(breakpoints_.begin(), breakpoints_.end(), edge) ==
                breakpoints_.end())
                throw std::invalid_argument(
                    "RadialProfile: term window edge not listed as a breakpoint");
        }
    }
    check_continuity();
    if (declared_psh_) {
        PshReport report = check_psh(*this);
        if (!report.pass)
            throw std::invalid_argument(
                "RadialProfile: declared psh but audit failed near t = " +
                std::to_string(report.worst_convexity < -kPshTol
                                   ? report.worst_convexity_t
                                   : report.worst_monotonicity_t));
    }
}

double RadialProfile::value(double t) const { return static_cast<double>(value_ld(t)); }

long double RadialProfile::value_ld(long double t) const {
    long double sum = 0;
    for (const Term& term : terms_)
        if (t >= term.t_min && t < term.t_max) sum += term.value_ld(t);
    return sum;
}

double RadialProfile::derivative(double t) const {
    double sum = 0;
    for (const Term& term : terms_)
        if (t >= term.t_min && t < term.t_max) sum += term.derivative(t);
    return sum;
}

double RadialProfile::second_derivative(double t) const {
    double sum = 0;
    for (const Term& term : terms_)
        if (t >= term.t_min && t < term.t_max) sum += term.second_derivative(t);
    return sum;
}

double RadialProfile::tail_slope() const {
    double sum = 0;
    for (const Term& term : terms_)
        if (term.t_max == kInf) sum += term.tail_slope();
    return sum;
}

double RadialProfile::head_slope() const {
    double sum = 0;
    for (const Term& term : terms_)
        if (term.t_min == -kInf) sum += term.head_slope();
    return sum;
}

std::vector<double> RadialProfile::kink_points() const {
    std::vector<double> pts = breakpoints_;
    for (const Term& term : terms_)
        if (term.kind == TermKind::MaxOneT && term.t_min < 1 && 1 < term.t_max)
            pts.push_back(1.0);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

RadialProfile RadialProfile::with_term(const Term& extra, bool declared_psh) const {
    std::vector<Term> terms = terms_;
    terms.push_back(extra);
    return RadialProfile(std::move(terms), breakpoints_, declared_psh);
}

void RadialProfile::check_continuity() const {
    for (double b : breakpoints_) {
        long double left = 0, right = 0;
        for (const Term& term : terms_) {
            if (term.t_min < b && term.t_max >= b) left += term.value_ld(b);
            if (term.t_min <= b && term.t_max > b) right += term.value_ld(b);
        }
        long double scale = std::max<long double>(
            1.0L, std::max(std::fabs(left), std::fabs(right)));
        if (std::fabs(left - right) > kContinuityTol * scale)
            throw std::invalid_argument(
                "RadialProfile: discontinuity at breakpoint t = " + std::to_string(b));
    }
}

namespace {

std::vector<double> audit_grid(const std::vector<double>& kinks, double t_lo,
                               double t_hi, int min_points) {
    std::vector<double> grid;
    int n = std::max(min_points, 2);
    grid.reserve(n + 12 * kinks.size());
    for (int i = 0; i < n; ++i)
        grid.push_back(t_lo + (t_hi - t_lo) * i / double(n - 1));
    // densify around kinks: 10 extra points inside +-1e-3
    for (double k : kinks)
        for (double d : {2e-4, 4e-4, 6e-4, 8e-4, 1e-3}) {
            grid.push_back(k - d);
            grid.push_back(k + d);
        }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::erase_if(grid, [&](double t) { return t < t_lo || t > t_hi; });
    return grid;
}

}  // namespace

PshReport check_psh(const RadialProfile& profile, double t_lo, double t_hi,
                    int min_points) {
    if (min_points < 100)
        throw std::invalid_argument("check_psh: grid needs at least 100 points");
    if (!(t_lo < t_hi)) throw std::invalid_argument("check_psh: empty grid range");

    std::vector<double> grid = audit_grid(profile.kink_points(), t_lo, t_hi, min_points);
    std::vector<long double> g(grid.size());
    for (size_t i = 0; i < grid.size(); ++i) g[i] = profile.value_ld(grid[i]);

    PshReport report;
    report.points = static_cast<int>(grid.size());
    report.worst_convexity = kInf;
    report.worst_monotonicity = kInf;

    long double prev_slope = 0;
    bool have_prev = false;
    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        long double h = static_cast<long double>(grid[i + 1]) - grid[i];
        long double diff = g[i + 1] - g[i];
        if (double(diff) < report.worst_monotonicity) {
            report.worst_monotonicity = static_cast<double>(diff);
            report.worst_monotonicity_t = grid[i];
        }
        long double slope = diff / h;
        if (have_prev) {
            long double inc = slope - prev_slope;
            if (double(inc) < report.worst_convexity) {
                report.worst_convexity = static_cast<double>(inc);
                report.worst_convexity_t = grid[i];
            }
        }
        prev_slope = slope;
        have_prev = true;
    }
    report.pass = report.worst_convexity >= -kPshTol &&
                  report.worst_monotonicity >= -kPshTol;
    return report;
}

PshReport check_psh(const RadialProfile& profile) {
    std::vector<double> kinks = profile.kink_points();
    double lo = kinks.empty() ? -10.0 : kinks.front() - 10.0;
    double hi = kinks.empty() ? 10.0 : kinks.back() + 10.0;
    return check_psh(profile, lo, hi);
}

RadialWeight::RadialWeight(RadialProfile p, int n) : profile(std::move(p)), dimension(n) {
    if (n < 1) throw std::invalid_argument("RadialWeight: dimension must be >= 1");
}

SequenceAudit audit_sequence(const WeightSequence& seq, int min_points) {
    if (seq.weights.empty())
        throw std::invalid_argument("audit_sequence: empty sequence");
    for (const RadialWeight& w : seq.weights)
        if (w.dimension != seq.limit.dimension)
            throw std::invalid_argument("audit_sequence: mixed dimensions");

    std::vector<double> kinks = seq.limit.profile.kink_points();
    for (const RadialWeight& w : seq.weights) {
        auto k = w.profile.kink_points();
        kinks.insert(kinks.end(), k.begin(), k.end());
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());
    double lo = kinks.empty() ? -10.0 : kinks.front() - 10.0;
    double hi = kinks.empty() ? 10.0 : kinks.back() + 10.0;
    std::vector<double> grid = audit_grid(kinks, lo, hi, min_points);

    SequenceAudit audit;
    audit.worst_violation = kInf;
    audit.pass = true;

    auto check_pair = [&](const RadialProfile& a, const RadialProfile& b, int idx) {
        for (double t : grid) {
            double diff = static_cast<double>(b.value_ld(t) - a.value_ld(t));
            if (diff < audit.worst_violation) {
                audit.worst_violation = diff;
                audit.worst_t = t;
                audit.worst_pair = idx;
            }
            if (diff < -kSeqTol) audit.pass = false;
        }
    };
    for (size_t j = 0; j + 1 < seq.weights.size(); ++j)
        check_pair(seq.weights[j].profile, seq.weights[j + 1].profile, static_cast<int>(j));
    check_pair(seq.weights.back().profile, seq.limit.profile,
               static_cast<int>(seq.weights.size()) - 1);

    audit.agreement_t.resize(seq.weights.size(), -kInf);
    for (size_t j = 0; j < seq.weights.size(); ++j) {
        double agree = -kInf;
        for (double t : grid) {
            long double gj = seq.weights[j].profile.value_ld(t);
            long double gl = seq.limit.profile.value_ld(t);
            long double scale = std::max<long double>(1.0L, std::fabs(gl));
            if (std::fabs(gj - gl) > kSeqTol * scale) break;
            agree = t;
        }
        audit.agreement_t[j] = agree;
    }
    return audit;
}

RadialProfile profile_constant(double c) {
    return RadialProfile({Term{TermKind::Constant, c}}, {});
}

RadialProfile profile_linear(double slope) {
    return RadialProfile({Term{TermKind::Linear, slope}}, {});
}

RadialProfile profile_max_one_t() {
    return RadialProfile({Term{TermKind::MaxOneT}}, {}, /*declared_psh=*/true);
}

Term tilt_term(double eps) { return Term{TermKind::LogOnePlusR2, eps}; }

Term loglog_term(double coeff) { return Term{TermKind::NegLogLogER2, coeff}; }

namespace testing {
RadialProfile gaussian_profile(double a) {
    return RadialProfile({Term{TermKind::GaussR2, a}}, {}, /*declared_psh=*/true);
}
}  // namespace testing

}  // namespace bergman
