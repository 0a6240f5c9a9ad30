#include "bergman/counterexample.hpp"

#include <cmath>
#include <stdexcept>

namespace bergman::counterexample {

using quad::QuadVerdict;
using quad::Region;

namespace {

int growth_rate(int n, int k) { return 2 * n + 1 + 2 * k; }

constexpr double kCertTol = 1e-9;   // slack on quadrature-backed inequalities
constexpr double kExactTol = 1e-12; // eps_k (A_k+B_k) = 2^{-(k+1)} identity

}  // namespace

int CounterexampleInstance::growth(int k) const {
    return growth_n.at(k - first_level);
}
double CounterexampleInstance::continuity(int k) const {
    return continuity_c.at(k - first_level);
}
const LogReal& CounterexampleInstance::a_of(int k) const { return inner.at(k - first_level); }
const LogReal& CounterexampleInstance::b_of(int k) const { return outer.at(k - first_level); }
const LogReal& CounterexampleInstance::eps_of(int k) const { return eps.at(k - first_level); }

WeightSequence build_weights(int n, int k_max) {
    if (n < 1) throw std::invalid_argument("build_weights: n must be >= 1");
    if (k_max < 2) throw std::invalid_argument("build_weights: k_max must be >= 2");

    const int last_piece = k_max + 2;  // limit tail slope N_{k_max+2}

    // Shared piece data: switch points log(k), constants by continuity.
    std::vector<double> switch_t(last_piece + 1, 0.0);
    std::vector<double> c_of(last_piece + 1, 0.0);
    for (int k = 2; k <= last_piece; ++k) switch_t[k] = std::log(static_cast<double>(k));

    auto make_profile = [&](int j) {
        // phi_j: max(1,t) below log 2, then C_i + N_i t on [log i, log(i+1)),
        // last piece open to +inf.
        std::vector<Term> terms;
        std::vector<double> breaks;
        if (j == 1) {
            terms.push_back(Term{TermKind::MaxOneT});
        } else {
            terms.push_back(Term{TermKind::MaxOneT, 0.0,
                                 -std::numeric_limits<double>::infinity(), switch_t[2]});
            for (int i = 2; i <= j; ++i) {
                double lo = switch_t[i];
                double hi = (i < j) ? switch_t[i + 1]
                                    : std::numeric_limits<double>::infinity();
                terms.push_back(Term{TermKind::Constant, c_of[i], lo, hi});
                terms.push_back(Term{TermKind::Linear,
                                     static_cast<double>(growth_rate(n, i)), lo, hi});
                breaks.push_back(lo);
            }
        }
        return RadialProfile(std::move(terms), std::move(breaks), /*declared_psh=*/true);
    };

    // C_{i} = phi_{i-1}(log i) - N_i log i, evaluated through the profile
    // built so far.
    RadialProfile prev = make_profile(1);
    for (int i = 2; i <= last_piece; ++i) {
        c_of[i] = prev.value(switch_t[i]) - growth_rate(n, i) * switch_t[i];
        prev = make_profile(i);
    }

    std::vector<RadialWeight> weights;
    weights.reserve(k_max + 1);
    for (int j = 1; j <= k_max + 1; ++j)
        weights.emplace_back(make_profile(j), n);
    RadialWeight limit(make_profile(last_piece), n);

    WeightSequence seq{std::move(weights), std::move(limit)};
    SequenceAudit audit = audit_sequence(seq);
    if (!audit.pass)
        throw std::runtime_error("build_weights: monotonicity audit failed");
    return seq;
}

std::pair<LogReal, LogReal> compute_ab(const WeightSequence& seq, int ell) {
    if (ell < 2 || ell > static_cast<int>(seq.weights.size()))
        throw std::invalid_argument("compute_ab: level out of range");
    const int n = seq.limit.dimension;
    const double t_ell = std::log(static_cast<double>(ell));
    MultiIndex alpha = MultiIndex::first_variable(n, ell);

    QuadVerdict a = quad::monomial_norm(seq.weights[0], alpha, Region::ball(t_ell));
    // Tail exponent (2l+2n) - N_l = -1, so B_l is always finite.
    QuadVerdict b =
        quad::monomial_norm(seq.weights[ell - 1], alpha, Region::exterior(t_ell));
    if (!a.finite || !b.finite)
        throw std::runtime_error("compute_ab: unexpected divergence");
    return {a.value, b.value};
}

LogReal choose_eps(const LogReal& a, const LogReal& b, int ell) {
    LogReal eps = LogReal::two_pow(-(ell + 1)) / (a + b);
    if (eps > LogReal::one()) eps = LogReal::one();
    return eps;
}

CounterexampleInstance build_instance(int n, int k_max) {
    CounterexampleInstance inst;
    inst.n = n;
    inst.k_max = k_max;
    inst.weights = build_weights(n, k_max);
    inst.f = ModeSeries(n);

    for (int k = 2; k <= k_max + 2; ++k) {
        inst.growth_n.push_back(growth_rate(n, k));
        // C_k can be read off any profile that carries piece k; use the limit.
        double t_k = std::log(static_cast<double>(k));
        inst.continuity_c.push_back(inst.weights.limit.profile.value(t_k) -
                                    growth_rate(n, k) * t_k);
    }
    for (int k = 2; k <= k_max + 1; ++k) {
        auto [a, b] = compute_ab(inst.weights, k);
        LogReal e = choose_eps(a, b, k);
        inst.inner.push_back(a);
        inst.outer.push_back(b);
        inst.eps.push_back(e);
        inst.f.set_first_variable(k, e);
    }
    return inst;
}

MembershipCertificate certify_membership(const CounterexampleInstance& inst) {
    MembershipCertificate cert;
    const int n = inst.n;

    cert.weights_psh = true;
    for (const RadialWeight& w : inst.weights.weights)
        cert.weights_psh = cert.weights_psh && check_psh(w.profile).pass;
    cert.weights_psh = cert.weights_psh && check_psh(inst.weights.limit.profile).pass;
    cert.sequence_monotone = audit_sequence(inst.weights).pass;

    // (i) f in the limit space: per-mode exact norms, each bracketed by the
    // comparison bound eps_k (A_k + B_k) <= 2^{-k}, geometric tail beyond.
    cert.in_limit_space = true;
    LogReal running;
    for (int k = 2; k <= inst.k_max + 1; ++k) {
        TermCertificate tc;
        tc.k = k;
        MultiIndex alpha = MultiIndex::first_variable(n, k);
        QuadVerdict mk = quad::monomial_norm(inst.weights.limit, alpha, Region::whole());
        if (!mk.finite)
            throw std::runtime_error("certify_membership: limit-space mode diverged");
        tc.mode_norm = mk.value;
        const LogReal& e = inst.eps_of(k);
        tc.term = e.squared() * mk.value;
        LogReal ab = inst.a_of(k) + inst.b_of(k);
        tc.ab_bound = e * ab;
        tc.budget = LogReal::two_pow(-k);
        running += tc.term;
        tc.partial_sum = running;

        bool exact = relative_difference(tc.ab_bound, LogReal::two_pow(-(k + 1))) <
                         kExactTol ||
                     tc.ab_bound <= LogReal::two_pow(-(k + 1));
        bool compare = mk.value.log_magnitude() <=
                       ab.log_magnitude() + std::log1p(kCertTol);
        bool budget = tc.term.log_magnitude() <=
                      tc.budget.log_magnitude() + std::log1p(kCertTol);
        tc.ok = exact && compare && budget;
        cert.in_limit_space = cert.in_limit_space && tc.ok;
        cert.terms.push_back(std::move(tc));
    }
    cert.norm_sq_lower = running;
    cert.tail_bound = LogReal::two_pow(-(inst.k_max + 1));

    // (ii) outside every member space: under phi_j the smallest divergent
    // mode of f is exactly j+1 (2k+2n >= N_j = 2n+1+2j iff k >= j+1).
    cert.outside_every_member = true;
    for (int j = 1; j <= inst.k_max; ++j) {
        WitnessEntry w;
        w.j = j;
        const RadialWeight& phi_j = inst.weights.weights[j - 1];
        double slope = phi_j.profile.tail_slope();
        w.witness_mode = -1;
        for (const auto& [alpha, coeff] : inst.f.modes()) {
            (void)coeff;
            if (2 * alpha.order() + 2 * n >= slope) {
                w.witness_mode = alpha.order();
                break;
            }
        }
        w.matches_expected = w.witness_mode == j + 1;
        quad::SeriesNorm sn = quad::series_norm(phi_j, inst.f, Region::whole());
        w.confirmed_by_series = !sn.verdict.finite && sn.divergent_witness &&
                                sn.divergent_witness->order() <= j + 1 &&
                                sn.divergent_witness->order() == w.witness_mode;
        cert.outside_every_member =
            cert.outside_every_member && w.matches_expected && w.confirmed_by_series;
        cert.witnesses.push_back(w);
    }

    cert.conclusion_fails_for_all = cert.outside_every_member;
    cert.pass = cert.weights_psh && cert.sequence_monotone && cert.in_limit_space &&
                cert.outside_every_member;
    return cert;
}

}  // namespace bergman::counterexample
