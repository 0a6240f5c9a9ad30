#pragma once

#include <utility>
#include <vector>

#include "bergman/log_real.hpp"
#include "bergman/mode_series.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/radial_profile.hpp"

namespace bergman::counterexample {

/// A fully built instance of the piecewise-log weight family together with
/// the series f = sum_k eps_k z_1^k that is integrable against the limit
/// weight but against none of the members.
///
/// Index conventions: weights are phi_1..phi_{k_max+1} plus the (truncated)
/// limit; N_k, C_k, A_k, B_k, eps_k are carried for k = 2..k_max+1, so the
/// divergence witness mode j+1 exists for every j <= k_max.
struct CounterexampleInstance {
    int n = 1;
    int k_max = 0;
    WeightSequence weights;
    std::vector<int> growth_n;       // N_k = 2n+1+2k, k = 2..k_max+2 (limit tail)
    std::vector<double> continuity_c;  // C_k matching growth_n
    std::vector<LogReal> inner;      // A_k, k = 2..k_max+1
    std::vector<LogReal> outer;      // B_k
    std::vector<LogReal> eps;        // eps_k
    ModeSeries f{1};

    int first_level = 2;
    int level_count() const { return k_max; }  // k = 2..k_max+1
    int growth(int k) const;        // N_k
    double continuity(int k) const; // C_k
    const LogReal& a_of(int k) const;
    const LogReal& b_of(int k) const;
    const LogReal& eps_of(int k) const;
};

/// The monotone family: phi_1 = max(1, log||z||); each phi_{k+1} agrees with
/// phi_k up to ||z|| = k+1 and continues as C_{k+1} + N_{k+1} log||z|| with
/// N_k = 2n+1+2k and C_{k+1} forced by continuity.  Returns phi_1..phi_{k_max+1}
/// and the limit truncated at piece k_max+2.  Every weight passes the psh
/// audit; the sequence passes the monotonicity audit.
WeightSequence build_weights(int n, int k_max);

/// (A_l, B_l): the l-th mode's mass below ||z|| = l under phi_1 and beyond
/// ||z|| = l under phi_l.  B_l is finite by construction (tail deficit -1).
std::pair<LogReal, LogReal> compute_ab(const WeightSequence& seq, int ell);

/// eps_l = min(1, 2^{-(l+1)} / (A_l + B_l)): strict budget with a factor-2
/// margin, capped so eps_l^2 m_l <= eps_l (A_l + B_l) stays valid.
LogReal choose_eps(const LogReal& a, const LogReal& b, int ell);

CounterexampleInstance build_instance(int n, int k_max);

struct TermCertificate {
    int k = 0;
    LogReal mode_norm;   // m_k under the limit weight
    LogReal term;        // eps_k^2 m_k
    LogReal ab_bound;    // eps_k (A_k + B_k)
    LogReal budget;      // 2^{-k}
    LogReal partial_sum; // S_k
    bool ok = false;
};

struct WitnessEntry {
    int j = 0;
    int witness_mode = 0;      // smallest divergent mode of f under phi_j
    bool matches_expected = false;  // == j+1
    bool confirmed_by_series = false;
};

struct MembershipCertificate {
    std::vector<TermCertificate> terms;
    LogReal norm_sq_lower;  // S_K
    LogReal tail_bound;     // 2^{-K}, K = k_max+1
    std::vector<WitnessEntry> witnesses;
    bool weights_psh = false;
    bool sequence_monotone = false;
    bool in_limit_space = false;       // every certificate inequality held
    bool outside_every_member = false; // every witness confirmed
    bool conclusion_fails_for_all = false;
    bool pass = false;
};

/// Both halves of the construction's claim, checked numerically: f lies in
/// the limit space (per-term budget eps_k(A_k+B_k) <= 2^{-k} plus certified
/// geometric tail) and falls outside every member space with witness mode
/// exactly j+1.  Throws when a certificate inequality fails outright.
MembershipCertificate certify_membership(const CounterexampleInstance& inst);

}  // namespace bergman::counterexample
