#pragma once

#include <optional>
#include <vector>

#include "bergman/log_real.hpp"
#include "bergman/mode_series.hpp"
#include "bergman/quadrature.hpp"
#include "bergman/radial_profile.hpp"

namespace bergman::integrability {

/// Is int_{||z||>1} |z^alpha|^2 / ||z||^N finite?  Strict real-N criterion:
/// finite iff N > 2|alpha| + 2n.  For integer N this coincides with the
/// classical threshold N >= 2|alpha| + 2n + 1.
bool threshold_finite(int n, const MultiIndex& alpha, double N);

/// Lower-bound certificate built from disjoint dyadic polydisc shells
/// 2^k <= |z_i| <= 2^{k+1}: partial sums of c_N sum_k 2^{k(2|alpha|+2n-N)}
/// with c_N = pi^n / (sqrt(n) * 2)^N.
struct DyadicEvidence {
    std::vector<LogReal> partial_sums;  // K entries, k = 1..K
    double exponent = 0;                // 2|alpha| + 2n - N
    bool diverges = false;              // exponent >= 0
};

DyadicEvidence dyadic_lower_bound(int n, const MultiIndex& alpha, double N, int K);

/// Largest degree an entire function can carry under a weight that is
/// C + N log||z|| far out: max{d >= 0 : 2d + 2n < N}, or nullopt when even
/// constants fail (no nonzero entire function is integrable).
std::optional<int> degree_cap(int n, double N);

struct MembershipVerdict {
    std::vector<MultiIndex> excluded;  // modes whose norm diverges
    bool is_member = false;            // all excluded coefficients vanish
    double slope = 0;
};

/// Which modes of f force divergence under the weight's tail slope; f lies in
/// the weighted space only if it carries none of them.
MembershipVerdict membership_filter(const RadialWeight& weight, const ModeSeries& f);

}  // namespace bergman::integrability
