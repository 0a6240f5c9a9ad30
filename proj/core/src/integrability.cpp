#include "bergman/integrability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman::integrability {

bool threshold_finite(int n, const MultiIndex& alpha, double N) {
    if (n < 1) throw std::invalid_argument("threshold_finite: n must be >= 1");
    if (static_cast<int>(alpha.parts.size()) != n)
        throw std::invalid_argument("threshold_finite: dimension mismatch");
    return N > 2 * alpha.order() + 2 * n;
}

DyadicEvidence dyadic_lower_bound(int n, const MultiIndex& alpha, double N, int K) {
    if (K < 1) throw std::invalid_argument("dyadic_lower_bound: K must be >= 1");
    if (static_cast<int>(alpha.parts.size()) != n)
        throw std::invalid_argument("dyadic_lower_bound: dimension mismatch");
    DyadicEvidence ev;
    ev.exponent = 2 * alpha.order() + 2 * n - N;
    ev.diverges = ev.exponent >= 0;

    // c_N = pi^n / (sqrt(n) * 2)^N
    double log_cn = n * std::log(std::numbers::pi) -
                    N * (0.5 * std::log(static_cast<double>(n)) + std::log(2.0));
    const double ln2 = std::log(2.0);
    LogReal sum;
    ev.partial_sums.reserve(K);
    for (int k = 1; k <= K; ++k) {
        sum += LogReal::from_log(+1, log_cn + k * ev.exponent * ln2);
        ev.partial_sums.push_back(sum);
    }
    return ev;
}

std::optional<int> degree_cap(int n, double N) {
    if (n < 1) throw std::invalid_argument("degree_cap: n must be >= 1");
    // max{d >= 0 : 2d + 2n < N}; equals floor((N-2n-1)/2) for integer N.
    double bound = (N - 2 * n) / 2.0;
    int d = static_cast<int>(std::ceil(bound)) - 1;
    if (d < 0) return std::nullopt;
    return d;
}

MembershipVerdict membership_filter(const RadialWeight& weight, const ModeSeries& f) {
    double slope = weight.profile.tail_slope();
    if (!std::isfinite(slope))
        throw std::invalid_argument("membership_filter: weight tail slope must be finite");
    MembershipVerdict verdict;
    verdict.slope = slope;
    int n = weight.dimension;
    for (const auto& [alpha, coeff] : f.modes()) {
        (void)coeff;  // stored modes are nonzero by construction
        if (2 * alpha.order() + 2 * n >= slope) verdict.excluded.push_back(alpha);
    }
    verdict.is_member = verdict.excluded.empty();
    return verdict;
}

}  // namespace bergman::integrability
