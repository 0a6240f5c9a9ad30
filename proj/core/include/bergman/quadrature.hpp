#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bergman/log_real.hpp"
#include "bergman/mode_series.hpp"
#include "bergman/radial_profile.hpp"

namespace bergman::quad {

/// Integration region in t = log r coordinates.
struct Region {
    enum class Kind { WholeSpace, Ball, Exterior, Annulus };
    Kind kind = Kind::WholeSpace;
    double t_min = 0;  // Exterior / Annulus lower bound
    double t_max = 0;  // Ball / Annulus upper bound

    static Region whole() { return {Kind::WholeSpace, 0, 0}; }
    static Region ball(double t_max) { return {Kind::Ball, 0, t_max}; }
    static Region exterior(double t_min) { return {Kind::Exterior, t_min, 0}; }
    static Region annulus(double t_min, double t_max);

    bool unbounded_above() const {
        return kind == Kind::WholeSpace || kind == Kind::Exterior;
    }
    bool unbounded_below() const {
        return kind == Kind::WholeSpace || kind == Kind::Ball;
    }
};

/// Outcome of a weighted integral: a finite log-domain value with an error
/// bound, or a divergence certificate carrying the slope deficit.
struct QuadVerdict {
    bool finite = false;
    LogReal value;           // meaningful when finite
    double log_abs_err = 0;  // log of the absolute error bound
    double deficit = 0;      // exponent - slope (>= 0) when divergent

    static QuadVerdict finite_value(LogReal v, double log_err);
    static QuadVerdict divergent(double deficit);
};

struct QuadOptions {
    double rel_tol = 1e-11;
    int max_intervals = 6000;
};

struct LogQuadResult {
    double log_value;    // log of the (nonnegative) integral
    double log_abs_err;  // log of the accumulated error estimate
    int evaluations;
};

/// Adaptive Gauss-Kronrod (7/15 embedded pair) integration of exp(log_f(t))
/// over [t_lo, t_hi], entirely in the log domain.  Infinite ends are mapped
/// by t = t0 +- s/(1-s); subdivision is forced at `splits`.  The integrand
/// must be integrable on the region; log_f may return -inf where it vanishes.
/// Throws std::runtime_error when the target relative accuracy cannot be met.
LogQuadResult integrate_log(const std::function<double(double)>& log_f,
                            double t_lo, double t_hi, bool lo_infinite,
                            bool hi_infinite, std::span<const double> splits,
                            const QuadOptions& opt = {});

/// Zeros of d/dt [exponent*t - g(t)] between kinks: the integrand modes where
/// quadrature is forced to split.
std::vector<double> mode_split_points(const RadialProfile& profile, double exponent,
                                      const Region& region);

/// The angular reduction constant c_{n,alpha} = 2 pi^n alpha! / (n-1+|alpha|)!
/// carrying int_{C^n} |z^alpha|^2 e^{-g(log||z||)} = c_{n,alpha} *
/// int_R exp((2|alpha|+2n) t - g(t)) dt.
LogReal angular_constant(int n, const MultiIndex& alpha);

/// The 1-D radial factor int_region exp(exponent*t - g(t)) dt.  Finiteness is
/// decided symbolically from the profile's tail/head slopes (strictly: finite
/// on an upper-unbounded region iff tail slope > exponent); no quadrature is
/// ever attempted on a divergent integrand.
QuadVerdict radial_integral(const RadialWeight& weight, int exponent_2a2n,
                            const Region& region, const QuadOptions& opt = {});

/// ||z^alpha||^2 under the weight: angular constant times the radial factor.
QuadVerdict monomial_norm(const RadialWeight& weight, const MultiIndex& alpha,
                          const Region& region, const QuadOptions& opt = {});

struct SeriesNorm {
    QuadVerdict verdict;
    /// Present when divergent: the smallest mode (by |alpha|, then lex) whose
    /// monomial norm diverges.
    std::optional<MultiIndex> divergent_witness;
};

/// ||f||^2 = sum |a_alpha|^2 ||z^alpha||^2, exact by mode orthogonality under
/// radial weights.
SeriesNorm series_norm(const RadialWeight& weight, const ModeSeries& f,
                       const Region& region, const QuadOptions& opt = {});

}  // namespace bergman::quad
