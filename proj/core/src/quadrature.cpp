#include "bergman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bergman::quad {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// 15-point Kronrod extension of the 7-point Gauss rule (positive half).
const double kNodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897,
    0.8648644233597690727897128, 0.7415311855993944398638648,
    0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
const double kKronrodW[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
const double kGaussW[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678,
    0.3818300505051189449503698, 0.4179591836734693877551020};

double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    double hi = std::max(a, b), lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

// One working segment.  map == 0 integrates in t directly; map == +-1 covers
// a half-infinite t-range via t = t0 +- x/(1-x) with x in [0,1).
struct Segment {
    double a, b;
    int map;
    double t0;
    double log_val = kNegInf;
    double log_err = kNegInf;
};

struct NodeSample {
    double log_f;
    bool gauss;  // node also belongs to the embedded 7-point rule
    double wk, wg;
};

void evaluate(Segment& seg, const std::function<double(double)>& log_f) {
    const double mid = 0.5 * (seg.a + seg.b);
    const double half = 0.5 * (seg.b - seg.a);
    NodeSample samples[15];
    int count = 0;
    double peak = kNegInf;
    for (int i = 0; i < 8; ++i) {
        for (int s = (i == 7 ? 1 : 0); s < 2; ++s) {
            double x = mid + (s == 0 ? -half : half) * kNodes[i];
            double t = x, jac = 0.0;
            if (seg.map != 0) {
                t = seg.t0 + seg.map * (x / (1.0 - x));
                jac = -2.0 * std::log1p(-x);
            }
            double v = log_f(t) + jac;
            bool gauss = (i % 2 == 1) || i == 7;
            samples[count++] = {v, gauss, kKronrodW[i], gauss ? kGaussW[i / 2] : 0.0};
            peak = std::max(peak, v);
        }
    }
    if (peak == kNegInf) {
        seg.log_val = kNegInf;
        seg.log_err = kNegInf;
        return;
    }
    double sk = 0, sg = 0;
    for (int i = 0; i < count; ++i) {
        double e = std::exp(samples[i].log_f - peak);
        sk += samples[i].wk * e;
        if (samples[i].gauss) sg += samples[i].wg * e;
    }
    double scale = peak + std::log(half);
    seg.log_val = sk > 0 ? scale + std::log(sk) : kNegInf;
    double diff = std::fabs(sk - sg);
    seg.log_err = diff > 0 ? scale + std::log(diff) : kNegInf;
}

}  // namespace

Region Region::annulus(double t_min, double t_max) {
    if (!(t_min < t_max)) throw std::invalid_argument("Region: t_min must be < t_max");
    return {Kind::Annulus, t_min, t_max};
}

QuadVerdict QuadVerdict::finite_value(LogReal v, double log_err) {
    QuadVerdict q;
    q.finite = true;
    q.value = v;
    q.log_abs_err = log_err;
    return q;
}

QuadVerdict QuadVerdict::divergent(double deficit) {
    QuadVerdict q;
    q.finite = false;
    q.deficit = deficit;
    return q;
}

LogQuadResult integrate_log(const std::function<double(double)>& log_f,
                            double t_lo, double t_hi, bool lo_infinite,
                            bool hi_infinite, std::span<const double> splits,
                            const QuadOptions& opt) {
    if (!lo_infinite && !hi_infinite && !(t_lo < t_hi))
        throw std::invalid_argument("integrate_log: empty interval");

    std::vector<double> cuts(splits.begin(), splits.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::erase_if(cuts, [&](double c) {
        if (!lo_infinite && c <= t_lo) return true;
        if (!hi_infinite && c >= t_hi) return true;
        return false;
    });
    if (lo_infinite && hi_infinite && cuts.empty()) cuts.push_back(0.0);

    std::vector<Segment> segs;
    double prev = lo_infinite ? kNegInf : t_lo;
    auto add_piece = [&](double a, double b) {
        if (a == kNegInf) {
            segs.push_back({0.0, 1.0, -1, b});
        } else if (b == kInf) {
            segs.push_back({0.0, 1.0, +1, a});
        } else if (a < b) {
            segs.push_back({a, b, 0, 0.0});
        }
    };
    for (double c : cuts) {
        add_piece(prev, c);
        prev = c;
    }
    add_piece(prev, hi_infinite ? kInf : t_hi);

    int evals = 0;
    for (Segment& s : segs) {
        evaluate(s, log_f);
        evals += 15;
    }

    const double log_tol = std::log(opt.rel_tol);
    while (true) {
        double total = kNegInf, err = kNegInf;
        for (const Segment& s : segs) {
            total = log_add(total, s.log_val);
            err = log_add(err, s.log_err);
        }
        if (err == kNegInf || err < -745.0 || err <= total + log_tol)
            return {total, err, evals};
        if (static_cast<int>(segs.size()) >= opt.max_intervals)
            throw std::runtime_error("integrate_log: failed to reach target accuracy");

        size_t worst = 0;
        for (size_t i = 1; i < segs.size(); ++i)
            if (segs[i].log_err > segs[worst].log_err) worst = i;
        Segment left = segs[worst];
        double mid = 0.5 * (left.a + left.b);
        Segment right = left;
        left.b = mid;
        right.a = mid;
        evaluate(left, log_f);
        evaluate(right, log_f);
        evals += 30;
        segs[worst] = left;
        segs.push_back(right);
    }
}

std::vector<double> mode_split_points(const RadialProfile& profile, double exponent,
                                      const Region& region) {
    auto h_prime = [&](double t) { return exponent - profile.derivative(t); };

    std::vector<double> kinks = profile.kink_points();
    double anchor = !kinks.empty() ? kinks.front()
                    : region.unbounded_below()
                        ? (region.unbounded_above() ? 0.0 : region.t_max)
                        : region.t_min;
    double lo = region.unbounded_below() ? anchor - 80.0 : region.t_min;
    double hi_anchor = !kinks.empty() ? kinks.back() : lo;
    double hi = region.unbounded_above() ? std::max(hi_anchor, lo) + 80.0 : region.t_max;
    if (!(lo < hi)) return {};

    std::vector<double> bounds;
    bounds.push_back(lo);
    for (double k : kinks)
        if (k > lo && k < hi) bounds.push_back(k);
    bounds.push_back(hi);

    std::vector<double> modes;
    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        double lo = bounds[i], hi = bounds[i + 1];
        if (!(lo < hi)) continue;
        const int scan = 32;
        double prev_t = lo + (hi - lo) * 1e-9;
        double prev_v = h_prime(prev_t);
        for (int s = 1; s <= scan; ++s) {
            double t = lo + (hi - lo) * (s == scan ? 1.0 - 1e-9 : double(s) / scan);
            double v = h_prime(t);
            if ((prev_v > 0) != (v > 0)) {
                double a = prev_t, b = t;
                for (int it = 0; it < 80; ++it) {
                    double m = 0.5 * (a + b);
                    if ((h_prime(m) > 0) == (prev_v > 0)) a = m;
                    else b = m;
                }
                modes.push_back(0.5 * (a + b));
            }
            prev_t = t;
            prev_v = v;
        }
    }
    return modes;
}

LogReal angular_constant(int n, const MultiIndex& alpha) {
    if (n < 1) throw std::invalid_argument("angular_constant: n must be >= 1");
    if (static_cast<int>(alpha.parts.size()) != n)
        throw std::invalid_argument("angular_constant: multi-index dimension mismatch");
    double log_c = std::log(2.0) + n * std::log(std::numbers::pi);
    for (int a : alpha.parts) {
        if (a < 0) throw std::invalid_argument("angular_constant: negative exponent");
        log_c += log_factorial(a);
    }
    log_c -= std::lgamma(static_cast<double>(n + alpha.order()));
    return LogReal::from_log(+1, log_c);
}

QuadVerdict radial_integral(const RadialWeight& weight, int exponent_2a2n,
                            const Region& region, const QuadOptions& opt) {
    if (exponent_2a2n <= 0)
        throw std::invalid_argument("radial_integral: exponent must be positive");
    const RadialProfile& g = weight.profile;
    const double exponent = exponent_2a2n;

    // Finiteness is a slope question, never a quadrature question.
    if (region.unbounded_above()) {
        double slope = g.tail_slope();
        if (!(slope > exponent)) return QuadVerdict::divergent(exponent - slope);
    }
    if (region.unbounded_below()) {
        double head = g.head_slope();
        if (!(head < exponent)) return QuadVerdict::divergent(head - exponent);
    }

    std::vector<double> splits = g.kink_points();
    auto modes = mode_split_points(g, exponent, region);
    splits.insert(splits.end(), modes.begin(), modes.end());

    auto log_f = [&](double t) { return exponent * t - g.value(t); };
    double lo = region.unbounded_below() ? 0.0 : region.t_min;
    double hi = region.unbounded_above() ? 0.0 : region.t_max;
    LogQuadResult res = integrate_log(log_f, lo, hi, region.unbounded_below(),
                                      region.unbounded_above(), splits, opt);
    return QuadVerdict::finite_value(LogReal::from_log(+1, res.log_value),
                                     res.log_abs_err);
}

QuadVerdict monomial_norm(const RadialWeight& weight, const MultiIndex& alpha,
                          const Region& region, const QuadOptions& opt) {
    LogReal c = angular_constant(weight.dimension, alpha);
    QuadVerdict radial = radial_integral(
        weight, 2 * alpha.order() + 2 * weight.dimension, region, opt);
    if (!radial.finite) return radial;
    return QuadVerdict::finite_value(c * radial.value,
                                     radial.log_abs_err + c.log_magnitude());
}

SeriesNorm series_norm(const RadialWeight& weight, const ModeSeries& f,
                       const Region& region, const QuadOptions& opt) {
    if (f.dimension() != weight.dimension)
        throw std::invalid_argument("series_norm: dimension mismatch");
    LogReal total;
    double err = kNegInf;
    for (const auto& [alpha, coeff] : f.modes()) {
        QuadVerdict m = monomial_norm(weight, alpha, region, opt);
        if (!m.finite) {
            // Modes are sorted, so the first divergent one is the witness.
            SeriesNorm out;
            out.verdict = m;
            out.divergent_witness = alpha;
            return out;
        }
        LogReal weight_sq = coeff.squared();
        total += weight_sq * m.value;
        err = log_add(err, m.log_abs_err + weight_sq.log_magnitude());
    }
    return {QuadVerdict::finite_value(total, err), std::nullopt};
}

}  // namespace bergman::quad
