#include "bergman/log_real.hpp"

#include <algorithm>
#include <stdexcept>

namespace bergman {

namespace {
const double kCancelWindow = 1e-12;  // log-magnitude gap below which a
                                     // signed sum is flagged as lossy
}

LogReal LogReal::operator/(const LogReal& o) const {
    if (o.sign_ == 0) throw std::domain_error("LogReal: division by zero");
    return from_log(sign_ * o.sign_, log_ - o.log_).with_flag(lossy_ || o.lossy_);
}

LogReal LogReal::operator+(const LogReal& o) const {
    bool lossy = lossy_ || o.lossy_;
    if (sign_ == 0) return o.with_flag(lossy);
    if (o.sign_ == 0) return with_flag(lossy);
    double hi = std::max(log_, o.log_);
    double lo = std::min(log_, o.log_);
    if (sign_ == o.sign_)
        return from_log(sign_, hi + std::log1p(std::exp(lo - hi))).with_flag(lossy);

    // Opposite signs: the larger magnitude wins; near-ties lose precision.
    if (log_ == o.log_) return zero().with_flag(true);
    if (hi - lo < kCancelWindow) lossy = true;
    int s = (log_ > o.log_) ? sign_ : o.sign_;
    return from_log(s, hi + std::log1p(-std::exp(lo - hi))).with_flag(lossy);
}

LogReal LogReal::pow_int(int p) const {
    if (sign_ == 0) {
        if (p <= 0) throw std::domain_error("LogReal: 0 to a nonpositive power");
        return zero();
    }
    int s = (sign_ < 0 && (p & 1)) ? -1 : +1;
    return from_log(s, log_ * p).with_flag(lossy_);
}

LogReal LogReal::sqrt() const {
    if (sign_ < 0) throw std::domain_error("LogReal: sqrt of negative");
    return from_log(sign_, log_ / 2).with_flag(lossy_);
}

bool LogReal::operator<(const LogReal& o) const {
    if (sign_ != o.sign_) return sign_ < o.sign_;
    if (sign_ == 0) return false;
    return sign_ > 0 ? log_ < o.log_ : log_ > o.log_;
}

double log_factorial(int k) {
    if (k < 0) throw std::domain_error("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(k) + 1.0);
}

double relative_difference(const LogReal& a, const LogReal& b) {
    if (a.is_zero() && b.is_zero()) return 0.0;
    LogReal diff = (a - b).abs();
    if (diff.is_zero()) return 0.0;
    double denom = std::max(a.log_magnitude(), b.log_magnitude());
    return std::exp(diff.log_magnitude() - denom);
}

}  // namespace bergman
