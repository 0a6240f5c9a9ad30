#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace bergman {

/// Signed real number stored as (sign, log of magnitude).
///
/// Weighted integrals in this library reach magnitudes like l^(2l) that blow
/// far past double range, so every accumulated quantity lives here.  Addition
/// of like signs is log-sum-exp; subtraction of nearly equal magnitudes sets a
/// sticky `lost_precision` flag once the log-magnitudes agree to < 1e-12.
class LogReal {
public:
    LogReal() : sign_(0), log_(-inf()) {}

    static LogReal zero() { return LogReal(); }
    static LogReal one() { return from_log(+1, 0.0); }

    static LogReal from_double(double x) {
        if (x == 0.0 || std::isnan(x)) return zero();
        return from_log(x > 0 ? +1 : -1, std::log(std::fabs(x)));
    }
    static LogReal from_log(int sign, double log_magnitude) {
        LogReal r;
        if (sign == 0 || log_magnitude == -inf()) return r;
        r.sign_ = sign > 0 ? +1 : -1;
        r.log_ = log_magnitude;
        return r;
    }
    /// 2^k, exact in the log domain.
    static LogReal two_pow(int k) { return from_log(+1, k * ln2()); }

    int sign() const { return sign_; }
    bool is_zero() const { return sign_ == 0; }
    bool positive() const { return sign_ > 0; }
    /// Natural log of |x|; -inf for zero.
    double log_magnitude() const { return sign_ == 0 ? -inf() : log_; }
    double log10_magnitude() const { return log_magnitude() / std::log(10.0); }
    bool lost_precision() const { return lossy_; }

    /// May overflow to +-inf or underflow to 0; sign/log stay exact.
    double to_double() const {
        if (sign_ == 0) return 0.0;
        return sign_ * std::exp(log_);
    }

    LogReal abs() const { return from_log(sign_ == 0 ? 0 : +1, log_).with_flag(lossy_); }
    LogReal negated() const { return from_log(-sign_, log_).with_flag(lossy_); }

    LogReal operator*(const LogReal& o) const {
        return from_log(sign_ * o.sign_, log_ + o.log_).with_flag(lossy_ || o.lossy_);
    }
    LogReal operator/(const LogReal& o) const;
    LogReal operator+(const LogReal& o) const;
    LogReal operator-(const LogReal& o) const { return *this + o.negated(); }
    LogReal& operator+=(const LogReal& o) { return *this = *this + o; }
    LogReal& operator*=(const LogReal& o) { return *this = *this * o; }

    /// |x|^p for p real (sign must be nonnegative when p is fractional;
    /// integral powers keep the sign).
    LogReal pow_int(int p) const;
    LogReal squared() const { return from_log(sign_ == 0 ? 0 : +1, 2 * log_).with_flag(lossy_); }
    LogReal sqrt() const;

    bool operator==(const LogReal& o) const {
        return sign_ == o.sign_ && (sign_ == 0 || log_ == o.log_);
    }
    bool operator<(const LogReal& o) const;
    bool operator>(const LogReal& o) const { return o < *this; }
    bool operator<=(const LogReal& o) const { return !(o < *this); }
    bool operator>=(const LogReal& o) const { return !(*this < o); }

private:
    static constexpr double inf() { return std::numeric_limits<double>::infinity(); }
    static double ln2() { return 0.6931471805599453094; }
    LogReal with_flag(bool lossy) const {
        LogReal r = *this;
        r.lossy_ = lossy || r.lossy_;
        return r;
    }

    int sign_;
    double log_;
    bool lossy_ = false;
};

/// log(k!) via lgamma; exact enough for every factorial this library needs.
double log_factorial(int k);

/// |a - b| / max(|a|, |b|), evaluated without leaving the log domain until the
/// final (small) ratio.  Returns 0 when both are zero.
double relative_difference(const LogReal& a, const LogReal& b);

}  // namespace bergman
