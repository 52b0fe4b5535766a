#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace bks {

/// Kahan-Babuska-Neumaier compensated accumulator. The correction term
/// keeps running sums of ~1 accurate to well below 1e-14 absolute even
/// after 1e5 additions, which the mass-criterion stopping rule needs.
class KahanSum {
  public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Non-negative real held as mantissa * 2^exp2 so that geometric
/// recurrences spanning thousands of orders of magnitude neither
/// underflow nor overflow. The mantissa is extended precision: the
/// weight recurrences run for ~1e4 steps and the partition-of-unity
/// stopping rules need the accumulated relative error well under 1e-14.
struct ScaledValue {
    long double m = 0.0L;
    std::int64_t e = 0;

    static ScaledValue zero() { return {}; }

    static ScaledValue from_double(double v) {
        ScaledValue s;
        if (v == 0.0) return s;
        int ex = 0;
        s.m = frexpl(v, &ex) * 2.0L;
        s.e = ex - 1;
        return s;
    }

    /// Value exp(L) for possibly huge |L|.
    static ScaledValue from_log(long double L) {
        ScaledValue s;
        const long double ln2 = 0.693147180559945309417L;
        long double e2 = floorl(L / ln2);
        s.m = expl(L - e2 * ln2);  // in [1, 2)
        s.e = static_cast<std::int64_t>(e2);
        return s;
    }

    bool is_zero() const { return m == 0.0L; }

    ScaledValue times(long double f) const {
        if (is_zero() || f == 0.0L) return zero();
        ScaledValue r;
        int ex = 0;
        r.m = frexpl(m * f, &ex) * 2.0L;
        r.e = e + ex - 1;
        return r;
    }

    /// Collapse to double; underflows to 0, overflows to +inf.
    double to_double() const {
        if (is_zero()) return 0.0;
        if (e > 1023) return std::numeric_limits<double>::infinity();
        if (e < -1075) return 0.0;
        return static_cast<double>(ldexpl(m, static_cast<int>(e)));
    }
};

inline double log_binomial(double n, double k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

/// Exact binomial coefficient for the small arguments used by the
/// moment identities (m <= 5 or so).
inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

}  // namespace bks
