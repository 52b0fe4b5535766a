#include "bks/xupoly.hpp"

#include <cmath>
#include <stdexcept>

namespace bks {

XUPoly XUPoly::constant(double v) {
    XUPoly p;
    p.set(0, 0, v);
    return p;
}

XUPoly XUPoly::monomial(int xpow, int upow, double v) {
    if (xpow < 0 || upow < 0 || xpow >= kMax || upow >= kMax)
        throw std::invalid_argument("XUPoly: monomial degree out of range");
    XUPoly p;
    p.set(xpow, upow, v);
    return p;
}

XUPoly XUPoly::operator+(const XUPoly& o) const {
    XUPoly r;
    for (int i = 0; i < kMax * kMax; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
}

XUPoly XUPoly::operator-(const XUPoly& o) const {
    XUPoly r;
    for (int i = 0; i < kMax * kMax; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
}

XUPoly XUPoly::operator*(const XUPoly& o) const {
    XUPoly r;
    for (int p1 = 0; p1 < kMax; ++p1)
        for (int r1 = 0; r1 < kMax; ++r1) {
            double a = c_[idx(p1, r1)];
            if (a == 0.0) continue;
            for (int p2 = 0; p2 + p1 < kMax; ++p2)
                for (int r2 = 0; r2 + r1 < kMax; ++r2) {
                    double b = o.c_[idx(p2, r2)];
                    if (b == 0.0) continue;
                    r.c_[idx(p1 + p2, r1 + r2)] += a * b;
                }
        }
    return r;
}

XUPoly XUPoly::scaled(double s) const {
    XUPoly r;
    for (int i = 0; i < kMax * kMax; ++i) r.c_[i] = c_[i] * s;
    return r;
}

XUPoly XUPoly::times_x_power(int p) const {
    XUPoly r;
    for (int p1 = 0; p1 + p < kMax; ++p1)
        for (int r1 = 0; r1 < kMax; ++r1) r.c_[idx(p1 + p, r1)] = c_[idx(p1, r1)];
    return r;
}

XUPoly XUPoly::pow(int e) const {
    XUPoly r = constant(1.0);
    for (int i = 0; i < e; ++i) r = r * (*this);
    return r;
}

double XUPoly::eval(double x) const {
    double u = x / (1.0 + x);
    double xp[kMax], up[kMax];
    xp[0] = up[0] = 1.0;
    for (int i = 1; i < kMax; ++i) {
        xp[i] = xp[i - 1] * x;
        up[i] = up[i - 1] * u;
    }
    double s = 0.0;
    for (int p = 0; p < kMax; ++p)
        for (int r = 0; r < kMax; ++r) {
            double c = c_[idx(p, r)];
            if (c != 0.0) s += c * xp[p] * up[r];
        }
    return s;
}

double XUPoly::asymptotic_coeff(int p) const {
    double s = 0.0;
    for (int r = 0; r < kMax; ++r) s += c_[idx(p, r)];
    return s;
}

double XUPoly::collect_positive(int i) const {
    double s = 0.0;
    for (int p = 0; p <= i && p < kMax; ++p) {
        int r = i - p;
        if (r >= kMax) continue;
        double c = c_[idx(p, r)];
        if (c > 0.0) s += c;
    }
    return s;
}

}  // namespace bks
