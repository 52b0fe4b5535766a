#pragma once

#include <array>

namespace bks {

/// Polynomial in x and u with u = x/(1+x). The monomial x^p u^r is
/// x^(p+r)/(1+x)^r, exactly the basis the moment identities live in.
/// Degrees stay tiny (<= 8 per variable), so a fixed table suffices.
class XUPoly {
  public:
    static constexpr int kMax = 9;

    XUPoly() { c_.fill(0.0); }

    static XUPoly constant(double v);
    static XUPoly monomial(int xpow, int upow, double v);

    double coeff(int xpow, int upow) const { return c_[idx(xpow, upow)]; }
    void set(int xpow, int upow, double v) { c_[idx(xpow, upow)] = v; }
    void add_term(int xpow, int upow, double v) { c_[idx(xpow, upow)] += v; }

    XUPoly operator+(const XUPoly& o) const;
    XUPoly operator-(const XUPoly& o) const;
    XUPoly operator*(const XUPoly& o) const;
    XUPoly scaled(double s) const;
    XUPoly times_x_power(int p) const;
    XUPoly pow(int e) const;

    double eval(double x) const;

    /// Sum of coefficients with x-power p (any u-power); since u -> 1 as
    /// x -> infinity, this is the asymptotic x^p coefficient.
    double asymptotic_coeff(int p) const;

    /// Sum over monomials with combined power p + r == i of max(c, 0);
    /// bounding u^r by 1 termwise turns the polynomial into the majorant
    /// sum_i collect(i) x^i.
    double collect_positive(int i) const;

  private:
    static int idx(int p, int r) { return p * kMax + r; }
    std::array<double, kMax * kMax> c_{};
};

}  // namespace bks
