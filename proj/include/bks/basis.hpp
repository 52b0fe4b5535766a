#pragma once

#include <vector>

#include "bks/numeric.hpp"
#include "bks/params.hpp"

namespace bks {

/// Rising factorial (n)_i = n(n+1)...(n+i-1), (n)_0 = 1.
/// Exact in double until overflow; +inf past that (callers switch to
/// the log form).
double pochhammer_rising(int n, int i);

/// log (n)_i, usable at any magnitude.
double pochhammer_rising_log(int n, int i);

/// Coefficient polynomial p_k(n,a) = sum_{i=0..k} C(k,i) (n)_i a^{k-i}.
/// Strictly positive; p_0 = 1; reduces to (n)_k at a = 0. May overflow
/// to +inf in the linear domain for large k.
double p_coeff(int n, double a, int k);

/// log p_k(n,a), accumulated term-by-term in the log domain (all terms
/// are positive, so log-sum-exp is exact up to rounding).
double p_coeff_log(int n, double a, int k);

/// Basis weight W_{n,k}^a(x) = e^{-ax/(1+x)} p_k(n,a)/k! x^k/(1+x)^{k+n}.
/// Direct per-(k,x) evaluation of the defining formula. With
/// policy.log_domain the magnitude is assembled in logs, otherwise the
/// linear path is used (which can hit inf/inf for large k, n).
double basis_weight(const OperatorParams& params, int k, double x,
                    const SeriesPolicy& policy = SeriesPolicy());

/// log W_{n,k}^a(x); -inf where the weight is exactly zero.
double basis_weight_log(const OperatorParams& params, int k, double x);

/// Incremental generator of W_{n,k}^a(x) for k = 0,1,2,... at fixed
/// (params, x).
///
/// Writes the weight as the convolution of a negative-binomial part
/// NB_i = (1-u)^n (n)_i u^i / i! and a Poisson part P_j = e^{-au}(au)^j/j!
/// with u = x/(1+x):
///     W_k = sum_j P_j NB_{k-j},
/// which follows from expanding p_k(n,a)/k! = sum C(k,i)(n)_i a^{k-i}/k!.
/// Both parts obey one-term recurrences, so each weight costs O(J) with
/// J the effective Poisson support, and the NB tail is carried in scaled
/// form to dodge underflow at large n log(1+x). Unlike a per-k log-domain
/// formula, the recurrence keeps the relative error of the running
/// weights at O(k) ulp, tight enough for the 1e-12 partition-of-unity
/// window.
class WeightSeries {
  public:
    WeightSeries(const OperatorParams& params, double x);

    /// W_{n,k}^a(x) for the next k (starting at 0).
    double next();

    int index() const { return k_ - 1; }  // index of the last weight returned

  private:
    long double u_;       // x/(1+x)
    int n_;
    int k_ = 0;
    std::vector<long double> pois_;   // Poisson pmf values, fixed support
    std::vector<ScaledValue> nb_;     // NB pmf values computed so far
};

/// Smallest K with sum_{k<=K} W_{n,k}^a(x) >= 1 - tail_epsilon.
/// Throws TailNotAbsorbed if the criterion is not met by k_max_hard.
int truncation_index(const OperatorParams& params, double x, const SeriesPolicy& policy);

}  // namespace bks
