#include "bks/basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bks {

namespace {

void check_k_x(int k, double x) {
    if (k < 0) throw std::invalid_argument("basis: k must be >= 0");
    if (x < 0.0 || !std::isfinite(x)) throw std::invalid_argument("basis: x must be finite and >= 0");
}

}  // namespace

double pochhammer_rising(int n, int i) {
    if (n < 1) throw std::invalid_argument("pochhammer_rising: n must be >= 1");
    if (i < 0) throw std::invalid_argument("pochhammer_rising: i must be >= 0");
    double r = 1.0;
    for (int j = 0; j < i; ++j) r *= static_cast<double>(n + j);
    return r;  // +inf on overflow
}

double pochhammer_rising_log(int n, int i) {
    if (n < 1) throw std::invalid_argument("pochhammer_rising: n must be >= 1");
    if (i < 0) throw std::invalid_argument("pochhammer_rising: i must be >= 0");
    if (i == 0) return 0.0;
    return std::lgamma(static_cast<double>(n) + i) - std::lgamma(static_cast<double>(n));
}

double p_coeff(int n, double a, int k) {
    if (a < 0.0) throw std::invalid_argument("p_coeff: a must be >= 0");
    if (k < 0) throw std::invalid_argument("p_coeff: k must be >= 0");
    if (a == 0.0) return pochhammer_rising(n, k);  // only the i=k term survives
    double sum = 0.0;
    double choose = 1.0;  // C(k,i)
    double poch = 1.0;    // (n)_i
    double apow = std::pow(a, k);
    for (int i = 0; i <= k; ++i) {
        sum += choose * poch * apow;
        choose = choose * static_cast<double>(k - i) / static_cast<double>(i + 1);
        poch *= static_cast<double>(n + i);
        apow /= a;
    }
    return sum;
}

double p_coeff_log(int n, double a, int k) {
    if (a < 0.0) throw std::invalid_argument("p_coeff: a must be >= 0");
    if (k < 0) throw std::invalid_argument("p_coeff: k must be >= 0");
    if (a == 0.0) return pochhammer_rising_log(n, k);
    double la = std::log(a);
    double lgn = std::lgamma(static_cast<double>(n));
    double lgk1 = std::lgamma(static_cast<double>(k) + 1.0);
    // max exponent first, then exp-sum relative to it
    double mx = -std::numeric_limits<double>::infinity();
    std::vector<double> ls(static_cast<std::size_t>(k) + 1);
    for (int i = 0; i <= k; ++i) {
        double t = lgk1 - std::lgamma(i + 1.0) - std::lgamma(static_cast<double>(k - i) + 1.0) +
                   (std::lgamma(static_cast<double>(n) + i) - lgn) + (k - i) * la;
        ls[static_cast<std::size_t>(i)] = t;
        mx = std::max(mx, t);
    }
    KahanSum s;
    for (double t : ls) s.add(std::exp(t - mx));
    return mx + std::log(s.value());
}

double basis_weight_log(const OperatorParams& params, int k, double x) {
    check_k_x(k, x);
    if (x == 0.0) return k == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    double u = x / (1.0 + x);
    return -params.a * u + p_coeff_log(params.n, params.a, k) - std::lgamma(k + 1.0) +
           k * std::log(x) - (k + params.n) * std::log1p(x);
}

double basis_weight(const OperatorParams& params, int k, double x, const SeriesPolicy& policy) {
    check_k_x(k, x);
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    if (policy.log_domain) return std::exp(basis_weight_log(params, k, x));
    double u = x / (1.0 + x);
    double pk = p_coeff(params.n, params.a, k);
    if (!std::isfinite(pk)) return std::exp(basis_weight_log(params, k, x));
    double kfact = std::tgamma(k + 1.0);
    double geom = std::exp(k * std::log(x) - (k + params.n) * std::log1p(x));
    if (!std::isfinite(kfact) || geom == 0.0) return std::exp(basis_weight_log(params, k, x));
    return std::exp(-params.a * u) * pk / kfact * geom;
}

WeightSeries::WeightSeries(const OperatorParams& params, double x) : n_(params.n) {
    check_k_x(0, x);
    u_ = static_cast<long double>(x) / (1.0L + static_cast<long double>(x));
    long double lambda = static_cast<long double>(params.a) * u_;
    // Poisson part: fixed support, extended until the tail is far below
    // any mass criterion in use (<= 1e-24 of the total).
    pois_.push_back(expl(-lambda));
    if (lambda > 0.0L) {
        long double cum = pois_[0];
        int j = 0;
        while (true) {
            long double next = pois_[static_cast<std::size_t>(j)] * lambda / (j + 1);
            ++j;
            pois_.push_back(next);
            cum += next;
            if (1.0L - cum < 1e-24L && next < 1e-24L) break;
            if (j > 100000) break;
        }
    }
    // NB part starts at (1-u)^n, assembled from its log so that huge
    // n log(1+x) cannot underflow.
    nb_.push_back(ScaledValue::from_log(-static_cast<long double>(n_) *
                                        log1pl(static_cast<long double>(x))));
}

double WeightSeries::next() {
    int k = k_++;
    // extend NB pmf to index k
    while (static_cast<int>(nb_.size()) <= k) {
        int i = static_cast<int>(nb_.size()) - 1;
        nb_.push_back(nb_.back().times(u_ * (n_ + i) / (i + 1.0L)));
    }
    if (pois_.size() == 1) return nb_[static_cast<std::size_t>(k)].to_double();  // a = 0
    // W_k = sum_j P_j NB_{k-j}; align on the largest NB exponent in the window
    int jmax = std::min<int>(k, static_cast<int>(pois_.size()) - 1);
    std::int64_t emax = std::numeric_limits<std::int64_t>::min();
    for (int j = 0; j <= jmax; ++j) {
        const ScaledValue& nb = nb_[static_cast<std::size_t>(k - j)];
        if (!nb.is_zero()) emax = std::max(emax, nb.e);
    }
    if (emax == std::numeric_limits<std::int64_t>::min()) return 0.0;
    long double acc = 0.0L;
    for (int j = 0; j <= jmax; ++j) {
        const ScaledValue& nb = nb_[static_cast<std::size_t>(k - j)];
        if (nb.is_zero()) continue;
        std::int64_t de = nb.e - emax;
        if (de < -16400) continue;
        acc += pois_[static_cast<std::size_t>(j)] * ldexpl(nb.m, static_cast<int>(de));
    }
    return ScaledValue{acc, emax}.to_double();
}

int truncation_index(const OperatorParams& params, double x, const SeriesPolicy& policy) {
    policy.validate();
    WeightSeries ws(params, x);
    KahanSum mass;
    for (int k = 0; k <= policy.k_max_hard; ++k) {
        mass.add(ws.next());
        if (mass.value() >= 1.0 - policy.tail_epsilon) return k;
    }
    throw TailNotAbsorbed(params, x, policy.k_max_hard, mass.value());
}

}  // namespace bks
