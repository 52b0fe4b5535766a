#pragma once

#include <stdexcept>
#include <string>

namespace bks {

/// Parameters (n, a, alpha, beta) of one generalized
/// Baskakov-Kantorovich-Stancu operator instance.
///
/// n >= 1 is the series parameter, a >= 0 the Baskakov generalization
/// parameter, (alpha, beta) the Stancu shift with 0 <= alpha <= beta.
/// Construction validates; alpha > beta requires the explicit override.
struct OperatorParams {
    int n = 1;
    double a = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    OperatorParams() = default;

    OperatorParams(int n_, double a_, double alpha_, double beta_,
                   bool allow_alpha_gt_beta = false)
        : n(n_), a(a_), alpha(alpha_), beta(beta_) {
        if (n < 1) throw std::invalid_argument("OperatorParams: n must be >= 1");
        if (a < 0.0) throw std::invalid_argument("OperatorParams: a must be >= 0");
        if (alpha < 0.0) throw std::invalid_argument("OperatorParams: alpha must be >= 0");
        if (beta < 0.0) throw std::invalid_argument("OperatorParams: beta must be >= 0");
        if (alpha > beta && !allow_alpha_gt_beta)
            throw std::invalid_argument(
                "OperatorParams: alpha > beta (pass allow_alpha_gt_beta to override)");
    }

    /// n + beta, the denominator of all node/interval formulas.
    double q() const { return static_cast<double>(n) + beta; }

    std::string label() const {
        return "n=" + std::to_string(n) + " a=" + std::to_string(a) +
               " alpha=" + std::to_string(alpha) + " beta=" + std::to_string(beta);
    }
};

/// Controls for truncating and evaluating the infinite basis series.
struct SeriesPolicy {
    double tail_epsilon = 1e-12;  // max admissible truncated tail mass
    int k_max_hard = 20000;       // absolute cap on the summation index
    bool log_domain = false;      // evaluate single-weight magnitudes via logs

    SeriesPolicy() = default;
    SeriesPolicy(double eps, int kmax, bool logdom = false)
        : tail_epsilon(eps), k_max_hard(kmax), log_domain(logdom) {
        validate();
    }

    void validate() const {
        if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0))
            throw std::invalid_argument("SeriesPolicy: tail_epsilon must be in (0,1)");
        if (k_max_hard < 1)
            throw std::invalid_argument("SeriesPolicy: k_max_hard must be >= 1");
    }

    /// Tightened policy used by brute-force oracle runs.
    static SeriesPolicy oracle() { return SeriesPolicy(1e-14, 200000); }
};

/// Thrown when the basis mass criterion is not met before k_max_hard.
class TailNotAbsorbed : public std::runtime_error {
  public:
    TailNotAbsorbed(const OperatorParams& p, double x, int k_max, double mass)
        : std::runtime_error("series tail not absorbed at " + p.label() +
                             " x=" + std::to_string(x) +
                             " k_max=" + std::to_string(k_max) +
                             " mass=" + std::to_string(mass)),
          x(x), k_max(k_max), mass(mass) {}
    double x;
    int k_max;
    double mass;
};

}  // namespace bks
