#pragma once

#include <functional>
#include <stdexcept>

namespace bks {

/// How eval_T realizes the per-interval integrals.
enum class QuadMethod {
    ExactPolynomial,  // closed-form antiderivative; polynomial integrands only
    GaussFixed,       // one Gauss-Legendre panel of the given order
    Adaptive,         // adaptive Gauss-Kronrod to an absolute tolerance
};

struct QuadratureSpec {
    QuadMethod method = QuadMethod::Adaptive;
    double tolerance = 1e-12;  // absolute, per call
    int order = 7;             // GaussFixed only

    static QuadratureSpec exact_polynomial() { return {QuadMethod::ExactPolynomial, 0.0, 0}; }
    static QuadratureSpec adaptive(double tol) { return {QuadMethod::Adaptive, tol, 0}; }
    static QuadratureSpec gauss(int order) { return {QuadMethod::GaussFixed, 0.0, order}; }
};

class QuadratureFailure : public std::runtime_error {
  public:
    QuadratureFailure(double lo, double hi)
        : std::runtime_error("adaptive subdivision limit exceeded on [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo(lo), hi(hi) {}
    double lo, hi;
};

/// One Gauss-Legendre panel over [lo, hi]; order in {3, 5, 7}.
double gauss_panel(const std::function<double(double)>& f, double lo, double hi, int order);

/// Adaptive Gauss-Kronrod 7-15 to absolute tolerance abs_tol.
/// Throws QuadratureFailure when the interval stack limit is hit.
double adaptive_integrate(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol);

}  // namespace bks
