#pragma once

#include "bks/basis.hpp"
#include "bks/functions.hpp"
#include "bks/params.hpp"
#include "bks/quadrature.hpp"

namespace bks {

/// integral of f over [lo, hi] realized per the quadrature spec.
/// ExactPolynomial requires f to be a polynomial of known degree (the
/// antiderivative capability is used); GaussFixed applies one panel;
/// Adaptive subdivides to spec.tolerance.
double integrate_interval(const TestFunction& f, double lo, double hi,
                          const QuadratureSpec& quad);

/// Quadrature a caller gets when it does not care: exact for
/// polynomials, adaptive elsewhere.
QuadratureSpec auto_quadrature(const TestFunction& f, double abs_tol = 1e-12);

/// Point-evaluation Stancu variant:
///   L(f;x) = sum_k W_{n,k}^a(x) f((k+alpha)/(n+beta)).
double eval_L(const OperatorParams& params, const TestFunction& f, double x,
              const SeriesPolicy& policy = SeriesPolicy());

/// The main operator:
///   T(f;x) = (n+beta) sum_k W_{n,k}^a(x)
///            * integral of f over [(k+alpha)/(n+beta), (k+alpha+1)/(n+beta)].
/// Per-interval quadrature tolerance is budgeted so the summed
/// quadrature error stays below policy.tail_epsilon.
double eval_T(const OperatorParams& params, const TestFunction& f, double x,
              const SeriesPolicy& policy = SeriesPolicy(),
              QuadratureSpec quad = QuadratureSpec());

enum class Baseline {
    Bernstein,
    Kantorovich,
    Stancu,
    KantorovichStancu,
    BaskakovKantorovich,
};

Baseline baseline_from_name(const std::string& name);

/// Classical comparison operators. Unit-interval operators (all but
/// BaskakovKantorovich) reject x outside [0,1]. The Stancu and
/// Kantorovich-Stancu forms are the standard ones with binomial
/// coefficients and nodes (k+alpha)/(n+beta); at alpha=beta=0 they
/// reduce to Bernstein/Kantorovich exactly.
double eval_baseline(Baseline which, const OperatorParams& params, const TestFunction& f,
                     double x, const SeriesPolicy& policy = SeriesPolicy(),
                     QuadratureSpec quad = QuadratureSpec());

}  // namespace bks
