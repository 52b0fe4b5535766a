#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bks/functions.hpp"
#include "bks/params.hpp"

namespace bks {

struct Interval {
    double lo = 0.0;
    double hi = 20.0;
    double length() const { return hi - lo; }
};

/// Grid estimate of a modulus of smoothness. Sampling can only
/// under-estimate the true supremum; callers putting the value on the
/// right-hand side of an inequality inflate it (see kModulusInflation).
struct ModulusEstimate {
    double value = 0.0;
    double delta = 0.0;
    double grid_step = 0.0;  // final x-step after refinement
    Interval window;
};

/// Inflation factor applied to modulus estimates used on the RHS of
/// bound checks, covering the grid under-estimate.
inline constexpr double kModulusInflation = 1.05;

/// First-order modulus: sup over 0 < h <= delta (h on multiples of
/// `step`, plus delta itself) and x in the window of |f(x+h)-f(x)|.
/// The x-grid is refined by halving until the estimate moves < 0.1%.
ModulusEstimate modulus_omega(const TestFunction& f, double delta, Interval window,
                              double step);

/// Second-order modulus: sup of |f(x+2h)-2f(x+h)+f(x)| over the same
/// h range.
ModulusEstimate modulus_omega2(const TestFunction& f, double delta, Interval window,
                               double step);

/// Upper estimate of the Peetre K-functional
///   K2(f,delta) = inf { ||f-g|| + delta ||g''|| : g in C_B^2 }
/// over a finite catalog: f itself when it is C_B^2, plus quadratic
/// B-spline mollifications of f at the given radii.
double k_functional_estimate(const TestFunction& f, double delta, Interval window,
                             const std::vector<double>& mollify_radii = {0.05, 0.1, 0.2});

/// Ispir's weighted modulus
///   Omega(f;delta) = sup_{|h|<=delta, x>=0} |f(x+h)-f(x)| / ((1+h^2)(1+x^2)),
/// estimated on a grid over the window (both signs of h, x+h >= 0).
double weighted_modulus_Omega(const TestFunction& f, double delta, Interval window,
                              double step);

// ---- gamma_n of the second-order bound --------------------------------

/// The printed gamma_n expression.
double gamma_n_literal(const OperatorParams& params, double x);

/// The proof's actual quantity: T((t-x)^2;x) + shift(x)^2 with
/// shift(x) = (beta x + a x/(1+x) + (2 alpha+1)/2) / (n+beta).
double gamma_n_reconstructed(const OperatorParams& params, double x);

double shift_term(const OperatorParams& params, double x);

// ---- weighted space ----------------------------------------------------

/// rho(x) = 1 + x^2 throughout; window stands in for [0, infinity).
struct WeightedSpaceParams {
    Interval window{0.0, 2000.0};
    double norm_grid_step = 0.01;
};

/// sup over the window grid of |f(x)|/(1+x^2), extended by the known
/// limit of f/rho at infinity. Throws if the growth class exceeds rho.
double weighted_norm(const TestFunction& f, const WeightedSpaceParams& space);

/// Same grid supremum for a raw callable (deviation functions);
/// asymptote must be supplied by the caller (0 when it vanishes).
double weighted_norm_fn(const std::function<double(double)>& g, const WeightedSpaceParams& space,
                        double limit_at_infinity);

// ---- bound checks -------------------------------------------------------

struct BoundCheckRecord {
    std::string theorem;  // "T3.1" | "T3.2" | "T4.3"
    OperatorParams params;
    double x = 0.0;
    double empirical_error = 0.0;
    double theoretical_bound = 0.0;
    double fitted_constant = 0.0;
    bool holds = false;
};

std::string bound_check_csv_header();
std::string bound_check_csv_row(const BoundCheckRecord& r);

/// Stability across an n-sweep of per-n fitted constants: the sequence
/// must not grow past 4x its value at the smallest n (a decaying fit is
/// stable; an all-zero fit trivially so).
bool constants_n_stable(const std::map<int, double>& per_n, double factor = 4.0);

struct Theorem31Result {
    std::vector<BoundCheckRecord> records;
    std::map<int, double> fitted_K_per_n;
    double fitted_K = 0.0;
    bool n_stable = false;
    bool all_hold = false;
    // omega-argument variants: A = statement shift (beta x/q + ...),
    // B = proof display (n x/q + ...). Totals at the largest n show
    // which variant actually shrinks with n.
    double variant_A_bound_at_nmax = 0.0;
    double variant_B_bound_at_nmax = 0.0;
};

/// |T(f;x)-f(x)|  vs  K omega2(f; sqrt(gamma_n(x))) + omega(f; shift(x))
/// on the (n, x) sweep; K fitted as the smallest constant covering all
/// cells. Requires f in C_B^2.
Theorem31Result check_theorem_3_1(const OperatorParams& base, const std::vector<int>& ns,
                                  const TestFunction& f, const std::vector<double>& x_grid,
                                  Interval window = {0.0, 20.0});

class CertificateViolation : public std::runtime_error {
  public:
    explicit CertificateViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Samples random pairs against |f(t)-f(x)| <= M |t-x|^alpha/(t+x)^(alpha/2);
/// throws CertificateViolation past 1e-9 slack.
void validate_lip_star(const TestFunction& f, const LipStarCert& cert, int pairs = 10000,
                       unsigned seed = 20240915);

struct Theorem32Result {
    std::vector<BoundCheckRecord> records;
    bool all_hold = false;
    std::map<int, double> error_sqrt_n_at_x1;  // rate diagnostic
};

/// |T(f;x)-f(x)| <= M (Lambda_n(x)/x)^(alpha/2) with Lambda_n the oracle
/// second central moment; no constant fitting, the certificate's M is
/// used directly. x_grid must be positive.
Theorem32Result check_theorem_3_2(const OperatorParams& base, const std::vector<int>& ns,
                                  const TestFunction& f, const std::vector<double>& x_grid);

struct Theorem41Result {
    std::vector<int> ns;
    // norms[i][j] = ||T(t^i)-x^i||_rho at ns[j], i = 0,1,2
    std::array<std::vector<double>, 3> norms;
    bool decayed = false;  // norms at n_max <= 1e-3 * norms at n_min (i=1,2)
};

/// Weighted-Korovkin convergence table from the closed-form moment
/// deviations (no series evaluation, any n).
Theorem41Result check_theorem_4_1(const OperatorParams& base, const std::vector<int>& ns);

struct Theorem43Result {
    std::vector<BoundCheckRecord> records;  // one per n, x = argmax of the LHS
    std::map<int, double> fitted_M_per_n;
    double fitted_M = 0.0;
    bool n_stable = false;
    bool all_hold = false;
};

/// sup_x |T(f;x)-f(x)|/(1+x^2)^3  vs  M Omega(f;(n+beta)^(-1/2)).
Theorem43Result check_theorem_4_3(const OperatorParams& base, const std::vector<int>& ns,
                                  const TestFunction& f, const std::vector<double>& x_grid,
                                  Interval omega_window = {0.0, 50.0});

/// Least-squares slope of log(norm) against log(n); used by the
/// convergence tables.
double loglog_slope(const std::vector<int>& ns, const std::vector<double>& values);

}  // namespace bks
