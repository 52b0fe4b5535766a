#pragma once

#include <array>
#include <string>
#include <vector>

#include "bks/params.hpp"
#include "bks/xupoly.hpp"

namespace bks {

enum class MomentKind { RawL, RawT, CentralT };
enum class FormKind {
    Literal,        // the paper's printed expression, verbatim
    Reconstructed,  // re-derived from the operator definition by exact algebra
};

std::string to_string(MomentKind k);
std::string to_string(FormKind f);

// ---- reconstructed closed forms -------------------------------------

/// L(t^order; x) as an (x,u)-polynomial, derived from the basis
/// generating function via falling-factorial moments of the count
/// distribution (negative binomial convolved with Poisson).
XUPoly raw_moment_L_poly(const OperatorParams& params, int order);

/// T(t^order; x): exact integration of t^order over the Kantorovich
/// intervals applied to the L moments,
///   T(t^m;x) = sum_j C(m,j) / ((m-j+1)(n+beta)^(m-j)) L(t^j;x).
XUPoly raw_moment_T_poly(const OperatorParams& params, int order);

/// T((t-x)^order; x) by binomial expansion of the reconstructed raw
/// moments. Fine on the acceptance grids; cancellation grows as n^4/n^2,
/// so prefer the stable variant for n beyond ~1e4.
XUPoly central_moment_T_poly(const OperatorParams& params, int order);

/// T((t-x)^order; x) assembled from central moments of the count
/// variable plus the uniform interval offset; no large cancellations at
/// any n. Used by the fourth-moment bound and the large-n sweeps.
XUPoly central_moment_T_poly_stable(const OperatorParams& params, int order);

// ---- literal printed forms ------------------------------------------

double literal_raw_moment_L(const OperatorParams& params, int order, double x);
double literal_raw_moment_T(const OperatorParams& params, int order, double x);
/// order in {0,1,2,4}
double literal_central_moment_T(const OperatorParams& params, int order, double x);

/// The unambiguous print-normalizations the literal transcriptions
/// apply, for the verification report.
const std::vector<std::string>& literal_normalizations();

// ---- spec operations -------------------------------------------------

double closed_raw_moment_L(const OperatorParams& params, int order, double x,
                           FormKind form = FormKind::Literal);
double closed_raw_moment_T(const OperatorParams& params, int order, double x,
                           FormKind form = FormKind::Literal);
double closed_central_moment(const OperatorParams& params, int order, double x,
                             FormKind form = FormKind::Literal);

// ---- brute-force oracle ----------------------------------------------

/// Raw L, raw T (orders 0..4) and central T (orders 0..4) by direct
/// series summation with exact monomial integration; one pass per
/// (params, x), compensated accumulation, tail tightened to 1e-14.
struct OracleMoments {
    std::array<double, 5> raw_L{};
    std::array<double, 5> raw_T{};
    std::array<double, 5> central_T{};
};
OracleMoments oracle_moments(const OperatorParams& params, double x,
                             const SeriesPolicy& policy = SeriesPolicy::oracle());

// ---- fourth central moment bound (Lemma 2.4 shape) --------------------

struct FourthMomentCoefficients {
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0;
    double a0 = 0;              // constant-term coefficient, folded into the max
    double bound_constant = 0;  // realized M_a^{alpha,beta} at this n
};

/// Majorant coefficients collected from the exact fourth central moment:
/// positive terms keep their x-power with u^r bounded by 1, negative
/// terms are dropped, so
///   T((t-x)^4;x) <= bound_constant (x^4+x^3+x^2+x+1) / (n+beta)^2
/// holds rigorously for all x >= 0.
FourthMomentCoefficients fourth_moment_coefficients(const OperatorParams& params);

/// A1..A4 exactly as printed in the paper's proof (kept for the
/// discrepancy record; not a valid majorant for beta > 0).
std::array<double, 4> printed_fourth_moment_coefficients(const OperatorParams& params);

struct FourthMomentBound {
    double bound;
    FourthMomentCoefficients coeffs;
};
FourthMomentBound fourth_moment_bound(const OperatorParams& params, double x);

/// sup of bound_constant over a log-spaced n-grid from n_min up to 1e6,
/// the n-uniform realization of the bound constant.
double bound_constant_uniform(const OperatorParams& base, int n_min);

// ---- verification reports ---------------------------------------------

struct MomentReport {
    OperatorParams params;
    double x = 0;
    int order = 0;
    MomentKind kind = MomentKind::RawL;
    FormKind form = FormKind::Literal;
    double closed_form = 0;
    double oracle = 0;
    double abs_diff = 0;
    double rel_diff = 0;
    bool match = false;  // rel <= 1e-8 or abs <= 1e-10
};

/// One report per (x, order, kind, form) over raw orders 0..4 and
/// central orders {0,1,2,4}. Literal mismatches are findings, never
/// corrected; reconstructed forms are expected to match always.
std::vector<MomentReport> verify_moments(const OperatorParams& params,
                                         const std::vector<double>& x_grid);

std::string moment_report_csv_header();
std::string moment_report_csv_row(const MomentReport& r);

}  // namespace bks
