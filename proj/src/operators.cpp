#include "bks/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "bks/numeric.hpp"

namespace bks {

double integrate_interval(const TestFunction& f, double lo, double hi,
                          const QuadratureSpec& quad) {
    if (lo > hi) throw std::invalid_argument("integrate_interval: lo > hi");
    switch (quad.method) {
        case QuadMethod::ExactPolynomial:
            if (!f.is_polynomial)
                throw std::invalid_argument(
                    "integrate_interval: exact-polynomial method requires a polynomial integrand");
            return f.exact_integral(lo, hi);
        case QuadMethod::GaussFixed:
            return gauss_panel(f.f, lo, hi, quad.order);
        case QuadMethod::Adaptive:
            return adaptive_integrate(f.f, lo, hi, quad.tolerance);
    }
    throw std::logic_error("integrate_interval: bad method");
}

QuadratureSpec auto_quadrature(const TestFunction& f, double abs_tol) {
    return f.is_polynomial ? QuadratureSpec::exact_polynomial() : QuadratureSpec::adaptive(abs_tol);
}

double eval_L(const OperatorParams& params, const TestFunction& f, double x,
              const SeriesPolicy& policy) {
    if (x < 0.0) throw std::invalid_argument("eval_L: x must be >= 0");
    const double q = params.q();
    WeightSeries ws(params, x);
    KahanSum mass, acc;
    for (int k = 0; k <= policy.k_max_hard; ++k) {
        double w = ws.next();
        mass.add(w);
        if (w > 0.0) acc.add(w * f.f((k + params.alpha) / q));
        if (mass.value() >= 1.0 - policy.tail_epsilon) return acc.value();
    }
    throw TailNotAbsorbed(params, x, policy.k_max_hard, mass.value());
}

double eval_T(const OperatorParams& params, const TestFunction& f, double x,
              const SeriesPolicy& policy, QuadratureSpec quad) {
    if (x < 0.0) throw std::invalid_argument("eval_T: x must be >= 0");
    const double q = params.q();
    // Budget adaptive tolerance so the summed quadrature error, after the
    // (n+beta) scaling and the <=1 total weight, stays below tail_epsilon.
    if (quad.method == QuadMethod::Adaptive) {
        int k_guess = truncation_index(params, x, policy);
        quad.tolerance = policy.tail_epsilon / ((k_guess + 1.0) * q);
    }
    WeightSeries ws(params, x);
    KahanSum mass, acc;
    for (int k = 0; k <= policy.k_max_hard; ++k) {
        double w = ws.next();
        mass.add(w);
        if (w > 0.0) {
            double lo = (k + params.alpha) / q;
            double hi = (k + params.alpha + 1.0) / q;
            acc.add(w * q * integrate_interval(f, lo, hi, quad));
        }
        if (mass.value() >= 1.0 - policy.tail_epsilon) return acc.value();
    }
    throw TailNotAbsorbed(params, x, policy.k_max_hard, mass.value());
}

namespace {

void check_unit_interval(double x) {
    if (x < 0.0 || x > 1.0)
        throw std::invalid_argument("baseline operator domain is [0,1], got x=" +
                                    std::to_string(x));
}

// Binomial pmf C(n,k) x^k (1-x)^(n-k) for k = 0..n via its one-term
// recurrence; exact at the endpoints.
std::vector<double> bernstein_weights(int n, double x) {
    std::vector<double> w(static_cast<std::size_t>(n) + 1, 0.0);
    if (x == 0.0) { w[0] = 1.0; return w; }
    if (x == 1.0) { w[static_cast<std::size_t>(n)] = 1.0; return w; }
    double r = x / (1.0 - x);
    double cur = std::pow(1.0 - x, n);
    if (cur == 0.0) {  // deep underflow: assemble each weight from logs
        for (int k = 0; k <= n; ++k)
            w[static_cast<std::size_t>(k)] = std::exp(
                log_binomial(n, k) + k * std::log(x) + (n - k) * std::log1p(-x));
        return w;
    }
    for (int k = 0; k <= n; ++k) {
        w[static_cast<std::size_t>(k)] = cur;
        cur *= r * (n - k) / (k + 1.0);
    }
    return w;
}

}  // namespace

Baseline baseline_from_name(const std::string& name) {
    if (name == "bernstein") return Baseline::Bernstein;
    if (name == "kantorovich") return Baseline::Kantorovich;
    if (name == "stancu") return Baseline::Stancu;
    if (name == "kantorovich_stancu") return Baseline::KantorovichStancu;
    if (name == "baskakov_kantorovich") return Baseline::BaskakovKantorovich;
    throw std::invalid_argument("unknown baseline operator: " + name);
}

double eval_baseline(Baseline which, const OperatorParams& params, const TestFunction& f,
                     double x, const SeriesPolicy& policy, QuadratureSpec quad) {
    const int n = params.n;
    switch (which) {
        case Baseline::Bernstein: {
            check_unit_interval(x);
            auto w = bernstein_weights(n, x);
            KahanSum acc;
            for (int k = 0; k <= n; ++k) acc.add(w[static_cast<std::size_t>(k)] * f.f(double(k) / n));
            return acc.value();
        }
        case Baseline::Stancu: {
            check_unit_interval(x);
            auto w = bernstein_weights(n, x);
            KahanSum acc;
            for (int k = 0; k <= n; ++k)
                acc.add(w[static_cast<std::size_t>(k)] *
                        f.f((k + params.alpha) / (n + params.beta)));
            return acc.value();
        }
        case Baseline::Kantorovich: {
            check_unit_interval(x);
            auto w = bernstein_weights(n, x);
            if (quad.method == QuadMethod::Adaptive)
                quad.tolerance = policy.tail_epsilon / ((n + 1.0) * (n + 1.0));
            KahanSum acc;
            for (int k = 0; k <= n; ++k)
                acc.add(w[static_cast<std::size_t>(k)] * (n + 1.0) *
                        integrate_interval(f, double(k) / (n + 1), double(k + 1) / (n + 1), quad));
            return acc.value();
        }
        case Baseline::KantorovichStancu: {
            check_unit_interval(x);
            auto w = bernstein_weights(n, x);
            const double q1 = n + params.beta + 1.0;
            if (quad.method == QuadMethod::Adaptive)
                quad.tolerance = policy.tail_epsilon / ((n + 1.0) * q1);
            KahanSum acc;
            for (int k = 0; k <= n; ++k)
                acc.add(w[static_cast<std::size_t>(k)] * q1 *
                        integrate_interval(f, (k + params.alpha) / q1,
                                           (k + params.alpha + 1.0) / q1, quad));
            return acc.value();
        }
        case Baseline::BaskakovKantorovich: {
            // Deliberately assembled from the per-(k,x) weight formula
            // rather than the shared series engine, so the alpha=beta=0
            // reduction of eval_T has an independent path to agree with.
            if (x < 0.0) throw std::invalid_argument("baskakov_kantorovich: x must be >= 0");
            OperatorParams p(params.n, params.a, 0.0, 0.0);
            if (quad.method == QuadMethod::Adaptive)
                quad.tolerance = policy.tail_epsilon / ((policy.k_max_hard + 1.0) * n);
            KahanSum mass, acc;
            for (int k = 0; k <= policy.k_max_hard; ++k) {
                double w = basis_weight(p, k, x, policy);
                mass.add(w);
                if (w > 0.0)
                    acc.add(w * n *
                            integrate_interval(f, double(k) / n, double(k + 1) / n, quad));
                if (mass.value() >= 1.0 - policy.tail_epsilon) return acc.value();
            }
            throw TailNotAbsorbed(p, x, policy.k_max_hard, mass.value());
        }
    }
    throw std::logic_error("eval_baseline: bad operator");
}

}  // namespace bks
