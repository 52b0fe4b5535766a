#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bks {

enum class Domain { UnitInterval, HalfLine };

/// Lipschitz-type certificate: |f(t)-f(x)| <= M |t-x|^alpha / (t+x)^(alpha/2)
/// for t, x in (0, infinity).
struct LipStarCert {
    double M;
    double alpha;  // in (0, 1]
};

/// A named real function on its stated domain with the metadata the
/// bound checkers need to decide eligibility.
struct TestFunction {
    std::string name;
    std::function<double(double)> f;
    Domain domain = Domain::HalfLine;

    bool bounded = false;
    int growth_degree = 0;  // |f(x)| <= C (1 + x^growth_degree); 0 when bounded

    bool is_polynomial = false;
    int poly_degree = 0;

    // C_B^2[0,inf): f, f', f'' continuous and bounded
    bool c2_bounded = false;
    std::function<double(double)> d2;  // second derivative, when available

    // weighted space membership: f/rho has a limit at infinity (rho = 1+x^2)
    bool in_c_rho_k = false;
    double rho_limit = 0.0;

    std::optional<LipStarCert> lip_star;

    std::function<double(double)> antiderivative;  // exact integral capability

    bool has_exact_integral() const { return static_cast<bool>(antiderivative); }
    double exact_integral(double lo, double hi) const {
        return antiderivative(hi) - antiderivative(lo);
    }

    double operator()(double x) const { return f(x); }
};

/// The shipped function catalog.
const std::vector<TestFunction>& catalog();

/// Lookup by name; throws std::invalid_argument for unknown names.
const TestFunction& find_function(const std::string& name);

/// Monomial t^m (m <= 8) as a TestFunction with exact integration;
/// these drive the moment oracles.
TestFunction monomial(int m);

/// Shifted monomial (t - x0)^m with exact integration.
TestFunction shifted_monomial(int m, double x0);

/// Constant function.
TestFunction constant(double c);

}  // namespace bks
