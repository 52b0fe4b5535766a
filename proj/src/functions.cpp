#include "bks/functions.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "bks/numeric.hpp"

namespace bks {

namespace {

// C^2 cap for t^2: t^2 on [0,10], quintic Hermite blend on [10,16]
// (value/slope/curvature matched at 10, flat at 16), constant 160 after.
// Power-basis coefficients in s = (t-10)/6.
constexpr std::array<double, 6> kCapCoef = {100.0, 120.0, 36.0, -228.0, 168.0, -36.0};
constexpr double kCapLo = 10.0, kCapHi = 16.0, kCapH = 6.0, kCapPlateau = 160.0;

double cap_eval(double t) {
    if (t <= kCapLo) return t * t;
    if (t >= kCapHi) return kCapPlateau;
    double s = (t - kCapLo) / kCapH;
    double v = 0.0;
    for (int j = 5; j >= 0; --j) v = v * s + kCapCoef[static_cast<std::size_t>(j)];
    return v;
}

double cap_d2(double t) {
    if (t <= kCapLo) return 2.0;
    if (t >= kCapHi) return 0.0;
    double s = (t - kCapLo) / kCapH;
    double v = 0.0;
    for (int j = 5; j >= 2; --j)
        v = v * s + kCapCoef[static_cast<std::size_t>(j)] * j * (j - 1);
    return v / (kCapH * kCapH);
}

double cap_antideriv(double t) {
    // F(10) = 1000/3; on the blend F(t) = F(10) + h * sum c_j s^{j+1}/(j+1)
    const double f10 = 1000.0 / 3.0;
    if (t <= kCapLo) return t * t * t / 3.0;
    auto blend = [](double s) {
        double v = 0.0;
        for (int j = 5; j >= 0; --j)
            v = v * s + kCapCoef[static_cast<std::size_t>(j)] / (j + 1.0);
        return v * s;
    };
    if (t <= kCapHi) return f10 + kCapH * blend((t - kCapLo) / kCapH);
    return f10 + kCapH * blend(1.0) + kCapPlateau * (t - kCapHi);
}

std::vector<TestFunction> build_catalog() {
    std::vector<TestFunction> v;

    {
        TestFunction g;
        g.name = "one";
        g.f = [](double) { return 1.0; };
        g.bounded = true;
        g.is_polynomial = true;
        g.poly_degree = 0;
        g.c2_bounded = true;
        g.d2 = [](double) { return 0.0; };
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return t; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "t";
        g.f = [](double t) { return t; };
        g.growth_degree = 1;
        g.is_polynomial = true;
        g.poly_degree = 1;
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return 0.5 * t * t; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "t2";
        g.f = [](double t) { return t * t; };
        g.growth_degree = 2;
        g.is_polynomial = true;
        g.poly_degree = 2;
        g.in_c_rho_k = true;
        g.rho_limit = 1.0;
        g.antiderivative = [](double t) { return t * t * t / 3.0; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "t3";
        g.f = [](double t) { return t * t * t; };
        g.growth_degree = 3;
        g.is_polynomial = true;
        g.poly_degree = 3;
        g.antiderivative = [](double t) { return 0.25 * t * t * t * t; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "t4";
        g.f = [](double t) { return t * t * t * t; };
        g.growth_degree = 4;
        g.is_polynomial = true;
        g.poly_degree = 4;
        g.antiderivative = [](double t) { return 0.2 * t * t * t * t * t; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "exp_neg";
        g.f = [](double t) { return std::exp(-t); };
        g.bounded = true;
        g.c2_bounded = true;
        g.d2 = [](double t) { return std::exp(-t); };
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return -std::exp(-t); };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "sin";
        g.f = [](double t) { return std::sin(t); };
        g.bounded = true;
        g.c2_bounded = true;
        g.d2 = [](double t) { return -std::sin(t); };
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return -std::cos(t); };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "abs_tm1";
        g.f = [](double t) { return std::abs(t - 1.0); };
        g.growth_degree = 1;
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return 0.5 * (t - 1.0) * std::abs(t - 1.0); };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "sqrt";
        g.f = [](double t) { return std::sqrt(t); };
        g.growth_degree = 1;
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        // |sqrt(t)-sqrt(x)| = |t-x|/(sqrt(t)+sqrt(x)) <= |t-x|/sqrt(t+x)
        g.lip_star = LipStarCert{1.0, 1.0};
        g.antiderivative = [](double t) { return (2.0 / 3.0) * t * std::sqrt(t); };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "runge";
        g.f = [](double t) { return 1.0 / (1.0 + t * t); };
        g.bounded = true;
        g.c2_bounded = true;
        g.d2 = [](double t) {
            double d = 1.0 + t * t;
            return (6.0 * t * t - 2.0) / (d * d * d);
        };
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = [](double t) { return std::atan(t); };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "one_plus_t2";
        g.f = [](double t) { return 1.0 + t * t; };
        g.growth_degree = 2;
        g.is_polynomial = true;
        g.poly_degree = 2;
        g.in_c_rho_k = true;
        g.rho_limit = 1.0;
        g.antiderivative = [](double t) { return t + t * t * t / 3.0; };
        v.push_back(g);
    }
    {
        TestFunction g;
        g.name = "t2_capped";
        g.f = cap_eval;
        g.bounded = true;
        g.c2_bounded = true;
        g.d2 = cap_d2;
        g.in_c_rho_k = true;
        g.rho_limit = 0.0;
        g.antiderivative = cap_antideriv;
        v.push_back(g);
    }
    return v;
}

}  // namespace

const std::vector<TestFunction>& catalog() {
    static const std::vector<TestFunction> cat = build_catalog();
    return cat;
}

const TestFunction& find_function(const std::string& name) {
    for (const auto& g : catalog())
        if (g.name == name) return g;
    throw std::invalid_argument("unknown catalog function: " + name);
}

TestFunction monomial(int m) {
    if (m < 0 || m > 8) throw std::invalid_argument("monomial: order out of range");
    TestFunction g;
    g.name = "t^" + std::to_string(m);
    g.f = [m](double t) { return std::pow(t, m); };
    g.bounded = (m == 0);
    g.growth_degree = m;
    g.is_polynomial = true;
    g.poly_degree = m;
    g.in_c_rho_k = (m <= 2);
    g.rho_limit = (m == 2) ? 1.0 : 0.0;
    g.antiderivative = [m](double t) { return std::pow(t, m + 1) / (m + 1.0); };
    return g;
}

TestFunction shifted_monomial(int m, double x0) {
    if (m < 0 || m > 8) throw std::invalid_argument("shifted_monomial: order out of range");
    TestFunction g;
    g.name = "(t-" + std::to_string(x0) + ")^" + std::to_string(m);
    g.f = [m, x0](double t) { return std::pow(t - x0, m); };
    g.growth_degree = m;
    g.is_polynomial = true;
    g.poly_degree = m;
    g.antiderivative = [m, x0](double t) { return std::pow(t - x0, m + 1) / (m + 1.0); };
    return g;
}

TestFunction constant(double c) {
    TestFunction g;
    g.name = "const(" + std::to_string(c) + ")";
    g.f = [c](double) { return c; };
    g.bounded = true;
    g.is_polynomial = true;
    g.poly_degree = 0;
    g.c2_bounded = true;
    g.d2 = [](double) { return 0.0; };
    g.in_c_rho_k = true;
    g.antiderivative = [c](double t) { return c * t; };
    return g;
}

}  // namespace bks
