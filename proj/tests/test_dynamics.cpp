#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden_values.hpp"

#include "lineshape/dynamics.hpp"
#include "lineshape/errors.hpp"
#include "lineshape/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lineshape;
using std::numbers::pi;

namespace {

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

ModelParams row(const char* name) { return *preset(name); }

// J by the trapezoid rule after w = d tan(theta), which makes the integrand
// d tan^2 / (zeta - d tan)^2 smooth and compact on [0, pi/2].
Complex kernel_brute(Complex z, const ModelParams& p, int panels) {
    const Complex zeta = z - p.e1;
    const double h = (pi / 2) / panels;
    Complex sum{};
    for (int i = 1; i < panels; ++i) {
        const double th = i * h;
        const double tn = std::tan(th);
        const Complex den = zeta - p.d * tn;
        sum += p.d * tn * tn / (den * den);
    }
    // End points: 0 at theta = 0 and d^{-1} at theta = pi/2.
    sum += 0.5 / p.d;
    return 4.0 * pi * p.c1_sq * h * sum;
}

} // namespace

TEST_CASE("kernel integral matches the extended-precision oracle") {
    const auto a = row("table1-a");
    CHECK(rel(kernel_integral(Complex(a.e1, a.d), a), golden::kKernelAtID) < 1e-8);
    CHECK(rel(kernel_integral(Complex(a.e1, 1e3 * a.d), a), golden::kKernelAt1e3ID) < 1e-8);
    CHECK(rel(kernel_integral(Complex(a.e2 + 50.0, 300.0), a), golden::kKernelNearLine) < 1e-8);
}

TEST_CASE("kernel integral matches a brute-force trapezoid sum") {
    for (auto name : kPresetNames) {
        const auto p = row(name.data());
        for (Complex z : {Complex(p.e1 + 3e6, 2e6), Complex(p.e1 - 5e5, 1e3), Complex(p.e2 + 50.0, 3e3)}) {
            CAPTURE(z);
            CHECK(rel(kernel_integral(z, p), kernel_brute(z, p, 2'000'000)) < 1e-6);
        }
    }
}

TEST_CASE("kernel integral at i d and 1e3 i d matches 1e7 trapezoid panels") {
    const auto a = row("table1-a");
    for (Complex z : {Complex(a.e1, a.d), Complex(a.e1, 1e3 * a.d)}) {
        CAPTURE(z);
        CHECK(rel(kernel_integral(z, a), kernel_brute(z, a, 10'000'000)) < 1e-8);
    }
}

TEST_CASE("kernel integral is conjugate-symmetric and rejects the cut") {
    const auto p = row("table1-b");
    const Complex z{p.e2 - 700.0, 450.0};
    CHECK(rel(kernel_integral(std::conj(z), p), std::conj(kernel_integral(z, p))) < 1e-12);
    CHECK_THROWS_AS(kernel_integral(Complex(p.e2, 0.0), p), PoleOnPath);
    CHECK_NOTHROW(kernel_integral(Complex(p.e1 - 10.0, 0.0), p));
}

TEST_CASE("T-matrix equation holds for the closed form") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-2e4, 2e4), lg(2.0, 4.0);
    for (auto name : kPresetNames) {
        const auto p = row(name.data());
        for (int i = 0; i < 5; ++i) {
            const Complex z{p.e2 + re(rng), std::pow(10.0, lg(rng))};
            CAPTURE(z);
            const auto r = ode_residual(z, p);
            CHECK(r.rel_residual < 1e-6);
            CHECK(r.step_sequence.size() == 3);
            CHECK(ode_residual(z, p, lambda_only_source(p)).rel_residual < 1e-9);
        }
    }
}

TEST_CASE("T-matrix residual shrinks with the step until rounding takes over") {
    const auto p = row("table1-c");
    const Complex z{p.e2, 500.0};
    CHECK(ode_residual(z, p).rel_residual < 1e-6);
    double prev = ode_residual(z, p, {8.0}).rel_residual;
    for (double h : {2.0, 0.5, 0.125}) {
        const double cur = ode_residual(z, p, {h}).rel_residual;
        CAPTURE(h);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("T-matrix equation detects a wrong solution") {
    const auto p = row("table1-c");
    const Complex z{p.e2 + 1500.0, 400.0};
    // T1 off by 1%: the equation no longer closes.
    TMatrixSource wrong = [&](Complex at) { return t_matrix_from_t1(at, 1.01 * t1_of_z(at, p), p); };
    CHECK(ode_residual(z, p, wrong).rel_residual > 1e-4);
}

TEST_CASE("ode_residual argument checks") {
    const auto p = row("table1-a");
    CHECK_THROWS_AS(ode_residual(Complex(p.e2, -100.0), p), std::invalid_argument);
    CHECK_THROWS_AS(ode_residual(Complex(p.e2, 100.0), p, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(ode_residual(Complex(p.e2, 100.0), p, {1e-14}), StepUnderflow);
}

TEST_CASE("boundary: scaled residual bounded; unscaled bound only without b2") {
    for (auto name : kPresetNames) {
        const auto p = row(name.data());
        CAPTURE(name);
        double prev = boundary_residual(1e2 * p.d, p);
        for (int k = 1; k <= 12; ++k) {
            const double cur = boundary_residual(p.d * std::pow(10.0, 2.0 + 0.5 * k), p);
            CHECK(cur <= prev);
            prev = cur;
        }
        // With b2 = 0 the leftover is O(b1/L^2) and the unscaled bound holds.
        auto q = p;
        q.b2 = 0.0;
        CHECK(check_boundary_scaled(q).passed);
        CHECK(check_boundary_unscaled(q).passed);
    }
}

TEST_CASE("survival amplitude") {
    const auto p = row("table1-a").decaying();
    SUBCASE("starts at one") { CHECK(std::abs(survival_amplitude(0.0, p).value - 1.0) < 1e-6); }
    SUBCASE("instantaneous potential gives exp(-i Lambda t)") {
        const auto src = lambda_only_source(p);
        for (double t : {1e-4, 1e-3, 0.01, 0.04}) {
            const Complex expect = std::exp(Complex(0.0, -1.0) * p.lambda() * t);
            const auto a = survival_amplitude(t, p, src);
            CAPTURE(t);
            CHECK(rel(a.value, expect) < 1e-6);
            CHECK_FALSE(a.truncation_warning);
        }
    }
    SUBCASE("full model decays and stays below one") {
        double prev = 1.0 + 1e-9;
        for (double t : {0.0, 1e-4, 1e-3, 0.01, 0.04}) {
            const double m = std::abs(survival_amplitude(t, p).value);
            CHECK(m <= prev);
            prev = m;
        }
        CHECK(prev < 1e-3);
        // t = 50 / Gamma with Gamma = 2 |Im Lambda|.
        CHECK(std::abs(survival_amplitude(50.0 / (2.0 * std::abs(p.lambda_im)), p).value) < 0.05);
    }
    SUBCASE("growing convention is refused") {
        CHECK_THROWS_AS(survival_amplitude(0.0, row("table1-a")), std::invalid_argument);
        CHECK_THROWS_AS(photon_amplitude(p.e2, 0.0, row("table1-a")), std::invalid_argument);
    }
}

TEST_CASE("photon spectrum at late times follows the closed-form profile") {
    const auto c = check_photon_ratios(row("table1-a"));
    CHECK(c.passed);
    CHECK(c.value < 1e-3);
}

TEST_CASE("photon spectrum is non-negative and vanishes as omega -> 0") {
    const auto p = row("table1-a").decaying();
    const double t = 20.0 / std::abs(p.lambda_im);
    const double peak = photon_amplitude_profile(p.transition_energy(), t, p);
    double prev = 0.0;
    for (double w : {1e-3, 1.0, 1e3}) {
        const double v = photon_amplitude_profile(w, t, p);
        CHECK(v >= 0.0);
        CHECK(v >= prev);
        prev = v;
    }
    CHECK(photon_amplitude_profile(1e-3, t, p) < 1e-20 * peak);
}

TEST_CASE("f(tau)") {
    const auto p = row("table1-a");
    SUBCASE("transform round trip") {
        for (Complex z : {Complex(0.0, 10.0), Complex(5.0, 3.0), Complex(-20.0, 50.0), Complex(1e3, 1e3)}) {
            CAPTURE(z);
            CHECK(rel(f_tau_transform(z, 50.0 / z.imag(), p), kernel_transform(z, p)) < 1e-2);
        }
    }
    SUBCASE("linear in (b1, b2)") {
        auto q0 = p, q2 = p;
        q0.b2 = 0.0;
        q2.b2 = 2.0 * p.b2;
        for (double tau : {1e-3, 0.1, 2.0}) {
            const Complex f0 = eval_f_tau(tau, q0), f1 = eval_f_tau(tau, p), f2 = eval_f_tau(tau, q2);
            CHECK(std::abs((f2 - f1) - (f1 - f0)) <= 1e-9 * std::abs(f1));
        }
        // b1 = -1 / (4 pi c1^2): halving c1^2 doubles f when b2 = 0.
        auto h = q0;
        h.c1_sq = 0.5 * q0.c1_sq;
        for (double tau : {1e-3, 0.1, 2.0}) CHECK(rel(eval_f_tau(tau, h), 2.0 * eval_f_tau(tau, q0)) < 1e-9);
    }
    SUBCASE("lower branch vanishes") { CHECK(eval_f_tau(0.5, p, {}, LogBranch::lower) == Complex{}); }
    SUBCASE("no delta at tau = 0") {
        CHECK(check_f_tau_mass(p).passed);
        // Mass ~ -i b1 / ln(1/eps) for small eps.
        const double eps = 1e-30;
        const Complex m = f_tau_mass(eps, p);
        CHECK(std::abs(m) < 2.0 * std::abs(p.b1()) / std::log(1.0 / eps));
    }
    SUBCASE("argument checks") {
        CHECK_THROWS_AS(eval_f_tau(0.0, p), std::invalid_argument);
        CHECK_THROWS_AS(f_tau_transform(Complex(1.0, -1.0), 1.0, p), std::invalid_argument);
        CHECK_THROWS_AS(f_tau_mass(0.0, p), std::invalid_argument);
    }
}

TEST_CASE("contour config") {
    ContourConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(effective_y_offset(c, row("table1-c")) == 60.0);
    CHECK(effective_y_offset(c, ModelParams{}) == 10.0);
    c.y_offset = 5.0;
    CHECK(effective_y_offset(c, row("table1-c")) == 5.0);
    c.oscillation_budget = 1;
    CHECK_THROWS_AS(c.validate(), ValidationError);
}
