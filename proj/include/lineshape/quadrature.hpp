// quadrature.hpp — adaptive Gauss-Kronrod (10/21) integration for real or complex integrands

#pragma once

#include "lineshape/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <queue>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace lineshape {

struct QuadratureConfig {
    enum class Transform { none, semi_infinite_rational };

    double rel_tol{1e-9};
    double abs_tol{0.0};
    int max_subdivisions{2000}; // bisections allowed beyond the initial partition
    Transform transform{Transform::semi_infinite_rational};

    void validate() const;
    bool operator==(const QuadratureConfig&) const = default;
};

template <class T>
struct QuadratureResult {
    T value{};
    double error{0.0};
    int subdivisions{0};
};

namespace detail {

// QUADPACK qk21 abscissae/weights.
inline constexpr std::array<double, 11> kXgk{
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kWgk{
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208529285370, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg{
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    double abs_value; // integral of |f|, for the rounding floor
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class T, class F>
Panel<T> gk21(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const T fc = f(center);
    T kronrod = fc * kWgk[10];
    T gauss{};
    double abs_sum = std::abs(fc) * kWgk[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = half * kXgk[j];
        const T f1 = f(center - dx);
        const T f2 = f(center + dx);
        kronrod += (f1 + f2) * kWgk[j];
        abs_sum += (std::abs(f1) + std::abs(f2)) * kWgk[j];
        if (j % 2 == 1) gauss += (f1 + f2) * kWg[j / 2];
    }
    Panel<T> p{a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
    if (!std::isfinite(p.error)) p.error = std::numeric_limits<double>::infinity();
    return p;
}

inline std::string limit_message(int limit, double err, double target) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "adaptive quadrature: subdivision limit %d reached (error %.3g, target %.3g)", limit,
                  err, target);
    return buf;
}

} // namespace detail

/// Adaptive GK21 on the finite interval [a, b]. The interval is first cut at
/// `breakpoints` (those strictly inside) and into at least `min_panels`
/// equal pieces; the worst panel is then bisected until the summed error
/// meets max(abs_tol, rel_tol*|I|) or reaches the rounding floor of
/// integral |f|. Throws NonConvergent past max_subdivisions bisections.
template <class F>
auto integrate_adaptive(F&& f, double a, double b, const QuadratureConfig& cfg,
                        std::span<const double> breakpoints = {}, int min_panels = 1)
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
    using T = std::invoke_result_t<F&, double>;
    std::vector<double> cuts;
    cuts.reserve(breakpoints.size() + static_cast<std::size_t>(std::max(min_panels, 1)) + 1);
    const int n = std::max(min_panels, 1);
    for (int i = 0; i <= n; ++i) cuts.push_back(i == n ? b : a + (b - a) * static_cast<double>(i) / n);
    for (double x : breakpoints)
        if (x > std::min(a, b) && x < std::max(a, b)) cuts.push_back(x);
    if (a <= b)
        std::sort(cuts.begin(), cuts.end());
    else
        std::sort(cuts.begin(), cuts.end(), std::greater<>());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::priority_queue<detail::Panel<T>> heap;
    T total{};
    double err = 0.0;
    double abs_total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto p = detail::gk21<T>(f, cuts[i], cuts[i + 1]);
        total += p.value;
        err += p.error;
        abs_total += p.abs_value;
        heap.push(p);
    }
    constexpr double kEps = std::numeric_limits<double>::epsilon();
    int splits = 0;
    while (true) {
        const double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total));
        if (err <= target || err <= 50.0 * kEps * abs_total) break;
        if (splits >= cfg.max_subdivisions)
            throw NonConvergent(detail::limit_message(cfg.max_subdivisions, err, target));
        auto worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid == worst.a || mid == worst.b) {
            // Panel at machine resolution: accept its contribution as is.
            err -= worst.error;
            worst.error = 0.0;
            heap.push(worst);
            continue;
        }
        auto left = detail::gk21<T>(f, worst.a, mid);
        auto right = detail::gk21<T>(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        abs_total += left.abs_value + right.abs_value - worst.abs_value;
        heap.push(left);
        heap.push(right);
        ++splits;
    }
    // Re-sum to shed the drift accumulated by the incremental updates.
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    return {sum, esum, splits};
}

/// Integral of f over [a, inf). With the rational transform,
/// x = a + scale*s/(1-s) maps [0, 1) onto [a, inf); f must decay faster
/// than 1/x. With Transform::none the caller must supply a decaying f and
/// the range is cut at a + 1e6*scale.
template <class F>
auto integrate_semi_infinite(F&& f, double a, double scale, const QuadratureConfig& cfg,
                             std::span<const double> breakpoints = {}, int min_panels = 1)
    -> QuadratureResult<std::invoke_result_t<F&, double>> {
    using T = std::invoke_result_t<F&, double>;
    if (cfg.transform == QuadratureConfig::Transform::none)
        return integrate_adaptive(f, a, a + 1e6 * scale, cfg, breakpoints, min_panels);
    std::vector<double> mapped;
    mapped.reserve(breakpoints.size());
    for (double x : breakpoints)
        if (x > a) mapped.push_back((x - a) / (x - a + scale));
    auto g = [&](double s) -> T {
        const double one_minus = 1.0 - s;
        const double x = a + scale * s / one_minus;
        if (!std::isfinite(x)) return T{};
        return f(x) * (scale / (one_minus * one_minus));
    };
    return integrate_adaptive(g, 0.0, 1.0, cfg, mapped, min_panels);
}

} // namespace lineshape
