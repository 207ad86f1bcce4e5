#include "lineshape/dynamics.hpp"

#include "lineshape/errors.hpp"

#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lineshape {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Beyond this |u| the contour integrands are dropped; they decay at least
// like 1/u^2 and squaring larger values overflows.
constexpr double kFarCutoff = 1e100;

struct LineIntegral {
    Complex value;
    double error{0.0};
    double tail_error{0.0};
};

std::vector<double> geometric_breakpoints(double center, double start, double limit) {
    std::vector<double> pts{center};
    for (double r = start; r < limit; r *= 4.0) {
        pts.push_back(center - r);
        pts.push_back(center + r);
    }
    return pts;
}

/// int_{-inf}^{inf} exp(-i u t) g(u) du for g decaying at least like 1/u^2.
template <class G>
LineIntegral oscillatory_line_integral(G&& g, double t, double halfwidth, int budget, const QuadratureConfig& q,
                                       std::span<const double> breakpoints) {
    int min_panels = 16;
    if (t > 0.0) {
        const double panel = 2.0 * kPi / t * 21.0 / budget;
        min_panels = std::max(16, static_cast<int>(std::ceil(2.0 * halfwidth / panel)));
    }
    auto central_f = [&](double u) { return std::exp(Complex(0.0, -u * t)) * g(u); };
    const auto central = integrate_adaptive(central_f, -halfwidth, halfwidth, q, breakpoints, min_panels);

    Complex tails{};
    double tail_err = 0.0;
    if (t > 0.0) {
        namespace bq = boost::math::quadrature;
        const double tol = std::max(q.rel_tol, 1e-12);
        bq::ooura_fourier_cos<double> cos_rule(tol);
        bq::ooura_fourier_sin<double> sin_rule(tol);
        for (double sign : {1.0, -1.0}) {
            auto h = [&](double s) -> Complex {
                const double u = sign * (halfwidth + s);
                if (std::abs(u) > kFarCutoff) return {};
                return g(u);
            };
            auto re = [&](double s) { return h(s).real(); };
            auto im = [&](double s) { return h(s).imag(); };
            const auto [c_re, ec_re] = cos_rule.integrate(re, t);
            const auto [c_im, ec_im] = cos_rule.integrate(im, t);
            const auto [s_re, es_re] = sin_rule.integrate(re, t);
            const auto [s_im, es_im] = sin_rule.integrate(im, t);
            const Complex c{c_re, c_im};
            const Complex s{s_re, s_im};
            tails += std::exp(Complex(0.0, -sign * halfwidth * t)) * (c - kI * sign * s);
            tail_err += std::abs(c_re) * ec_re + std::abs(c_im) * ec_im + std::abs(s_re) * es_re +
                        std::abs(s_im) * es_im;
        }
    } else {
        for (double sign : {1.0, -1.0}) {
            auto h = [&](double s) -> Complex {
                const double u = sign * (halfwidth + s);
                if (std::abs(u) > kFarCutoff) return {};
                return g(u);
            };
            const auto r = integrate_semi_infinite(h, 0.0, halfwidth, q);
            tails += r.value;
            tail_err += r.error;
        }
    }
    return {central.value + tails, central.error + tail_err, tail_err};
}

/// tau * f(tau) as a function of ln(tau), finite down to tau -> 0.
Complex tau_f_from_log(double log_tau, const ModelParams& p, const QuadratureConfig& q) {
    const double b1 = p.b1();
    const double b2 = p.b2;
    const double d0 = p.d0;
    const double log_d0 = std::log(d0);
    // Jump of the transform across the cut, z = -i s with s = sigma/tau:
    // first sheet ln(-z/d0) = ln(s/d0) + i pi/2, continued sheet - 3 i pi/2.
    auto jump = [&](double log_s) {
        const double ls = log_s - log_d0;
        const Complex l1{ls, 0.5 * kPi};
        const Complex l2{ls, -1.5 * kPi};
        return b1 / l1 + b2 / (l1 * l1) - b1 / l2 - b2 / (l2 * l2);
    };
    auto laplace = [&](double sigma) -> Complex {
        if (sigma > 745.0) return {};
        return std::exp(-sigma) * jump(std::log(sigma) - log_tau);
    };
    const double cut = d0 * std::exp(log_tau); // s = d0
    std::vector<double> bps;
    if (cut > 0.0 && std::isfinite(cut)) bps.push_back(cut);
    const auto r = integrate_semi_infinite(laplace, 0.0, 1.0, q, bps);
    Complex out = r.value / (2.0 * kPi);
    if (log_tau > -700.0) {
        // Residue of the pole at z = -d0 (where ln(-z/d0) = 0).
        const double tau = std::exp(log_tau);
        const Complex residue = std::exp(Complex(0.0, d0 * tau)) * (b1 * d0 + b2 * d0 * (1.0 + kI * d0 * tau));
        out += tau * residue;
    }
    return out;
}

} // namespace

void ContourConfig::validate() const {
    if (!(x_halfwidth > 0.0)) throw ValidationError("x_halfwidth", "must be > 0");
    if (!std::isfinite(y_offset)) throw ValidationError("y_offset", "must be finite");
    if (oscillation_budget < 2) throw ValidationError("oscillation_budget", "must be >= 2");
}

double effective_y_offset(const ContourConfig& c, const ModelParams& p) {
    if (c.y_offset > 0.0) return c.y_offset;
    return std::max(10.0, 2.0 * std::abs(p.lambda_im) / 10.0);
}

TMatrixSource closed_form_source(const ModelParams& p) {
    return [p](Complex z) { return t_matrix(z, p); };
}

TMatrixSource lambda_only_source(const ModelParams& p) {
    return [p](Complex z) { return t_matrix_from_t1(z, Complex{}, p); };
}

Complex kernel_integral(Complex z, const ModelParams& p, const QuadratureConfig& q) {
    const Complex zeta = z - p.e1;
    if (zeta.real() >= 0.0 && std::abs(zeta.imag()) <= 1e-12 * std::abs(zeta))
        throw PoleOnPath("kernel_integral: z - E1 lies on the integration path [0, inf)");
    const double d2 = p.d * p.d;
    auto integrand = [&](double w) {
        const Complex den = zeta - w;
        return (w * w / (d2 + w * w)) / (den * den);
    };
    std::vector<double> bps{p.d};
    if (zeta.real() > 0.0) {
        const double width = std::abs(zeta.imag());
        bps.insert(bps.end(), {zeta.real(), zeta.real() - width, zeta.real() + width});
    }
    const auto r = integrate_semi_infinite(integrand, 0.0, p.d, q, bps);
    return 4.0 * kPi * p.c1_sq * r.value;
}

std::vector<double> default_steps(Complex z, const ModelParams& p) {
    const double h = 1e-3 * std::abs(z - p.e2);
    return {h, h / 4.0, h / 16.0};
}

ResidualReport ode_residual(Complex z, const ModelParams& p, std::vector<double> steps, const QuadratureConfig& q) {
    return ode_residual(z, p, closed_form_source(p), std::move(steps), q);
}

ResidualReport ode_residual(Complex z, const ModelParams& p, const TMatrixSource& source, std::vector<double> steps,
                            const QuadratureConfig& q) {
    if (!(z.imag() > 0.0))
        throw std::invalid_argument("ode_residual: needs Im z > 0 (the closed form is the upper-half-plane branch)");
    if (steps.empty()) steps = default_steps(z, p);
    for (std::size_t i = 0; i < steps.size(); ++i) {
        if (!(steps[i] > 0.0)) throw std::invalid_argument("ode_residual: steps must be positive");
        if (i > 0 && !(steps[i] < steps[i - 1]))
            throw std::invalid_argument("ode_residual: steps must be strictly decreasing");
        if (steps[i] < 1e3 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z)))
            throw StepUnderflow("ode_residual: step " + std::to_string(steps[i]) + " at the rounding floor");
    }

    using Row = std::array<Complex, 3>; // t11, t12, t22
    auto eval = [&](Complex at) {
        const auto t = source(at);
        return Row{t.t11, t.t12, t.t22};
    };
    // Fourth-order central stencil, then Richardson over the step sequence.
    auto stencil = [&](double h) {
        const Row fp2 = eval(z + 2.0 * h), fp1 = eval(z + h), fm1 = eval(z - h), fm2 = eval(z - 2.0 * h);
        Row d;
        for (int k = 0; k < 3; ++k) d[k] = (-fp2[k] + 8.0 * fp1[k] - 8.0 * fm1[k] + fm2[k]) / (12.0 * h);
        return d;
    };
    std::vector<std::vector<Row>> table(steps.size());
    for (std::size_t i = 0; i < steps.size(); ++i) {
        table[i].push_back(stencil(steps[i]));
        for (std::size_t j = 1; j <= i; ++j) {
            const double order = 4.0 + 2.0 * static_cast<double>(j - 1);
            const double factor = std::pow(steps[i - 1] / steps[i], order) - 1.0;
            Row r;
            for (int k = 0; k < 3; ++k)
                r[k] = table[i][j - 1][k] + (table[i][j - 1][k] - table[i - 1][j - 1][k]) / factor;
            table[i].push_back(r);
        }
    }
    const Row deriv = table.back().back();

    const auto t = source(z);
    const Complex u = z - p.e2;
    const Complex u2 = u * u;
    const Complex jz = kernel_integral(z, p, q);

    const std::array<Complex, 3> pole_terms{t.t12 * t.t21 / u2, t.t22 * t.t12 / u2, t.t22 * t.t22 / u2};
    const std::array<Complex, 3> photon_terms{jz * t.t11 * t.t11, jz * t.t11 * t.t12, jz * t.t12 * t.t21};

    ResidualReport rep;
    rep.z = z;
    rep.step_sequence = steps;
    rep.lhs = {deriv[0], deriv[1], deriv[1], deriv[2]};
    Row rhs;
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
        rhs[k] = -(pole_terms[k] + photon_terms[k]);
        const double scale =
            std::max(std::abs(deriv[k]), std::abs(pole_terms[k]) + std::abs(photon_terms[k]));
        if (scale > 0.0) worst = std::max(worst, std::abs(deriv[k] - rhs[k]) / scale);
    }
    rep.rhs = {rhs[0], rhs[1], rhs[1], rhs[2]};
    rep.rel_residual = worst;
    return rep;
}

Complex boundary_log(double radius, const ModelParams& p) {
    return std::log(Complex(0.0, radius) / p.d0) - kI * kPi;
}

double boundary_mismatch(double radius, const ModelParams& p) {
    const Complex l = boundary_log(radius, p);
    const Complex t1 = t1_of_z(Complex(p.e1, radius), p);
    return std::abs(t1 - p.b1() / l - p.b2 / (l * l));
}

double boundary_residual(double radius, const ModelParams& p) {
    const double l = std::abs(boundary_log(radius, p));
    return boundary_mismatch(radius, p) * l * l * l;
}

AmplitudeResult survival_amplitude(double t, const ModelParams& p, const ContourConfig& c,
                                   const QuadratureConfig& q) {
    return survival_amplitude(t, p, closed_form_source(p), c, q);
}

AmplitudeResult survival_amplitude(double t, const ModelParams& p, const TMatrixSource& source,
                                   const ContourConfig& c, const QuadratureConfig& q) {
    if (!(t >= 0.0)) throw std::invalid_argument("survival_amplitude: t must be >= 0");
    if (p.lambda_im > 0.0)
        throw std::invalid_argument("survival_amplitude: Im Lambda > 0 puts a pole above the contour; "
                                    "use the decaying convention");
    const double y = effective_y_offset(c, p);
    const Complex lam = p.lambda();
    // Subtract lam/((z-E2)(z-E2+iW)), whose contour integral is known in
    // closed form, so the numerical remainder falls off like 1/u^3 at
    // |u| >> |T1|.
    const double w = 2.0 * (std::abs(lam) + y);
    auto remainder = [&](double u) {
        const Complex v{u, y};
        const auto tm = source(Complex(p.e2, 0.0) + v);
        return tm.t22 / (v * v) - lam / (v * (v + kI * w));
    };
    const auto bps = geometric_breakpoints(0.0, y, c.x_halfwidth);
    const auto line = oscillatory_line_integral(remainder, t, c.x_halfwidth, c.oscillation_budget, q, bps);
    const double growth = std::exp(y * t);
    const Complex subtracted = lam * (1.0 - std::exp(-w * t)) / (kI * w);

    AmplitudeResult out;
    out.value = 1.0 + subtracted + kI / (2.0 * kPi) * growth * line.value;
    out.error = growth * line.error / (2.0 * kPi);
    out.tail_error = growth * line.tail_error / (2.0 * kPi);
    out.truncation_warning = out.tail_error > std::max(q.abs_tol, 1e3 * q.rel_tol * std::abs(out.value));
    return out;
}

AmplitudeResult photon_amplitude(double omega, double t, const ModelParams& p, const ContourConfig& c,
                                 const QuadratureConfig& q) {
    if (!(omega > 0.0)) throw std::invalid_argument("photon_amplitude: omega must be > 0");
    if (!(t >= 0.0)) throw std::invalid_argument("photon_amplitude: t must be >= 0");
    if (p.lambda_im > 0.0)
        throw std::invalid_argument("photon_amplitude: Im Lambda > 0 puts a pole above the contour; "
                                    "use the decaying convention");
    const double y = effective_y_offset(c, p);
    const double psi = form_factor(omega, p);
    const double photon_energy = p.e1 + omega;
    const double offset = photon_energy - p.e2;
    auto g = [&](double u) {
        const Complex v{u, y};
        const Complex z = Complex(p.e2, 0.0) + v;
        const Complex t1 = t1_of_z(z, p);
        const Complex den = v - p.lambda() - t1;
        // t12/(z-E2) = T1/(z-E2-Lambda-T1)
        return psi * (t1 / den) / (z - photon_energy);
    };
    auto bps = geometric_breakpoints(0.0, y, c.x_halfwidth);
    const auto near_photon = geometric_breakpoints(offset, y, c.x_halfwidth);
    bps.insert(bps.end(), near_photon.begin(), near_photon.end());
    const auto line = oscillatory_line_integral(g, t, c.x_halfwidth, c.oscillation_budget, q, bps);
    const double growth = std::exp(y * t);
    const Complex phase = std::exp(Complex(0.0, offset * t));

    AmplitudeResult out;
    out.value = kI / (2.0 * kPi) * growth * phase * line.value;
    out.error = growth * line.error / (2.0 * kPi);
    out.tail_error = growth * line.tail_error / (2.0 * kPi);
    out.truncation_warning = out.tail_error > std::max(q.abs_tol, 1e3 * q.rel_tol * std::abs(out.value));
    return out;
}

double photon_amplitude_profile(double omega, double t_large, const ModelParams& p, const ContourConfig& c,
                                const QuadratureConfig& q) {
    const auto a = photon_amplitude(omega, t_large, p, c, q);
    return 4.0 * kPi * omega * omega * 2.0 * std::norm(a.value);
}

Complex kernel_transform(Complex z, const ModelParams& p) {
    const Complex l = std::log(-z / p.d0);
    return p.b1() / l + p.b2 / (l * l);
}

Complex eval_f_tau(double tau, const ModelParams& p, const QuadratureConfig& q, LogBranch branch) {
    if (!(tau > 0.0)) throw std::invalid_argument("eval_f_tau: tau must be > 0");
    // On the lower side the whole line can be pushed to -i inf without
    // meeting a singularity.
    if (branch == LogBranch::lower) return {};
    return tau_f_from_log(std::log(tau), p, q) / tau;
}

Complex f_tau_transform(Complex z, double t_max, const ModelParams& p, const QuadratureConfig& q) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("f_tau_transform: needs Im z > 0");
    if (!(t_max > 0.0)) throw std::invalid_argument("f_tau_transform: t_max must be > 0");
    const double split = std::min(1.0, t_max);
    const double log_split = std::log(split);
    // [0, split] with tau = split * exp(-v): tau f(tau) decays like 1/v^2.
    auto near_zero = [&](double v) {
        const double log_tau = log_split - v;
        const double tau = std::exp(log_tau);
        return tau_f_from_log(log_tau, p, q) * std::exp(kI * z * tau);
    };
    Complex total = integrate_semi_infinite(near_zero, 0.0, 1.0, q).value;
    if (t_max > split) {
        auto body = [&](double tau) { return eval_f_tau(tau, p, q) * std::exp(kI * z * tau); };
        total += integrate_adaptive(body, split, t_max, q, {}, 8).value;
    }
    return kI * total;
}

Complex f_tau_mass(double eps, const ModelParams& p, const QuadratureConfig& q) {
    if (!(eps > 0.0)) throw std::invalid_argument("f_tau_mass: eps must be > 0");
    const double log_eps = std::log(eps);
    auto integrand = [&](double v) { return tau_f_from_log(log_eps - v, p, q); };
    return integrate_semi_infinite(integrand, 0.0, 1.0, q).value;
}

} // namespace lineshape
