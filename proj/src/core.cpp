#include "lineshape/core.hpp"

#include "lineshape/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace lineshape {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex t1_raw(Complex z, const ModelParams& p, const T1Options& opts) {
    const Complex zeta = z - p.e1;
    const Complex den = t1_denominator(z, p);
    if (std::abs(den) < opts.denominator_floor)
        throw DenominatorNearZero("T1 denominator vanishes at z = (" + std::to_string(z.real()) + ", " +
                                  std::to_string(z.imag()) + ")");
    const Complex ratio = (p.d * p.d + zeta * zeta) / (zeta * zeta);
    return p.b1() * ratio / den;
}

} // namespace

void ModelParams::validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(lambda_re)) throw ValidationError("lambda_re", "must be finite");
    if (!finite(lambda_im)) throw ValidationError("lambda_im", "must be finite");
    if (!finite(c1_sq) || !(c1_sq > 0.0)) throw ValidationError("c1_sq", "must be > 0");
    if (!finite(d) || !(d > 0.0)) throw ValidationError("d", "must be > 0");
    if (!finite(b2)) throw ValidationError("b2", "must be finite");
    if (!finite(e1)) throw ValidationError("e1", "must be finite");
    if (!finite(e2) || !(e2 > e1)) throw ValidationError("e2", "must be > e1");
    if (d0 != 1.0) throw ValidationError("d0", "must be 1 (eV)");
    if (!std::isfinite(b1())) throw ValidationError("c1_sq", "b1 = -1/(4 pi c1_sq) must be finite");
}

std::optional<ModelParams> preset(std::string_view name) {
    // Lambda, c1^2, d, b2 per row; E2 - E1 = 102697 eV (2P1/2 -> 1S1/2, Z = 92).
    auto row = [](double lam_im, double c1_sq, double d, double b2) {
        ModelParams p;
        p.lambda_re = 0.0;
        p.lambda_im = lam_im;
        p.c1_sq = c1_sq;
        p.d = d;
        p.b2 = b2;
        p.e1 = 0.0;
        p.e2 = 102697.0;
        p.d0 = 1.0;
        return p;
    };
    if (name == "table1-a") return row(250.0, 25.0, 1.25e7, -0.052);
    if (name == "table1-b") return row(250.0, 9.0, 1.25e7, -0.144);
    if (name == "table1-c") return row(300.0, 0.25, 1.15e7, -5.170);
    if (name == "table1-d") return row(250.0, 0.09, 1.05e7, -14.281);
    return std::nullopt;
}

double form_factor(double k_mag, const ModelParams& p) {
    if (!(k_mag >= 0.0)) throw std::invalid_argument("form_factor: k_mag must be >= 0");
    return std::sqrt(p.c1_sq) / std::hypot(p.d, k_mag);
}

Complex t1_denominator(Complex z, const ModelParams& p) {
    const Complex zeta = z - p.e1;
    const double ratio = p.b2 / p.b1();
    const Complex scale = (p.d / zeta) * (p.d / zeta);
    return scale * (std::log(p.d / p.d0) - ratio) + std::log(zeta / p.d0) - kPi * p.d / (2.0 * zeta) - ratio -
           kI * kPi;
}

Complex t1_of_z(Complex z, const ModelParams& p, const T1Options& opts) {
    const Complex zeta = z - p.e1;
    if (zeta == Complex{0.0, 0.0}) throw std::invalid_argument("t1_of_z: z must differ from E1");
    // Numerator and denominator both vanish at zeta = i d.
    if (std::abs(zeta - kI * p.d) < kRemovableRadius * p.d) {
        if (!opts.removable_limit)
            throw RemovableSingularity("t1_of_z: z within " + std::to_string(kRemovableRadius) +
                                       " d of the removable point E1 + i d");
        const double eps = kRemovableRadius * p.d;
        const Complex at = p.e1 + kI * p.d;
        return 0.5 * (t1_raw(at + eps, p, opts) + t1_raw(at - eps, p, opts));
    }
    return t1_raw(z, p, opts);
}

TMatrixElements t_matrix_from_t1(Complex z, Complex t1, const ModelParams& p) {
    const Complex lam = p.lambda();
    const Complex u = z - p.e2;
    const Complex den = u - lam - t1;
    const double scale = std::abs(u) + std::abs(lam) + std::abs(t1);
    if (std::abs(den) <= 1e-13 * scale)
        throw PoleProximity("t_matrix: z - E2 - Lambda - T1 vanishes (T-matrix pole)");
    TMatrixElements t;
    t.t22 = (lam + t1) * u / den;
    t.t11 = t1 * (u - lam) / den;
    t.t12 = t1 * u / den;
    t.t21 = t.t12;
    return t;
}

TMatrixElements t_matrix(Complex z, const ModelParams& p, const T1Options& opts) {
    return t_matrix_from_t1(z, t1_of_z(z, p, opts), p);
}

double lineshape_bracket(double omega, const ModelParams& p) {
    const double ratio = p.b2 / p.b1();
    const double scale = (p.d / omega) * (p.d / omega);
    return scale * (std::log(p.d / p.d0) - ratio) + std::log(omega / p.d0) - kPi * p.d / (2.0 * omega) - ratio;
}

LineShapeTerms lineshape_terms(double omega, const ModelParams& p) {
    if (!(omega > 0.0)) throw std::invalid_argument("lineshape_terms: omega must be > 0");
    const double bracket = lineshape_bracket(omega, p);
    const double w2 = omega * omega;
    LineShapeTerms out;
    out.f = (p.d * p.d + w2) / (4.0 * kPi * p.c1_sq * w2 * w2) / (kPi * kPi + bracket * bracket);
    // omega^2 B(omega) is the bracket multiplying f in the shift.
    out.delta_e = p.lambda_re - out.f * w2 * bracket;
    out.gamma = 2.0 * (p.lambda_im + kPi * w2 * out.f);
    return out;
}

double profile_density(double omega, const ModelParams& p) {
    const LineShapeTerms t = lineshape_terms(omega, p);
    const double detuning = omega + p.e1 - p.e2 - t.delta_e;
    return t.f / (2.0 * kPi) / (detuning * detuning + 0.25 * t.gamma * t.gamma);
}

double lorentzian_profile(double omega, const LorentzianParams& lp) {
    const double x = omega - lp.center;
    return lp.width / (2.0 * kPi) / (x * x + 0.25 * lp.width * lp.width);
}

LorentzianParams impact_lorentzian(const ModelParams& p) {
    return {p.e2 - p.e1 + p.lambda_re, 2.0 * std::abs(p.lambda_im)};
}

} // namespace lineshape
