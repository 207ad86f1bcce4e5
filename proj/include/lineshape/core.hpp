// core.hpp — closed-form evaluation of the line-shape model

#pragma once

#include "lineshape/model.hpp"

namespace lineshape {

struct T1Options {
    double denominator_floor{1e-12}; // |denominator| below this is treated as a pole of T1
    bool removable_limit{true};      // evaluate the 0/0 point zeta = i d by a real-axis offset
};

/// Radius (in units of d) around zeta = i d where T1 is evaluated by offset.
inline constexpr double kRemovableRadius = 1e-6;

/// psi(k) = c1 / sqrt(d^2 + k^2).
double form_factor(double k_mag, const ModelParams& p);

/// Denominator of T1 in the cancellation-reduced grouping
///   (d^2/zeta^2)(ln(d/d0) - b2/b1) + ln(zeta/d0) - pi d/(2 zeta) - b2/b1 - i pi,
/// with zeta = z - E1 and the principal logarithm.
Complex t1_denominator(Complex z, const ModelParams& p);

/// Bath resolvent T1(z) = b1 (d^2 + zeta^2)/zeta^2 / denominator.
/// Throws DenominatorNearZero, RemovableSingularity, std::invalid_argument (z == E1).
Complex t1_of_z(Complex z, const ModelParams& p, const T1Options& opts = {});

/// Reduced amplitudes built from a given T1 value; t12 and t21 are the same
/// double. Throws PoleProximity when z - E2 - Lambda - T1 vanishes.
TMatrixElements t_matrix_from_t1(Complex z, Complex t1, const ModelParams& p);

TMatrixElements t_matrix(Complex z, const ModelParams& p, const T1Options& opts = {});

/// B(omega) for real omega > 0, regrouped so the O(d^2/omega^2) terms cancel
/// before they are added to the O(1) ones.
double lineshape_bracket(double omega, const ModelParams& p);

LineShapeTerms lineshape_terms(double omega, const ModelParams& p);

/// dW/domega with A = 1.
double profile_density(double omega, const ModelParams& p);

/// Unit-area Lorentzian.
double lorentzian_profile(double omega, const LorentzianParams& lp);

/// Instantaneous-bath reference: center E2 - E1 + Re Lambda, width 2|Im Lambda|.
/// Meaningful only as the c1 -> 0 limit, which is not a limit of the general
/// formula (b1 diverges), hence a separate path.
LorentzianParams impact_lorentzian(const ModelParams& p);

} // namespace lineshape
