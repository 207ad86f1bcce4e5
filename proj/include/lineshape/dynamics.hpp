// dynamics.hpp — numerical checks of the closed form against the T-matrix
// differential equation, its large-|z| boundary condition, the contour
// representation of the evolution operator, and the nonlocality kernel f(tau).

#pragma once

#include "lineshape/core.hpp"
#include "lineshape/model.hpp"
#include "lineshape/quadrature.hpp"

#include <functional>
#include <vector>

namespace lineshape {

/// Evolution-operator contour Im z = y_offset, |x - center| <= x_halfwidth
/// handled by adaptive quadrature; the two tails beyond are integrated with
/// an oscillatory (Ooura) or semi-infinite rule, not dropped.
struct ContourConfig {
    double y_offset{0.0};       // <= 0 selects the default max(10 eV, Gamma/10)
    double x_halfwidth{1.0e5};  // eV
    int oscillation_budget{16}; // minimum samples per period of exp(-i x t)

    void validate() const;
    bool operator==(const ContourConfig&) const = default;
};

/// Contour height actually used for `p`.
double effective_y_offset(const ContourConfig& c, const ModelParams& p);

/// Produces reduced T-matrix elements at complex z.
using TMatrixSource = std::function<TMatrixElements(Complex)>;

/// The closed-form solution.
TMatrixSource closed_form_source(const ModelParams& p);

/// Test hook: T1 identically zero, leaving only the instantaneous Lambda.
TMatrixSource lambda_only_source(const ModelParams& p);

/// J(z) = 4 pi c1^2 int_0^inf w^2/(d^2 + w^2) (z - E1 - w)^-2 dw, the photon
/// sum (two polarizations, full solid angle) weighted by |psi(k)|^2.
/// Throws PoleOnPath when z - E1 is on the positive real axis.
Complex kernel_integral(Complex z, const ModelParams& p, const QuadratureConfig& q = {});

struct ResidualReport {
    Complex z;
    TMatrixElements lhs; // Richardson-extrapolated dt/dz
    TMatrixElements rhs; // right-hand side of the T-matrix equation
    double rel_residual{0.0};
    std::vector<double> step_sequence;
};

/// Default finite-difference steps h, h/4, h/16 with h = 1e-3 |z - E2|.
std::vector<double> default_steps(Complex z, const ModelParams& p);

/// Compares dt_ij/dz with
///   dt22 = -[t22^2/(z-E2)^2 + J t12 t21]
///   dt12 = -[t22 t12/(z-E2)^2 + J t11 t12]
///   dt11 = -[t12 t21/(z-E2)^2 + J t11^2]
/// Each element's mismatch is scaled by max(|lhs|, sum of |rhs terms|).
/// Needs Im z > 0: the closed form (with its -i pi) is the upper-half-plane
/// branch; below the axis it is not the function J differentiates.
ResidualReport ode_residual(Complex z, const ModelParams& p, std::vector<double> steps = {},
                            const QuadratureConfig& q = {});
ResidualReport ode_residual(Complex z, const ModelParams& p, const TMatrixSource& source,
                            std::vector<double> steps = {}, const QuadratureConfig& q = {});

/// L = ln(i R / d0) - i pi at z = E1 + i R.
Complex boundary_log(double radius, const ModelParams& p);

/// |T1(E1 + iR) - b1/L - b2/L^2|.
double boundary_mismatch(double radius, const ModelParams& p);

/// boundary_mismatch * |L|^3; bounded as R grows.
double boundary_residual(double radius, const ModelParams& p);

struct AmplitudeResult {
    Complex value;
    double error{0.0};        // quadrature error estimate, all pieces
    double tail_error{0.0};   // contribution of the two tails to `error`
    bool truncation_warning{false};
};

/// <2|U(t,0)|2> = 1 + (i/2pi) int dx exp(-i(z-E2)t) t22(z)/(z-E2)^2, z = x + i y.
/// Needs Im Lambda <= 0 (see ModelParams::decaying) so every T-matrix pole
/// lies below the contour.
AmplitudeResult survival_amplitude(double t, const ModelParams& p, const ContourConfig& c = {},
                                   const QuadratureConfig& q = {});
AmplitudeResult survival_amplitude(double t, const ModelParams& p, const TMatrixSource& source,
                                   const ContourConfig& c = {}, const QuadratureConfig& q = {});

/// <k,eps,1|U(t,0)|2> at |k| = omega for one polarization.
AmplitudeResult photon_amplitude(double omega, double t, const ModelParams& p, const ContourConfig& c = {},
                                 const QuadratureConfig& q = {});

/// 4 pi omega^2 sum_pol |<k,eps,1|U(t,0)|2>|^2: photons per unit omega over
/// all directions. At large t its omega dependence follows the closed-form
/// profile times omega^2.
double photon_amplitude_profile(double omega, double t_large, const ModelParams& p, const ContourConfig& c = {},
                                const QuadratureConfig& q = {});

/// Which side of the real axis the kernel transform is evaluated on.
///  upper: ln(-z) = ln|z| - i pi for z > 0 (z + i0, the causal choice)
///  lower: ln(-z) = ln|z| + i pi for z > 0 (z - i0; gives f = 0 for tau > 0)
enum class LogBranch { upper, lower };

/// b1/ln(-z/d0) + b2/ln^2(-z/d0), principal logarithm.
Complex kernel_transform(Complex z, const ModelParams& p);

/// f(tau) = -(i/2pi) int exp(-i z tau) [b1/ln(-z) + b2/ln^2(-z)] dz along the
/// real axis. Evaluated by pushing the line into the lower half-plane: a
/// residue at z = -d0 plus a Laplace integral of the branch-cut jump along
/// z = -i s, which converges exponentially instead of like 1/ln.
Complex eval_f_tau(double tau, const ModelParams& p, const QuadratureConfig& q = {},
                   LogBranch branch = LogBranch::upper);

/// i int_0^T f(tau) exp(i z tau) dtau, Im z > 0.
Complex f_tau_transform(Complex z, double t_max, const ModelParams& p, const QuadratureConfig& q = {});

/// int_0^eps f(tau) dtau.
Complex f_tau_mass(double eps, const ModelParams& p, const QuadratureConfig& q = {});

} // namespace lineshape
