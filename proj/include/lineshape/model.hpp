// model.hpp — parameter and result types for the two-level-atom line-shape model
//
// Units: hbar = c = 1, energies in eV, c1_sq in 1/eV, times in 1/eV.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lineshape {

using Complex = std::complex<double>;

/// Complex energy z = re + i*im (eV). Operations state which half-plane they need.
using ComplexEnergy = Complex;

struct ModelParams {
    double lambda_re{0.0}; // Re Lambda, instantaneous shift of |2>
    double lambda_im{0.0}; // Im Lambda
    double c1_sq{1.0};     // squared form-factor strength, 1/eV
    double d{1.0e7};       // form-factor infrared scale, eV
    double b2{0.0};        // free coefficient of the 1/ln^2 term, eV
    double e1{0.0};        // ground-state energy
    double e2{0.0};        // excited-state energy
    double d0{1.0};        // logarithm reference scale, fixed at 1 eV

    Complex lambda() const { return {lambda_re, lambda_im}; }

    /// b1 = -1/(4 pi c1^2), fixed by the form factor.
    double b1() const { return -1.0 / (4.0 * std::numbers::pi * c1_sq); }

    double transition_energy() const { return e2 - e1; }

    /// Copy with Im Lambda forced non-positive, i.e. the pole at E2 + Lambda
    /// sits in the lower half-plane and |2> decays in time.
    ModelParams decaying() const {
        ModelParams p = *this;
        p.lambda_im = -std::abs(lambda_im);
        return p;
    }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;

    bool operator==(const ModelParams&) const = default;
};

/// Reduced T-matrix amplitudes; photon momenta enter only through psi(k).
struct TMatrixElements {
    Complex t11;
    Complex t12;
    Complex t21;
    Complex t22;
};

struct LineShapeTerms {
    double f{0.0};       // profile kernel f(omega)
    double delta_e{0.0}; // frequency-dependent line shift
    double gamma{0.0};   // frequency-dependent width
};

/// Impact-broadening (instantaneous bath) reference line.
struct LorentzianParams {
    double center{0.0};
    double width{1.0};
};

/// Names of the bundled parameter sets, in table order.
inline constexpr std::array<std::string_view, 4> kPresetNames{"table1-a", "table1-b", "table1-c", "table1-d"};

/// Bundled parameter sets; nullopt for an unknown name.
std::optional<ModelParams> preset(std::string_view name);

} // namespace lineshape
