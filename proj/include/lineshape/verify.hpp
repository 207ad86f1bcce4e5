// verify.hpp — the residual and oracle checks behind `lineshape verify`

#pragma once

#include "lineshape/dynamics.hpp"
#include "lineshape/model.hpp"
#include "lineshape/quadrature.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lineshape {

struct CheckResult {
    std::string name;
    double value{0.0};
    double threshold{0.0};
    bool passed{false}; // value <= threshold (NaN fails)
    std::string detail;
};

struct VerifyOptions {
    QuadratureConfig quadrature;
    ContourConfig contour;
    std::uint64_t seed{20240531};
    int ode_points{20};
    int identity_samples{1000};
};

/// Worst ode_residual over random z = E2 + x + i y, |x| <= 2e4, y in [1e2, 1e4].
CheckResult check_ode_full(const ModelParams& p, const VerifyOptions& o = {});
/// Same points with T1 = 0; the identity is exact, so only rounding remains.
CheckResult check_ode_lambda_only(const ModelParams& p, const VerifyOptions& o = {});

/// Scaled boundary residual at 1e8 d over its maximum on 1e2 d .. 1e8 d
/// (half-decade grid); <= 1 when bounded.
CheckResult check_boundary_scaled(const ModelParams& p);
/// boundary_mismatch(1e8 d) / |b1/L|.
CheckResult check_boundary_unscaled(const ModelParams& p);

/// |A(0) - 1|, decaying Lambda.
CheckResult check_survival_start(const ModelParams& p, const VerifyOptions& o = {});
/// Worst |A - exp(-i Lambda t)| / |exp(-i Lambda t)| for t in [0, 10/|Im Lambda|], T1 = 0.
CheckResult check_survival_lambda_only(const ModelParams& p, const VerifyOptions& o = {});
/// max |A(t)| - 1 over the same grid, full model.
CheckResult check_survival_bounded(const ModelParams& p, const VerifyOptions& o = {});

/// Number of samples where t12 and t21 differ (0 required).
CheckResult check_t_symmetry(const ModelParams& p, const VerifyOptions& o = {});
/// Worst relative error of t22 t11 - t12 t21 = Lambda T1 (z-E2)/D over
/// random z and parameters scattered around p.
CheckResult check_determinant(const ModelParams& p, const VerifyOptions& o = {});

/// Worst relative mismatch of f_tau_transform against kernel_transform.
CheckResult check_f_tau_round_trip(const ModelParams& p, const VerifyOptions& o = {});
/// Largest |m(eps_{k+1})| / |m(eps_k)| for the windowed mass at eps = 1e-3,
/// 1e-6, ..., 1e-30; < 1 means the mass drains away (no delta at tau = 0).
CheckResult check_f_tau_mass(const ModelParams& p, const VerifyOptions& o = {});

/// Worst |r_photon / r_closed - 1| for profile ratios at E21 +/- {1, 2} x
/// |Im Lambda| relative to E21.
CheckResult check_photon_ratios(const ModelParams& p, const VerifyOptions& o = {});

/// Everything above, in a fixed order.
std::vector<CheckResult> run_verify_suite(const ModelParams& p, const VerifyOptions& o = {});

} // namespace lineshape
