// config.hpp — run configuration: line-oriented `key = value` text with [section] headers
//
//   [model]      preset, lambda_re, lambda_im, c1_sq, d, b2, e1, e2, d0, lambda_im_sign
//   [window]     lo, hi, n_points
//   [quadrature] rel_tol, abs_tol, max_subdivisions, transform
//   [contour]    y_offset, x_halfwidth, oscillation_budget, t_max, t_points
//   [sweep]      lambda_im, c1_sq, d, b2      (each "min, max, count")
//   [output]     dir, emit_plot_script
//
// Full-line comments start with '#' or ';'. Unknown sections or keys are
// errors. Without `preset`, every [model] key except d0 and lambda_im_sign is
// required; with it, listed keys override the preset.

#pragma once

#include "lineshape/analysis.hpp"
#include "lineshape/dynamics.hpp"
#include "lineshape/model.hpp"
#include "lineshape/quadrature.hpp"

#include <string>
#include <string_view>

namespace lineshape {

enum class LambdaImSign { as_printed, flipped };

struct RunConfig {
    ModelParams model;
    LambdaImSign lambda_im_sign{LambdaImSign::as_printed};
    double window_lo{0.0};
    double window_hi{0.0};
    int n_points{4096};
    QuadratureConfig quadrature;
    ContourConfig contour;
    double t_max{0.0}; // evolve horizon; 0 selects 10/|Im Lambda|
    int t_points{41};
    SweepAxis sweep_lambda_im;
    SweepAxis sweep_c1_sq;
    SweepAxis sweep_d;
    SweepAxis sweep_b2;
    std::string output_dir{"."};
    bool emit_plot_script{false};

    /// The model with lambda_im_sign applied.
    ModelParams effective_model() const;
    SweepSpec sweep_spec() const;
    double evolve_horizon() const;

    /// Throws ValidationError for the first violated constraint.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Defaults for a model: window E2-E1 +/- 5000 eV, one-cell axes at the model
/// values except b2, which spans [10 b2, 0] (or [-1, 0] when b2 = 0) in 41 cells.
RunConfig default_config(const ModelParams& model);

/// Throws ParseError or ValidationError.
RunConfig parse_config(std::string_view text);

/// Text that parse_config maps back to an identical RunConfig.
std::string render_config(const RunConfig& cfg);

LambdaImSign parse_lambda_im_sign(std::string_view s);
const char* to_string(LambdaImSign s);

/// 17 significant digits (%.17g): every finite double reads back exactly.
std::string format_double(double v);

} // namespace lineshape
