// analysis.hpp — sampled profiles, normalization, peak morphology and parameter sweeps

#pragma once

#include "lineshape/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lineshape {

struct ProfileCurve {
    std::vector<double> omegas;    // strictly increasing, eV
    std::vector<double> densities; // >= 0
    double norm_a{1.0};            // overall factor A applied to the densities
    ModelParams params_snapshot;
};

/// Trapezoid rule on the curve's own grid.
double trapezoid_area(const ProfileCurve& curve);

/// Uniform grid on [lo, hi] (both ends included), A = 1.
ProfileCurve evaluate_profile(const ModelParams& p, double lo, double hi, int n_points);

/// The unit-area Lorentzian sampled on the same kind of grid.
ProfileCurve sample_lorentzian(const LorentzianParams& lp, double lo, double hi, int n_points);

/// Scales to unit trapezoid area and records the factor in norm_a.
/// Idempotent. Throws ZeroArea.
ProfileCurve normalize(const ProfileCurve& curve);

struct Peak {
    double omega{0.0};
    double height{0.0};
};

enum class LineClass { single, split };

struct PeakReport {
    std::vector<Peak> peaks; // sorted by omega
    double fwhm_main{0.0};   // of the tallest peak
    LineClass classification{LineClass::single};
    double separation{0.0}; // between the two tallest peaks, when split
    double dip_ratio{0.0};  // between-peak minimum / lower peak, when split
};

struct PeakOptions {
    double prominence_floor{0.05}; // relative to the global maximum
    double dip_threshold{0.05};
};

/// Interior local maxima whose prominence is at least prominence_floor of
/// the global maximum. Split iff two or more such peaks and the minimum
/// between the two tallest is below (1 - dip_threshold) of the lower one.
PeakReport find_peaks(const ProfileCurve& curve, const PeakOptions& opts = {});

/// sup |curve - L| / max L, with L the Lorentzian sampled on the curve's grid
/// and renormalized to unit area there. The curve must already be
/// normalized; throws WindowMismatch otherwise or when the Lorentzian center
/// is outside the window.
double lorentz_deviation(const ProfileCurve& curve, const LorentzianParams& lp);

struct SweepAxis {
    double min{0.0};
    double max{0.0};
    int count{1};

    double value(int i) const;
    bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
    ModelParams base; // supplies everything not swept
    SweepAxis lambda_im;
    SweepAxis c1_sq;
    SweepAxis d;
    SweepAxis b2;

    std::size_t size() const;
    void validate() const;
    bool operator==(const SweepSpec&) const = default;
};

struct SweepCell {
    ModelParams params;
    std::optional<PeakReport> report; // empty when the cell failed
    std::string error;
};

struct SweepResult {
    std::vector<SweepCell> cells; // lambda_im slowest, b2 fastest
};

/// Cells run on up to `threads` workers (0: sweep_threads()); output order
/// and content do not depend on the worker count.
SweepResult sweep(const SweepSpec& spec, double lo, double hi, int n_points, int threads = 0);

/// LINESHAPE_THREADS if set and positive, else hardware concurrency.
int sweep_threads();

const char* to_string(LineClass c);

} // namespace lineshape
