#include "lineshape/analysis.hpp"

#include "lineshape/core.hpp"
#include "lineshape/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace lineshape {

namespace {

std::vector<double> uniform_grid(double lo, double hi, int n_points) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("profile window must satisfy 0 < lo < hi");
    if (n_points < 64) throw std::invalid_argument("profile needs at least 64 points");
    std::vector<double> grid(static_cast<std::size_t>(n_points));
    const double step = (hi - lo) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) grid[static_cast<std::size_t>(i)] = lo + step * i;
    grid.back() = hi;
    return grid;
}

double interpolate_crossing(double x0, double y0, double x1, double y1, double level) {
    if (y1 == y0) return x0;
    return x0 + (level - y0) * (x1 - x0) / (y1 - y0);
}

} // namespace

double trapezoid_area(const ProfileCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.omegas.size(); ++i)
        area += 0.5 * (curve.omegas[i] - curve.omegas[i - 1]) * (curve.densities[i] + curve.densities[i - 1]);
    return area;
}

ProfileCurve evaluate_profile(const ModelParams& p, double lo, double hi, int n_points) {
    ProfileCurve c;
    c.omegas = uniform_grid(lo, hi, n_points);
    c.densities.reserve(c.omegas.size());
    for (double w : c.omegas) c.densities.push_back(profile_density(w, p));
    c.params_snapshot = p;
    return c;
}

ProfileCurve sample_lorentzian(const LorentzianParams& lp, double lo, double hi, int n_points) {
    ProfileCurve c;
    c.omegas = uniform_grid(lo, hi, n_points);
    c.densities.reserve(c.omegas.size());
    for (double w : c.omegas) c.densities.push_back(lorentzian_profile(w, lp));
    return c;
}

ProfileCurve normalize(const ProfileCurve& curve) {
    const double area = trapezoid_area(curve);
    if (!(area > 0.0) || !std::isfinite(area)) throw ZeroArea("normalize: profile has no positive area");
    // Already unit area up to summation rounding: rescaling would only add noise.
    if (std::abs(area - 1.0) <= 1e-12) return curve;
    ProfileCurve out = curve;
    const double scale = 1.0 / area;
    for (double& v : out.densities) v *= scale;
    out.norm_a = curve.norm_a * scale;
    return out;
}

PeakReport find_peaks(const ProfileCurve& curve, const PeakOptions& opts) {
    const auto& y = curve.densities;
    const auto& x = curve.omegas;
    const std::size_t n = y.size();
    if (n < 16) throw std::invalid_argument("find_peaks: curve needs at least 16 points");
    const double global_max = *std::max_element(y.begin(), y.end());

    std::vector<std::size_t> idx;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
        // Prominence: drop to the higher of the two bases, each being the
        // minimum on the way to the next higher sample or the window edge.
        double left_min = y[i];
        for (std::size_t j = i; j-- > 0;) {
            if (y[j] > y[i]) break;
            left_min = std::min(left_min, y[j]);
        }
        double right_min = y[i];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (y[j] > y[i]) break;
            right_min = std::min(right_min, y[j]);
        }
        const double prominence = y[i] - std::max(left_min, right_min);
        if (global_max > 0.0 && prominence >= opts.prominence_floor * global_max) idx.push_back(i);
    }

    PeakReport rep;
    for (std::size_t i : idx) rep.peaks.push_back({x[i], y[i]});
    if (idx.empty()) return rep;

    std::vector<std::size_t> by_height = idx;
    std::sort(by_height.begin(), by_height.end(), [&](std::size_t a, std::size_t b) { return y[a] > y[b]; });
    const std::size_t top = by_height.front();

    const double half = 0.5 * y[top];
    double left = x.front();
    for (std::size_t j = top; j-- > 0;) {
        if (y[j] < half) {
            left = interpolate_crossing(x[j], y[j], x[j + 1], y[j + 1], half);
            break;
        }
    }
    double right = x.back();
    for (std::size_t j = top + 1; j < n; ++j) {
        if (y[j] < half) {
            right = interpolate_crossing(x[j - 1], y[j - 1], x[j], y[j], half);
            break;
        }
    }
    rep.fwhm_main = right - left;

    if (by_height.size() >= 2) {
        const std::size_t a = std::min(by_height[0], by_height[1]);
        const std::size_t b = std::max(by_height[0], by_height[1]);
        const double dip = *std::min_element(y.begin() + static_cast<std::ptrdiff_t>(a),
                                             y.begin() + static_cast<std::ptrdiff_t>(b) + 1);
        const double lower = std::min(y[a], y[b]);
        if (dip < (1.0 - opts.dip_threshold) * lower) {
            rep.classification = LineClass::split;
            rep.separation = x[b] - x[a];
            rep.dip_ratio = dip / lower;
        }
    }
    return rep;
}

double lorentz_deviation(const ProfileCurve& curve, const LorentzianParams& lp) {
    if (curve.omegas.size() < 2) throw WindowMismatch("lorentz_deviation: empty curve");
    if (std::abs(trapezoid_area(curve) - 1.0) > 1e-9)
        throw WindowMismatch("lorentz_deviation: curve is not normalized to unit area");
    if (lp.center < curve.omegas.front() || lp.center > curve.omegas.back())
        throw WindowMismatch("lorentz_deviation: Lorentzian center outside the curve window");
    ProfileCurve ref;
    ref.omegas = curve.omegas;
    ref.densities.reserve(curve.omegas.size());
    for (double w : curve.omegas) ref.densities.push_back(lorentzian_profile(w, lp));
    ref = normalize(ref);
    double worst = 0.0;
    double peak = 0.0;
    for (std::size_t i = 0; i < ref.densities.size(); ++i) {
        worst = std::max(worst, std::abs(curve.densities[i] - ref.densities[i]));
        peak = std::max(peak, ref.densities[i]);
    }
    return worst / peak;
}

double SweepAxis::value(int i) const {
    if (count <= 1) return min;
    return min + (max - min) * static_cast<double>(i) / (count - 1);
}

std::size_t SweepSpec::size() const {
    return static_cast<std::size_t>(lambda_im.count) * static_cast<std::size_t>(c1_sq.count) *
           static_cast<std::size_t>(d.count) * static_cast<std::size_t>(b2.count);
}

void SweepSpec::validate() const {
    const std::pair<const char*, const SweepAxis*> axes[] = {
        {"sweep.lambda_im", &lambda_im}, {"sweep.c1_sq", &c1_sq}, {"sweep.d", &d}, {"sweep.b2", &b2}};
    for (const auto& [name, axis] : axes) {
        if (axis->count < 1) throw ValidationError(name, "count must be >= 1");
        if (!std::isfinite(axis->min) || !std::isfinite(axis->max)) throw ValidationError(name, "must be finite");
    }
    if (c1_sq.min <= 0.0 || c1_sq.max <= 0.0) throw ValidationError("sweep.c1_sq", "must be > 0");
    if (d.min <= 0.0 || d.max <= 0.0) throw ValidationError("sweep.d", "must be > 0");
}

int sweep_threads() {
    if (const char* env = std::getenv("LINESHAPE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

SweepResult sweep(const SweepSpec& spec, double lo, double hi, int n_points, int threads) {
    spec.validate();
    const std::size_t total = spec.size();
    SweepResult result;
    result.cells.resize(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t rest = k;
        const int ib2 = static_cast<int>(rest % spec.b2.count);
        rest /= spec.b2.count;
        const int id = static_cast<int>(rest % spec.d.count);
        rest /= spec.d.count;
        const int ic = static_cast<int>(rest % spec.c1_sq.count);
        rest /= spec.c1_sq.count;
        const int il = static_cast<int>(rest);
        ModelParams p = spec.base;
        p.lambda_im = spec.lambda_im.value(il);
        p.c1_sq = spec.c1_sq.value(ic);
        p.d = spec.d.value(id);
        p.b2 = spec.b2.value(ib2);
        result.cells[k].params = p;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            SweepCell& cell = result.cells[k];
            try {
                cell.params.validate();
                cell.report = find_peaks(evaluate_profile(cell.params, lo, hi, n_points));
            } catch (const std::exception& e) {
                cell.error = e.what();
            }
        }
    };
    const int n = std::max(1, std::min<int>(threads > 0 ? threads : sweep_threads(), static_cast<int>(total)));
    std::vector<std::thread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return result;
}

const char* to_string(LineClass c) {
    return c == LineClass::split ? "Split" : "Single";
}

} // namespace lineshape
