#include "lineshape/commands.hpp"

#include "lineshape/analysis.hpp"
#include "lineshape/core.hpp"
#include "lineshape/dynamics.hpp"
#include "lineshape/errors.hpp"
#include "lineshape/verify.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

namespace lineshape {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json model_json(const ModelParams& p) {
    return Json{{"lambda_re", p.lambda_re}, {"lambda_im", p.lambda_im}, {"c1_sq", p.c1_sq}, {"d", p.d},
                {"b2", p.b2},               {"e1", p.e1},               {"e2", p.e2},       {"d0", p.d0}};
}

Json report_json(const PeakReport& r) {
    Json peaks = Json::array();
    for (const auto& pk : r.peaks) peaks.push_back({{"omega", pk.omega}, {"height", pk.height}});
    return Json{{"classification", to_string(r.classification)},
                {"peaks", peaks},
                {"fwhm_main", r.fwhm_main},
                {"separation", r.separation},
                {"dip_ratio", r.dip_ratio}};
}

class NumericalStageError : public NumericalError {
public:
    NumericalStageError(const std::string& stage, const std::string& what) : NumericalError(stage + ": " + what) {}
};

// Names the step a NumericalError escaped from.
template <class Fn>
auto stage(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const NumericalError& e) {
        throw NumericalStageError(what, e.what());
    }
}

const char* kPlotScript = R"py(#!/usr/bin/env python3
# Profile with the instantaneous-bath Lorentzian (dashed) on the same window.
import csv, json, os
import matplotlib.pyplot as plt

here = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(here, "profile.csv")) as fh:
    rows = list(csv.DictReader(fh))
with open(os.path.join(here, "peaks.json")) as fh:
    peaks = json.load(fh)

w = [float(r["omega_eV"]) for r in rows]
y = [float(r["dW_domega"]) for r in rows]
c, g = peaks["lorentzian"]["center"], peaks["lorentzian"]["width"]
lor = [g / (2 * 3.141592653589793) / ((x - c) ** 2 + g * g / 4) for x in w]
area = sum((w[i + 1] - w[i]) * (lor[i] + lor[i + 1]) / 2 for i in range(len(w) - 1))
lor = [v / area for v in lor]

plt.plot(w, y, label="dW/domega")
plt.plot(w, lor, "--", label="Lorentzian")
plt.xlabel("omega (eV)")
plt.ylabel("dW/domega (1/eV)")
plt.title(peaks["classification"])
plt.legend()
plt.savefig(os.path.join(here, "profile.png"), dpi=150)
)py";

} // namespace

std::optional<Command> parse_command(std::string_view name) {
    if (name == "profile") return Command::profile;
    if (name == "verify") return Command::verify;
    if (name == "evolve") return Command::evolve;
    if (name == "sweep") return Command::sweep;
    return std::nullopt;
}

const char* to_string(Command c) {
    switch (c) {
    case Command::profile: return "profile";
    case Command::verify: return "verify";
    case Command::evolve: return "evolve";
    case Command::sweep: return "sweep";
    }
    return "?";
}

CommandOutput build_profile(const RunConfig& cfg) {
    const ModelParams p = cfg.effective_model();
    const ProfileCurve curve = stage("evaluate_profile", [&] {
        return normalize(evaluate_profile(p, cfg.window_lo, cfg.window_hi, cfg.n_points));
    });
    const PeakReport report = find_peaks(curve);
    const LorentzianParams lp = impact_lorentzian(p);

    Json dev = nullptr;
    try {
        dev = lorentz_deviation(curve, lp);
    } catch (const WindowMismatch&) {
        // Lorentzian center outside the window: no comparison to report.
    }

    std::string csv = "omega_eV,dW_domega\n";
    for (std::size_t i = 0; i < curve.omegas.size(); ++i)
        csv += format_double(curve.omegas[i]) + "," + format_double(curve.densities[i]) + "\n";

    Json peaks = report_json(report);
    peaks["norm_a"] = curve.norm_a;
    peaks["lorentz_deviation"] = dev;
    peaks["lorentzian"] = {{"center", lp.center}, {"width", lp.width}};
    peaks["model"] = model_json(p);

    CommandOutput out;
    out.files.push_back({"profile.csv", std::move(csv)});
    out.files.push_back({"peaks.json", dump(peaks)});
    if (cfg.emit_plot_script) out.files.push_back({"plot_profile.py", kPlotScript});
    return out;
}

CommandOutput build_verify(const RunConfig& cfg) {
    const ModelParams p = cfg.effective_model();
    VerifyOptions opts;
    opts.quadrature = cfg.quadrature;
    opts.contour = cfg.contour;
    const auto checks = stage("verify", [&] { return run_verify_suite(p, opts); });

    CommandOutput out;
    Json list = Json::array();
    for (const auto& c : checks) {
        out.checks_passed = out.checks_passed && c.passed;
        list.push_back({{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"passed", c.passed},
                        {"detail", c.detail}});
    }
    const Json doc{{"model", model_json(p)}, {"checks", list}, {"all_passed", out.checks_passed}};
    out.files.push_back({"verify.json", dump(doc)});
    return out;
}

CommandOutput build_evolve(const RunConfig& cfg) {
    // Time evolution needs every pole below the contour.
    const ModelParams p = cfg.effective_model().decaying();
    const double horizon = cfg.evolve_horizon();
    std::string csv = "t,re,im,abs\n";
    for (int i = 0; i < cfg.t_points; ++i) {
        const double t = horizon * i / (cfg.t_points - 1);
        const auto a = stage("survival_amplitude", [&] { return survival_amplitude(t, p, cfg.contour, cfg.quadrature); });
        csv += format_double(t) + "," + format_double(a.value.real()) + "," + format_double(a.value.imag()) + "," +
               format_double(std::abs(a.value)) + "\n";
    }
    CommandOutput out;
    out.files.push_back({"survival.csv", std::move(csv)});
    return out;
}

CommandOutput build_sweep(const RunConfig& cfg, int threads) {
    const SweepSpec spec = cfg.sweep_spec();
    const SweepResult res = sweep(spec, cfg.window_lo, cfg.window_hi, cfg.n_points, threads);
    std::string csv =
        "lambda_im,c1_sq,d,b2,classification,n_peaks,main_peak_omega,fwhm_main,separation,dip_ratio,error\n";
    for (const auto& cell : res.cells) {
        const auto& q = cell.params;
        csv += format_double(q.lambda_im) + "," + format_double(q.c1_sq) + "," + format_double(q.d) + "," +
               format_double(q.b2) + ",";
        if (cell.report) {
            const auto& r = *cell.report;
            double main_omega = 0.0, top = -1.0;
            for (const auto& pk : r.peaks)
                if (pk.height > top) top = pk.height, main_omega = pk.omega;
            csv += std::string(to_string(r.classification)) + "," + std::to_string(r.peaks.size()) + "," +
                   format_double(main_omega) + "," + format_double(r.fwhm_main) + "," + format_double(r.separation) +
                   "," + format_double(r.dip_ratio) + ",\n";
        } else {
            std::string msg = cell.error;
            for (char& ch : msg)
                if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
            csv += ",,,,,," + msg + "\n";
        }
    }
    CommandOutput out;
    out.files.push_back({"sweep.csv", std::move(csv)});
    return out;
}

CommandOutput build_outputs(Command c, const RunConfig& cfg) {
    switch (c) {
    case Command::profile: return build_profile(cfg);
    case Command::verify: return build_verify(cfg);
    case Command::evolve: return build_evolve(cfg);
    case Command::sweep: return build_sweep(cfg);
    }
    throw std::logic_error("unknown command");
}

void write_outputs(const std::string& dir, const std::vector<OutputFile>& files) {
    const fs::path root(dir);
    fs::create_directories(root);
    std::random_device rd;
    fs::path tmp;
    for (int attempt = 0;; ++attempt) {
        tmp = root / (".lineshape-tmp-" + std::to_string(rd()));
        if (fs::create_directory(tmp)) break;
        if (attempt > 8) throw std::runtime_error("cannot create a temporary directory in " + dir);
    }
    try {
        for (const auto& f : files) {
            std::ofstream os(tmp / f.name, std::ios::binary);
            os << f.content;
            os.close();
            if (!os) throw std::runtime_error("cannot write " + (tmp / f.name).string());
        }
        for (const auto& f : files) fs::rename(tmp / f.name, root / f.name);
    } catch (...) {
        std::error_code ec;
        fs::remove_all(tmp, ec);
        throw;
    }
    fs::remove(tmp);
}

int run_command(Command c, const RunConfig& cfg, std::ostream& err) {
    CommandOutput out;
    try {
        cfg.validate();
        out = build_outputs(c, cfg);
    } catch (const NumericalError& e) {
        err << "lineshape " << to_string(c) << ": numerical failure in " << e.what() << "\n";
        return kExitNumerical;
    } catch (const Error& e) {
        err << "lineshape " << to_string(c) << ": configuration error: " << e.what() << "\n";
        return kExitConfig;
    }
    try {
        write_outputs(cfg.output_dir, out.files);
    } catch (const std::exception& e) {
        err << "lineshape " << to_string(c) << ": cannot write output: " << e.what() << "\n";
        return kExitConfig;
    }
    if (!out.checks_passed) {
        err << "lineshape " << to_string(c) << ": some checks failed, see verify.json\n";
        return kExitChecksFailed;
    }
    return kExitOk;
}

} // namespace lineshape
