#include "lineshape/config.hpp"

#include "lineshape/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace lineshape {

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view v, int line) {
    v = trim(v);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ParseError(line, "expected a number, got '" + std::string(v) + "'");
    return out;
}

int parse_int(std::string_view v, int line) {
    v = trim(v);
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
        throw ParseError(line, "expected an integer, got '" + std::string(v) + "'");
    if (out < -2147483647LL || out > 2147483647LL) throw ParseError(line, "integer out of range");
    return static_cast<int>(out);
}

bool parse_bool(std::string_view v, int line) {
    v = trim(v);
    if (v == "true") return true;
    if (v == "false") return false;
    throw ParseError(line, "expected true or false, got '" + std::string(v) + "'");
}

SweepAxis parse_axis(std::string_view v, int line) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto comma = v.find(',', start);
        parts.push_back(v.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (parts.size() != 3) throw ParseError(line, "sweep axis must be 'min, max, count'");
    return {parse_number(parts[0], line), parse_number(parts[1], line), parse_int(parts[2], line)};
}

QuadratureConfig::Transform parse_transform(std::string_view v, int line) {
    v = trim(v);
    if (v == "none") return QuadratureConfig::Transform::none;
    if (v == "semi_infinite_rational") return QuadratureConfig::Transform::semi_infinite_rational;
    throw ParseError(line, "transform must be none or semi_infinite_rational");
}

const char* transform_name(QuadratureConfig::Transform t) {
    return t == QuadratureConfig::Transform::none ? "none" : "semi_infinite_rational";
}

struct Entry {
    std::string value;
    int line;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"model", {"preset", "lambda_re", "lambda_im", "c1_sq", "d", "b2", "e1", "e2", "d0", "lambda_im_sign"}},
        {"window", {"lo", "hi", "n_points"}},
        {"quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "transform"}},
        {"contour", {"y_offset", "x_halfwidth", "oscillation_budget", "t_max", "t_points"}},
        {"sweep", {"lambda_im", "c1_sq", "d", "b2"}},
        {"output", {"dir", "emit_plot_script"}},
    };
    return keys;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LambdaImSign parse_lambda_im_sign(std::string_view s) {
    s = trim(s);
    if (s == "as_printed") return LambdaImSign::as_printed;
    if (s == "flipped") return LambdaImSign::flipped;
    throw ValidationError("lambda_im_sign", "must be as_printed or flipped");
}

const char* to_string(LambdaImSign s) {
    return s == LambdaImSign::flipped ? "flipped" : "as_printed";
}

ModelParams RunConfig::effective_model() const {
    ModelParams p = model;
    if (lambda_im_sign == LambdaImSign::flipped) p.lambda_im = -p.lambda_im;
    return p;
}

SweepSpec RunConfig::sweep_spec() const {
    SweepSpec s;
    s.base = effective_model();
    s.lambda_im = sweep_lambda_im;
    s.c1_sq = sweep_c1_sq;
    s.d = sweep_d;
    s.b2 = sweep_b2;
    return s;
}

double RunConfig::evolve_horizon() const {
    if (t_max > 0.0) return t_max;
    const double width = std::abs(model.lambda_im);
    return 10.0 / (width > 0.0 ? width : 10.0);
}

void RunConfig::validate() const {
    model.validate();
    if (!(window_lo > 0.0)) throw ValidationError("window.lo", "must be > 0");
    if (!(window_hi > window_lo)) throw ValidationError("window.hi", "must be > lo");
    if (n_points < 64) throw ValidationError("window.n_points", "must be >= 64");
    quadrature.validate();
    contour.validate();
    if (!(t_max >= 0.0)) throw ValidationError("contour.t_max", "must be >= 0");
    if (t_points < 2) throw ValidationError("contour.t_points", "must be >= 2");
    sweep_spec().validate();
    if (output_dir.empty()) throw ValidationError("output.dir", "must not be empty");
}

RunConfig default_config(const ModelParams& model) {
    RunConfig c;
    c.model = model;
    const double center = model.e2 - model.e1;
    c.window_lo = center - 5000.0;
    c.window_hi = center + 5000.0;
    c.sweep_lambda_im = {model.lambda_im, model.lambda_im, 1};
    c.sweep_c1_sq = {model.c1_sq, model.c1_sq, 1};
    c.sweep_d = {model.d, model.d, 1};
    c.sweep_b2 = model.b2 < 0.0 ? SweepAxis{10.0 * model.b2, 0.0, 41} : SweepAxis{-1.0, 0.0, 41};
    return c;
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, Section> sections;
    std::string current;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
            current = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_keys().count(current)) throw ParseError(line_no, "unknown section [" + current + "]");
            if (sections.count(current)) throw ParseError(line_no, "duplicate section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
        if (current.empty()) throw ParseError(line_no, "key outside of any section");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!known_keys().at(current).count(key))
            throw ParseError(line_no, "unknown key '" + key + "' in [" + current + "]");
        auto& sec = sections[current];
        if (sec.count(key)) throw ParseError(line_no, "duplicate key '" + key + "'");
        if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
        sec[key] = {value, line_no};
    }

    // [model] first: the window and sweep defaults depend on it.
    const Section empty;
    const Section& model_sec = sections.count("model") ? sections.at("model") : empty;
    auto num = [](const Section& s, const std::string& k, double& out) {
        if (auto it = s.find(k); it != s.end()) out = parse_number(it->second.value, it->second.line);
    };
    auto integer = [](const Section& s, const std::string& k, int& out) {
        if (auto it = s.find(k); it != s.end()) out = parse_int(it->second.value, it->second.line);
    };

    ModelParams model;
    if (auto it = model_sec.find("preset"); it != model_sec.end()) {
        auto p = preset(it->second.value);
        if (!p) throw ValidationError("preset", "unknown preset '" + it->second.value + "'");
        model = *p;
    } else {
        std::string missing;
        for (const char* k : {"lambda_re", "lambda_im", "c1_sq", "d", "b2", "e1", "e2"}) {
            if (!model_sec.count(k)) missing += (missing.empty() ? "" : ", ") + std::string(k);
        }
        if (!missing.empty()) throw ValidationError("model", "missing required fields: " + missing);
    }
    num(model_sec, "lambda_re", model.lambda_re);
    num(model_sec, "lambda_im", model.lambda_im);
    num(model_sec, "c1_sq", model.c1_sq);
    num(model_sec, "d", model.d);
    num(model_sec, "b2", model.b2);
    num(model_sec, "e1", model.e1);
    num(model_sec, "e2", model.e2);
    num(model_sec, "d0", model.d0);
    model.validate();

    RunConfig cfg = default_config(model);
    if (auto it = model_sec.find("lambda_im_sign"); it != model_sec.end())
        cfg.lambda_im_sign = parse_lambda_im_sign(it->second.value);

    auto section = [&](const char* name) -> const Section& {
        auto it = sections.find(name);
        return it == sections.end() ? empty : it->second;
    };
    const Section& win = section("window");
    num(win, "lo", cfg.window_lo);
    num(win, "hi", cfg.window_hi);
    integer(win, "n_points", cfg.n_points);

    const Section& quad = section("quadrature");
    num(quad, "rel_tol", cfg.quadrature.rel_tol);
    num(quad, "abs_tol", cfg.quadrature.abs_tol);
    integer(quad, "max_subdivisions", cfg.quadrature.max_subdivisions);
    if (auto it = quad.find("transform"); it != quad.end())
        cfg.quadrature.transform = parse_transform(it->second.value, it->second.line);

    const Section& con = section("contour");
    num(con, "y_offset", cfg.contour.y_offset);
    num(con, "x_halfwidth", cfg.contour.x_halfwidth);
    integer(con, "oscillation_budget", cfg.contour.oscillation_budget);
    num(con, "t_max", cfg.t_max);
    integer(con, "t_points", cfg.t_points);

    const Section& sw = section("sweep");
    auto axis = [&](const char* k, SweepAxis& out) {
        if (auto it = sw.find(k); it != sw.end()) out = parse_axis(it->second.value, it->second.line);
    };
    axis("lambda_im", cfg.sweep_lambda_im);
    axis("c1_sq", cfg.sweep_c1_sq);
    axis("d", cfg.sweep_d);
    axis("b2", cfg.sweep_b2);

    const Section& out = section("output");
    if (auto it = out.find("dir"); it != out.end()) cfg.output_dir = it->second.value;
    if (auto it = out.find("emit_plot_script"); it != out.end())
        cfg.emit_plot_script = parse_bool(it->second.value, it->second.line);

    cfg.validate();
    return cfg;
}

std::string render_config(const RunConfig& cfg) {
    std::ostringstream os;
    auto axis = [](const SweepAxis& a) {
        return format_double(a.min) + ", " + format_double(a.max) + ", " + std::to_string(a.count);
    };
    const ModelParams& m = cfg.model;
    os << "[model]\n"
       << "lambda_re = " << format_double(m.lambda_re) << "\n"
       << "lambda_im = " << format_double(m.lambda_im) << "\n"
       << "c1_sq = " << format_double(m.c1_sq) << "\n"
       << "d = " << format_double(m.d) << "\n"
       << "b2 = " << format_double(m.b2) << "\n"
       << "e1 = " << format_double(m.e1) << "\n"
       << "e2 = " << format_double(m.e2) << "\n"
       << "d0 = " << format_double(m.d0) << "\n"
       << "lambda_im_sign = " << to_string(cfg.lambda_im_sign) << "\n\n"
       << "[window]\n"
       << "lo = " << format_double(cfg.window_lo) << "\n"
       << "hi = " << format_double(cfg.window_hi) << "\n"
       << "n_points = " << cfg.n_points << "\n\n"
       << "[quadrature]\n"
       << "rel_tol = " << format_double(cfg.quadrature.rel_tol) << "\n"
       << "abs_tol = " << format_double(cfg.quadrature.abs_tol) << "\n"
       << "max_subdivisions = " << cfg.quadrature.max_subdivisions << "\n"
       << "transform = " << transform_name(cfg.quadrature.transform) << "\n\n"
       << "[contour]\n"
       << "y_offset = " << format_double(cfg.contour.y_offset) << "\n"
       << "x_halfwidth = " << format_double(cfg.contour.x_halfwidth) << "\n"
       << "oscillation_budget = " << cfg.contour.oscillation_budget << "\n"
       << "t_max = " << format_double(cfg.t_max) << "\n"
       << "t_points = " << cfg.t_points << "\n\n"
       << "[sweep]\n"
       << "lambda_im = " << axis(cfg.sweep_lambda_im) << "\n"
       << "c1_sq = " << axis(cfg.sweep_c1_sq) << "\n"
       << "d = " << axis(cfg.sweep_d) << "\n"
       << "b2 = " << axis(cfg.sweep_b2) << "\n\n"
       << "[output]\n"
       << "dir = " << cfg.output_dir << "\n"
       << "emit_plot_script = " << (cfg.emit_plot_script ? "true" : "false") << "\n";
    return os.str();
}

} // namespace lineshape
