#include "atlas/cli.hpp"

#include "atlas/amoeba.hpp"
#include "atlas/complex_limit.hpp"
#include "atlas/error.hpp"
#include "atlas/io.hpp"
#include "atlas/lattice_geom.hpp"
#include "atlas/moment.hpp"
#include "atlas/render.hpp"
#include "atlas/tropical.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace atlas {

namespace {

const std::set<std::string> kCommands = {"amoeba", "compactified", "wca", "complex", "classify", "check", "pi0"};

std::vector<double> split_numbers(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError(std::string("bad number '") + item + "' in " + what);
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
}

LaurentPolynomial load_polynomial(const RunConfig& c) {
    if (c.poly) {
        return parse_polynomial(*c.poly);
    }
    std::string text = read_file(*c.poly_file);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        try {
            return polynomial_from_json(Json::parse(text));
        } catch (const nlohmann::json::exception& e) {
            throw InputError(*c.poly_file + ": " + e.what());
        }
    }
    return parse_polynomial(text);
}

void apply_config_file(RunConfig& c, const std::string& path, const std::set<std::string>& from_flags) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
    if (!j.is_object()) {
        throw InputError(path + ": config must be a JSON object");
    }
    auto take = [&](const char* key) { return j.contains(key) && !from_flags.count(key); };
    try {
        for (const auto& [key, value] : j.items()) {
            static const std::set<std::string> known = {"command", "poly",  "poly_file", "window", "grid",
                                                        "thetas",  "slices", "r",         "schedule", "eps",
                                                        "seed",    "out",   "svg",       "method", "jitter"};
            if (!known.count(key)) {
                throw InputError(path + ": unknown key '" + key + "'");
            }
            (void)value;
        }
        if (take("command") && c.command.empty()) {
            c.command = j["command"].get<std::string>();
        }
        if (take("poly")) {
            c.poly = j["poly"].get<std::string>();
        }
        if (take("poly_file")) {
            c.poly_file = j["poly_file"].get<std::string>();
        }
        if (take("window")) {
            const auto& w = j["window"];
            if (w.is_string()) {
                c.window = parse_window(w.get<std::string>());
            } else {
                auto v = w.get<std::vector<double>>();
                if (v.size() != 4) {
                    throw InputError("window needs four numbers");
                }
                c.window = Window{v[0], v[1], v[2], v[3]};
            }
        }
        if (take("grid")) {
            c.grid = j["grid"].get<int>();
        }
        if (take("thetas")) {
            c.thetas = j["thetas"].get<int>();
        }
        if (take("slices")) {
            c.slices = j["slices"].get<int>();
        }
        if (take("r")) {
            c.r = j["r"].get<double>();
        }
        if (take("schedule")) {
            const auto& s = j["schedule"];
            c.schedule = s.is_string() ? parse_schedule(s.get<std::string>()) : s.get<std::vector<double>>();
        }
        if (take("eps")) {
            c.eps = j["eps"].get<double>();
        }
        if (take("seed")) {
            c.seed = j["seed"].get<std::uint64_t>();
        }
        if (take("out")) {
            c.out = j["out"].get<std::string>();
        }
        if (take("svg")) {
            c.svg = j["svg"].get<std::string>();
        }
        if (take("method")) {
            c.method = j["method"].get<std::string>();
        }
        if (take("jitter")) {
            c.jitter = j["jitter"].get<std::uint64_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

MomentSampling moment_sampling(const RunConfig& c) {
    MomentSampling s;
    s.window = c.window;
    s.slices = c.slices;
    s.thetas = c.thetas;
    return s;
}

RasterOptions raster_options(const RunConfig& c) {
    RasterOptions o;
    o.resolution = c.grid;
    o.thetas = c.thetas;
    return o;
}

std::vector<Layer> polytope_layers(const LaurentPolynomial& f, Layer main) {
    std::vector<Layer> layers{std::move(main), newton_outline(f)};
    layers.push_back(LatticeLayer{lattice_points(newton_polytope(f)), true});
    return layers;
}

std::string summary_orders(const std::vector<LatticePoint>& orders) {
    std::string s;
    for (const auto& o : orders) {
        s += " (" + std::to_string(o[0]) + "," + std::to_string(o[1]) + ")";
    }
    return s;
}

struct Outcome {
    Json artifact;
    std::optional<std::string> svg;
    std::string summary;
};

Outcome run_command(const RunConfig& c, const LaurentPolynomial& f) {
    Outcome o;
    o.artifact["command"] = c.command;
    o.artifact["polynomial"] = polynomial_to_json(f);
    const bool want_svg = c.svg.has_value();

    if (c.command == "amoeba") {
        Window w = c.window ? *c.window : default_window(f);
        auto raster = amoeba_points(f, w, raster_options(c));
        auto comps = complement_components(f, raster, 8, c.seed);
        Json cj = Json::array();
        for (const auto& k : comps) {
            cj.push_back({{"representative", {k.representative[0], k.representative[1]}},
                          {"order", k.order ? Json(*k.order) : Json(nullptr)},
                          {"bounded", k.bounded},
                          {"cells", k.cells.size()}});
        }
        o.artifact["raster"] = raster_to_json(raster);
        o.artifact["components"] = cj;
        o.summary = std::to_string(comps.size()) + " complement components";
        if (want_svg) {
            o.svg = render_svg({RasterLayer{raster, "#7a9cc6"}});
        }
    } else if (c.command == "compactified" || c.command == "wca") {
        auto cloud = c.command == "wca" ? wca(f, c.r, moment_sampling(c)) : compactified_amoeba(f, moment_sampling(c));
        if (c.command == "wca") {
            o.artifact["r"] = c.r;
        }
        o.artifact["cloud"] = cloud_to_json(cloud);
        o.summary = std::to_string(cloud.size()) + " points";
        if (want_svg) {
            o.svg = render_svg(polytope_layers(f, CloudLayer{cloud, "#1f4e9c"}));
        }
    } else if (c.command == "complex") {
        o.artifact["method"] = c.method;
        o.artifact["hypotheses"] = hypotheses_to_json(check_hypotheses(f));
        if (c.method == "direct") {
            auto complex = direct_complex(f, c.jitter);
            o.artifact["complex"] = complex_to_json(complex);
            auto violations = adjacency_violations(complex);
            o.artifact["adjacency_violations"] = violations;
            o.summary = std::to_string(complex.cells.size()) + " cells";
            if (want_svg && complex.dimension == 2) {
                o.svg = render_svg(polytope_layers(f, ComplexLayer{complex, "#d9534f"}));
            }
        } else {
            auto schedule = c.schedule.empty() ? default_schedule() : c.schedule;
            auto est = limit_complex_estimate(f, schedule, c.eps, moment_sampling(c));
            o.artifact["convergence"] = convergence_to_json(est);
            o.artifact["cloud"] = cloud_to_json(est.cloud);
            o.summary = std::string(est.converged ? "converged" : "not converged") +
                        (est.experimental ? " (experimental)" : "");
            if (want_svg) {
                o.svg = render_svg(polytope_layers(f, CloudLayer{est.cloud, "#d9534f"}));
            }
        }
    } else if (c.command == "classify") {
        ClassifyOptions opt;
        opt.window = c.window;
        opt.raster = raster_options(c);
        opt.seed = c.seed;
        auto result = classify(f, opt);
        o.artifact["classification"] = classification_to_json(result);
        o.summary = verdict_name(result.verdict) + ", " + std::to_string(result.realized.size()) + " orders:" +
                    summary_orders(result.realized);
        if (!result.missing.empty()) {
            o.summary += "; missing" + summary_orders(result.missing);
        }
        if (want_svg) {
            auto raster = amoeba_points(f, result.window, raster_options(c));
            o.svg = render_svg({RasterLayer{raster, "#7a9cc6"}});
        }
    } else if (c.command == "check") {
        auto h = check_hypotheses(f);
        o.artifact["hypotheses"] = hypotheses_to_json(h);
        auto sub = coefficient_subdivision(f, c.jitter);
        o.artifact["subdivision"] = subdivision_to_json(sub);
        if (f.dimension() == 2) {
            o.artifact["tropical_curve"] = curve_to_json(curve_data(tropical_curve_2d(TropicalPolynomial::from(f))));
        }
        std::string failed;
        if (!h.vertex_bound) {
            failed += " vertex-coefficient bound";
        }
        if (!h.concave) {
            failed += " concavity";
        }
        if (!h.triangulation) {
            failed += " triangulation";
        }
        o.summary = h.eligible() ? std::string("all hypotheses hold") : "failed:" + failed;
    } else if (c.command == "pi0") {
        Pi0Options opt;
        opt.classify.window = c.window;
        opt.classify.raster = raster_options(c);
        opt.classify.seed = c.seed;
        if (!c.schedule.empty()) {
            opt.schedule = c.schedule;
        }
        opt.sampling = moment_sampling(c);
        opt.sampling.window.reset();
        auto report = pi0_compare(f, opt);
        o.artifact["pi0"] = pi0_to_json(report);
        o.summary = report.verdict + " (" + report.method + "): affine " + std::to_string(report.affine_count) +
                    ", polytope " + std::to_string(report.polytope_count);
        if (want_svg) {
            Window w = c.window ? *c.window : default_window(f);
            auto raster = amoeba_points(f, w, raster_options(c));
            auto sampling = moment_sampling(c);
            sampling.window.reset();
            auto cloud = compactified_amoeba(f, sampling);
            Layer right = report.method == "direct"
                              ? Layer(ComplexLayer{direct_complex(f), "#d9534f"})
                              : Layer(CloudLayer{limit_complex_estimate(f, opt.schedule, c.eps, sampling).cloud, "#d9534f"});
            o.svg = render_panels({Panel{"affine amoeba", {RasterLayer{raster, "#7a9cc6"}}},
                                   Panel{"compactified amoeba", polytope_layers(f, CloudLayer{cloud, "#1f4e9c"})},
                                   Panel{"polyhedral complex", polytope_layers(f, right)}});
        }
    }
    return o;
}

} // namespace

void RunConfig::validate() const {
    if (!kCommands.count(command)) {
        throw InputError("unknown command '" + command + "'");
    }
    if (poly.has_value() == poly_file.has_value()) {
        throw InputError("give exactly one of --poly and --poly-file");
    }
    if (grid <= 0 || thetas <= 0 || slices <= 0) {
        throw InputError("grid, thetas and slices must be positive");
    }
    if (eps && !(*eps > 0.0)) {
        throw InputError("eps must be positive");
    }
    if (window && !window->well_ordered()) {
        throw InputError("window must satisfy x0 < x1 and y0 < y1");
    }
    if (!(r >= 1.0)) {
        throw InputError("r must be at least 1");
    }
    for (double s : schedule) {
        if (!(s >= 1.0)) {
            throw InputError("schedule entries must be at least 1");
        }
    }
    if (method != "direct" && method != "limit") {
        throw InputError("method must be direct or limit");
    }
}

std::optional<Window> parse_window(const std::string& text) {
    if (text == "auto") {
        return std::nullopt;
    }
    auto v = split_numbers(text, "window");
    if (v.size() != 4) {
        throw InputError("window needs four numbers x0,x1,y0,y1");
    }
    Window w{v[0], v[1], v[2], v[3]};
    if (!w.well_ordered()) {
        throw InputError("window must satisfy x0 < x1 and y0 < y1");
    }
    return w;
}

std::vector<double> parse_schedule(const std::string& text) {
    auto v = split_numbers(text, "schedule");
    if (v.empty()) {
        throw InputError("empty schedule");
    }
    return v;
}

RunConfig parse_command_line(int argc, const char* const* argv) {
    CLI::App app{"amoebas, compactified amoebas and their polyhedral limits", "atlas"};
    RunConfig c;
    std::string poly, poly_file, window, schedule, out, svg, method, config;
    double eps = 0.0;
    std::uint64_t jitter = 0;
    app.add_option("command", c.command, "amoeba | compactified | wca | complex | classify | check | pi0");
    auto* o_poly = app.add_option("--poly", poly, "polynomial text, e.g. 1+x+y");
    auto* o_poly_file = app.add_option("--poly-file", poly_file, "file with polynomial text or JSON");
    auto* o_window = app.add_option("--window", window, "x0,x1,y0,y1 or auto");
    auto* o_grid = app.add_option("--grid", c.grid, "raster resolution");
    auto* o_thetas = app.add_option("--thetas", c.thetas, "angles per slice");
    auto* o_slices = app.add_option("--slices", c.slices, "slices per axis");
    auto* o_r = app.add_option("--r", c.r, "Hadamard exponent for wca");
    auto* o_schedule = app.add_option("--schedule", schedule, "r values, e.g. 1,2,4,8");
    auto* o_eps = app.add_option("--eps", eps, "convergence threshold");
    auto* o_seed = app.add_option("--seed", c.seed, "random seed");
    auto* o_out = app.add_option("--out", out, "JSON output path");
    auto* o_svg = app.add_option("--svg", svg, "SVG output path");
    auto* o_method = app.add_option("--method", method, "direct | limit");
    auto* o_jitter = app.add_option("--jitter", jitter, "jitter heights with this seed");
    app.add_option("--config", config, "JSON config file");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw;
    } catch (const CLI::ParseError& e) {
        throw InputError(e.what());
    }

    std::set<std::string> from_flags;
    auto mark = [&](CLI::Option* opt, const char* key) {
        if (opt->count()) {
            from_flags.insert(key);
        }
    };
    mark(o_poly, "poly");
    mark(o_poly_file, "poly_file");
    mark(o_window, "window");
    mark(o_grid, "grid");
    mark(o_thetas, "thetas");
    mark(o_slices, "slices");
    mark(o_r, "r");
    mark(o_schedule, "schedule");
    mark(o_eps, "eps");
    mark(o_seed, "seed");
    mark(o_out, "out");
    mark(o_svg, "svg");
    mark(o_method, "method");
    mark(o_jitter, "jitter");

    if (!config.empty()) {
        apply_config_file(c, config, from_flags);
    }
    if (c.command.empty()) {
        throw InputError("a command is required");
    }
    if (o_poly->count()) {
        c.poly = poly;
    }
    if (o_poly_file->count()) {
        c.poly_file = poly_file;
    }
    if (o_window->count()) {
        c.window = parse_window(window);
    }
    if (o_schedule->count()) {
        c.schedule = parse_schedule(schedule);
    }
    if (o_eps->count()) {
        c.eps = eps;
    }
    if (o_out->count()) {
        c.out = out;
    }
    if (o_svg->count()) {
        c.svg = svg;
    }
    if (o_method->count()) {
        c.method = method;
    }
    if (o_jitter->count()) {
        c.jitter = jitter;
    }
    c.validate();
    return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        config.validate();
        auto f = load_polynomial(config);
        auto outcome = run_command(config, f);
        std::string text = dump(outcome.artifact);
        if (config.out) {
            write_file(*config.out, text);
            out << config.command << ": " << outcome.summary << "\n";
        } else {
            out << text;
        }
        if (config.svg && outcome.svg) {
            write_file(*config.svg, *outcome.svg);
        } else if (config.svg) {
            err << "note: no figure for this command\n";
        }
        return 0;
    } catch (const RefusalError& e) {
        err << "refused: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_command_line(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << "usage: atlas <amoeba|compactified|wca|complex|classify|check|pi0> (--poly TEXT | --poly-file FILE)\n"
               "  [--window x0,x1,y0,y1|auto] [--grid N] [--thetas N] [--slices N] [--r R]\n"
               "  [--schedule 1,2,4,...] [--eps E] [--seed S] [--out FILE] [--svg FILE]\n"
               "  [--method direct|limit] [--jitter SEED] [--config FILE]\n";
        return 0;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    }
    return run(config, out, err);
}

} // namespace atlas
