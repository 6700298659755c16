#include "symqudit/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "symqudit/errors.hpp"
#include "symqudit/reports.hpp"
#include "symqudit/selftest.hpp"
#include "symqudit/sweep.hpp"

namespace symqudit::cli {

namespace {

using sweep::ConfigError;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw ConfigError("not a number: '" + s + "'");
    return v;
}

// Returns argv with the entries of a `--config FILE` spliced in right after
// the subcommand name, so that flags given on the command line (which come
// later and use the take-last policy) override them.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    if (args.size() < 2) return args;
    std::string path;
    for (std::size_t k = 2; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw ConfigError("--config needs a file name");
            path = args[k + 1];
        } else if (args[k].rfind("--config=", 0) == 0) {
            path = args[k].substr(9);
        }
    }
    if (path.empty()) return args;
    std::vector<std::string> out{args[0], args[1]};
    for (const auto& [key, value] : read_flat_config(path)) out.push_back("--" + key + "=" + value);
    out.insert(out.end(), args.begin() + 2, args.end());
    return out;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot open output file '" + path + "'");
    f << text;
    f.close();
    if (!f) throw ConfigError("failed writing output file '" + path + "'");
}

std::string read_text(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IntegrityError("cannot re-read output file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string curve_path_for(const std::string& out) {
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    const std::string stem = (dot != std::string::npos && (slash == std::string::npos || dot > slash)) ? out.substr(0, dot) : out;
    return stem + "_stationary.csv";
}

struct SweepArgs {
    int n = 50;
    double epsilon = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 6.0;
    int lambda_count = 121;
    std::string lambdas;
    std::string sources = "numerical,variational";
    std::string observables = "all";
    std::string out = "-";
    std::string format = "csv";
    int jobs = 1;
    std::string config;
};

struct PhaseArgs {
    double epsilon = 1.0;
    double lambda = 1.0;
    std::string config;
};

struct StateArgs {
    std::string kind = "dscs";
    int n = 10;
    int d = 3;
    std::string z;
    std::string alpha;
    std::string beta;
    std::string phases;
    std::string config;
};

struct SurfaceArgs {
    std::string state = "dcat";
    std::string coords = "alpha-beta";
    std::string observable = "level_entropy_1";
    int n = 50;
    double epsilon = 1.0;
    double lambda = 1.0;
    double range_min = 0.0;
    double range_max = 2.0;
    int points = 41;
    double curve_min = 0.0;
    double curve_max = 6.0;
    int curve_count = 121;
    std::string out = "-";
    std::string curve_out;
    std::string config;
};

int do_sweep(const SweepArgs& a, std::ostream& out) {
    sweep::SweepConfig cfg;
    cfg.n_particles = a.n;
    cfg.epsilon = a.epsilon;
    if (!a.lambdas.empty()) {
        for (const auto& s : split_list(a.lambdas)) cfg.lambdas.push_back(parse_double(s));
    } else {
        cfg.lambdas = sweep::lambda_grid(a.lambda_min, a.lambda_max, a.lambda_count, a.epsilon);
    }
    cfg.sources.clear();
    for (const auto& s : split_list(a.sources)) cfg.sources.push_back(sweep::parse_source(s));
    if (trim(a.observables) != "all") {
        cfg.observables.clear();
        for (const auto& s : split_list(a.observables)) cfg.observables.push_back(sweep::parse_observable(s));
    }
    cfg.format = sweep::parse_format(a.format);
    cfg.jobs = a.jobs;
    cfg.validate();

    const auto records = sweep::run_sweep(cfg);
    sweep::check_records(records);
    std::ostringstream text;
    sweep::write_records(text, records, cfg.format);
    write_text(a.out, text.str(), out);
    sweep::check_output(a.out == "-" ? text.str() : read_text(a.out), cfg.format);
    return kExitOk;
}

int do_phase(const PhaseArgs& a, std::ostream& out) {
    reports::print_phase(out, reports::phase_report({a.epsilon, a.lambda, 3}));
    return kExitOk;
}

int do_state(const StateArgs& a, std::ostream& out) {
    reports::StateSpec spec;
    spec.kind = reports::parse_state_kind(a.kind);
    spec.n_particles = a.n;
    spec.n_levels = a.d;
    if (!a.z.empty()) {
        for (const auto& c : split_list(a.z)) spec.z.z.push_back(parse_complex(c));
    } else {
        spec.z.z.assign(static_cast<std::size_t>(std::max(a.d, 1)), Complex{1.0, 0.0});
    }
    if (!a.alpha.empty() || !a.beta.empty()) {
        if (a.d != 3) throw ConfigError("--alpha/--beta select the chart (1, alpha, beta) and need --d 3");
        spec.z = PhasePoint::chart3(a.alpha.empty() ? Complex{1.0} : parse_complex(a.alpha),
                                    a.beta.empty() ? Complex{1.0} : parse_complex(a.beta));
    }
    if (!a.phases.empty()) {
        for (const auto& p : split_list(a.phases)) spec.phases.phases.push_back(parse_double(p));
    } else {
        spec.phases.phases.assign(static_cast<std::size_t>(std::max(a.d, 1)), 0.0);
    }
    reports::print_state(out, reports::state_report(spec));
    return kExitOk;
}

int do_surface(const SurfaceArgs& a, std::ostream& out) {
    reports::SurfaceConfig cfg;
    cfg.state = reports::parse_state_kind(a.state);
    if (a.coords == "alpha-beta")
        cfg.coords = reports::SurfaceCoords::AlphaBeta;
    else if (a.coords == "xy")
        cfg.coords = reports::SurfaceCoords::XY;
    else
        throw ConfigError("unknown coords '" + a.coords + "' (alpha-beta, xy)");
    cfg.observable = reports::parse_surface_observable(a.observable);
    cfg.n_particles = a.n;
    cfg.epsilon = a.epsilon;
    cfg.lambda = a.lambda;
    cfg.range_min = a.range_min;
    cfg.range_max = a.range_max;
    cfg.points = a.points;
    cfg.curve_lambdas = sweep::lambda_grid(a.curve_min, a.curve_max, a.curve_count, a.epsilon);
    cfg.validate();

    std::ostringstream table, curve;
    reports::write_surface_csv(table, reports::surface_table(cfg));
    reports::write_curve_csv(curve, reports::stationary_curve(cfg.epsilon, cfg.curve_lambdas));
    if (a.out == "-" && a.curve_out.empty()) {
        out << table.str() << '\n' << curve.str();
        return kExitOk;
    }
    write_text(a.out, table.str(), out);
    write_text(a.curve_out.empty() ? curve_path_for(a.out) : a.curve_out, curve.str(), out);
    return kExitOk;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.rfind("--", 0) == 0) key = key.substr(2);
        if (key.empty() || key == "config")
            throw ConfigError(path + ":" + std::to_string(lineno) + ": invalid key '" + key + "'");
        out.emplace_back(key, value);
    }
    return out;
}

std::complex<double> parse_complex(const std::string& text) {
    const std::string s = trim(text);
    if (s.empty()) throw ConfigError("empty complex number");
    const char* p = s.c_str();
    const char* end = p + s.size();
    auto is_unit = [](char c) { return c == 'i' || c == 'j'; };

    // bare imaginary unit, optionally signed
    if ((s.size() == 1 && is_unit(s[0])) || (s.size() == 2 && (s[0] == '+' || s[0] == '-') && is_unit(s[1])))
        return {0.0, s[0] == '-' ? -1.0 : 1.0};

    char* q = nullptr;
    const double first = std::strtod(p, &q);
    if (q == p) throw ConfigError("not a complex number: '" + s + "'");
    if (q == end) return {first, 0.0};
    if (is_unit(*q) && q + 1 == end) return {0.0, first};
    if (*q != '+' && *q != '-') throw ConfigError("not a complex number: '" + s + "'");
    const char* r = q;
    double second = 0.0;
    if (r + 2 == end && is_unit(r[1])) {
        second = *r == '-' ? -1.0 : 1.0;
        r += 1;
    } else {
        char* t = nullptr;
        second = std::strtod(r, &t);
        if (t == r) throw ConfigError("not a complex number: '" + s + "'");
        r = t;
    }
    if (r + 1 != end || !is_unit(*r)) throw ConfigError("not a complex number: '" + s + "'");
    return {first, second};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symmetric multi-level (quDit) states and the three-level LMG model"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    SweepArgs sw;
    auto* sweep_cmd = app.add_subcommand("sweep", "Sweep lambda; energies, entropies and squeezing per source");
    sweep_cmd->add_option("--n", sw.n, "Number of particles");
    sweep_cmd->add_option("--epsilon", sw.epsilon, "Level splitting");
    sweep_cmd->add_option("--lambda-min", sw.lambda_min, "Grid start");
    sweep_cmd->add_option("--lambda-max", sw.lambda_max, "Grid end");
    sweep_cmd->add_option("--lambda-count", sw.lambda_count,
                          "Grid points; the couplings epsilon/2 and 3epsilon/2 are merged in when inside the range");
    sweep_cmd->add_option("--lambdas", sw.lambdas, "Explicit comma-separated lambda list (overrides the grid)");
    sweep_cmd->add_option("--sources", sw.sources, "Comma list of numerical, variational");
    sweep_cmd->add_option("--observables", sw.observables,
                          "all, or a comma list of level_entropy_1..3, one_atom, two_atom, squeezing_total, "
                          "squeezing_pairs, energy");
    sweep_cmd->add_option("--out", sw.out, "Output path, - for stdout");
    sweep_cmd->add_option("--format", sw.format, "csv or json");
    sweep_cmd->add_option("--jobs", sw.jobs, "Worker threads over lambda points");
    sweep_cmd->add_option("--config", sw.config, "Flat key=value file; command-line flags override it");

    PhaseArgs ph;
    auto* phase_cmd = app.add_subcommand("phase", "Mean-field phase, stationary point and thermodynamic energy");
    phase_cmd->add_option("--epsilon", ph.epsilon, "Level splitting");
    phase_cmd->add_option("--lambda", ph.lambda, "Coupling");
    phase_cmd->add_option("--config", ph.config, "Flat key=value file; command-line flags override it");

    StateArgs st;
    auto* state_cmd = app.add_subcommand("state", "Entropies and squeezing of one named state");
    state_cmd->add_option("--kind", st.kind, "dscs, dcat or nodon");
    state_cmd->add_option("--n", st.n, "Number of particles");
    state_cmd->add_option("--d", st.d, "Number of levels");
    state_cmd->add_option("--z", st.z, "Comma list of complex components (default all ones)");
    state_cmd->add_option("--alpha", st.alpha, "Chart (1, alpha, beta) for D = 3");
    state_cmd->add_option("--beta", st.beta, "Chart (1, alpha, beta) for D = 3");
    state_cmd->add_option("--phases", st.phases, "Comma list of nodon phases (default zeros)");
    state_cmd->add_option("--config", st.config, "Flat key=value file; command-line flags override it");

    SurfaceArgs sf;
    auto* surface_cmd = app.add_subcommand("surface", "Tabulate an observable over a real phase-space grid");
    surface_cmd->add_option("--state", sf.state, "dscs or dcat");
    surface_cmd->add_option("--coords", sf.coords, "alpha-beta (z = (1, alpha, beta)) or xy (dscs level entropy)");
    surface_cmd->add_option("--observable", sf.observable,
                            "level_entropy_1..3, one_atom, two_atom, squeezing_total, energy");
    surface_cmd->add_option("--n", sf.n, "Number of particles");
    surface_cmd->add_option("--epsilon", sf.epsilon, "Level splitting");
    surface_cmd->add_option("--lambda", sf.lambda, "Coupling (energy observable)");
    surface_cmd->add_option("--range-min", sf.range_min, "Lower bound of both axes");
    surface_cmd->add_option("--range-max", sf.range_max, "Upper bound of both axes");
    surface_cmd->add_option("--points", sf.points, "Points per axis");
    surface_cmd->add_option("--curve-lambda-min", sf.curve_min, "Stationary curve start");
    surface_cmd->add_option("--curve-lambda-max", sf.curve_max, "Stationary curve end");
    surface_cmd->add_option("--curve-lambda-count", sf.curve_count, "Stationary curve points");
    surface_cmd->add_option("--out", sf.out, "Surface table path, - for stdout");
    surface_cmd->add_option("--curve-out", sf.curve_out,
                            "Stationary curve path (default <out stem>_stationary.csv, or after the table on stdout)");
    surface_cmd->add_option("--config", sf.config, "Flat key=value file; command-line flags override it");

    auto* self_cmd = app.add_subcommand("selftest", "Run the small-size oracle checks");
    (void)self_cmd;

    try {
        std::vector<std::string> args(argv, argv + argc);
        args = expand_config(args);
        // CLI11 consumes arguments in reverse order from the back.
        std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
        try {
            app.parse(reversed);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? kExitOk : kExitConfig;
        }

        if (sweep_cmd->parsed()) return do_sweep(sw, out);
        if (phase_cmd->parsed()) return do_phase(ph, out);
        if (state_cmd->parsed()) return do_state(st, out);
        if (surface_cmd->parsed()) return do_surface(sf, out);
        return selftest::report(out, selftest::run_all()) ? kExitOk : kExitIntegrity;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrityError& e) {
        err << "integrity error: " << e.what() << '\n';
        return kExitIntegrity;
    } catch (const ConvergenceError& e) {
        err << "integrity error: " << e.what() << '\n';
        return kExitIntegrity;
    } catch (const EmptySectorError& e) {
        err << "integrity error: " << e.what() << '\n';
        return kExitIntegrity;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace symqudit::cli
