#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "paghz/cli.hpp"
#include "paghz/error.hpp"

namespace paghz::cli {

namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;

// Writes `text` to `path`, or to `fallback` when the path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

std::vector<std::array<int, 3>> scan_tuples(const RunConfig& config) {
    if (!config.tuples.empty()) {
        return config.tuples;
    }
    return {{config.params.r, config.params.s, config.params.t}};
}

int scan_command(const RunConfig& config, const ScanRange& default_range, std::ostream& out,
                 std::ostream& err) {
    try {
        const auto rows = compute_scan(scan_tuples(config), config.params.phi,
                                       config.alpha_sq.value_or(default_range));
        std::ostringstream text;
        if (config.format == Format::json) {
            write_scan_json(text, rows);
        } else {
            write_scan_csv(text, rows);
        }
        emit(config.output, text.str(), out);
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

std::string group_of(const std::string& quantity) {
    std::string g = quantity.substr(0, quantity.find('['));
    if (g == "mean_n") return "mean";
    if (g == "mandel_q" || g == "mandel_q_paper") return "Q";
    if (g == "triple_paper") return "triple";
    if (g == "g3_paper") return "g3";
    return g;
}

std::vector<StateParams> validation_cases(const RunConfig& config) {
    if (config.single) {
        return {config.params};
    }
    std::vector<StateParams> cases;
    const int n = config.lattice.rst_max;
    for (double phi : config.lattice.phi) {
        for (double a2 : config.lattice.alpha_sq) {
            for (int r = 0; r <= n; ++r) {
                for (int s = 0; s <= n; ++s) {
                    for (int t = 0; t <= n; ++t) {
                        cases.push_back({std::complex<double>(std::sqrt(a2), 0.0), phi, r, s, t});
                    }
                }
            }
        }
    }
    return cases;
}

WignerGrid figure_grid(const FigurePanel& panel, const GridSpec& grid) {
    const auto& rst = panel.tuples.front();
    const StateParams params{std::complex<double>(0.3, 0.0), panel.phi, rst[0], rst[1], rst[2]};
    return wigner_grid(params, grid);
}

}  // namespace

int cmd_wigner_grid(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        GridSpec spec = config.grid;
        spec.threads = config.threads;
        const WignerGrid grid = wigner_grid(config.params, spec);
        std::ostringstream text;
        if (config.format == Format::json) {
            write_grid_json(text, grid);
        } else {
            write_grid_csv(text, grid);
        }
        emit(config.output, text.str(), out);

        const GridMinimum lo = grid_minimum(grid);
        const double hi = *std::max_element(grid.values.begin(), grid.values.end());
        const auto negative = std::count_if(grid.values.begin(), grid.values.end(), [](double w) { return w < 0.0; });
        // Keep stdout clean for the data when no file was requested.
        std::ostream& summary = config.output.empty() ? err : out;
        summary << "min " << format_number(lo.value) << " at x=" << format_number(lo.x)
                << " y=" << format_number(lo.y) << "\n"
                << "max " << format_number(hi) << "\n"
                << "negative_fraction " << format_number(static_cast<double>(negative) / grid.values.size())
                << "\n";
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_mandel_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return scan_command(config, ScanRange{0.01, 3.0, 300}, out, err);
}

int cmd_g3_scan(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return scan_command(config, ScanRange{0.01, 4.0, 400}, out, err);
}

int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::unique_ptr<std::ofstream> file;
    if (!config.output.empty()) {
        file = std::make_unique<std::ofstream>(config.output, std::ios::binary | std::ios::trunc);
        if (!*file) {
            err << "error: cannot open '" << config.output << "' for writing\n";
            return kExitError;
        }
    }
    std::ostream& jsonl = file ? *file : out;

    ValidateOptions options;
    options.seed = config.seed;
    options.cutoff = config.cutoff;
    options.groups = config.quantities;
    options.threads = config.threads;

    std::vector<DiscrepancyReport> all;
    try {
        for (const auto& params : validation_cases(config)) {
            auto reports = validate(params, config.tolerances, config.points, options);
            for (const auto& r : reports) {
                jsonl << to_json_line(r) << '\n';
            }
            all.insert(all.end(), std::make_move_iterator(reports.begin()), std::make_move_iterator(reports.end()));
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    if (file) {
        file->close();
        if (!*file) {
            err << "error: write to '" << config.output << "' failed\n";
            return kExitError;
        }
    }

    std::map<std::string, std::array<int, 3>> table;
    for (const auto& r : all) {
        ++table[group_of(r.quantity)][static_cast<int>(r.verdict)];
    }
    out << "group      agree  paper_typo  fail\n";
    for (const auto& [group, counts] : table) {
        char line[96];
        std::snprintf(line, sizeof line, "%-9s %6d %11d %5d\n", group.c_str(), counts[0], counts[1], counts[2]);
        out << line;
    }
    const int code = summary_exit_code(all);
    out << "exit " << code << '\n';
    return code;
}

std::vector<FigurePanel> figure_panels() {
    const std::vector<std::array<int, 3>> equal{{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}};
    const std::vector<std::array<int, 3>> mixed{{0, 1, 2}, {1, 2, 3}, {2, 3, 4}};
    const ScanRange q_range{0.01, 3.0, 300};
    const ScanRange g3_range{0.01, 4.0, 400};

    std::vector<FigurePanel> panels;
    auto wigner_panel = [&](const char* fig, const char* panel, double phi, std::array<int, 3> rst) {
        panels.push_back({fig, panel, phi, true, {rst}, {}, {}});
    };
    for (auto [fig, phi] : {std::pair{"fig1", 0.0}, std::pair{"fig2", kPi}}) {
        wigner_panel(fig, "a", phi, {0, 0, 0});
        wigner_panel(fig, "b", phi, {1, 2, 1});
        wigner_panel(fig, "c", phi, {2, 2, 2});
    }
    for (auto [fig, phi] : {std::pair{"fig3", 0.0}, std::pair{"fig4", kPi}}) {
        wigner_panel(fig, "a", phi, {1, 1, 0});
        wigner_panel(fig, "b", phi, {2, 2, 0});
        wigner_panel(fig, "c", phi, {1, 2, 0});
        wigner_panel(fig, "d", phi, {3, 2, 0});
    }
    for (auto [fig, phi] : {std::pair{"fig5", 0.0}, std::pair{"fig6", kPi}}) {
        wigner_panel(fig, "a", phi, {3, 4, 5});
        wigner_panel(fig, "b", phi, {5, 3, 4});
        wigner_panel(fig, "c", phi, {4, 5, 3});
    }
    for (auto [fig, phi] : {std::pair{"fig7", 0.0}, std::pair{"fig8", kPi}}) {
        panels.push_back({fig, "a", phi, false, equal, {1, 2, 3}, q_range});
        panels.push_back({fig, "b", phi, false, mixed, {1}, q_range});
        panels.push_back({fig, "c", phi, false, mixed, {2}, q_range});
        panels.push_back({fig, "d", phi, false, mixed, {3}, q_range});
    }
    for (auto [fig, phi] : {std::pair{"fig9", 0.0}, std::pair{"fig10", kPi}}) {
        panels.push_back({fig, "a", phi, false, equal, {1}, g3_range});
        panels.push_back({fig, "b", phi, false, mixed, {1}, g3_range});
    }
    return panels;
}

int cmd_figures(const RunConfig& config, std::ostream& out, std::ostream& err) {
    std::vector<FigurePanel> panels = figure_panels();
    if (!config.only.empty()) {
        std::erase_if(panels, [&](const FigurePanel& p) { return p.figure != config.only; });
        if (panels.empty()) {
            err << "error: unknown figure '" << config.only << "' (expected fig1 ... fig10)\n";
            return kExitError;
        }
    }
    const fs::path dir = config.output.empty() ? fs::path("figures") : fs::path(config.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        err << "error: cannot create directory '" << dir.string() << "'\n";
        return kExitError;
    }

    GridSpec grid = config.grid;
    grid.threads = config.threads;
    int failed = 0;
    for (const auto& panel : panels) {
        const fs::path path = dir / panel.file_name();
        try {
            std::ostringstream text;
            if (panel.wigner) {
                write_grid_csv(text, figure_grid(panel, grid));
            } else {
                write_scan_csv(text, compute_scan(panel.tuples, panel.phi, panel.range, panel.modes));
            }
            emit(path.string(), text.str(), out);
            out << "wrote " << path.string() << '\n';
        } catch (const std::exception& e) {
            ++failed;
            err << "error: " << panel.file_name() << ": " << e.what() << '\n';
        }
    }
    out << panels.size() - failed << " of " << panels.size() << " panels written\n";
    return failed ? kExitError : kExitOk;
}

namespace {

// Raw flag text collected by CLI11, converted after parsing.
struct RawFlags {
    int r = 0, s = 0, t = 0;
    std::string phi = "0";
    std::string alpha = "0.3";
    std::string grid;
    std::string axis = "eta";
    std::string pinned;
    std::string out;
    std::string format = "csv";
    std::optional<unsigned> threads;
    std::string only;
    std::string config;
    std::string tuples;
    std::string alpha_sq;
    // validate
    int rst_max = 2;
    std::string alpha_sq_list;
    std::string phi_list;
    std::string quantities;
};

void add_state_flags(CLI::App& cmd, RawFlags& f) {
    cmd.add_option("--r", f.r, "photons added to mode 1")->capture_default_str();
    cmd.add_option("--s", f.s, "photons added to mode 2")->capture_default_str();
    cmd.add_option("--t", f.t, "photons added to mode 3")->capture_default_str();
    cmd.add_option("--phi", f.phi, "relative phase: 0, pi or radians")->capture_default_str();
    cmd.add_option("--alpha", f.alpha, "coherent amplitude RE[,IM]")->capture_default_str();
}

void add_common_flags(CLI::App& cmd, RawFlags& f, const std::string& out_help) {
    cmd.add_option("--config", f.config, "flat key = value file; command-line flags override it");
    cmd.add_option("--out", f.out, out_help);
    cmd.add_option("--threads", f.threads, "worker threads (fallback: PAGHZ_THREADS, then hardware)");
}

Axis parse_axis(const std::string& text) {
    if (text == "eta" || text == "1") return Axis::mode1;
    if (text == "gamma" || text == "2") return Axis::mode2;
    if (text == "delta" || text == "3") return Axis::mode3;
    throw std::invalid_argument("axis must be eta, gamma or delta");
}

RunConfig build_config(const std::string& command, const RawFlags& f) {
    RunConfig c;
    c.command = command;
    c.params.r = f.r;
    c.params.s = f.s;
    c.params.t = f.t;
    c.params.phi = parse_phi(f.phi);
    c.params.alpha = parse_alpha(f.alpha);
    if (!f.grid.empty()) {
        parse_grid(f.grid, c.grid);
    }
    c.grid.axis = parse_axis(f.axis);
    if (!f.pinned.empty()) {
        c.grid.pinned = parse_pinned(f.pinned);
    }
    c.output = f.out;
    if (f.format == "csv") {
        c.format = Format::csv;
    } else if (f.format == "json") {
        c.format = Format::json;
    } else {
        throw std::invalid_argument("format must be csv or json");
    }
    c.threads = resolve_threads(f.threads);
    c.only = f.only;
    if (!f.tuples.empty()) {
        c.tuples = parse_tuples(f.tuples);
    }
    if (!f.alpha_sq.empty()) {
        c.alpha_sq = parse_range(f.alpha_sq);
    }
    c.lattice.rst_max = f.rst_max;
    if (!f.alpha_sq_list.empty()) {
        c.lattice.alpha_sq = parse_list(f.alpha_sq_list, false);
    }
    if (!f.phi_list.empty()) {
        c.lattice.phi = parse_list(f.phi_list, true);
    }
    if (!f.quantities.empty()) {
        std::set<std::string> groups;
        std::stringstream ss(f.quantities);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (!kAllQuantityGroups.contains(item)) {
                throw std::invalid_argument("unknown quantity group '" + item + "'");
            }
            groups.insert(item);
        }
        c.quantities = groups;
    }
    const bool uses_state = command == "wigner-grid" || command == "mandel-scan" || command == "g3-scan" ||
                            (command == "validate" && c.single);
    if (uses_state) {
        c.params.validate();
    }
    if (command == "wigner-grid") {
        c.grid.validate();
    }
    if (command == "validate" && (c.lattice.rst_max < 0 || c.lattice.rst_max > kMaxExcitation)) {
        throw std::invalid_argument("rst-max must be in [0, 16]");
    }
    if (command == "validate" && c.points < 0) {
        throw std::invalid_argument("points must be non-negative");
    }
    return c;
}

// argv with the config file's tokens spliced in right after the subcommand, so
// that anything given on the command line comes later and wins.
std::vector<std::string> expand_config(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string config;
    std::size_t sub = 0;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (sub == 0 && !args[i].empty() && args[i][0] != '-') {
            sub = i;
        }
        if (args[i] == "--config" && i + 1 < args.size()) {
            config = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            config = args[i].substr(9);
        }
    }
    if (config.empty() || sub == 0) {
        return args;
    }
    const auto tokens = config_tokens(config);
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(sub) + 1, tokens.begin(), tokens.end());
    return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Photon-added three-mode GHZ coherent states: Wigner grids, photon statistics, oracle checks"};
    app.name("paghz");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    RawFlags f;
    RunConfig probe;

    auto* wg = app.add_subcommand("wigner-grid", "Wigner function on a 2-D slice of one mode's phase space");
    add_state_flags(*wg, f);
    wg->add_option("--grid", f.grid, "X0:X1:NX,Y0:Y1:NY (default -3:3:121,-3:3:121)");
    wg->add_option("--axis", f.axis, "varying mode: eta, gamma or delta")->capture_default_str();
    wg->add_option("--pinned", f.pinned, "values of the two fixed modes G,D (default 1,1)");
    wg->add_option("--format", f.format, "csv or json")->capture_default_str();
    add_common_flags(*wg, f, "output file (default: standard output)");

    auto* ms = app.add_subcommand("mandel-scan", "Mandel Q of each mode over a range of |alpha|^2");
    auto* gs = app.add_subcommand("g3-scan", "three-mode g3 over a range of |alpha|^2");
    for (auto* cmd : {ms, gs}) {
        add_state_flags(*cmd, f);
        cmd->add_option("--tuples", f.tuples, "excitation tuples r,s,t;r,s,t (default: --r --s --t)");
        cmd->add_option("--alpha-sq", f.alpha_sq,
                        cmd == ms ? "FIRST:LAST:COUNT (default 0.01:3:300)" : "FIRST:LAST:COUNT (default 0.01:4:400)");
        cmd->add_option("--format", f.format, "csv or json")->capture_default_str();
        add_common_flags(*cmd, f, "output file (default: standard output)");
    }

    auto* va = app.add_subcommand("validate", "compare every closed form against the Fock-space oracle");
    add_state_flags(*va, f);
    va->add_flag("--single", probe.single, "validate only the state given by --r --s --t --phi --alpha");
    va->add_option("--rst-max", f.rst_max, "lattice: r, s, t each in 0..N")->capture_default_str();
    va->add_option("--alpha-sq-list", f.alpha_sq_list, "lattice |alpha|^2 values (default 0.25,1)");
    va->add_option("--phi-list", f.phi_list, "lattice phases (default 0,pi)");
    va->add_option("--points", probe.points, "Wigner comparison points per state")->capture_default_str();
    va->add_option("--seed", probe.seed, "seed for the Wigner points")->capture_default_str();
    va->add_option("--cutoff", probe.cutoff, "starting Fock cutoff, 0 for automatic")->capture_default_str();
    va->add_option("--quantities", f.quantities, "comma list from norm,mean,second,Q,triple,g3,wigner");
    va->add_option("--rel-tol", probe.tolerances.rel, "relative tolerance")->capture_default_str();
    va->add_option("--abs-floor", probe.tolerances.abs_floor, "absolute floor")->capture_default_str();
    va->add_option("--wigner-tol", probe.tolerances.wigner_abs, "absolute Wigner tolerance")->capture_default_str();
    add_common_flags(*va, f, "JSON-lines report file (default: standard output)");

    auto* fg = app.add_subcommand("figures", "regenerate the data behind every figure panel as figN_panelX.csv");
    fg->add_option("--only", f.only, "restrict to one figure, e.g. fig3");
    fg->add_option("--grid", f.grid, "Wigner grid X0:X1:NX,Y0:Y1:NY (default -3:3:121,-3:3:121)");
    add_common_flags(*fg, f, "output directory (default: figures)");

    for (auto* cmd : app.get_subcommands({})) {
        cmd->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        for (auto* opt : cmd->get_options()) {
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        }
    }

    RunConfig config;
    try {
        const auto args = expand_config(argc, argv);
        std::vector<const char*> raw;
        raw.reserve(args.size());
        for (const auto& a : args) {
            raw.push_back(a.c_str());
        }
        app.parse(static_cast<int>(raw.size()), raw.data());
        const std::string command = app.get_subcommands().front()->get_name();
        config = build_config(command, f);
        config.single = probe.single;
        config.points = probe.points;
        config.seed = probe.seed;
        config.cutoff = probe.cutoff;
        config.tolerances = probe.tolerances;
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    if (config.command == "wigner-grid") return cmd_wigner_grid(config, out, err);
    if (config.command == "mandel-scan") return cmd_mandel_scan(config, out, err);
    if (config.command == "g3-scan") return cmd_g3_scan(config, out, err);
    if (config.command == "validate") return cmd_validate(config, out, err);
    return cmd_figures(config, out, err);
}

}  // namespace paghz::cli
