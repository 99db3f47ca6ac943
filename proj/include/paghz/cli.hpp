#ifndef PAGHZ_CLI_HPP
#define PAGHZ_CLI_HPP

#include <array>
#include <complex>
#include <iosfwd>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paghz/oracle.hpp"
#include "paghz/state.hpp"
#include "paghz/wigner.hpp"

namespace paghz::cli {

enum class Format { csv, json };

struct ScanRange {
    double first = 0.01;
    double last = 3.0;
    int count = 300;

    double at(int i) const;
};

struct LatticeSpec {
    int rst_max = 2;
    std::vector<double> alpha_sq{0.25, 1.0};
    std::vector<double> phi{0.0, kPi};
};

struct RunConfig {
    std::string command;
    StateParams params;
    /// Excitation tuples for scans; empty means {(r, s, t)} from params.
    std::vector<std::array<int, 3>> tuples;
    GridSpec grid;
    std::optional<ScanRange> alpha_sq;
    std::string output;
    Format format = Format::csv;
    Tolerances tolerances;
    unsigned threads = 1;
    std::string only;
    // validate
    LatticeSpec lattice;
    bool single = false;
    int points = 4;
    std::uint64_t seed = ValidateOptions{}.seed;
    int cutoff = 0;
    std::set<std::string> quantities = kAllQuantityGroups;
};

// Value parsers shared by the flag handlers. All throw std::invalid_argument.
double parse_phi(const std::string& text);
std::complex<double> parse_alpha(const std::string& text);
std::complex<double> parse_complex(const std::string& text);
std::array<std::complex<double>, 2> parse_pinned(const std::string& text);
void parse_grid(const std::string& text, GridSpec& grid);
ScanRange parse_range(const std::string& text);
std::vector<std::array<int, 3>> parse_tuples(const std::string& text);
std::vector<double> parse_list(const std::string& text, bool allow_pi);

/// Reads a flat `key = value` file ('#' comments) into `--key=value` tokens.
std::vector<std::string> config_tokens(const std::string& path);

/// Thread count: explicit flag, then PAGHZ_THREADS, then hardware concurrency.
unsigned resolve_threads(std::optional<unsigned> flag);

// Writers. Numbers use 17 significant digits and LF line endings.
std::string format_number(double v);
void write_grid_csv(std::ostream& out, const WignerGrid& grid);
void write_grid_json(std::ostream& out, const WignerGrid& grid);

struct GridRow {
    double x, y, w;
};
/// Parses the x,y,w rows of a grid CSV (header lines are skipped).
std::vector<GridRow> read_grid_csv(std::istream& in);

struct ScanRow {
    double alpha_sq = 0.0;
    double phi = 0.0;
    std::array<int, 3> rst{};
    int mode = 1;
    std::optional<double> mean_n, second, q_paper, q, triple, triple_paper, g3, g3_paper;
    std::string status;
};

/// One row per (tuple, |alpha|^2, mode) in that nesting order.
std::vector<ScanRow> compute_scan(const std::vector<std::array<int, 3>>& tuples, double phi,
                                  const ScanRange& range, const std::vector<int>& modes = {1, 2, 3});
void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows);
void write_scan_json(std::ostream& out, const std::vector<ScanRow>& rows);

// Commands. Each returns the process exit code; diagnostics go to `err`.
int cmd_wigner_grid(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_mandel_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_g3_scan(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_validate(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_figures(const RunConfig& config, std::ostream& out, std::ostream& err);

struct FigurePanel {
    std::string figure;  // "fig1"
    std::string panel;   // "a"
    double phi = 0.0;
    bool wigner = true;
    std::vector<std::array<int, 3>> tuples;
    std::vector<int> modes;
    ScanRange range;

    std::string file_name() const { return figure + "_panel" + panel + ".csv"; }
};

/// Panel table for Figs. 1-10 (Wigner slices 1-6, Q scans 7-8, g3 scans 9-10).
std::vector<FigurePanel> figure_panels();

/// Full entry point: `paghz <command> [flags]`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace paghz::cli

#endif  // PAGHZ_CLI_HPP
