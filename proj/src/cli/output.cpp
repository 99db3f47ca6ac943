#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "paghz/cli.hpp"
#include "paghz/error.hpp"
#include "paghz/stats.hpp"

namespace paghz::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* axis_name(Axis a) {
    switch (a) {
        case Axis::mode1: return "eta";
        case Axis::mode2: return "gamma";
        case Axis::mode3: return "delta";
    }
    return "eta";
}

std::string complex_text(std::complex<double> z) {
    return format_number(z.real()) + (std::signbit(z.imag()) ? "-" : "+") +
           format_number(std::abs(z.imag())) + "i";
}

std::string optional_text(const std::optional<double>& v) {
    return v ? format_number(*v) : std::string{};
}

ordered_json optional_json(const std::optional<double>& v) {
    return v && std::isfinite(*v) ? ordered_json(*v) : ordered_json(nullptr);
}

ordered_json params_json(const StateParams& p) {
    return ordered_json{{"r", p.r},
                        {"s", p.s},
                        {"t", p.t},
                        {"phi", p.phi},
                        {"re_alpha", p.alpha.real()},
                        {"im_alpha", p.alpha.imag()}};
}

// Evaluates one quantity, recording the error kind instead of propagating it.
template <class F>
std::optional<double> guarded(F&& f, std::vector<std::string>& status) {
    try {
        const double v = f();
        if (!std::isfinite(v)) {
            status.emplace_back("NonFinite");
            return std::nullopt;
        }
        return v;
    } catch (const Error& e) {
        const std::string kind = e.kind();
        if (std::find(status.begin(), status.end(), kind) == status.end()) {
            status.push_back(kind);
        }
        return std::nullopt;
    }
}

}  // namespace

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        return {};
    }
    if (v == 0.0) {
        v = 0.0;  // drop the sign of negative zero
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_grid_csv(std::ostream& out, const WignerGrid& grid) {
    const auto& p = grid.params;
    const auto& s = grid.spec;
    out << "# params: r=" << p.r << ",s=" << p.s << ",t=" << p.t << ",phi=" << format_number(p.phi)
        << ",alpha=" << complex_text(p.alpha) << ",axis=" << axis_name(s.axis)
        << ",pinned=" << complex_text(s.pinned[0]) << ";" << complex_text(s.pinned[1]) << "\n";
    out << "x,y,w\n";
    for (int i = 0; i < s.nx; ++i) {
        const std::string x = format_number(s.x(i));
        for (int j = 0; j < s.ny; ++j) {
            out << x << ',' << format_number(s.y(j)) << ',' << format_number(grid.at(i, j)) << '\n';
        }
    }
}

void write_grid_json(std::ostream& out, const WignerGrid& grid) {
    const auto& s = grid.spec;
    ordered_json doc;
    doc["params"] = params_json(grid.params);
    doc["axis"] = axis_name(s.axis);
    doc["pinned"] = {{s.pinned[0].real(), s.pinned[0].imag()}, {s.pinned[1].real(), s.pinned[1].imag()}};
    ordered_json xs = ordered_json::array();
    ordered_json ys = ordered_json::array();
    for (int i = 0; i < s.nx; ++i) {
        xs.push_back(s.x(i));
    }
    for (int j = 0; j < s.ny; ++j) {
        ys.push_back(s.y(j));
    }
    doc["x"] = std::move(xs);
    doc["y"] = std::move(ys);
    ordered_json rows = ordered_json::array();
    for (int i = 0; i < s.nx; ++i) {
        ordered_json row = ordered_json::array();
        for (int j = 0; j < s.ny; ++j) {
            row.push_back(grid.at(i, j));
        }
        rows.push_back(std::move(row));
    }
    doc["w"] = std::move(rows);
    out << doc.dump() << '\n';
}

std::vector<GridRow> read_grid_csv(std::istream& in) {
    std::vector<GridRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == "x,y,w") {
            continue;
        }
        GridRow row{};
        double* fields[3] = {&row.x, &row.y, &row.w};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int k = 0; k < 3; ++k) {
            auto [next, ec] = std::from_chars(p, end, *fields[k]);
            if (ec != std::errc() || (k < 2 && (next == end || *next != ','))) {
                throw std::runtime_error("malformed grid row: " + line);
            }
            p = next + (k < 2 ? 1 : 0);
        }
        if (p != end) {
            throw std::runtime_error("malformed grid row: " + line);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ScanRow> compute_scan(const std::vector<std::array<int, 3>>& tuples, double phi,
                                  const ScanRange& range, const std::vector<int>& modes) {
    std::vector<ScanRow> rows;
    rows.reserve(tuples.size() * static_cast<std::size_t>(range.count) * modes.size());
    for (const auto& rst : tuples) {
        for (int k = 0; k < range.count; ++k) {
            const double a2 = range.at(k);
            StateParams p{std::complex<double>(std::sqrt(a2), 0.0), phi, rst[0], rst[1], rst[2]};
            p.validate();
            // Mode-independent quantities are computed once per state.
            std::vector<std::string> shared;
            const auto triple = guarded([&] { return triple_moment(p, Variant::corrected); }, shared);
            const auto triple_paper = guarded([&] { return triple_moment(p, Variant::paper); }, shared);
            const auto g3c = guarded([&] { return g3(p, Variant::corrected); }, shared);
            const auto g3p = guarded([&] { return g3(p, Variant::paper); }, shared);
            for (int m : modes) {
                const Mode mode = static_cast<Mode>(m);
                ScanRow row;
                row.alpha_sq = a2;
                row.phi = phi;
                row.rst = rst;
                row.mode = m;
                std::vector<std::string> status = shared;
                row.mean_n = guarded([&] { return mean_photon(p, mode); }, status);
                row.second = guarded([&] { return second_moment(p, mode); }, status);
                row.q_paper = guarded([&] { return mandel_q_ratio_form(p, mode); }, status);
                row.q = guarded([&] { return mandel_q(p, mode); }, status);
                row.triple = triple;
                row.triple_paper = triple_paper;
                row.g3 = g3c;
                row.g3_paper = g3p;
                if (status.empty()) {
                    row.status = "ok";
                } else {
                    for (std::size_t i = 0; i < status.size(); ++i) {
                        row.status += (i ? "|" : "") + status[i];
                    }
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanRow>& rows) {
    out << "alpha_sq,phi,r,s,t,mode,mean_n,second,Q_paper,Q,triple,triple_paper,g3,g3_paper,status\n";
    for (const auto& r : rows) {
        out << format_number(r.alpha_sq) << ',' << format_number(r.phi) << ',' << r.rst[0] << ',' << r.rst[1]
            << ',' << r.rst[2] << ',' << r.mode << ',' << optional_text(r.mean_n) << ','
            << optional_text(r.second) << ',' << optional_text(r.q_paper) << ',' << optional_text(r.q) << ','
            << optional_text(r.triple) << ',' << optional_text(r.triple_paper) << ',' << optional_text(r.g3)
            << ',' << optional_text(r.g3_paper) << ',' << r.status << '\n';
    }
}

void write_scan_json(std::ostream& out, const std::vector<ScanRow>& rows) {
    ordered_json doc = ordered_json::array();
    for (const auto& r : rows) {
        doc.push_back(ordered_json{{"alpha_sq", r.alpha_sq},
                                   {"phi", r.phi},
                                   {"r", r.rst[0]},
                                   {"s", r.rst[1]},
                                   {"t", r.rst[2]},
                                   {"mode", r.mode},
                                   {"mean_n", optional_json(r.mean_n)},
                                   {"second", optional_json(r.second)},
                                   {"Q_paper", optional_json(r.q_paper)},
                                   {"Q", optional_json(r.q)},
                                   {"triple", optional_json(r.triple)},
                                   {"triple_paper", optional_json(r.triple_paper)},
                                   {"g3", optional_json(r.g3)},
                                   {"g3_paper", optional_json(r.g3_paper)},
                                   {"status", r.status}});
    }
    out << doc.dump(1) << '\n';
}

}  // namespace paghz::cli
