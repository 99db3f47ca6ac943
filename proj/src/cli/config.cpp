#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "paghz/cli.hpp"

namespace paghz::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) {
        parts.push_back(trim(cur));
    }
    if (!s.empty() && s.back() == sep) {
        parts.emplace_back();
    }
    return parts;
}

double to_double(const std::string& text) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* first = t.data();
    if (!t.empty() && t.front() == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number: '" + text + "'");
    }
    return v;
}

int to_int(const std::string& text) {
    const std::string t = trim(text);
    int v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument("not an integer: '" + text + "'");
    }
    return v;
}

double to_angle(const std::string& text) {
    const std::string t = trim(text);
    if (t == "pi") {
        return kPi;
    }
    if (t == "-pi") {
        return -kPi;
    }
    return to_double(t);
}

}  // namespace

double ScanRange::at(int i) const {
    if (count == 1) {
        return first;
    }
    return i == count - 1 ? last : first + (last - first) * i / (count - 1);
}

double parse_phi(const std::string& text) {
    double v = std::fmod(to_angle(text), kTwoPi);
    if (v < 0.0) {
        v += kTwoPi;
    }
    if (v >= kTwoPi) {
        v = 0.0;
    }
    return v;
}

std::complex<double> parse_alpha(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) {
        return {to_double(parts[0]), 0.0};
    }
    if (parts.size() == 2) {
        return {to_double(parts[0]), to_double(parts[1])};
    }
    throw std::invalid_argument("alpha must be RE or RE,IM");
}

std::complex<double> parse_complex(const std::string& text) {
    std::string t = trim(text);
    if (t.empty()) {
        throw std::invalid_argument("empty complex value");
    }
    if (t.back() != 'i' && t.back() != 'j') {
        return {to_double(t), 0.0};
    }
    t.pop_back();
    std::size_t split_at = std::string::npos;
    for (std::size_t k = t.size(); k-- > 1;) {
        if ((t[k] == '+' || t[k] == '-') && t[k - 1] != 'e' && t[k - 1] != 'E') {
            split_at = k;
            break;
        }
    }
    auto imag_part = [](const std::string& s) {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return to_double(s);
    };
    if (split_at == std::string::npos) {
        return {0.0, imag_part(t)};
    }
    return {to_double(t.substr(0, split_at)), imag_part(t.substr(split_at))};
}

std::array<std::complex<double>, 2> parse_pinned(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) {
        throw std::invalid_argument("pinned must be G,D");
    }
    return {parse_complex(parts[0]), parse_complex(parts[1])};
}

void parse_grid(const std::string& text, GridSpec& grid) {
    const auto axes = split(text, ',');
    if (axes.size() != 2) {
        throw std::invalid_argument("grid must be X0:X1:NX,Y0:Y1:NY");
    }
    const auto xs = split(axes[0], ':');
    const auto ys = split(axes[1], ':');
    if (xs.size() != 3 || ys.size() != 3) {
        throw std::invalid_argument("grid must be X0:X1:NX,Y0:Y1:NY");
    }
    grid.x_min = to_double(xs[0]);
    grid.x_max = to_double(xs[1]);
    grid.nx = to_int(xs[2]);
    grid.y_min = to_double(ys[0]);
    grid.y_max = to_double(ys[1]);
    grid.ny = to_int(ys[2]);
}

ScanRange parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw std::invalid_argument("range must be FIRST:LAST:COUNT");
    }
    ScanRange r{to_double(parts[0]), to_double(parts[1]), to_int(parts[2])};
    if (r.count < 1 || (r.count > 1 && !(r.first < r.last))) {
        throw std::invalid_argument("range must be nonempty and increasing");
    }
    return r;
}

std::vector<std::array<int, 3>> parse_tuples(const std::string& text) {
    std::vector<std::array<int, 3>> out;
    for (const auto& item : split(text, ';')) {
        if (item.empty()) {
            continue;
        }
        const auto parts = split(item, ',');
        if (parts.size() != 3) {
            throw std::invalid_argument("tuples must be r,s,t;r,s,t;...");
        }
        out.push_back({to_int(parts[0]), to_int(parts[1]), to_int(parts[2])});
    }
    if (out.empty()) {
        throw std::invalid_argument("no tuples given");
    }
    return out;
}

std::vector<double> parse_list(const std::string& text, bool allow_pi) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) {
        out.push_back(allow_pi ? parse_phi(item) : to_double(item));
    }
    if (out.empty()) {
        throw std::invalid_argument("empty list");
    }
    return out;
}

std::vector<std::string> config_tokens(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file '" + path + "'");
    }
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || key == "config") {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": invalid key");
        }
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

unsigned resolve_threads(std::optional<unsigned> flag) {
    if (flag && *flag > 0) {
        return *flag;
    }
    if (const char* env = std::getenv("PAGHZ_THREADS")) {
        try {
            const int v = to_int(env);
            if (v > 0) {
                return static_cast<unsigned>(v);
            }
        } catch (const std::invalid_argument&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace paghz::cli
