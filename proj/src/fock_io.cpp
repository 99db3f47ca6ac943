#include "paghz/fock_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "json.hpp"

namespace paghz {

static_assert(std::endian::native == std::endian::little, "binary layout assumes little-endian host");

namespace {

template <class T>
void put(std::ostream& out, T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out.write(buf, sizeof(T));
}

template <class T>
T get(std::istream& in) {
    char buf[sizeof(T)];
    if (!in.read(buf, sizeof(T))) {
        throw std::runtime_error("read_fock_binary: truncated input");
    }
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

FockTensor assemble(const StateParams& params, int cutoff, std::vector<std::complex<double>> c) {
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        throw std::runtime_error("fock tensor: cutoff out of range");
    }
    const auto d = static_cast<std::size_t>(cutoff);
    const std::size_t shell = d >= 2 ? d - 2 : 0;
    double total = 0.0;
    double edge = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t k = 0; k < d; ++k) {
                const double w = std::norm(c[(a * d + b) * d + k]);
                total += w;
                if (a >= shell || b >= shell || k >= shell) {
                    edge += w;
                }
            }
        }
    }
    return FockTensor(params, cutoff, std::move(c), total, total > 0.0 ? edge / total : 0.0);
}

}  // namespace

void write_fock_binary(std::ostream& out, const FockTensor& tensor) {
    const auto& p = tensor.params();
    put<std::int32_t>(out, tensor.cutoff());
    put<std::int32_t>(out, p.r);
    put<std::int32_t>(out, p.s);
    put<std::int32_t>(out, p.t);
    put<double>(out, p.phi);
    put<double>(out, p.alpha.real());
    put<double>(out, p.alpha.imag());
    for (const auto& v : tensor.coeffs()) {
        put<double>(out, v.real());
        put<double>(out, v.imag());
    }
}

FockTensor read_fock_binary(std::istream& in) {
    const int cutoff = get<std::int32_t>(in);
    StateParams p;
    p.r = get<std::int32_t>(in);
    p.s = get<std::int32_t>(in);
    p.t = get<std::int32_t>(in);
    p.phi = get<double>(in);
    const double re = get<double>(in);
    const double im = get<double>(in);
    p.alpha = {re, im};
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        throw std::runtime_error("read_fock_binary: cutoff out of range");
    }
    const auto n = static_cast<std::size_t>(cutoff) * cutoff * cutoff;
    std::vector<std::complex<double>> c(n);
    for (auto& v : c) {
        const double vr = get<double>(in);
        const double vi = get<double>(in);
        v = {vr, vi};
    }
    return assemble(p, cutoff, std::move(c));
}

std::string fock_to_json(const FockTensor& tensor) {
    const auto& p = tensor.params();
    nlohmann::json j;
    j["cutoff"] = tensor.cutoff();
    j["r"] = p.r;
    j["s"] = p.s;
    j["t"] = p.t;
    j["phi"] = p.phi;
    j["re_alpha"] = p.alpha.real();
    j["im_alpha"] = p.alpha.imag();
    auto& arr = j["coeffs"] = nlohmann::json::array();
    for (const auto& v : tensor.coeffs()) {
        arr.push_back(v.real());
        arr.push_back(v.imag());
    }
    return j.dump();
}

FockTensor fock_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    StateParams p;
    const int cutoff = j.at("cutoff").get<int>();
    p.r = j.at("r").get<int>();
    p.s = j.at("s").get<int>();
    p.t = j.at("t").get<int>();
    p.phi = j.at("phi").get<double>();
    p.alpha = {j.at("re_alpha").get<double>(), j.at("im_alpha").get<double>()};
    const auto& arr = j.at("coeffs");
    if (cutoff < 1 || cutoff > kMaxCutoff) {
        throw std::runtime_error("fock_from_json: cutoff out of range");
    }
    const auto n = static_cast<std::size_t>(cutoff) * cutoff * cutoff;
    if (arr.size() != 2 * n) {
        throw std::runtime_error("fock_from_json: coefficient count mismatch");
    }
    std::vector<std::complex<double>> c(n);
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = {arr[2 * i].get<double>(), arr[2 * i + 1].get<double>()};
    }
    return assemble(p, cutoff, std::move(c));
}

}  // namespace paghz
