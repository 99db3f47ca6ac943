#include "paghz/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "json.hpp"
#include "paghz/error.hpp"
#include "paghz/parallel.hpp"
#include "paghz/special_fn.hpp"

namespace paghz {

MomentSet oracle_moments(const FockTensor& tensor) {
    const int d = tensor.cutoff();
    const auto c = tensor.coeffs();
    MomentSet out;
    out.variant = Variant::corrected;
    double triple = 0.0;
    std::size_t idx = 0;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            double row_n3 = 0.0;
            for (int k = 0; k < d; ++k, ++idx) {
                const double w = std::norm(c[idx]);
                if (w == 0.0) {
                    continue;
                }
                out.mean_n[0] += a * w;
                out.mean_n[1] += b * w;
                out.mean_n[2] += k * w;
                out.second[0] += double(a) * (a - 1) * w;
                out.second[1] += double(b) * (b - 1) * w;
                out.second[2] += double(k) * (k - 1) * w;
                row_n3 += k * w;
            }
            triple += double(a) * b * row_n3;
        }
    }
    out.triple = triple;
    bool all_defined = true;
    for (std::size_t i = 0; i < 3; ++i) {
        if (out.mean_n[i] > kMeanPhotonThreshold) {
            out.mandel_q[i] = out.second[i] / out.mean_n[i] - out.mean_n[i];
        } else {
            all_defined = false;
        }
    }
    if (all_defined) {
        out.g3 = triple / (out.mean_n[0] * out.mean_n[1] * out.mean_n[2]);
    }
    return out;
}

std::complex<double> wigner_kernel(int m, int n, std::complex<double> beta) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("wigner_kernel: photon numbers must be non-negative");
    }
    if (m < n) {
        return std::conj(wigner_kernel(n, m, beta));
    }
    const int k = m - n;
    const double b2 = std::norm(beta);
    const double sign = (n % 2 == 0) ? 2.0 / kPi : -2.0 / kPi;
    const double lag = laguerre(n, k, 4.0 * b2);
    if (k == 0) {
        return sign * std::exp(-2.0 * b2) * lag;
    }
    if (b2 == 0.0) {
        return 0.0;
    }
    const double log_mag = 0.5 * (log_factorial(n) - log_factorial(m)) + k * std::log(2.0 * std::sqrt(b2)) - 2.0 * b2;
    return sign * lag * std::polar(std::exp(log_mag), -k * std::arg(beta));
}

std::vector<std::complex<double>> kernel_matrix(int cutoff, std::complex<double> beta) {
    const auto d = static_cast<std::size_t>(cutoff);
    std::vector<std::complex<double>> k(d * d);
    for (int m = 0; m < cutoff; ++m) {
        for (int n = m; n < cutoff; ++n) {
            const auto v = wigner_kernel(n, m, beta);
            k[static_cast<std::size_t>(n) * d + static_cast<std::size_t>(m)] = v;
            k[static_cast<std::size_t>(m) * d + static_cast<std::size_t>(n)] = std::conj(v);
        }
    }
    return k;
}

namespace {

// acc += k * v without the NaN/Inf recovery path of the library complex product.
inline void mac(std::complex<double>& acc, const std::complex<double>& k, const std::complex<double>& v) {
    acc = {acc.real() + k.real() * v.real() - k.imag() * v.imag(),
           acc.imag() + k.real() * v.imag() + k.imag() * v.real()};
}

// Per-mode index window [lo, hi) outside which the state carries no weight:
// rows below the added-photon count are exactly zero, and rows whose marginal
// is under 1e-32 of the total cannot move a double-precision sum.
std::array<std::pair<std::size_t, std::size_t>, 3> support(const FockTensor& tensor) {
    const auto d = static_cast<std::size_t>(tensor.cutoff());
    const auto c = tensor.coeffs();
    std::array<std::vector<double>, 3> marginal{std::vector<double>(d), std::vector<double>(d),
                                                std::vector<double>(d)};
    double total = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t k = 0; k < d; ++k) {
                const double w = std::norm(c[(a * d + b) * d + k]);
                marginal[0][a] += w;
                marginal[1][b] += w;
                marginal[2][k] += w;
                total += w;
            }
        }
    }
    std::array<std::pair<std::size_t, std::size_t>, 3> win{};
    for (std::size_t i = 0; i < 3; ++i) {
        std::size_t lo = 0;
        while (lo < d && marginal[i][lo] == 0.0) {
            ++lo;
        }
        std::size_t hi = d;
        while (hi > lo + 1 && marginal[i][hi - 1] < 1e-32 * total) {
            --hi;
        }
        win[i] = {std::min(lo, hi - 1), hi};
    }
    return win;
}

}  // namespace

double oracle_wigner(const FockTensor& tensor, const PhasePoint& point) {
    const auto d = static_cast<std::size_t>(tensor.cutoff());
    const auto c = tensor.coeffs();
    const auto win = support(tensor);
    const auto [l1, h1] = win[0];
    const auto [l2, h2] = win[1];
    const auto [l3, h3] = win[2];
    const std::size_t e1 = h1 - l1, e2 = h2 - l2, e3 = h3 - l3;
    const auto k1 = kernel_matrix(static_cast<int>(h1), point.eta);
    const auto k2 = kernel_matrix(static_cast<int>(h2), point.gamma);
    const auto k3 = kernel_matrix(static_cast<int>(h3), point.delta);
    auto coef = [&](std::size_t a, std::size_t b, std::size_t k) { return c.data() + (a * d + b) * d + k; };

    // x[a'][b][c] = sum_a K1[a][a'] c[a][b][c], all indices relative to the window.
    std::vector<std::complex<double>> x(e1 * e2 * e3);
    for (std::size_t ap = 0; ap < e1; ++ap) {
        for (std::size_t a = 0; a < e1; ++a) {
            const auto kv = k1[(a + l1) * h1 + ap + l1];
            for (std::size_t b = 0; b < e2; ++b) {
                auto* xo = x.data() + (ap * e2 + b) * e3;
                const auto* ci = coef(a + l1, b + l2, l3);
                for (std::size_t cc = 0; cc < e3; ++cc) {
                    mac(xo[cc], kv, ci[cc]);
                }
            }
        }
    }
    // y[a'][b'][c] = sum_b K2[b][b'] x[a'][b][c]
    std::vector<std::complex<double>> y(e1 * e2 * e3);
    for (std::size_t ap = 0; ap < e1; ++ap) {
        for (std::size_t bp = 0; bp < e2; ++bp) {
            auto* yo = y.data() + (ap * e2 + bp) * e3;
            for (std::size_t b = 0; b < e2; ++b) {
                const auto kv = k2[(b + l2) * h2 + bp + l2];
                const auto* xi = x.data() + (ap * e2 + b) * e3;
                for (std::size_t cc = 0; cc < e3; ++cc) {
                    mac(yo[cc], kv, xi[cc]);
                }
            }
        }
    }
    // W = sum conj(c[a'][b'][c']) sum_c K3[c][c'] y[a'][b'][c]
    std::vector<std::complex<double>> k3t(e3 * e3);
    for (std::size_t i = 0; i < e3; ++i) {
        for (std::size_t j = 0; j < e3; ++j) {
            k3t[j * e3 + i] = k3[(i + l3) * h3 + j + l3];
        }
    }
    std::complex<double> w = 0.0;
    for (std::size_t ap = 0; ap < e1; ++ap) {
        for (std::size_t bp = 0; bp < e2; ++bp) {
            const auto* yi = y.data() + (ap * e2 + bp) * e3;
            const auto* cb = coef(ap + l1, bp + l2, l3);
            for (std::size_t cp = 0; cp < e3; ++cp) {
                if (cb[cp] == 0.0) {
                    continue;
                }
                const auto* kr = k3t.data() + cp * e3;
                std::complex<double> z = 0.0;
                for (std::size_t cc = 0; cc < e3; ++cc) {
                    mac(z, kr[cc], yi[cc]);
                }
                mac(w, std::conj(cb[cp]), z);
            }
        }
    }
    if (std::abs(w.imag()) > 1e-9 * (1.0 + std::abs(w.real()))) {
        std::ostringstream os;
        os << "oracle_wigner: imaginary residue " << w.imag();
        throw NonRealResult(os.str());
    }
    return w.real();
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::agree:
            return "agree";
        case Verdict::paper_typo_suspected:
            return "paper_typo_suspected";
        case Verdict::fail:
            return "fail";
    }
    return "fail";
}

std::vector<PhasePoint> sample_points(const StateParams& params, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const double half = 1.5 + std::abs(params.alpha);
    std::uniform_real_distribution<double> u(-half, half);
    std::vector<PhasePoint> pts(static_cast<std::size_t>(std::max(count, 0)));
    for (auto& p : pts) {
        const double e1 = u(rng), e2 = u(rng), g1 = u(rng), g2 = u(rng), d1 = u(rng), d2 = u(rng);
        p = {{e1, e2}, {g1, g2}, {d1, d2}};
    }
    return pts;
}

namespace {

struct Outcome {
    std::optional<double> value;
    std::string marker;
};

Outcome attempt(const std::function<double()>& fn) {
    try {
        return {fn(), {}};
    } catch (const Error& e) {
        return {std::nullopt, e.kind()};
    }
}

DiscrepancyReport compare(std::string quantity, const StateParams& params, bool paper_variant,
                          const Outcome& analytic, const Outcome& oracle, double rel_tol, double abs_tol) {
    DiscrepancyReport rep;
    rep.quantity = std::move(quantity);
    rep.params = params;
    rep.paper_variant = paper_variant;
    rep.analytic = analytic.value;
    rep.oracle = oracle.value;
    bool ok = false;
    if (analytic.value && oracle.value) {
        const double diff = std::abs(*analytic.value - *oracle.value);
        rep.abs_err = diff;
        const double scale = std::abs(*oracle.value);
        if (scale > 0.0) {
            rep.rel_err = diff / scale;
        }
        ok = diff <= abs_tol || (rep.rel_err && *rep.rel_err <= rel_tol);
    } else if (!analytic.value && !oracle.value) {
        ok = analytic.marker == oracle.marker;
        rep.marker = ok ? analytic.marker : analytic.marker + "/" + oracle.marker;
    } else {
        rep.marker = analytic.value ? oracle.marker : analytic.marker;
    }
    if (ok) {
        rep.verdict = Verdict::agree;
    } else {
        rep.verdict = paper_variant ? Verdict::paper_typo_suspected : Verdict::fail;
    }
    return rep;
}

}  // namespace

std::vector<DiscrepancyReport> validate(const StateParams& params, const Tolerances& tol,
                                        int point_sample_count, const ValidateOptions& options) {
    params.validate();
    std::optional<FockTensor> tensor;
    std::string tensor_marker;
    try {
        tensor = fock_synthesize(params, options.cutoff > 0 ? options.cutoff : min_cutoff(params));
    } catch (const Error& e) {
        tensor_marker = e.kind();
    }
    std::optional<MomentSet> om;
    if (tensor) {
        om = oracle_moments(*tensor);
    }
    auto from_oracle = [&](const std::function<std::optional<double>(const MomentSet&)>& pick,
                           const char* undefined_kind) -> Outcome {
        if (!om) {
            return {std::nullopt, tensor_marker};
        }
        auto v = pick(*om);
        if (!v) {
            return {std::nullopt, undefined_kind};
        }
        return {v, {}};
    };

    std::vector<DiscrepancyReport> out;
    auto push = [&](DiscrepancyReport rep) {
        rep.seed = options.seed;
        rep.cutoff = tensor ? tensor->cutoff() : 0;
        out.push_back(std::move(rep));
    };
    auto wants = [&](const char* group) { return options.groups.count(group) > 0; };
    const std::array<Mode, 3> modes{Mode::one, Mode::two, Mode::three};

    if (wants("norm")) {
        Outcome oracle_norm = tensor ? Outcome{tensor->raw_norm_sq(), {}} : Outcome{std::nullopt, tensor_marker};
        push(compare("norm", params, false, attempt([&] { return pa_norm(params); }), oracle_norm, tol.rel,
                     tol.abs_floor));
    }
    for (std::size_t i = 0; i < 3; ++i) {
        const std::string suffix = "[" + std::to_string(i + 1) + "]";
        const Mode mode = modes[i];
        if (wants("mean")) {
            push(compare("mean_n" + suffix, params, false, attempt([&] { return mean_photon(params, mode); }),
                         from_oracle([i](const MomentSet& m) { return std::optional<double>(m.mean_n[i]); }, ""),
                         tol.rel, tol.abs_floor));
        }
        if (wants("second")) {
            push(compare("second" + suffix, params, false, attempt([&] { return second_moment(params, mode); }),
                         from_oracle([i](const MomentSet& m) { return std::optional<double>(m.second[i]); }, ""),
                         tol.rel, tol.abs_floor));
        }
        if (wants("Q")) {
            auto oq = from_oracle([i](const MomentSet& m) { return m.mandel_q[i]; }, "UndefinedQ");
            push(compare("mandel_q" + suffix, params, false, attempt([&] { return mandel_q(params, mode); }), oq,
                         tol.rel, tol.abs_floor));
            push(compare("mandel_q_paper" + suffix, params, true,
                         attempt([&] { return mandel_q_ratio_form(params, mode); }), oq, tol.rel, tol.abs_floor));
        }
    }
    if (wants("triple")) {
        auto ot = from_oracle([](const MomentSet& m) { return std::optional<double>(m.triple); }, "");
        push(compare("triple", params, false, attempt([&] { return triple_moment(params, Variant::corrected); }), ot,
                     tol.rel, tol.abs_floor));
        push(compare("triple_paper", params, true, attempt([&] { return triple_moment(params, Variant::paper); }),
                     ot, tol.rel, tol.abs_floor));
    }
    if (wants("g3")) {
        auto og = from_oracle([](const MomentSet& m) { return m.g3; }, "UndefinedG3");
        push(compare("g3", params, false, attempt([&] { return g3(params, Variant::corrected); }), og, tol.rel,
                     tol.abs_floor));
        push(compare("g3_paper", params, true, attempt([&] { return g3(params, Variant::paper); }), og, tol.rel,
                     tol.abs_floor));
    }
    if (wants("wigner") && point_sample_count > 0) {
        const auto pts = sample_points(params, point_sample_count, options.seed);
        std::vector<Outcome> analytic(pts.size());
        std::vector<Outcome> oracle(pts.size());
        parallel_for(pts.size(), options.threads, [&](std::size_t i) {
            analytic[i] = attempt([&] { return wigner(params, pts[i]); });
            oracle[i] = tensor ? attempt([&] { return oracle_wigner(*tensor, pts[i]); })
                               : Outcome{std::nullopt, tensor_marker};
        });
        for (std::size_t i = 0; i < pts.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof(name), "wigner[%04zu]", i);
            push(compare(name, params, false, analytic[i], oracle[i], 0.0, tol.wigner_abs));
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const DiscrepancyReport& a, const DiscrepancyReport& b) { return a.quantity < b.quantity; });
    return out;
}

int summary_exit_code(std::span<const DiscrepancyReport> reports) {
    bool typo = false;
    for (const auto& r : reports) {
        if (r.verdict == Verdict::fail) {
            return 1;
        }
        typo = typo || r.verdict == Verdict::paper_typo_suspected;
    }
    return typo ? 2 : 0;
}

std::string to_json_line(const DiscrepancyReport& r) {
    nlohmann::ordered_json j;
    auto opt = [](const std::optional<double>& v) { return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr); };
    j["quantity"] = r.quantity;
    j["params"] = {{"r", r.params.r},
                   {"s", r.params.s},
                   {"t", r.params.t},
                   {"phi", r.params.phi},
                   {"re_alpha", r.params.alpha.real()},
                   {"im_alpha", r.params.alpha.imag()}};
    j["analytic"] = opt(r.analytic);
    j["oracle"] = opt(r.oracle);
    j["abs_err"] = opt(r.abs_err);
    j["rel_err"] = opt(r.rel_err);
    j["verdict"] = std::string(to_string(r.verdict));
    j["variant"] = r.paper_variant ? "paper" : "corrected";
    j["marker"] = r.marker.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(r.marker);
    j["seed"] = r.seed;
    j["cutoff"] = r.cutoff;
    return j.dump();
}

}  // namespace paghz
