#include "paghz/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "paghz/error.hpp"
#include "paghz/special_fn.hpp"

namespace paghz {

void StateParams::validate() const {
    auto fail = [](const std::string& what) { throw InvalidParams(what); };
    for (int m : excitations()) {
        if (m < 0 || m > kMaxExcitation) {
            fail("excitation numbers must lie in [0, 16]");
        }
    }
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) {
        fail("alpha must be finite");
    }
    if (std::abs(alpha) > kMaxAlphaModulus) {
        fail("|alpha| must not exceed 6");
    }
    if (!std::isfinite(phi) || phi < 0.0 || phi >= kTwoPi) {
        fail("phi must lie in [0, 2pi)");
    }
}

double kappa(std::complex<double> alpha) { return std::exp(-2.0 * std::norm(alpha)); }

double ghz_norm(std::complex<double> alpha, double phi, int n_modes) {
    if (n_modes < 1) {
        throw std::invalid_argument("ghz_norm: n_modes must be >= 1");
    }
    const double bracket = 1.0 + std::pow(kappa(alpha), n_modes) * std::cos(phi);
    if (bracket <= 1e-14) {
        throw DegenerateState("GHZ coherent state has zero norm (odd state at alpha -> 0)");
    }
    return 1.0 / std::sqrt(2.0 * bracket);
}

double p_factor(std::complex<double> alpha, int m, Branch branch) {
    const double x = std::norm(alpha);
    if (branch == Branch::minus) {
        return laguerre(m, 0, -x);
    }
    return laguerre(m, 0, x) * kappa(alpha);
}

namespace {

double squared_norm(const StateParams& p, std::array<int, 3> m) {
    double same = 1.0;
    double cross = 1.0;
    double log_fact = 0.0;
    for (int mi : m) {
        if (mi < 0 || mi > kMaxLaguerreDegree) {
            throw std::invalid_argument("excitation index outside the supported Laguerre range");
        }
        same *= p_factor(p.alpha, mi, Branch::minus);
        cross *= p_factor(p.alpha, mi, Branch::plus);
        log_fact += log_factorial(mi);
    }
    const double value = 2.0 * std::exp(log_fact) * (same + cross * std::cos(p.phi));
    if (!(value > kDegenerateNormSq)) {
        throw DegenerateState("photon-added state has zero norm");
    }
    return value;
}

}  // namespace

double pa_norm(const StateParams& params) {
    params.validate();
    return squared_norm(params, params.excitations());
}

double pa_norm_shifted(const StateParams& params, std::array<int, 3> shift) {
    params.validate();
    auto m = params.excitations();
    for (std::size_t i = 0; i < 3; ++i) {
        if (shift[i] < 0) {
            throw std::invalid_argument("pa_norm_shifted: shifts must be non-negative");
        }
        m[i] += shift[i];
    }
    return squared_norm(params, m);
}

double reduced_norm(const StateParams& params, Reduction reduction) {
    params.validate();
    const double x = params.alpha_sq();
    const double k3 = std::pow(kappa(params.alpha), 3);
    const double c = std::cos(params.phi);
    auto fact = [](int n) { return std::tgamma(n + 1.0); };
    switch (reduction) {
        case Reduction::two_mode:
            if (params.t != 0) {
                throw InvalidReduction("two-mode reduction requires t = 0");
            }
            return 2.0 * fact(params.r) * fact(params.s) *
                   (laguerre(params.r, 0, -x) * laguerre(params.s, 0, -x) +
                    k3 * laguerre(params.r, 0, x) * laguerre(params.s, 0, x) * c);
        case Reduction::one_mode:
            if (params.s != 0 || params.t != 0) {
                throw InvalidReduction("one-mode reduction requires s = t = 0");
            }
            return 2.0 * fact(params.r) * (laguerre(params.r, 0, -x) + k3 * laguerre(params.r, 0, x) * c);
        case Reduction::zero_mode:
            if (params.r != 0 || params.s != 0 || params.t != 0) {
                throw InvalidReduction("zero-mode reduction requires r = s = t = 0");
            }
            return 2.0 * (1.0 + k3 * c);
    }
    throw std::logic_error("unknown reduction");
}

ReducedNorms reduced_norms(const StateParams& params) {
    ReducedNorms out;
    if (params.t == 0) {
        out.two_mode = reduced_norm(params, Reduction::two_mode);
    }
    if (params.s == 0 && params.t == 0) {
        out.one_mode = reduced_norm(params, Reduction::one_mode);
    }
    if (params.r == 0 && params.s == 0 && params.t == 0) {
        out.zero_mode = reduced_norm(params, Reduction::zero_mode);
    }
    return out;
}

FockTensor::FockTensor(StateParams params, int cutoff, std::vector<std::complex<double>> coeffs,
                       double raw_norm_sq, double tail_mass)
    : params_(params),
      cutoff_(cutoff),
      coeffs_(std::move(coeffs)),
      raw_norm_sq_(raw_norm_sq),
      tail_mass_(tail_mass) {
    const auto d = static_cast<std::size_t>(cutoff_);
    if (coeffs_.size() != d * d * d) {
        throw std::invalid_argument("FockTensor: coefficient count does not match cutoff^3");
    }
}

std::vector<std::complex<double>> added_coherent_amplitudes(std::complex<double> beta, int m,
                                                            int cutoff) {
    std::vector<std::complex<double>> v(static_cast<std::size_t>(cutoff), {0.0, 0.0});
    if (m >= cutoff) {
        return v;
    }
    v[static_cast<std::size_t>(m)] = std::exp(-0.5 * std::norm(beta) + 0.5 * log_factorial(m));
    for (int n = m + 1; n < cutoff; ++n) {
        const int k = n - m;
        v[static_cast<std::size_t>(n)] =
            v[static_cast<std::size_t>(n - 1)] * beta * (std::sqrt(double(n)) / double(k));
    }
    return v;
}

int min_cutoff(const StateParams& params) { return params.r + params.s + params.t + 8; }

FockTensor fock_synthesize(const StateParams& params, int cutoff, bool auto_raise) {
    params.validate();
    if (cutoff < min_cutoff(params)) {
        std::ostringstream os;
        os << "fock_synthesize: cutoff " << cutoff << " below r+s+t+8 = " << min_cutoff(params);
        throw std::invalid_argument(os.str());
    }
    if (cutoff > kMaxCutoff) {
        throw CutoffExceeded("fock_synthesize: cutoff above 128 requested");
    }
    const auto m = params.excitations();
    const std::complex<double> phase = std::polar(1.0, params.phi);
    while (true) {
        const auto d = static_cast<std::size_t>(cutoff);
        std::array<std::vector<std::complex<double>>, 3> plus;
        std::array<std::vector<std::complex<double>>, 3> minus;
        for (std::size_t i = 0; i < 3; ++i) {
            plus[i] = added_coherent_amplitudes(params.alpha, m[i], cutoff);
            minus[i] = added_coherent_amplitudes(-params.alpha, m[i], cutoff);
        }
        std::vector<std::complex<double>> c(d * d * d);
        double raw = 0.0;
        double edge = 0.0;
        const std::size_t shell = d >= 2 ? d - 2 : 0;
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = 0; b < d; ++b) {
                const auto pa = plus[0][a] * plus[1][b];
                const auto ma = minus[0][a] * minus[1][b];
                for (std::size_t k = 0; k < d; ++k) {
                    const auto v = pa * plus[2][k] + phase * (ma * minus[2][k]);
                    c[(a * d + b) * d + k] = v;
                    const double w = std::norm(v);
                    raw += w;
                    if (a >= shell || b >= shell || k >= shell) {
                        edge += w;
                    }
                }
            }
        }
        // The two branches can cancel down to rounding noise (odd state at
        // alpha = 0, where e^{i pi} is not exactly -1); compare against their size.
        double branches[2] = {1.0, 1.0};
        for (std::size_t i = 0; i < 3; ++i) {
            double sp = 0.0;
            double sm = 0.0;
            for (std::size_t n = 0; n < d; ++n) {
                sp += std::norm(plus[i][n]);
                sm += std::norm(minus[i][n]);
            }
            branches[0] *= sp;
            branches[1] *= sm;
        }
        if (!(raw > kDegenerateNormSq) || raw <= 1e-24 * (branches[0] + branches[1])) {
            throw DegenerateState("fock_synthesize: state vector vanishes");
        }
        const double tail = edge / raw;
        if (tail < kTailTolerance || !auto_raise) {
            const double scale = 1.0 / std::sqrt(raw);
            for (auto& v : c) {
                v *= scale;
            }
            return FockTensor(params, cutoff, std::move(c), raw, tail);
        }
        if (cutoff >= kMaxCutoff) {
            throw CutoffExceeded("fock_synthesize: tail mass above 1e-12 at cutoff 128");
        }
        cutoff = std::min(2 * cutoff, kMaxCutoff);
    }
}

FockTensor fock_synthesize(const StateParams& params) {
    return fock_synthesize(params, min_cutoff(params));
}

}  // namespace paghz
