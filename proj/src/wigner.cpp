#include "paghz/wigner.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "paghz/error.hpp"
#include "paghz/parallel.hpp"
#include "paghz/special_fn.hpp"

namespace paghz {

namespace {

constexpr double kTwoOverPi = 2.0 / kPi;
constexpr double kMaxCoordinate = 12.0;

std::complex<double> cross_factor(int m, std::complex<double> a, std::complex<double> b) {
    const std::complex<double> arg = -(std::conj(a) - 2.0 * std::conj(b)) * (a + 2.0 * b);
    const std::complex<double> expo = -2.0 * std::norm(b) - 2.0 * a * std::conj(b) + 2.0 * std::conj(a) * b;
    return std::exp(expo) * laguerre(m, 0, arg);
}

// Terms of one point with the prefactor supplied by the caller.
struct TermValues {
    std::complex<double> t1, t2, t3, t4;
};

TermValues evaluate_terms(const StateParams& p, double prefactor, const PhasePoint& point) {
    const auto m = p.excitations();
    std::complex<double> f1 = 1.0, f2 = 1.0, f3 = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        f1 *= mode_factor(WignerTerm::plus_plus, m[i], p.alpha, point[i]);
        f2 *= mode_factor(WignerTerm::minus_minus, m[i], p.alpha, point[i]);
        f3 *= cross_factor(m[i], p.alpha, point[i]);
    }
    TermValues out;
    out.t1 = prefactor * f1;
    out.t2 = prefactor * f2;
    out.t3 = prefactor * std::polar(1.0, p.phi) * f3;
    out.t4 = std::conj(out.t3);
    return out;
}

std::complex<double> sum_terms(const TermValues& v) { return v.t1 + v.t2 + v.t3 + v.t4; }

bool imag_ok(std::complex<double> w) { return std::abs(w.imag()) <= 1e-10 * (1.0 + std::abs(w.real())); }

}  // namespace

std::complex<double> mode_factor(WignerTerm term, int m, std::complex<double> alpha,
                                 std::complex<double> beta) {
    switch (term) {
        case WignerTerm::plus_plus:
            return std::exp(-2.0 * std::norm(alpha - beta)) * laguerre(m, 0, std::norm(alpha - 2.0 * beta));
        case WignerTerm::minus_minus:
            return std::exp(-2.0 * std::norm(alpha + beta)) * laguerre(m, 0, std::norm(alpha + 2.0 * beta));
        case WignerTerm::minus_plus:
            return cross_factor(m, alpha, beta);
        case WignerTerm::plus_minus:
            return std::conj(cross_factor(m, alpha, beta));
    }
    throw std::logic_error("unknown Wigner term");
}

double term_prefactor(const StateParams& params) {
    const int total = params.r + params.s + params.t;
    const double sign = (total % 2 == 0) ? 1.0 : -1.0;
    const double log_fact = log_factorial(params.r) + log_factorial(params.s) + log_factorial(params.t);
    return sign * std::exp(log_fact) * std::pow(kTwoOverPi, 3) / pa_norm(params);
}

std::complex<double> wigner_term(WignerTerm which, const StateParams& params, const PhasePoint& point) {
    const auto v = evaluate_terms(params, term_prefactor(params), point);
    switch (which) {
        case WignerTerm::plus_plus:
            return v.t1;
        case WignerTerm::minus_minus:
            return v.t2;
        case WignerTerm::minus_plus:
            return v.t3;
        case WignerTerm::plus_minus:
            return v.t4;
    }
    throw std::logic_error("unknown Wigner term");
}

std::complex<double> wigner_complex(const StateParams& params, const PhasePoint& point) {
    return sum_terms(evaluate_terms(params, term_prefactor(params), point));
}

double wigner(const StateParams& params, const PhasePoint& point) {
    const auto w = wigner_complex(params, point);
    if (!imag_ok(w)) {
        std::ostringstream os;
        os << "wigner: imaginary residue " << w.imag() << " exceeds tolerance";
        throw NonRealResult(os.str());
    }
    return w.real();
}

double ghz_wigner(std::complex<double> alpha, double phi, const PhasePoint& point) {
    double same_plus = 0.0;
    double same_minus = 0.0;
    std::complex<double> cross_exponent = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        const auto b = point[i];
        same_plus += -2.0 * std::norm(b - alpha);
        same_minus += -2.0 * std::norm(b + alpha);
        // branch interference: Gaussian at the origin times a fringe
        cross_exponent += -2.0 * std::norm(b) + 4.0 * std::complex<double>(0.0, 1.0) * std::imag(std::conj(alpha) * b);
    }
    const double norm_sq = 2.0 * (1.0 + std::exp(-6.0 * std::norm(alpha)) * std::cos(phi));
    const double interference = 2.0 * std::real(std::polar(1.0, phi) * std::exp(cross_exponent));
    return std::pow(kTwoOverPi, 3) / norm_sq * (std::exp(same_plus) + std::exp(same_minus) + interference);
}

double wigner_integral(const StateParams& params, int samples, double half_width) {
    if (samples < 2) {
        throw std::invalid_argument("wigner_integral: need at least 2 samples per axis");
    }
    if (half_width <= 0.0) {
        half_width = 5.0 + std::abs(params.alpha);
    }
    const double h = 2.0 * half_width / samples;
    const auto m = params.excitations();
    auto integrate = [&](WignerTerm term, int degree) {
        std::complex<double> acc = 0.0;
        for (int i = 0; i < samples; ++i) {
            const double x = -half_width + (i + 0.5) * h;
            for (int j = 0; j < samples; ++j) {
                const double y = -half_width + (j + 0.5) * h;
                acc += mode_factor(term, degree, params.alpha, {x, y});
            }
        }
        return acc * h * h;
    };
    const double pref = term_prefactor(params);
    std::complex<double> f1 = 1.0, f2 = 1.0, f3 = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        f1 *= integrate(WignerTerm::plus_plus, m[i]);
        f2 *= integrate(WignerTerm::minus_minus, m[i]);
        f3 *= integrate(WignerTerm::minus_plus, m[i]);
    }
    const auto t3 = std::polar(1.0, params.phi) * f3;
    return pref * (f1 + f2 + t3 + std::conj(t3)).real();
}

void GridSpec::validate() const {
    if (nx < 2 || nx > 4096 || ny < 2 || ny > 4096) {
        throw std::invalid_argument("grid: nx and ny must lie in [2, 4096]");
    }
    for (double v : {x_min, x_max, y_min, y_max}) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("grid: ranges must be finite");
        }
    }
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw std::invalid_argument("grid: ranges must be increasing");
    }
    const double corner = std::hypot(std::max(std::abs(x_min), std::abs(x_max)),
                                     std::max(std::abs(y_min), std::abs(y_max))) / std::sqrt(2.0);
    if (corner > kMaxCoordinate) {
        throw std::invalid_argument("grid: coordinates must satisfy |(x+iy)/sqrt2| <= 12");
    }
    for (const auto& p : pinned) {
        if (!std::isfinite(p.real()) || !std::isfinite(p.imag()) || std::abs(p) > kMaxCoordinate) {
            throw std::invalid_argument("grid: pinned values must be finite with modulus <= 12");
        }
    }
}

double GridSpec::x(int i) const {
    return i == nx - 1 ? x_max : x_min + (x_max - x_min) * i / (nx - 1);
}

double GridSpec::y(int j) const {
    return j == ny - 1 ? y_max : y_min + (y_max - y_min) * j / (ny - 1);
}

PhasePoint GridSpec::point(double xv, double yv) const {
    const std::complex<double> v = std::complex<double>(xv, yv) / std::sqrt(2.0);
    switch (axis) {
        case Axis::mode1:
            return {v, pinned[0], pinned[1]};
        case Axis::mode2:
            return {pinned[0], v, pinned[1]};
        case Axis::mode3:
            return {pinned[0], pinned[1], v};
    }
    throw std::logic_error("unknown axis");
}

WignerGrid wigner_grid(const StateParams& params, const GridSpec& spec) {
    spec.validate();
    const double pref = term_prefactor(params);
    WignerGrid grid{params, spec, std::vector<double>(static_cast<std::size_t>(spec.nx) * spec.ny), 0.0};
    std::vector<double> imag(grid.values.size());
    parallel_for(grid.values.size(), spec.threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx / static_cast<std::size_t>(spec.ny));
        const int j = static_cast<int>(idx % static_cast<std::size_t>(spec.ny));
        const auto w = sum_terms(evaluate_terms(params, pref, spec.point(spec.x(i), spec.y(j))));
        if (!imag_ok(w)) {
            std::ostringstream os;
            os << "wigner_grid: non-real value at grid index (" << i << ", " << j << ")";
            throw NonRealResult(os.str());
        }
        grid.values[idx] = w.real();
        imag[idx] = std::abs(w.imag());
    });
    for (double v : imag) {
        grid.max_imag = std::max(grid.max_imag, v);
    }
    return grid;
}

GridMinimum grid_minimum(const WignerGrid& grid) {
    GridMinimum best;
    best.value = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid.spec.nx; ++i) {
        for (int j = 0; j < grid.spec.ny; ++j) {
            const double v = grid.at(i, j);
            if (v < best.value) {
                best = {v, grid.spec.x(i), grid.spec.y(j), i, j};
            }
        }
    }
    return best;
}

GridMinimum wigner_min(const StateParams& params, const GridSpec& spec) {
    return grid_minimum(wigner_grid(params, spec));
}

}  // namespace paghz
