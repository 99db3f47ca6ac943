#ifndef PAGHZ_WIGNER_HPP
#define PAGHZ_WIGNER_HPP

#include <array>
#include <complex>
#include <vector>

#include "paghz/state.hpp"

namespace paghz {

/// Phase-space coordinates of modes 1, 2, 3.
struct PhasePoint {
    std::complex<double> eta{};
    std::complex<double> gamma{};
    std::complex<double> delta{};

    /// mode index 0, 1, 2
    std::complex<double> operator[](std::size_t mode) const {
        return mode == 0 ? eta : (mode == 1 ? gamma : delta);
    }
    PhasePoint operator-() const { return {-eta, -gamma, -delta}; }
};

/// The four pieces of the density operator. Ket branch first, bra branch second:
///   1: |+a><+a|          2: |-a><-a|
///   3: e^{+i phi} |-a><+a|   4: e^{-i phi} |+a><-a|
/// Term 4 is the complex conjugate of term 3 at every point.
enum class WignerTerm { plus_plus = 1, minus_minus = 2, minus_plus = 3, plus_minus = 4 };

/// Single-mode factor of a term (no constants): for m added photons at beta,
///   1: e^{-2|a-b|^2} L_m(|a-2b|^2)
///   2: e^{-2|a+b|^2} L_m(|a+2b|^2)
///   3: e^{-2|b|^2 - 2 a b* + 2 a* b} L_m(-(a* - 2b*)(a + 2b))
///   4: conjugate of 3.
std::complex<double> mode_factor(WignerTerm term, int m, std::complex<double> alpha,
                                 std::complex<double> beta);

/// (-1)^{r+s+t} r! s! t! (2/pi)^3 / pa_norm(params).
double term_prefactor(const StateParams& params);

/// One closed-form term including the prefactor and its e^{+-i phi} phase.
std::complex<double> wigner_term(WignerTerm which, const StateParams& params, const PhasePoint& point);

/// Sum of the four terms before the imaginary residue is discarded.
std::complex<double> wigner_complex(const StateParams& params, const PhasePoint& point);

/// Wigner function W(eta, gamma, delta), normalized so that its phase-space
/// integral is 1. Throws NonRealResult if |Im W| > 1e-10 (1 + |Re W|).
double wigner(const StateParams& params, const PhasePoint& point);

/// Wigner function of the unexcited GHZ coherent state, written out directly
/// with Gaussians only. Reference for the r = s = t = 0 reduction.
double ghz_wigner(std::complex<double> alpha, double phi, const PhasePoint& point);

/// Phase-space integral of W by a factorized midpoint rule: each term is a
/// product of single-mode factors, so each factor is integrated on its own
/// `samples` x `samples` grid over [-h, h]^2 with h = half_width
/// (default 5 + |alpha|).
double wigner_integral(const StateParams& params, int samples = 61, double half_width = -1.0);

enum class Axis { mode1 = 1, mode2 = 2, mode3 = 3 };

/// A 2-D slice: the varying coordinate is (x + i y)/sqrt(2); the other two
/// modes take the pinned values in mode order.
struct GridSpec {
    Axis axis = Axis::mode1;
    std::array<std::complex<double>, 2> pinned{std::complex<double>{1.0, 0.0},
                                               std::complex<double>{1.0, 0.0}};
    double x_min = -3.0;
    double x_max = 3.0;
    int nx = 121;
    double y_min = -3.0;
    double y_max = 3.0;
    int ny = 121;
    unsigned threads = 1;

    void validate() const;
    double x(int i) const;
    double y(int j) const;
    PhasePoint point(double x, double y) const;
};

struct WignerGrid {
    StateParams params;
    GridSpec spec;
    /// values[i * ny + j] = W at (x(i), y(j)); i is the row index.
    std::vector<double> values;
    /// Largest |Im W| seen before discarding.
    double max_imag = 0.0;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * spec.ny + j]; }
};

/// Evaluates W on the nx x ny lattice, rows and columns ascending. Output is
/// identical for any spec.threads.
WignerGrid wigner_grid(const StateParams& params, const GridSpec& spec);

struct GridMinimum {
    double value = 0.0;
    double x = 0.0;
    double y = 0.0;
    int i = 0;
    int j = 0;
};

/// Minimum over the grid; ties go to the lowest row, then the lowest column.
GridMinimum grid_minimum(const WignerGrid& grid);
GridMinimum wigner_min(const StateParams& params, const GridSpec& spec);

}  // namespace paghz

#endif  // PAGHZ_WIGNER_HPP
