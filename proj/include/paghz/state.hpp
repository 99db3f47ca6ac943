#ifndef PAGHZ_STATE_HPP
#define PAGHZ_STATE_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace paghz {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

inline constexpr int kMaxExcitation = 16;
inline constexpr double kMaxAlphaModulus = 6.0;
/// Squared norms at or below this are reported as DegenerateState.
inline constexpr double kDegenerateNormSq = 1e-280;

/// Photon-added three-mode GHZ entangled coherent state
///   |psi> ~ a1^+r a2^+s a3^+t ( |a,a,a> + e^{i phi} |-a,-a,-a> ).
struct StateParams {
    std::complex<double> alpha{0.0, 0.0};
    double phi = 0.0;
    int r = 0;
    int s = 0;
    int t = 0;

    static constexpr int modes = 3;

    /// Throws InvalidParams unless r,s,t in [0,16], |alpha| <= 6, phi in [0, 2pi).
    void validate() const;

    std::array<int, 3> excitations() const { return {r, s, t}; }
    double alpha_sq() const { return std::norm(alpha); }

    friend bool operator==(const StateParams&, const StateParams&) = default;
};

enum class Branch { plus, minus };

/// <alpha|-alpha> = exp(-2|alpha|^2).
double kappa(std::complex<double> alpha);

/// Normalization {2[1 + kappa^n cos phi]}^{-1/2} of the n-mode GHZ coherent state.
/// Throws DegenerateState when 1 + kappa^n cos phi <= 1e-14.
double ghz_norm(std::complex<double> alpha, double phi, int n_modes);

/// minus: L_m(-|alpha|^2); plus: kappa * L_m(|alpha|^2).
double p_factor(std::complex<double> alpha, int m, Branch branch);

/// Squared norm of the unnormalized photon-added vector,
///   2 r! s! t! [ prod_i p(-a, m_i) + cos(phi) prod_i p(a, m_i) ].
/// The normalized state carries the factor pa_norm^{-1/2}.
double pa_norm(const StateParams& params);

/// pa_norm with the excitation numbers raised by `shift`. Used by the moment
/// formulas, which need indices past the public excitation cap; only the
/// Laguerre degree limit applies. Throws DegenerateState like pa_norm.
double pa_norm_shifted(const StateParams& params, std::array<int, 3> shift);

enum class Reduction {
    two_mode,   // t = 0
    one_mode,   // s = t = 0
    zero_mode,  // r = s = t = 0
};

/// Specialized closed forms of the squared norm. Throws InvalidReduction if
/// an index that the reduction assumes to be zero is not.
double reduced_norm(const StateParams& params, Reduction reduction);

struct ReducedNorms {
    std::optional<double> two_mode;
    std::optional<double> one_mode;
    std::optional<double> zero_mode;
};

/// Every reduction applicable to `params`; the others stay empty.
ReducedNorms reduced_norms(const StateParams& params);

/// Truncated Fock expansion c[n1][n2][n3] of the normalized state.
class FockTensor {
public:
    FockTensor(StateParams params, int cutoff, std::vector<std::complex<double>> coeffs,
               double raw_norm_sq, double tail_mass);

    const StateParams& params() const { return params_; }
    /// Exclusive per-mode photon-number bound.
    int cutoff() const { return cutoff_; }
    std::span<const std::complex<double>> coeffs() const { return coeffs_; }
    std::complex<double> at(int n1, int n2, int n3) const {
        return coeffs_[index(n1, n2, n3)];
    }
    std::size_t index(int n1, int n2, int n3) const {
        auto d = static_cast<std::size_t>(cutoff_);
        return (static_cast<std::size_t>(n1) * d + static_cast<std::size_t>(n2)) * d +
               static_cast<std::size_t>(n3);
    }
    /// Sum |c|^2 of the unnormalized vector inside the cutoff.
    double raw_norm_sq() const { return raw_norm_sq_; }
    /// Normalized weight on the outermost two shells of any mode.
    double tail_mass() const { return tail_mass_; }

private:
    StateParams params_;
    int cutoff_;
    std::vector<std::complex<double>> coeffs_;
    double raw_norm_sq_;
    double tail_mass_;
};

inline constexpr int kMaxCutoff = 128;
inline constexpr double kTailTolerance = 1e-12;

/// Smallest starting cutoff accepted by fock_synthesize.
int min_cutoff(const StateParams& params);

/// Expands the state in the Fock basis. The cutoff is doubled (capped at 128)
/// until tail_mass < 1e-12. Throws CutoffExceeded if 128 is not enough,
/// std::invalid_argument if cutoff < r+s+t+8, DegenerateState for a zero vector.
/// Set `auto_raise` to false to keep the requested cutoff exactly.
FockTensor fock_synthesize(const StateParams& params, int cutoff, bool auto_raise = true);
FockTensor fock_synthesize(const StateParams& params);

/// Amplitudes of a^+m |beta> on |n>, n < cutoff:
///   e^{-|beta|^2/2} beta^{n-m} sqrt(n!) / (n-m)!   for n >= m, else 0.
std::vector<std::complex<double>> added_coherent_amplitudes(std::complex<double> beta, int m,
                                                            int cutoff);

}  // namespace paghz

#endif  // PAGHZ_STATE_HPP
