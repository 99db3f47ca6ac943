#ifndef PAGHZ_SPECIAL_FN_HPP
#define PAGHZ_SPECIAL_FN_HPP

#include <complex>

namespace paghz {

/// Largest polynomial degree the closed forms ever request (excitation cap,
/// moment shifts and Fock cutoffs all stay below this).
inline constexpr int kMaxLaguerreDegree = 64;

struct LaguerreArgs {
    int m = 0;  // degree
    int k = 0;  // order
    double x = 0.0;
};

/// Generalized Laguerre polynomial L_m^k(x), evaluated by the three-term
/// recurrence in m:
///   (n+1) L_{n+1} = (2n+1+k-x) L_n - (n+k) L_{n-1},  L_0 = 1, L_1 = 1+k-x.
/// The explicit alternating sum is never used; it cancels badly once m grows.
/// Throws std::invalid_argument for negative m or k.
double laguerre(int m, int k, double x);
double laguerre(const LaguerreArgs& args);

/// Same recurrence over complex arguments (needed by the Wigner cross terms).
std::complex<double> laguerre(int m, int k, std::complex<double> z);

/// ln(n!). Exact table lookup for n <= 20, lgamma beyond.
double log_factorial(int n);

}  // namespace paghz

#endif  // PAGHZ_SPECIAL_FN_HPP
