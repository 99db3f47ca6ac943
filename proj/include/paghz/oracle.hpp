#ifndef PAGHZ_ORACLE_HPP
#define PAGHZ_ORACLE_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "paghz/state.hpp"
#include "paghz/stats.hpp"
#include "paghz/wigner.hpp"

namespace paghz {

/// Moments summed directly over the Fock coefficients:
///   <n_i> = sum n_i |c|^2, <a_i^+2 a_i^2> = sum n_i(n_i-1)|c|^2,
///   <n1 n2 n3> = sum n1 n2 n3 |c|^2; Q and g3 composed from these.
MomentSet oracle_moments(const FockTensor& tensor);

/// Wigner function of |m><n| at beta. For m >= n:
///   (2/pi) (-1)^n sqrt(n!/m!) (2 conj(beta))^{m-n} e^{-2|beta|^2} L_n^{m-n}(4|beta|^2),
/// and conj(kernel(n, m, beta)) for m < n.
std::complex<double> wigner_kernel(int m, int n, std::complex<double> beta);

/// Row-major cutoff x cutoff matrix K[m][n] = wigner_kernel(m, n, beta).
std::vector<std::complex<double>> kernel_matrix(int cutoff, std::complex<double> beta);

/// W = sum c_{abc} conj(c_{a'b'c'}) K(a,a',eta) K(b,b',gamma) K(c,c',delta),
/// contracted one mode at a time (O(cutoff^4)). Throws NonRealResult if the
/// imaginary residue exceeds 1e-9 (1 + |W|).
double oracle_wigner(const FockTensor& tensor, const PhasePoint& point);

enum class Verdict { agree, paper_typo_suspected, fail };

std::string_view to_string(Verdict v);

struct DiscrepancyReport {
    std::string quantity;
    StateParams params;
    std::optional<double> analytic;
    std::optional<double> oracle;
    std::optional<double> abs_err;
    std::optional<double> rel_err;
    Verdict verdict = Verdict::agree;
    /// Error kind when a path could not produce a value ("DegenerateState", ...).
    std::string marker;
    /// True for the uncorrected (`paper`) formula variants.
    bool paper_variant = false;
    std::uint64_t seed = 0;
    int cutoff = 0;
};

struct Tolerances {
    double rel = 1e-9;
    double abs_floor = 1e-12;
    double wigner_abs = 1e-8;
};

/// Quantity groups understood by validate().
inline const std::set<std::string> kAllQuantityGroups{"norm", "mean", "second", "Q", "triple", "g3", "wigner"};

struct ValidateOptions {
    std::uint64_t seed = 20211104;
    /// Starting cutoff for the Fock expansion; 0 selects r+s+t+8.
    int cutoff = 0;
    std::set<std::string> groups = kAllQuantityGroups;
    unsigned threads = 1;
};

/// Compares every closed form against the Fock oracle. Never throws for
/// domain conditions; they become markers. Reports are sorted by quantity.
std::vector<DiscrepancyReport> validate(const StateParams& params, const Tolerances& tolerances,
                                        int point_sample_count, const ValidateOptions& options = {});

/// Fixed-seed Wigner comparison points for a state (uniform box of half-width 1.5 + |alpha|).
std::vector<PhasePoint> sample_points(const StateParams& params, int count, std::uint64_t seed);

/// 0 if everything agrees, 2 if the only disagreements are paper variants, 1 otherwise.
int summary_exit_code(std::span<const DiscrepancyReport> reports);

/// One JSON object, no trailing newline.
std::string to_json_line(const DiscrepancyReport& report);

}  // namespace paghz

#endif  // PAGHZ_ORACLE_HPP
