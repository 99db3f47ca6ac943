#ifndef PAGHZ_STATS_HPP
#define PAGHZ_STATS_HPP

#include <array>
#include <optional>
#include <string_view>

#include "paghz/state.hpp"

namespace paghz {

enum class Mode { one = 1, two = 2, three = 3 };

/// `paper` keeps the uncorrected closed forms verbatim; `corrected` is the
/// full operator-algebra result that the Fock oracle confirms.
enum class Variant { paper, corrected };

std::string_view to_string(Variant v);

/// Q and g3 are undefined when a mean photon number is at or below this.
inline constexpr double kMeanPhotonThreshold = 1e-12;

/// <a_i^+ a_i> = N(m_i + 1) / N - 1.
double mean_photon(const StateParams& params, Mode mode);

/// <a_i^+2 a_i^2> = (N(m_i + 2) - 4 N(m_i + 1)) / N + 2.
double second_moment(const StateParams& params, Mode mode);

/// Mandel Q = <a^+2 a^2>/<n> - <n>. Throws UndefinedQ when <n> <= 1e-12.
double mandel_q(const StateParams& params, Mode mode);

/// The same Q written as a ratio of norm differences:
///   (N+2 - 4 N+1 + 2 N)/(N+1 - N) - N+1/N + 1.
double mandel_q_ratio_form(const StateParams& params, Mode mode);

/// <n1 n2 n3>.
///   corrected: prod_i (a_i a_i^+ - 1) expanded, eight shifted norms.
///   paper:     (N+111 - N+100 - N+010 - N+001)/N + 1 (omits the pair terms).
double triple_moment(const StateParams& params, Variant variant);

/// g3_123(0).
///   corrected: <n1 n2 n3> / (<n1><n2><n3>).
///   paper:     N^2 (N+111 - N+100 - N+010 - N+001 + N)
///              / ((N+100 - N)(N+010 - N)(N+001 - N)) - 1, kept verbatim.
/// Throws UndefinedG3 if any mean photon number is <= 1e-12.
double g3(const StateParams& params, Variant variant);

/// Anti-bunching (non-classical) classification of a corrected g3 value.
inline bool is_antibunched(double g3_value) { return g3_value < 1.0; }

struct MomentSet {
    std::array<double, 3> mean_n{};
    std::array<double, 3> second{};
    std::array<std::optional<double>, 3> mandel_q{};
    double triple = 0.0;
    std::optional<double> g3;
    Variant variant = Variant::corrected;
};

/// All closed-form moments for one state. Undefined Q / g3 stay empty.
MomentSet moments(const StateParams& params, Variant variant = Variant::corrected);

}  // namespace paghz

#endif  // PAGHZ_STATS_HPP
