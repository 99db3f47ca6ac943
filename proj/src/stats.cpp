#include "paghz/stats.hpp"

#include <sstream>

#include "paghz/error.hpp"

namespace paghz {

namespace {

std::array<int, 3> unit(Mode mode, int amount) {
    std::array<int, 3> shift{0, 0, 0};
    shift[static_cast<std::size_t>(mode) - 1] = amount;
    return shift;
}

void require_mean(double mean, const char* what) {
    if (!(mean > kMeanPhotonThreshold)) {
        std::ostringstream os;
        os << what << ": mean photon number " << mean << " below threshold";
        throw UndefinedQ(os.str());
    }
}

constexpr std::array<Mode, 3> kModes{Mode::one, Mode::two, Mode::three};

}  // namespace

std::string_view to_string(Variant v) { return v == Variant::paper ? "paper" : "corrected"; }

double mean_photon(const StateParams& params, Mode mode) {
    const double base = pa_norm(params);
    return pa_norm_shifted(params, unit(mode, 1)) / base - 1.0;
}

double second_moment(const StateParams& params, Mode mode) {
    const double base = pa_norm(params);
    return (pa_norm_shifted(params, unit(mode, 2)) - 4.0 * pa_norm_shifted(params, unit(mode, 1))) / base + 2.0;
}

double mandel_q(const StateParams& params, Mode mode) {
    const double mean = mean_photon(params, mode);
    require_mean(mean, "mandel_q");
    return second_moment(params, mode) / mean - mean;
}

double mandel_q_ratio_form(const StateParams& params, Mode mode) {
    const double n0 = pa_norm(params);
    const double n1 = pa_norm_shifted(params, unit(mode, 1));
    const double n2 = pa_norm_shifted(params, unit(mode, 2));
    require_mean(n1 / n0 - 1.0, "mandel_q_ratio_form");
    return (n2 - 4.0 * n1 + 2.0 * n0) / (n1 - n0) - n1 / n0 + 1.0;
}

double triple_moment(const StateParams& params, Variant variant) {
    const double n = pa_norm(params);
    auto shifted = [&](int a, int b, int c) { return pa_norm_shifted(params, {a, b, c}); };
    const double n111 = shifted(1, 1, 1);
    const double singles = shifted(1, 0, 0) + shifted(0, 1, 0) + shifted(0, 0, 1);
    if (variant == Variant::paper) {
        return (n111 - singles) / n + 1.0;
    }
    const double pairs = shifted(1, 1, 0) + shifted(1, 0, 1) + shifted(0, 1, 1);
    return (n111 - pairs + singles - n) / n;
}

double g3(const StateParams& params, Variant variant) {
    std::array<double, 3> means{};
    for (std::size_t i = 0; i < 3; ++i) {
        means[i] = mean_photon(params, kModes[i]);
        if (!(means[i] > kMeanPhotonThreshold)) {
            std::ostringstream os;
            os << "g3: mean photon number of mode " << i + 1 << " is " << means[i];
            throw UndefinedG3(os.str());
        }
    }
    if (variant == Variant::corrected) {
        return triple_moment(params, Variant::corrected) / (means[0] * means[1] * means[2]);
    }
    const double n = pa_norm(params);
    const double n100 = pa_norm_shifted(params, {1, 0, 0});
    const double n010 = pa_norm_shifted(params, {0, 1, 0});
    const double n001 = pa_norm_shifted(params, {0, 0, 1});
    const double n111 = pa_norm_shifted(params, {1, 1, 1});
    return n * n * (n111 - n100 - n010 - n001 + n) / ((n100 - n) * (n010 - n) * (n001 - n)) - 1.0;
}

MomentSet moments(const StateParams& params, Variant variant) {
    MomentSet out;
    out.variant = variant;
    for (std::size_t i = 0; i < 3; ++i) {
        out.mean_n[i] = mean_photon(params, kModes[i]);
        out.second[i] = second_moment(params, kModes[i]);
        if (out.mean_n[i] > kMeanPhotonThreshold) {
            out.mandel_q[i] = variant == Variant::paper ? mandel_q_ratio_form(params, kModes[i])
                                                        : out.second[i] / out.mean_n[i] - out.mean_n[i];
        }
    }
    out.triple = triple_moment(params, variant);
    try {
        out.g3 = g3(params, variant);
    } catch (const UndefinedG3&) {
    }
    return out;
}

}  // namespace paghz
