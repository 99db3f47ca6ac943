#include "paghz/special_fn.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace paghz {

namespace {

template <class T>
T laguerre_recurrence(int m, int k, T x) {
    if (m < 0 || k < 0) {
        throw std::invalid_argument("laguerre: degree and order must be non-negative");
    }
    T prev(1.0);
    if (m == 0) {
        return prev;
    }
    T curr = T(1.0 + k) - x;
    for (int n = 1; n < m; ++n) {
        T next = ((T(2.0 * n + 1.0 + k) - x) * curr - T(double(n + k)) * prev) / T(double(n + 1));
        prev = curr;
        curr = next;
    }
    return curr;
}

constexpr std::array<unsigned long long, 21> kFactorials = [] {
    std::array<unsigned long long, 21> f{};
    f[0] = 1;
    for (std::size_t i = 1; i < f.size(); ++i) {
        f[i] = f[i - 1] * i;
    }
    return f;
}();

}  // namespace

double laguerre(int m, int k, double x) { return laguerre_recurrence<double>(m, k, x); }

double laguerre(const LaguerreArgs& args) { return laguerre(args.m, args.k, args.x); }

std::complex<double> laguerre(int m, int k, std::complex<double> z) {
    return laguerre_recurrence<std::complex<double>>(m, k, z);
}

double log_factorial(int n) {
    if (n < 0) {
        throw std::invalid_argument("log_factorial: n must be non-negative");
    }
    if (n < static_cast<int>(kFactorials.size())) {
        // Each n! <= 20! is exact as an integer; the rounding to double costs one ulp.
        return std::log(static_cast<double>(kFactorials[static_cast<std::size_t>(n)]));
    }
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace paghz
