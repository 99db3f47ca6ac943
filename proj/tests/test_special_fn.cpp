#include <cmath>
#include <complex>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <gtest/gtest.h>

#include "paghz/special_fn.hpp"

namespace {

using boost::multiprecision::cpp_rational;
using boost::multiprecision::cpp_int;

cpp_int binomial(int n, int k) {
    cpp_int b = 1;
    for (int i = 1; i <= k; ++i) {
        b = b * (n - k + i) / i;
    }
    return b;
}

// Explicit sum  sum_j (-1)^j C(m+k, m-j) x^j / j!  in exact rational arithmetic.
cpp_rational laguerre_exact(int m, int k, const cpp_rational& x) {
    cpp_rational sum = 0;
    cpp_rational power = 1;
    cpp_int fact = 1;
    for (int j = 0; j <= m; ++j) {
        if (j > 0) {
            power *= x;
            fact *= j;
        }
        cpp_rational term = cpp_rational(binomial(m + k, m - j)) * power / cpp_rational(fact);
        sum += (j % 2 == 0) ? term : cpp_rational(-term);
    }
    return sum;
}

}  // namespace

TEST(Laguerre, LowDegreeValues) {
    EXPECT_EQ(paghz::laguerre(0, 0, 7.3), 1.0);
    EXPECT_EQ(paghz::laguerre(1, 0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(paghz::laguerre(2, 0, 1.0), -0.5);
    EXPECT_DOUBLE_EQ(paghz::laguerre(1, 3, 0.25), 3.75);
}

TEST(Laguerre, MatchesExactRationalSum) {
    // x values are exact binary fractions so the double input equals the rational one.
    const std::array<std::pair<double, cpp_rational>, 5> xs{{{-4.0, cpp_rational(-4)},
                                                            {-1.0, cpp_rational(-1)},
                                                            {0.0, cpp_rational(0)},
                                                            {0.5, cpp_rational(1, 2)},
                                                            {3.0, cpp_rational(3)}}};
    for (int m = 0; m <= 30; ++m) {
        for (int k = 0; k <= 6; ++k) {
            for (const auto& [xd, xq] : xs) {
                const double exact = static_cast<double>(laguerre_exact(m, k, xq));
                const double got = paghz::laguerre(m, k, xd);
                EXPECT_LE(std::abs(got - exact), 1e-10 * std::abs(exact))
                    << "m=" << m << " k=" << k << " x=" << xd;
            }
        }
    }
}

TEST(Laguerre, DegreeFiveOrderTwoAtSevenTenths) {
    const double exact = static_cast<double>(laguerre_exact(5, 2, cpp_rational(7, 10)));
    EXPECT_NEAR(paghz::laguerre(5, 2, 0.7), exact, 1e-14 * std::abs(exact));
    EXPECT_EQ(paghz::laguerre(paghz::LaguerreArgs{5, 2, 0.7}), paghz::laguerre(5, 2, 0.7));
}

TEST(Laguerre, UnityAtOrigin) {
    for (int m = 0; m <= paghz::kMaxLaguerreDegree; ++m) {
        EXPECT_DOUBLE_EQ(paghz::laguerre(m, 0, 0.0), 1.0) << m;
    }
}

TEST(Laguerre, PositiveOnNegativeAxis) {
    for (int m = 0; m <= 30; ++m) {
        for (double a2 : {0.0, 0.01, 0.3, 1.0, 4.0, 16.0, 36.0}) {
            EXPECT_GT(paghz::laguerre(m, 0, -a2), 0.0) << m << " " << a2;
        }
    }
}

TEST(Laguerre, ComplexAgreesOnRealAxisAndCommutesWithConjugation) {
    for (int m = 0; m <= 20; ++m) {
        for (int k = 0; k <= 3; ++k) {
            const double x = 1.7;
            const auto z = paghz::laguerre(m, k, std::complex<double>(x, 0.0));
            EXPECT_NEAR(z.real(), paghz::laguerre(m, k, x), 1e-12 * (1 + std::abs(z)));
            EXPECT_EQ(z.imag(), 0.0);
            const std::complex<double> w(0.4, -1.3);
            const auto a = paghz::laguerre(m, k, w);
            const auto b = paghz::laguerre(m, k, std::conj(w));
            EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12 * (1 + std::abs(a)));
        }
    }
}

TEST(Laguerre, ComplexMatchesExactSumOnGaussianIntegers) {
    // L_m(z) for z = 1 + 2i, expanded with exact rational real/imaginary parts.
    for (int m = 0; m <= 12; ++m) {
        cpp_rational re = 0, im = 0, pre = 1, pim = 0;
        cpp_int fact = 1;
        for (int j = 0; j <= m; ++j) {
            if (j > 0) {
                const cpp_rational nre = pre - 2 * pim;
                const cpp_rational nim = 2 * pre + pim;
                pre = nre;
                pim = nim;
                fact *= j;
            }
            const cpp_rational c = cpp_rational(binomial(m, m - j)) / cpp_rational(fact) * (j % 2 ? -1 : 1);
            re += c * pre;
            im += c * pim;
        }
        const auto got = paghz::laguerre(m, 0, std::complex<double>(1.0, 2.0));
        const double scale = std::abs(std::complex<double>(static_cast<double>(re), static_cast<double>(im)));
        EXPECT_NEAR(got.real(), static_cast<double>(re), 1e-11 * (1 + scale)) << m;
        EXPECT_NEAR(got.imag(), static_cast<double>(im), 1e-11 * (1 + scale)) << m;
    }
}

TEST(Laguerre, RejectsNegativeIndices) {
    EXPECT_THROW(paghz::laguerre(-1, 0, 1.0), std::invalid_argument);
    EXPECT_THROW(paghz::laguerre(2, -1, 1.0), std::invalid_argument);
}

TEST(LogFactorial, SmallValues) {
    EXPECT_EQ(paghz::log_factorial(0), 0.0);
    EXPECT_EQ(paghz::log_factorial(1), 0.0);
    EXPECT_DOUBLE_EQ(paghz::log_factorial(5), std::log(120.0));
}

TEST(LogFactorial, ContinuousAcrossTableBoundary) {
    for (int n = 2; n <= 60; ++n) {
        EXPECT_NEAR(paghz::log_factorial(n) - paghz::log_factorial(n - 1), std::log(static_cast<double>(n)),
                    1e-12 * paghz::log_factorial(n))
            << n;
    }
}
