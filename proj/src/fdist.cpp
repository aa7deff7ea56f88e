#include "fss/fdist.hpp"
#include "fss/errors.hpp"

#include <cmath>
#include <limits>

namespace fss::stats {

namespace {

double log_gamma(double x)
{
    int sign = 0;
    return ::lgamma_r(x, &sign);
}

double beta_continued_fraction(double x, double a, double b)
{
    constexpr int kMaxIter = 1000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) {
        d = kTiny;
    }
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) {
            d = kTiny;
        }
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) {
            c = kTiny;
        }
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) {
            return h;
        }
    }
    throw ComputeError("incomplete beta: continued fraction did not converge");
}

} // namespace

double regularized_beta(double x, double a, double b)
{
    if (!(a > 0.0 && b > 0.0)) {
        throw DataError("incomplete beta: shape parameters must be positive");
    }
    if (std::isnan(x)) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    if (x <= 0.0) {
        return 0.0;
    }
    if (x >= 1.0) {
        return 1.0;
    }
    const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) + a * std::log(x) +
                             b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_continued_fraction(x, a, b) / a;
    }
    return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double f_cdf(double f, double d1, double d2)
{
    if (f <= 0.0) {
        return 0.0;
    }
    if (std::isinf(f)) {
        return 1.0;
    }
    return regularized_beta(d1 * f / (d1 * f + d2), d1 / 2.0, d2 / 2.0);
}

double f_sf(double f, double d1, double d2)
{
    if (f <= 0.0) {
        return 1.0;
    }
    if (std::isinf(f)) {
        return 0.0;
    }
    return regularized_beta(d2 / (d2 + d1 * f), d2 / 2.0, d1 / 2.0);
}

} // namespace fss::stats
