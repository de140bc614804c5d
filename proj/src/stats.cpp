#include "migrana/stats.hpp"

#include <cmath>
#include <limits>

#include "migrana/errors.hpp"

namespace migrana::stats {

// Continued fraction for the incomplete beta function, modified Lentz
// iteration. Converges quickly when x < (a+1)/(a+b+2); the symmetry
// I_x(a,b) = 1 - I_{1-x}(b,a) covers the rest.
static double beta_cf(double a, double b, double x) {
    constexpr int kMaxIterations = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw solve_error("incomplete beta: continued fraction did not converge");
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0) || !(b > 0)) throw input_error("incomplete beta: a, b must be positive");
    if (x < 0 || x > 1) throw input_error("incomplete beta: x must lie in [0,1]");
    if (x == 0) return 0.0;
    if (x == 1) return 1.0;
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double nu) {
    if (!(nu > 0)) throw input_error("t distribution: degrees of freedom must be positive");
    if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    double x = nu / (nu + t * t);
    double tail = 0.5 * incomplete_beta(nu / 2.0, 0.5, x);
    return t >= 0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, double nu) {
    if (std::isinf(t)) return 0.0;
    double x = nu / (nu + t * t);
    return incomplete_beta(nu / 2.0, 0.5, x);
}

double f_cdf(double f, double d1, double d2) {
    if (!(d1 > 0) || !(d2 > 0))
        throw input_error("F distribution: degrees of freedom must be positive");
    if (f <= 0) return 0.0;
    if (std::isinf(f)) return 1.0;
    double x = d1 * f / (d1 * f + d2);
    return incomplete_beta(d1 / 2.0, d2 / 2.0, x);
}

double f_upper_p(double f, double d1, double d2) {
    if (f <= 0) return 1.0;
    if (std::isinf(f)) return 0.0;
    double x = d2 / (d2 + d1 * f);
    return incomplete_beta(d2 / 2.0, d1 / 2.0, x);
}

}  // namespace migrana::stats
