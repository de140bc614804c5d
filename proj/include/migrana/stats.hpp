#pragma once

namespace migrana::stats {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
// (Lentz), accurate to ~1e-14 over the tested range.
double incomplete_beta(double a, double b, double x);

// Student-t CDF with nu degrees of freedom.
double student_t_cdf(double t, double nu);

// Two-sided p-value for a t statistic.
double student_t_two_sided_p(double t, double nu);

// Fisher F CDF with (d1, d2) degrees of freedom.
double f_cdf(double f, double d1, double d2);

// Upper-tail p-value for an F statistic.
double f_upper_p(double f, double d1, double d2);

}  // namespace migrana::stats
