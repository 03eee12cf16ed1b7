#pragma once

namespace jarcon {

/// Standard normal CDF.
double normal_cdf(double z);

/// Student-t CDF with `df` > 0 degrees of freedom. +/-inf map to 1/0.
double student_t_cdf(double t, double df);

/// Two-sided p-value P(|T| >= |t|).
double student_t_two_sided_p(double t, double df);

/// Upper quantile: returns t with P(T > t) = upper_tail.
double student_t_quantile_upper(double upper_tail, double df);

}  // namespace jarcon
