#include "jarcon/distributions.hpp"

#include <cmath>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "jarcon/error.hpp"

namespace jarcon {

double normal_cdf(double z) {
  if (std::isnan(z)) return std::numeric_limits<double>::quiet_NaN();
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::range, "Student-t degrees of freedom must be positive");
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const boost::math::students_t dist(df);
  return boost::math::cdf(dist, t);
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  if (!(df > 0.0)) throw Error(ErrorCode::range, "Student-t degrees of freedom must be positive");
  const boost::math::students_t dist(df);
  const double p = 2.0 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)));
  return p > 1.0 ? 1.0 : p;
}

double student_t_quantile_upper(double upper_tail, double df) {
  if (!(df > 0.0)) throw Error(ErrorCode::range, "Student-t degrees of freedom must be positive");
  const boost::math::students_t dist(df);
  return boost::math::quantile(boost::math::complement(dist, upper_tail));
}

}  // namespace jarcon
