#pragma once

#include <span>

namespace regretlab {

double mean(std::span<const double> xs);

/// Sample standard error of the mean (unbiased variance, n-1 denominator).
/// Zero for fewer than two samples.
double standard_error(std::span<const double> xs);

/// Upper tail P(X >= x) of a chi-square with dof degrees of freedom,
/// via the regularized incomplete gamma function. dof = 0 returns 1.
double chi_square_tail(double x, int dof);

}  // namespace regretlab
