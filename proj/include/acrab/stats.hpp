#pragma once

#include <utility>
#include <vector>

namespace acrab {

struct SlopeFit {
    double slope = 0.0;
    double stderr_slope = 0.0;
    double intercept = 0.0;
    int n_points = 0;
};

/// Ordinary least squares of log(value) on log(n). Requires >= 3 points and
/// strictly positive values; throws std::invalid_argument otherwise.
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

double mean(const std::vector<double>& xs);
double sample_std(const std::vector<double>& xs);

/// Regularized upper incomplete gamma Q(a, x).
double regularized_gamma_q(double a, double x);

/// Survival function of the chi-squared distribution with dof degrees of freedom.
double chi2_survival(double stat, int dof);

}  // namespace acrab
