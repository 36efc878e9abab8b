#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace stablam::stats {

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of observed counts against cell probabilities.
/// Cells with zero expected probability must have zero counts (otherwise
/// p = 0).
ChiSquareResult chi_square(std::span<const std::int64_t> observed, std::span<const double> probs);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// distribution (small-sample correction of Stephens).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_q(double x);

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);
double quantile(std::vector<double> xs, double q);
inline double median(std::vector<double> xs) { return quantile(std::move(xs), 0.5); }

}  // namespace stablam::stats
