#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace testlab::stats {

double sum(std::span<const double> xs);
double mean(std::span<const double> xs);
/// Population standard deviation (divides by n). Zero for n <= 1.
double population_sd(std::span<const double> xs);
/// Sample variance (divides by n - 1).
double sample_variance(std::span<const double> xs);
double median(std::vector<double> xs);

/// Pearson correlation coefficient; NaN when either input is constant or
/// the lengths differ or are below 2.
double correlation(std::span<const double> x, std::span<const double> y);

/// Regularized incomplete beta I_x(a, b) via Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

/// SplitMix64 step; used to derive independent stream seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace testlab::stats
