#pragma once

namespace tailtau {

/// Standard normal distribution function.
double normal_cdf(double x);
/// 1 - normal_cdf(x) without cancellation for large x.
double normal_sf(double x);
/// Scaled complementary error function exp(x^2) erfc(x), for x >= 0.
double erfcx(double x);

}  // namespace tailtau
