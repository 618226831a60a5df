#include "tailtau/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "tailtau/error.hpp"

namespace tailtau {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double erfcx(double x) {
  if (!(x >= 0.0)) throw InvalidArgument("erfcx: argument must be non-negative");
  if (x < 4.0) return std::exp(x * x) * std::erfc(x);
  if (std::isinf(x)) return 0.0;
  // Continued fraction erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
  // evaluated bottom-up; 60 terms reach double precision for x >= 4.
  double tail = x;
  for (int k = 60; k >= 1; --k) tail = x + (0.5 * k) / tail;
  return 1.0 / (std::sqrt(std::numbers::pi) * tail);
}

}  // namespace tailtau
