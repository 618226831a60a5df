#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tailtau {

enum class Axis { X, Y };

/// n paired observations (x_i, y_i), all finite, n >= 2.
///
/// Rows where either coordinate is NaN are treated as missing and dropped at
/// construction (pairwise-complete); the number of dropped rows is kept.
/// Infinite values are rejected.
class PairedSample {
 public:
  PairedSample(std::vector<double> x, std::vector<double> y,
               std::string label_x = "X", std::string label_y = "Y");

  std::size_t size() const noexcept { return x_.size(); }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }
  std::span<const double> axis(Axis a) const noexcept {
    return a == Axis::X ? x() : y();
  }
  const std::string& label_x() const noexcept { return label_x_; }
  const std::string& label_y() const noexcept { return label_y_; }

  std::size_t dropped_rows() const noexcept { return dropped_; }
  // The estimators assume continuous margins; these flag violations.
  // O(n log n) per call.
  bool has_ties_x() const;
  bool has_ties_y() const;

  /// Same observations with the roles of X and Y exchanged.
  PairedSample swapped() const;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  std::string label_x_;
  std::string label_y_;
  std::size_t dropped_ = 0;
};

/// Probability level q together with the exceedance count k it implies for a
/// sample of size n. Invariant: 2 <= k <= n and q = 1 - k/n up to rounding.
class ThresholdSpec {
 public:
  /// k = round(n * (1 - q)).
  static ThresholdSpec from_q(double q, std::size_t n);
  static ThresholdSpec from_k(std::size_t k, std::size_t n);

  double q() const noexcept { return q_; }
  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }

 private:
  ThresholdSpec(double q, std::size_t k, std::size_t n) : q_(q), k_(k), n_(n) {}

  double q_;
  std::size_t k_;
  std::size_t n_;
};

}  // namespace tailtau
