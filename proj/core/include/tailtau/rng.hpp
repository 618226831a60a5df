#pragma once

#include <cstdint>
#include <random>

namespace tailtau {

/// Deterministic random stream keyed by (seed, stream_id).
///
/// The engine is std::mt19937_64 seeded through std::seed_seq, both of which
/// the standard specifies bit-exactly. All variate transforms are implemented
/// here rather than with <random> distributions, whose algorithms are
/// implementation-defined, so output is identical across standard libraries.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();
  double exponential();
  double normal();
  double normal(double mean, double sd) { return mean + sd * normal(); }
  /// Gamma(shape, 1); shape > 0.
  double gamma(double shape);
  double student_t(double dof);
  /// Standard Frechet: P(Z <= z) = exp(-1/z).
  double frechet() { return 1.0 / exponential(); }
  /// Uniform index in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finaliser.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Stream id for task (a, b), e.g. (configuration row, repetition).
std::uint64_t stream_id_for(std::uint64_t a, std::uint64_t b) noexcept;

}  // namespace tailtau
