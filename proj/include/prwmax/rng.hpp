#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace prwmax {

/// Reproducible, splittable random stream.
///
/// A stream is addressed by (seed, stream_index); child(k) derives an
/// independent sub-stream. The integer sequence is a xoshiro256** generator
/// seeded by SplitMix64 from a hashed key, so it is identical on every
/// platform. Floating-point transforms go through the C math library.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_index);

  RngStream child(std::uint64_t k) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }
  std::uint64_t key() const { return key_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()();

  /// Uniform on (0, 1], never 0.
  double uniform();
  /// Uniform on (0, 1), never 0 or 1.
  double uniform_open();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Standard exponential, strictly positive and finite.
  double exponential();

 private:
  RngStream(std::uint64_t seed, std::uint64_t stream_index, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t key_;
  std::array<std::uint64_t, 4> state_{};
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace prwmax
