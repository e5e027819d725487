#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>

#include "wcopt/vector.hpp"

namespace wcopt {

/// SplitMix64 finalizer; also used to derive stream ids from coordinates.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Hashes a tuple of coordinates into a 64-bit stream id.
std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> coords) noexcept;

/// A deterministic random stream identified by (seed, stream id).
///
/// The generator is xoshiro256** whose state is filled by SplitMix64 from a
/// mix of seed and stream id, so each id selects an independent sequence.
/// Normal variates use the Box-Muller transform on two 53-bit uniforms; the
/// second variate of each pair is cached. Nothing here depends on the
/// standard library's distribution implementations, so sequences are
/// identical across platforms.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept;
  /// Uniform on (0, 1].
  double uniform_open_low() noexcept;
  /// Standard normal.
  double normal() noexcept;
  /// Uniform integer in [0, n); n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);

  /// A new stream keyed by (seed, mix(stream_id, tag)); does not advance this one.
  RngStream split(std::uint64_t tag) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// d i.i.d. standard normal entries.
Vector gaussian_vector(RngStream& rng, Index d);

/// Uniform point on the unit sphere in R^d (normalized Gaussian). d >= 1.
Vector unit_sphere_point(RngStream& rng, Index d);

/// Draws an index from the categorical distribution given by `weights`
/// (nonnegative, not necessarily normalized). Uses one uniform draw.
std::size_t sample_categorical(std::span<const double> weights, RngStream& rng);

}  // namespace wcopt
