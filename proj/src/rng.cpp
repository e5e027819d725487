#include "wcopt/rng.hpp"

#include <cmath>
#include <numbers>

#include "wcopt/error.hpp"

namespace wcopt {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t rotl(std::uint64_t x, int k) noexcept {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_stream_id(std::initializer_list<std::uint64_t> coords) noexcept {
  std::uint64_t h = 0x6A09E667F3BCC909ULL;
  for (std::uint64_t c : coords) {
    h = mix64(h + kGolden + mix64(c));
  }
  return h;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  std::uint64_t sm = mix64(seed) ^ mix64(stream_id + kGolden);
  for (auto& word : state_) {
    sm += kGolden;
    word = mix64(sm);
  }
  // xoshiro must not start from the all-zero state
  if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = kGolden;
}

std::uint64_t RngStream::next_u64() noexcept {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double RngStream::uniform() noexcept {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open_low() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::normal() noexcept {
  if (has_cached_normal_) {
    has_cached_normal_ = false;
    return cached_normal_;
  }
  const double u1 = uniform_open_low();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  cached_normal_ = radius * std::sin(angle);
  has_cached_normal_ = true;
  return radius * std::cos(angle);
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  if (n == 0) throw Error(Errc::invalid_argument, "uniform_index: empty range");
  // Lemire's multiply-shift with rejection
  unsigned __int128 product = static_cast<unsigned __int128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

RngStream RngStream::split(std::uint64_t tag) const {
  return RngStream(seed_, derive_stream_id({stream_id_, tag}));
}

Vector gaussian_vector(RngStream& rng, Index d) {
  if (d < 0) throw Error(Errc::invalid_dimension, "gaussian_vector: negative dimension");
  Vector x(d);
  for (Index i = 0; i < d; ++i) x[i] = rng.normal();
  return x;
}

Vector unit_sphere_point(RngStream& rng, Index d) {
  if (d < 1) throw Error(Errc::invalid_dimension, "unit_sphere_point: dimension must be >= 1");
  for (;;) {
    Vector x = gaussian_vector(rng, d);
    const double norm = x.norm();
    if (norm > 1e-300) return x / norm;
  }
}

std::size_t sample_categorical(std::span<const double> weights, RngStream& rng) {
  if (weights.empty()) throw Error(Errc::empty_trajectory, "sample_categorical: no weights");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(Errc::invalid_argument, "sample_categorical: weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error(Errc::invalid_argument, "sample_categorical: zero total weight");
  const double target = rng.uniform() * total;
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    running += weights[i];
    if (target < running && weights[i] > 0.0) return i;
  }
  return last_positive;
}

}  // namespace wcopt
