#include "prwmax/rng.hpp"

#include <cmath>

namespace prwmax {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t combine(std::uint64_t key, std::uint64_t k) {
  return mix64(key ^ mix64(k + kGolden) ^ 0xD1B54A32D192ED03ULL);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index)
    : RngStream(seed, stream_index, combine(mix64(seed + kGolden), stream_index)) {}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_index,
                     std::uint64_t key)
    : seed_(seed), stream_index_(stream_index), key_(key) {
  std::uint64_t sm = key;
  for (auto& word : state_) {
    sm += kGolden;
    word = mix64(sm);
  }
}

RngStream RngStream::child(std::uint64_t k) const {
  return RngStream(seed_, stream_index_, combine(key_, k));
}

RngStream::result_type RngStream::operator()() {
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

double RngStream::uniform() {
  return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53;
}

double RngStream::uniform_open() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_normal_;
  }
  double x, y, s;
  do {
    x = 2.0 * uniform_open() - 1.0;
    y = 2.0 * uniform_open() - 1.0;
    s = x * x + y * y;
  } while (s >= 1.0 || s == 0.0);
  const double scale = std::sqrt(-2.0 * std::log(s) / s);
  spare_normal_ = y * scale;
  has_spare_ = true;
  return x * scale;
}

double RngStream::exponential() { return -std::log(uniform_open()); }

}  // namespace prwmax
