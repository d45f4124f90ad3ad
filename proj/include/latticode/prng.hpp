#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace latticode {

using Seed = std::array<std::uint8_t, 32>;

/// SHAKE128 of an ASCII tag and little-endian value; used for CLI --seed values.
Seed seed_from_u64(std::uint64_t value);
/// Child seed for (tag, index), independent of any other (tag, index) pair.
Seed derive_seed(const Seed& parent, std::string_view tag, std::uint64_t index = 0);
std::vector<std::uint8_t> shake128(std::span<const std::uint8_t> input, std::size_t out_len);

/// Deterministic stream: AES-128-CTR keyed by SHAKE128(tag || seed).
class Prng {
 public:
  Prng(std::span<const std::uint8_t> seed, std::string_view tag);
  ~Prng();
  Prng(Prng&&) noexcept;
  Prng& operator=(Prng&&) noexcept;
  Prng(const Prng&) = delete;
  Prng& operator=(const Prng&) = delete;

  void fill(std::span<std::uint8_t> out);
  std::uint64_t next_u64();
  // Uniform in [0, bound); masks for powers of two, rejection otherwise.
  std::uint64_t uniform_below(std::uint64_t bound);
  // Uniform in (0, 1) with 53 random bits.
  double unit_open();
  // Standard normal deviate (Box-Muller).
  double normal();

 private:
  void refill();

  struct Cipher;
  std::unique_ptr<Cipher> cipher_;
  std::array<std::uint8_t, 4096> buffer_{};
  std::size_t pos_ = 4096;
  double spare_ = 0;
  bool has_spare_ = false;
};

/// Rounded continuous Gaussian: lround(sigma * N(0,1)). sigma = 0 yields 0.
std::int64_t sample_gaussian(double sigma, Prng& rng);
std::uint64_t sample_uniform_zq(std::uint64_t q, Prng& rng);

}  // namespace latticode
