#include "latticode/prng.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace latticode {

namespace {

void append_le64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void append_tag(std::vector<std::uint8_t>& out, std::string_view tag) {
  append_le64(out, tag.size());
  out.insert(out.end(), tag.begin(), tag.end());
}

}  // namespace

std::vector<std::uint8_t> shake128(std::span<const std::uint8_t> input, std::size_t out_len) {
  std::vector<std::uint8_t> out(out_len);
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx) throw std::runtime_error("EVP_MD_CTX_new failed");
  const bool ok = EVP_DigestInit_ex(ctx, EVP_shake128(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, input.data(), input.size()) == 1 &&
                  EVP_DigestFinalXOF(ctx, out.data(), out.size()) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw std::runtime_error("SHAKE128 failed");
  return out;
}

Seed seed_from_u64(std::uint64_t value) {
  std::vector<std::uint8_t> in;
  append_tag(in, "latticode-seed");
  append_le64(in, value);
  const auto h = shake128(in, 32);
  Seed s;
  std::copy(h.begin(), h.end(), s.begin());
  return s;
}

Seed derive_seed(const Seed& parent, std::string_view tag, std::uint64_t index) {
  std::vector<std::uint8_t> in(parent.begin(), parent.end());
  append_tag(in, tag);
  append_le64(in, index);
  const auto h = shake128(in, 32);
  Seed s;
  std::copy(h.begin(), h.end(), s.begin());
  return s;
}

struct Prng::Cipher {
  EVP_CIPHER_CTX* ctx = nullptr;
  ~Cipher() { EVP_CIPHER_CTX_free(ctx); }
};

Prng::Prng(std::span<const std::uint8_t> seed, std::string_view tag) : cipher_(std::make_unique<Cipher>()) {
  std::vector<std::uint8_t> in;
  append_tag(in, tag);
  in.insert(in.end(), seed.begin(), seed.end());
  const auto key_iv = shake128(in, 32);
  cipher_->ctx = EVP_CIPHER_CTX_new();
  if (!cipher_->ctx || EVP_EncryptInit_ex(cipher_->ctx, EVP_aes_128_ctr(), nullptr, key_iv.data(), key_iv.data() + 16) != 1)
    throw std::runtime_error("AES-128-CTR initialisation failed");
}

Prng::~Prng() = default;
Prng::Prng(Prng&&) noexcept = default;
Prng& Prng::operator=(Prng&&) noexcept = default;

void Prng::refill() {
  static const std::array<std::uint8_t, 4096> zeros{};
  int len = 0;
  if (EVP_EncryptUpdate(cipher_->ctx, buffer_.data(), &len, zeros.data(), static_cast<int>(zeros.size())) != 1 ||
      len != static_cast<int>(buffer_.size()))
    throw std::runtime_error("AES-128-CTR keystream failed");
  pos_ = 0;
}

void Prng::fill(std::span<std::uint8_t> out) {
  std::size_t done = 0;
  while (done < out.size()) {
    if (pos_ == buffer_.size()) refill();
    const std::size_t take = std::min(out.size() - done, buffer_.size() - pos_);
    std::copy_n(buffer_.begin() + static_cast<std::ptrdiff_t>(pos_), take, out.begin() + static_cast<std::ptrdiff_t>(done));
    pos_ += take;
    done += take;
  }
}

std::uint64_t Prng::next_u64() {
  if (buffer_.size() - pos_ < 8) {
    std::array<std::uint8_t, 8> b;
    fill(b);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[static_cast<std::size_t>(i)];
    return v;
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | buffer_[pos_ + static_cast<std::size_t>(i)];
  pos_ += 8;
  return v;
}

std::uint64_t Prng::uniform_below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below needs a positive bound");
  if (std::has_single_bit(bound)) return next_u64() & (bound - 1);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    const std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

double Prng::unit_open() {
  for (;;) {
    const std::uint64_t v = next_u64() >> 11;
    if (v != 0) return std::ldexp(static_cast<double>(v), -53);
  }
}

double Prng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(unit_open()));
  const double theta = 2.0 * std::numbers::pi * unit_open();
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

std::int64_t sample_gaussian(double sigma, Prng& rng) {
  if (!(sigma >= 0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be finite and non-negative");
  if (sigma == 0) return 0;
  return std::llround(sigma * rng.normal());
}

std::uint64_t sample_uniform_zq(std::uint64_t q, Prng& rng) { return rng.uniform_below(q); }

}  // namespace latticode
