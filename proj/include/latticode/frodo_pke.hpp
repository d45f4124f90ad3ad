#pragma once

#include <array>
#include <memory>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latticode/codec.hpp"
#include "latticode/prng.hpp"

namespace latticode {

/// Row-major matrix over Z_q with q a power of two no larger than 2^16.
struct ZqMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::uint16_t> data;

  ZqMatrix() = default;
  ZqMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  std::uint16_t& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  std::uint16_t at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  friend bool operator==(const ZqMatrix&, const ZqMatrix&) = default;
};

ZqMatrix mul_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q);
ZqMatrix add_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q);
ZqMatrix sub_mod(const ZqMatrix& a, const ZqMatrix& b, std::uint32_t q);
// Entries lifted to [-q/2, q/2).
IntVector centered_entries(const ZqMatrix& m, std::uint32_t q);

struct SecurityLevels {
  int classical = 0;
  int quantum = 0;
  int paranoid = 0;
};

struct ParamSet {
  std::string name;
  std::uint32_t id = 0;
  int table = 0;             // 0 for ad hoc sets; 2 or 3 for the published tables
  std::string lattice;       // catalog block lattice
  int n_prime = 0;
  int n_bar = 8;
  int m_bar = 8;
  int log2_q = 0;
  double sigma = 0;
  std::int64_t p = 0;
  int delta = 0;
  double rate_b = 0;
  std::size_t ct_bytes = 0;
  // Values as printed in the published tables (zero for ad hoc sets).
  int dfr_log2_claimed = 0;
  double rate_b_published = 0;
  std::size_t ct_bytes_published = 0;
  SecurityLevels security;

  std::uint32_t q() const { return std::uint32_t{1} << log2_q; }
  int blocks() const;
  std::size_t message_bits() const;
  // "E8^8"-style description of the fine lattice blocks.
  std::string code_label() const;
  const CodeConfig& code() const { return *code_; }
  bool has_decoder() const;

  std::shared_ptr<const CodeConfig> code_;
};

/// Checks the derived fields (q = 2^delta p, rate, ciphertext size) and
/// fills them in. Throws std::invalid_argument on inconsistent input.
ParamSet make_param_set(std::string name, std::string lattice, int n_prime, std::int64_t p, int delta, double sigma);

std::span<const ParamSet> params_registry();
const ParamSet& params_get(std::string_view name);
const ParamSet& params_get(std::uint32_t id);

std::size_t ciphertext_bytes(int n_prime, int n_bar, int m_bar, int log2_q);

struct PublicKey {
  std::array<std::uint8_t, 16> seed_a{};
  ZqMatrix b;  // n' x n_bar
  friend bool operator==(const PublicKey&, const PublicKey&) = default;
};

struct SecretKey {
  ZqMatrix s;  // n' x n_bar, small entries stored mod q
  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

struct KeyPair {
  PublicKey pk;
  SecretKey sk;
};

struct Ciphertext {
  ZqMatrix c1;  // m_bar x n'
  ZqMatrix c2;  // m_bar x n_bar
  friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

/// Test hook: when zero_errors is set, E, E' and E'' are all zero while the
/// secrets S and S' are still sampled.
struct NoiseOptions {
  bool zero_errors = false;
};

struct KeygenTrace {
  KeyPair keys;
  ZqMatrix a;
  ZqMatrix e;
};

struct EncryptTrace {
  Ciphertext ct;
  ZqMatrix s_prime;
  ZqMatrix e_prime;
  ZqMatrix e_double_prime;
  ZqMatrix v;
  IntVector encoded;  // the 64 message entries in Z_q, row-major
};

ZqMatrix expand_a(const ParamSet& params, std::span<const std::uint8_t> seed_a);

KeyPair keygen(const ParamSet& params, const Seed& seed, NoiseOptions noise = {});
KeygenTrace keygen_detailed(const ParamSet& params, const Seed& seed, NoiseOptions noise = {});

Ciphertext encrypt(const ParamSet& params, const PublicKey& pk, std::span<const std::uint8_t> msg_bits, const Seed& seed,
                   NoiseOptions noise = {});
// Same as encrypt with A already expanded from pk.seed_a.
Ciphertext encrypt(const ParamSet& params, const PublicKey& pk, const ZqMatrix& a, std::span<const std::uint8_t> msg_bits,
                   const Seed& seed, NoiseOptions noise = {});
EncryptTrace encrypt_detailed(const ParamSet& params, const PublicKey& pk, const ZqMatrix& a,
                              std::span<const std::uint8_t> msg_bits, const Seed& seed, NoiseOptions noise = {});

Bits decrypt(const ParamSet& params, const SecretKey& sk, const Ciphertext& ct);
// Y = C2 - C1 S, row-major.
IntVector decrypt_residue(const ParamSet& params, const SecretKey& sk, const Ciphertext& ct);

}  // namespace latticode
