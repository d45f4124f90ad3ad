#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "latticode/frodo_pke.hpp"

namespace latticode {

/// Wire format: a 16-byte header followed by the body.
///
///   bytes 0-3   magic "LTCD"
///   byte  4     format version (1)
///   byte  5     object kind
///   bytes 6-7   reserved, zero
///   bytes 8-11  parameter-set id, little endian
///   bytes 12-15 body length in bytes, little endian
///
/// Matrix entries are packed row-major at log2(q) bits each, least
/// significant bit first, into little-endian bytes.
enum class ObjectKind : std::uint8_t { public_key = 1, secret_key = 2, ciphertext = 3 };

inline constexpr std::size_t kHeaderBytes = 16;
inline constexpr std::uint8_t kFormatVersion = 1;

struct Header {
  ObjectKind kind{};
  std::uint32_t param_id = 0;
  std::uint32_t body_bytes = 0;
};

Header parse_header(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> pack_entries(std::span<const std::uint16_t> values, int bits);
std::vector<std::uint16_t> unpack_entries(std::span<const std::uint8_t> bytes, std::size_t count, int bits);

std::vector<std::uint8_t> serialize(const ParamSet& params, const PublicKey& pk);
std::vector<std::uint8_t> serialize(const ParamSet& params, const SecretKey& sk);
std::vector<std::uint8_t> serialize(const ParamSet& params, const Ciphertext& ct);

// Each parser checks magic, version, kind, parameter id and lengths and throws
// std::invalid_argument on any mismatch.
PublicKey parse_public_key(const ParamSet& params, std::span<const std::uint8_t> bytes);
SecretKey parse_secret_key(const ParamSet& params, std::span<const std::uint8_t> bytes);
Ciphertext parse_ciphertext(const ParamSet& params, std::span<const std::uint8_t> bytes);

}  // namespace latticode
