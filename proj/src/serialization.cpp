#include "latticode/serialization.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace latticode {

namespace {

constexpr std::uint8_t kMagic[4] = {'L', 'T', 'C', 'D'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> b, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[at + static_cast<std::size_t>(i)];
  return v;
}

std::size_t packed_size(std::size_t count, int bits) { return (count * static_cast<std::size_t>(bits) + 7) / 8; }

std::vector<std::uint8_t> with_header(ObjectKind kind, const ParamSet& params, const std::vector<std::uint8_t>& body) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  out.push_back(kFormatVersion);
  out.push_back(static_cast<std::uint8_t>(kind));
  out.push_back(0);
  out.push_back(0);
  put_u32(out, params.id);
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

std::span<const std::uint8_t> body_of(ObjectKind kind, const ParamSet& params, std::span<const std::uint8_t> bytes,
                                      std::size_t expected) {
  const Header h = parse_header(bytes);
  if (h.kind != kind) throw std::invalid_argument("unexpected object kind in header");
  if (h.param_id != params.id)
    throw std::invalid_argument("parameter set id " + std::to_string(h.param_id) + " does not match " + params.name);
  if (h.body_bytes != expected)
    throw std::invalid_argument("body length " + std::to_string(h.body_bytes) + " differs from expected " +
                                std::to_string(expected));
  if (bytes.size() != kHeaderBytes + expected) throw std::invalid_argument("trailing or missing bytes after header");
  return bytes.subspan(kHeaderBytes);
}

ZqMatrix matrix_from(std::vector<std::uint16_t> values, std::size_t rows, std::size_t cols) {
  ZqMatrix m(rows, cols);
  m.data = std::move(values);
  return m;
}

}  // namespace

Header parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) throw std::invalid_argument("input shorter than the 16-byte header");
  if (!std::equal(std::begin(kMagic), std::end(kMagic), bytes.begin())) throw std::invalid_argument("bad magic");
  if (bytes[4] != kFormatVersion) throw std::invalid_argument("unsupported format version " + std::to_string(bytes[4]));
  if (bytes[5] < 1 || bytes[5] > 3) throw std::invalid_argument("unknown object kind " + std::to_string(bytes[5]));
  if (bytes[6] != 0 || bytes[7] != 0) throw std::invalid_argument("reserved header bytes are nonzero");
  return {static_cast<ObjectKind>(bytes[5]), get_u32(bytes, 8), get_u32(bytes, 12)};
}

std::vector<std::uint8_t> pack_entries(std::span<const std::uint16_t> values, int bits) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("entry width must be in [1, 16]");
  std::vector<std::uint8_t> out(packed_size(values.size(), bits), 0);
  std::size_t pos = 0;
  for (auto v : values) {
    if (bits < 16 && (v >> bits)) throw std::invalid_argument("entry does not fit in the packing width");
    for (int k = 0; k < bits; ++k, ++pos)
      if ((v >> k) & 1) out[pos / 8] |= static_cast<std::uint8_t>(1u << (pos % 8));
  }
  return out;
}

std::vector<std::uint16_t> unpack_entries(std::span<const std::uint8_t> bytes, std::size_t count, int bits) {
  if (bits < 1 || bits > 16) throw std::invalid_argument("entry width must be in [1, 16]");
  if (bytes.size() != packed_size(count, bits)) throw std::invalid_argument("packed data has the wrong length");
  std::vector<std::uint16_t> out(count, 0);
  std::size_t pos = 0;
  for (auto& v : out)
    for (int k = 0; k < bits; ++k, ++pos)
      if ((bytes[pos / 8] >> (pos % 8)) & 1) v = static_cast<std::uint16_t>(v | (1u << k));
  for (std::size_t p = pos; p < bytes.size() * 8; ++p)
    if ((bytes[p / 8] >> (p % 8)) & 1) throw std::invalid_argument("nonzero padding bits");
  return out;
}

std::vector<std::uint8_t> serialize(const ParamSet& params, const PublicKey& pk) {
  std::vector<std::uint8_t> body(pk.seed_a.begin(), pk.seed_a.end());
  const auto packed = pack_entries(pk.b.data, params.log2_q);
  body.insert(body.end(), packed.begin(), packed.end());
  return with_header(ObjectKind::public_key, params, body);
}

std::vector<std::uint8_t> serialize(const ParamSet& params, const SecretKey& sk) {
  return with_header(ObjectKind::secret_key, params, pack_entries(sk.s.data, params.log2_q));
}

std::vector<std::uint8_t> serialize(const ParamSet& params, const Ciphertext& ct) {
  std::vector<std::uint8_t> body = pack_entries(ct.c1.data, params.log2_q);
  const auto c2 = pack_entries(ct.c2.data, params.log2_q);
  body.insert(body.end(), c2.begin(), c2.end());
  return with_header(ObjectKind::ciphertext, params, body);
}

PublicKey parse_public_key(const ParamSet& params, std::span<const std::uint8_t> bytes) {
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  const std::size_t b_bytes = packed_size(n * nb, params.log2_q);
  const auto body = body_of(ObjectKind::public_key, params, bytes, 16 + b_bytes);
  PublicKey pk;
  std::copy_n(body.begin(), 16, pk.seed_a.begin());
  pk.b = matrix_from(unpack_entries(body.subspan(16), n * nb, params.log2_q), n, nb);
  return pk;
}

SecretKey parse_secret_key(const ParamSet& params, std::span<const std::uint8_t> bytes) {
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  const auto body = body_of(ObjectKind::secret_key, params, bytes, packed_size(n * nb, params.log2_q));
  return {matrix_from(unpack_entries(body, n * nb, params.log2_q), n, nb)};
}

Ciphertext parse_ciphertext(const ParamSet& params, std::span<const std::uint8_t> bytes) {
  const auto n = static_cast<std::size_t>(params.n_prime);
  const auto nb = static_cast<std::size_t>(params.n_bar);
  const auto mb = static_cast<std::size_t>(params.m_bar);
  const std::size_t c1_bytes = packed_size(mb * n, params.log2_q);
  const std::size_t c2_bytes = packed_size(mb * nb, params.log2_q);
  const auto body = body_of(ObjectKind::ciphertext, params, bytes, c1_bytes + c2_bytes);
  Ciphertext ct;
  ct.c1 = matrix_from(unpack_entries(body.first(c1_bytes), mb * n, params.log2_q), mb, n);
  ct.c2 = matrix_from(unpack_entries(body.subspan(c1_bytes), mb * nb, params.log2_q), mb, nb);
  return ct;
}

}  // namespace latticode
