#include <gtest/gtest.h>

#include <stdexcept>

#include "latticode/frodo_pke.hpp"
#include "latticode/serialization.hpp"

namespace latticode {
namespace {

Bits pattern_bits(std::size_t n) {
  Bits b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = static_cast<std::uint8_t>((i * 7 + i / 3) % 2);
  return b;
}

TEST(ZqMatrix, ProductWrapsModQ) {
  ZqMatrix a(2, 2), b(2, 1);
  a.data = {3, 5, 7, 11};
  b.data = {13, 2};
  const ZqMatrix c = mul_mod(a, b, 16);
  EXPECT_EQ(c.data, (std::vector<std::uint16_t>{(3 * 13 + 5 * 2) % 16, (7 * 13 + 11 * 2) % 16}));
  ZqMatrix big(1, 2), col(2, 1);
  big.data = {65535, 65535};
  col.data = {65535, 65535};
  EXPECT_EQ(mul_mod(big, col, 65536).data[0], 2);  // 2 * (2^16 - 1)^2 mod 2^16
  EXPECT_THROW(mul_mod(a, ZqMatrix(3, 1), 16), std::invalid_argument);
}

TEST(ZqMatrix, AddSubAndCentering) {
  ZqMatrix a(1, 3), b(1, 3);
  a.data = {1, 15, 8};
  b.data = {2, 2, 0};
  EXPECT_EQ(add_mod(a, b, 16).data, (std::vector<std::uint16_t>{3, 1, 8}));
  EXPECT_EQ(sub_mod(a, b, 16).data, (std::vector<std::uint16_t>{15, 13, 8}));
  EXPECT_EQ(centered_entries(a, 16), (IntVector{1, -1, -8}));
}

TEST(Registry, RowsAndLookups) {
  const auto reg = params_registry();
  ASSERT_EQ(reg.size(), 21u);
  for (std::size_t i = 0; i < reg.size(); ++i) EXPECT_EQ(reg[i].id, i + 1);
  EXPECT_EQ(&params_get("FRODO-640-E8"), &params_get(2u));
  EXPECT_THROW(params_get("frodo-512"), std::invalid_argument);
  EXPECT_THROW(params_get(99u), std::invalid_argument);
}

TEST(Registry, PublishedFields) {
  const ParamSet& e8 = params_get("frodo-640-e8");
  EXPECT_EQ(e8.q(), 32768u);
  EXPECT_DOUBLE_EQ(e8.sigma, 3.25);
  EXPECT_DOUBLE_EQ(e8.rate_b, 2.0);
  EXPECT_EQ(e8.p, 4);
  EXPECT_EQ(e8.delta, 13);
  EXPECT_EQ(e8.code_label(), "E8^8");
  EXPECT_EQ(e8.message_bits(), 128u);
  EXPECT_DOUBLE_EQ(params_get("frodo-976-bw16").rate_b, 3.25);
  EXPECT_EQ(params_get("frodo-976-bw16").message_bits(), 208u);
  EXPECT_EQ(params_get("frodo-1344-bw32").message_bits(), 256u);
  for (const auto& ps : params_registry()) {
    EXPECT_EQ(ps.ct_bytes, ps.ct_bytes_published) << ps.name;
    EXPECT_DOUBLE_EQ(ps.rate_b, ps.rate_b_published) << ps.name;
  }
}

TEST(Registry, CiphertextBytes) {
  EXPECT_EQ(ciphertext_bytes(640, 8, 8, 15), 9720u);
  EXPECT_EQ(ciphertext_bytes(976, 8, 8, 16), 15744u);
  EXPECT_EQ(ciphertext_bytes(1344, 8, 8, 16), 21632u);
  EXPECT_EQ(ciphertext_bytes(640, 8, 8, 14), 9072u);
  EXPECT_EQ(ciphertext_bytes(976, 8, 8, 15), 14760u);
  EXPECT_EQ(ciphertext_bytes(1344, 8, 8, 15), 20280u);
}

TEST(Registry, MakeParamSetValidates) {
  EXPECT_THROW(make_param_set("x", "E8", 64, 3, 13, 2.0), std::invalid_argument);
  EXPECT_THROW(make_param_set("x", "E8", 64, 4, 15, 2.0), std::invalid_argument);  // q = 2^17
  EXPECT_THROW(make_param_set("x", "D4", 64, 1, 10, 2.0), std::invalid_argument);  // p below the shaping period
  const ParamSet toy = make_param_set("toy", "E8", 64, 4, 10, 2.0);
  EXPECT_EQ(toy.q(), 4096u);
  EXPECT_EQ(toy.table, 0);
}

TEST(Pke, RoundTripOnPublishedSets) {
  for (const char* name : {"frodo-640", "frodo-640-e8", "frodo-640-bw16", "frodo-1344-e8-compact"}) {
    const ParamSet& ps = params_get(name);
    const KeyPair kp = keygen(ps, seed_from_u64(1));
    const Bits msg = pattern_bits(ps.message_bits());
    const Ciphertext ct = encrypt(ps, kp.pk, msg, seed_from_u64(2));
    EXPECT_EQ(decrypt(ps, kp.sk, ct), msg) << name;
  }
}

TEST(Pke, ZeroErrorsLeavesOnlyTheEncodedMessage) {
  const ParamSet ps = make_param_set("toy", "E8", 64, 4, 10, 2.0);
  const NoiseOptions quiet{true};
  const KeygenTrace kt = keygen_detailed(ps, seed_from_u64(9), quiet);
  EXPECT_EQ(kt.e, ZqMatrix(64, 8));
  const Bits msg = pattern_bits(ps.message_bits());
  const EncryptTrace et = encrypt_detailed(ps, kt.keys.pk, kt.a, msg, seed_from_u64(10), quiet);
  EXPECT_EQ(et.e_prime, ZqMatrix(8, 64));
  EXPECT_EQ(decrypt_residue(ps, kt.keys.sk, et.ct), et.encoded);
  EXPECT_EQ(decrypt(ps, kt.keys.sk, et.ct), msg);
}

TEST(Pke, Deterministic) {
  const ParamSet& ps = params_get("frodo-640-bw16");
  const KeyPair a = keygen(ps, seed_from_u64(3));
  const KeyPair b = keygen(ps, seed_from_u64(3));
  EXPECT_EQ(a.pk, b.pk);
  EXPECT_EQ(a.sk, b.sk);
  const Bits msg = pattern_bits(ps.message_bits());
  EXPECT_EQ(encrypt(ps, a.pk, msg, seed_from_u64(4)), encrypt(ps, b.pk, msg, seed_from_u64(4)));
  EXPECT_NE(encrypt(ps, a.pk, msg, seed_from_u64(4)), encrypt(ps, a.pk, msg, seed_from_u64(5)));
}

TEST(Pke, SecretEntriesAreSmall) {
  const ParamSet& ps = params_get("frodo-640-e8");
  const KeyPair kp = keygen(ps, seed_from_u64(8));
  for (auto v : centered_entries(kp.sk.s, ps.q())) EXPECT_LE(std::llabs(v), 40);
}

TEST(Pke, RejectsWrongMessageLength) {
  const ParamSet& ps = params_get("frodo-640-e8");
  const KeyPair kp = keygen(ps, seed_from_u64(1));
  EXPECT_THROW(encrypt(ps, kp.pk, Bits(127, 0), seed_from_u64(2)), std::invalid_argument);
}

TEST(Pke, Bw32NeedsADecoder) {
  const ParamSet& ps = params_get("frodo-640-bw32");
  EXPECT_FALSE(ps.has_decoder());
  const KeyPair kp = keygen(ps, seed_from_u64(1));
  EXPECT_THROW(encrypt(ps, kp.pk, Bits(128, 0), seed_from_u64(2)), std::runtime_error);
}

TEST(Serialization, RoundTrips) {
  const ParamSet& ps = params_get("frodo-640-e8");
  const KeyPair kp = keygen(ps, seed_from_u64(1));
  const Ciphertext ct = encrypt(ps, kp.pk, pattern_bits(128), seed_from_u64(2));
  const auto pk_bytes = serialize(ps, kp.pk);
  const auto ct_bytes = serialize(ps, ct);
  EXPECT_EQ(ct_bytes.size(), kHeaderBytes + ps.ct_bytes);
  EXPECT_EQ(pk_bytes.size(), kHeaderBytes + 16 + 640 * 8 * 15 / 8);
  EXPECT_EQ(parse_public_key(ps, pk_bytes), kp.pk);
  EXPECT_EQ(parse_secret_key(ps, serialize(ps, kp.sk)), kp.sk);
  EXPECT_EQ(parse_ciphertext(ps, ct_bytes), ct);
}

TEST(Serialization, HeaderLayout) {
  const ParamSet& ps = params_get("frodo-976");
  const auto bytes = serialize(ps, keygen(ps, seed_from_u64(1)).sk);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "LTCD");
  EXPECT_EQ(bytes[4], 1);
  EXPECT_EQ(bytes[5], 2);
  EXPECT_EQ(bytes[8], ps.id);
  const Header h = parse_header(bytes);
  EXPECT_EQ(h.body_bytes, bytes.size() - kHeaderBytes);
}

TEST(Serialization, RejectsCorruption) {
  const ParamSet& ps = params_get("frodo-640-e8");
  const KeyPair kp = keygen(ps, seed_from_u64(1));
  const auto ct = serialize(ps, encrypt(ps, kp.pk, pattern_bits(128), seed_from_u64(2)));
  auto bad = ct;
  bad[0] = 'X';
  EXPECT_THROW(parse_ciphertext(ps, bad), std::invalid_argument);
  bad = ct;
  bad[4] = 2;
  EXPECT_THROW(parse_ciphertext(ps, bad), std::invalid_argument);
  bad = ct;
  bad.pop_back();
  EXPECT_THROW(parse_ciphertext(ps, bad), std::invalid_argument);
  EXPECT_THROW(parse_ciphertext(params_get("frodo-640-bw16"), ct), std::invalid_argument);
  EXPECT_THROW(parse_public_key(ps, ct), std::invalid_argument);
}

TEST(Serialization, PackingIsLsbFirst) {
  const std::vector<std::uint16_t> v{0x5, 0x3};
  EXPECT_EQ(pack_entries(v, 3), (std::vector<std::uint8_t>{0x1D}));  // 101 then 011
  EXPECT_EQ(unpack_entries(std::vector<std::uint8_t>{0x1D}, 2, 3), v);
  EXPECT_THROW(unpack_entries(std::vector<std::uint8_t>{0x9D}, 2, 3), std::invalid_argument);
  EXPECT_THROW(pack_entries(std::vector<std::uint16_t>{8}, 3), std::invalid_argument);
}

}  // namespace
}  // namespace latticode
