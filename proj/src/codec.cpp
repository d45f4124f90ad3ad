#include "latticode/codec.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace latticode {

namespace {

DyadicVector reduce_mod(const DyadicVector& v, std::int64_t m) {
  const std::int64_t big = checked::shl(m, v.log2_den());
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = floor_mod(v.numerators()[i], big);
  return DyadicVector(std::move(out), v.log2_den());
}

void check_index(const CodeConfig& cfg, std::span<const std::int64_t> z) {
  if (z.size() != cfg.n()) throw std::invalid_argument("message index has wrong length");
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] < 0 || z[i] >= cfg.radices[i])
      throw std::invalid_argument("message index entry " + std::to_string(i) + " out of range");
}

CodeConfig build(std::string name, RectangularBasis basis, std::int64_t p, int delta, int blocks, Quantizer quantizer,
                 double vol_log2) {
  if (!validate_rectangular(basis)) throw std::invalid_argument("basis is not in rectangular form");
  if (p < 1) throw std::invalid_argument("shaping modulus p must be positive");
  if (delta < 0 || delta > 40) throw std::invalid_argument("delta must be in [0, 40]");
  if (blocks < 1) throw std::invalid_argument("blocks must be positive");
  CodeConfig cfg;
  cfg.lattice = std::move(name);
  cfg.t = basis.dim();
  cfg.p = p;
  cfg.delta = delta;
  cfg.blocks = blocks;
  IntVector block_radices;
  for (const auto& pi : basis.pi) {
    const std::int64_t scaled = checked::shl(p, pi.log2_den());
    if (scaled % pi.num() != 0)
      throw std::invalid_argument("p = " + std::to_string(p) + " is not a multiple of pi = " + pi.to_string());
    block_radices.push_back(scaled / pi.num());
  }
  for (int b = 0; b < blocks; ++b) cfg.radices.insert(cfg.radices.end(), block_radices.begin(), block_radices.end());
  cfg.q = checked::shl(p, delta);
  cfg.rate = std::log2(static_cast<double>(p)) - vol_log2 / static_cast<double>(cfg.t);
  cfg.basis_full = basis.full();
  cfg.u_inverse = inverse_exact(basis.u);
  cfg.basis = std::move(basis);
  cfg.block_quantizer = std::move(quantizer);
  return cfg;
}

DyadicVector centered(const DyadicVector& y, std::int64_t q) {
  const std::int64_t big = checked::shl(q, y.log2_den());
  const std::int64_t half = big / 2;
  IntVector out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = floor_mod(checked::add(y.numerators()[i], half), big) - half;
  return DyadicVector(std::move(out), y.log2_den());
}

}  // namespace

bool CodeConfig::power_of_two_radices() const {
  for (auto r : radices)
    if (!is_power_of_two(r)) return false;
  return true;
}

std::size_t CodeConfig::bit_count() const {
  if (!power_of_two_radices()) throw std::invalid_argument("bit mapping needs power-of-two radices");
  std::size_t total = 0;
  for (auto r : radices) total += static_cast<std::size_t>(exact_log2(r));
  return total;
}

double CodeConfig::log2_size() const {
  double total = 0;
  for (auto r : radices) total += std::log2(static_cast<double>(r));
  return total;
}

CodeConfig CodeConfig::make(const LatticeSpec& base, std::int64_t p, int delta, int blocks) {
  if (!base.basis) throw std::invalid_argument(base.name + " has no basis");
  if (base.blocks != 1) throw std::invalid_argument("base lattice must be a single block");
  Quantizer quantizer;
  try {
    quantizer = quantizer_for(base);
  } catch (const std::runtime_error& e) {
    // encode and label still work; decoding reports the missing quantizer
    const std::string msg = e.what();
    quantizer = [msg](const DyadicVector&) -> DyadicVector { throw std::runtime_error(msg); };
  }
  return build(base.name, *base.basis, p, delta, blocks, std::move(quantizer), base.vol_log2);
}

CodeConfig CodeConfig::make(std::string name, RectangularBasis basis, std::int64_t p, int delta, int blocks) {
  if (!validate_rectangular(basis)) throw std::invalid_argument("basis is not in rectangular form");
  const double vol = std::fabs(det_exact(basis.full()).to_double());
  auto oracle = std::make_shared<BruteForceCvp>(basis);
  Quantizer quantizer = [oracle](const DyadicVector& t) { return (*oracle)(t); };
  return build(std::move(name), std::move(basis), p, delta, blocks, std::move(quantizer), std::log2(vol));
}

DyadicVector label(const CodeConfig& cfg, std::span<const std::int64_t> z) {
  check_index(cfg, z);
  std::vector<DyadicVector> parts;
  for (int b = 0; b < cfg.blocks; ++b) {
    IntVector zb(z.begin() + static_cast<std::ptrdiff_t>(b * cfg.t), z.begin() + static_cast<std::ptrdiff_t>((b + 1) * cfg.t));
    parts.push_back(reduce_mod(matvec(cfg.basis_full, zb), cfg.p));
  }
  return concat(parts);
}

IntVector delabel(const CodeConfig& cfg, const DyadicVector& x) {
  if (x.size() != cfg.n()) throw std::invalid_argument("codeword has wrong length");
  IntVector z;
  z.reserve(cfg.n());
  for (int b = 0; b < cfg.blocks; ++b) {
    // z = diag(pi)^{-1} U^{-1} x, with pi_i = a_i / 2^k_i.
    const DyadicVector coeff = matvec(cfg.u_inverse, x.slice(static_cast<std::size_t>(b) * cfg.t, cfg.t));
    for (std::size_t i = 0; i < cfg.t; ++i) {
      const Dyadic& pi = cfg.basis.pi[i];
      const Dyadic scaled = coeff[i] * Dyadic::pow2(pi.log2_den());
      if (!scaled.is_integer() || scaled.num() % pi.num() != 0) throw std::domain_error("point is not in the fine lattice");
      z.push_back(floor_mod(scaled.num() / pi.num(), cfg.radices[static_cast<std::size_t>(b) * cfg.t + i]));
    }
  }
  return z;
}

IntVector bits_to_index(const CodeConfig& cfg, std::span<const std::uint8_t> bits) {
  if (bits.size() != cfg.bit_count())
    throw std::invalid_argument("expected " + std::to_string(cfg.bit_count()) + " bits, got " + std::to_string(bits.size()));
  IntVector z(cfg.n(), 0);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int width = exact_log2(cfg.radices[i]);
    for (int k = 0; k < width; ++k) {
      const std::uint8_t bit = bits[pos++];
      if (bit > 1) throw std::invalid_argument("bit values must be 0 or 1");
      z[i] = (z[i] << 1) | bit;
    }
  }
  return z;
}

Bits index_to_bits(const CodeConfig& cfg, std::span<const std::int64_t> z) {
  check_index(cfg, z);
  Bits bits;
  bits.reserve(cfg.bit_count());
  for (std::size_t i = 0; i < z.size(); ++i) {
    const int width = exact_log2(cfg.radices[i]);
    for (int k = width - 1; k >= 0; --k) bits.push_back(static_cast<std::uint8_t>((z[i] >> k) & 1));
  }
  return bits;
}

std::vector<DyadicVector> enumerate_code(const CodeConfig& cfg) {
  if (cfg.log2_size() > 20.0 + 1e-9) throw std::invalid_argument("code too large to enumerate (more than 2^20 words)");
  std::vector<DyadicVector> words;
  IntVector z(cfg.n(), 0);
  for (;;) {
    words.push_back(label(cfg, z));
    std::size_t i = 0;
    while (i < z.size() && ++z[i] == cfg.radices[i]) z[i++] = 0;
    if (i == z.size()) break;
  }
  return words;
}

IntVector encode_index(const CodeConfig& cfg, std::span<const std::int64_t> z) {
  const DyadicVector x = label(cfg, z).scaled_pow2(cfg.delta);
  if (!x.is_integral()) throw std::domain_error("codeword is not integral at this delta; use delta >= 1");
  IntVector out = x.numerators();
  for (auto& v : out) v = floor_mod(v, cfg.q);
  return out;
}

IntVector encode(const CodeConfig& cfg, std::span<const std::uint8_t> bits) {
  return encode_index(cfg, bits_to_index(cfg, bits));
}

IntVector decode_index(const CodeConfig& cfg, const DyadicVector& y) {
  if (y.size() != cfg.n()) throw std::invalid_argument("received vector has wrong length");
  const DyadicVector lifted = centered(y, cfg.q);
  const Dyadic scale = Dyadic::pow2(cfg.delta);
  const Quantizer& block = cfg.block_quantizer;
  const Quantizer scaled = [&](const DyadicVector& t) { return q_scaled(block, scale, t); };
  const DyadicVector xhat = q_product(scaled, cfg.t, lifted);
  return delabel(cfg, xhat.scaled_pow2(-cfg.delta));
}

IntVector decode_index(const CodeConfig& cfg, std::span<const std::int64_t> y) {
  return decode_index(cfg, DyadicVector(IntVector(y.begin(), y.end())));
}

Bits decode(const CodeConfig& cfg, std::span<const std::int64_t> y) { return index_to_bits(cfg, decode_index(cfg, y)); }

Bits bits_from_hex(std::string_view hex, std::size_t bit_count) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  const std::size_t digits = (bit_count + 3) / 4;
  if (hex.size() != digits)
    throw std::invalid_argument("expected " + std::to_string(digits) + " hex digits for " + std::to_string(bit_count) +
                                " bits, got " + std::to_string(hex.size()));
  Bits bits;
  bits.reserve(digits * 4);
  for (char c : hex) {
    if (!std::isxdigit(static_cast<unsigned char>(c))) throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
    const int v = std::isdigit(static_cast<unsigned char>(c)) ? c - '0' : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
    for (int k = 3; k >= 0; --k) bits.push_back(static_cast<std::uint8_t>((v >> k) & 1));
  }
  for (std::size_t i = bit_count; i < bits.size(); ++i)
    if (bits[i]) throw std::invalid_argument("nonzero padding bits in hex input");
  bits.resize(bit_count);
  return bits;
}

std::string bits_to_hex(std::span<const std::uint8_t> bits) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int v = 0;
    for (std::size_t k = 0; k < 4; ++k) v = (v << 1) | (i + k < bits.size() ? bits[i + k] : 0);
    out.push_back(kDigits[v]);
  }
  return out;
}

}  // namespace latticode
