#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "latticode/cvp.hpp"
#include "latticode/lattice_catalog.hpp"

namespace latticode {

using Bits = std::vector<std::uint8_t>;  // one bit per entry, values 0 or 1

/// Lattice code 2^delta * Lambda_t^blocks with hypercube shaping modulo p per
/// block, so the coarse lattice is q Z^n with q = 2^delta * p.
struct CodeConfig {
  std::string lattice;
  RectangularBasis basis;  // block basis, dim t
  DyadicMatrix basis_full;
  DyadicMatrix u_inverse;  // integer inverse of basis.u
  std::size_t t = 0;
  std::int64_t p = 0;
  int delta = 0;
  int blocks = 1;
  IntVector radices;       // p / pi_i, repeated for every block (length n)
  std::int64_t q = 0;
  double rate = 0;         // (1/t) log2(p^t / Vol(Lambda_t))
  Quantizer block_quantizer;

  std::size_t n() const { return t * static_cast<std::size_t>(blocks); }
  bool power_of_two_radices() const;
  // Number of message bits, sum of log2(radix); requires power-of-two radices.
  std::size_t bit_count() const;
  // Number of codewords as log2 (sum of log2 radices), valid for any radices.
  double log2_size() const;

  static CodeConfig make(const LatticeSpec& base, std::int64_t p, int delta = 0, int blocks = 1);
  // Custom lattice decoded with the coset-enumeration quantizer.
  static CodeConfig make(std::string name, RectangularBasis basis, std::int64_t p, int delta = 0, int blocks = 1);
};

/// x = [B z] mod p per block, coordinates in [0, p). Entries are dyadic for
/// lattices with fractional basis entries (E8).
DyadicVector label(const CodeConfig& cfg, std::span<const std::int64_t> z);

/// z = B^{-1} x mod (p_1, ..., p_n). Throws std::domain_error when x is not
/// in the fine lattice.
IntVector delabel(const CodeConfig& cfg, const DyadicVector& x);

/// Big-endian per coordinate, coordinates in basis-column order, blocks in order.
IntVector bits_to_index(const CodeConfig& cfg, std::span<const std::uint8_t> bits);
Bits index_to_bits(const CodeConfig& cfg, std::span<const std::int64_t> z);

/// All codewords (at most 2^20) in index order.
std::vector<DyadicVector> enumerate_code(const CodeConfig& cfg);

/// 2^delta * label(z), reduced into [0, q)^n.
IntVector encode_index(const CodeConfig& cfg, std::span<const std::int64_t> z);
IntVector encode(const CodeConfig& cfg, std::span<const std::uint8_t> bits);

/// Lift y to [-q/2, q/2)^n, quantize onto 2^delta * Lambda_f, delabel.
IntVector decode_index(const CodeConfig& cfg, const DyadicVector& y);
IntVector decode_index(const CodeConfig& cfg, std::span<const std::int64_t> y);
Bits decode(const CodeConfig& cfg, std::span<const std::int64_t> y);

/// Hex strings carry bits most significant first; the final partial nibble is
/// padded with zero bits on the right.
Bits bits_from_hex(std::string_view hex, std::size_t bit_count);
std::string bits_to_hex(std::span<const std::uint8_t> bits);

}  // namespace latticode
