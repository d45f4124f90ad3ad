#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "latticode/dyadic.hpp"
#include "latticode/lattice_catalog.hpp"

namespace latticode {

/// Resolution used when real-valued query points are converted to dyadics.
inline constexpr int kQueryResolutionBits = 20;

/// Round to the nearest multiple of 2^-kQueryResolutionBits.
DyadicVector query_from_doubles(std::span<const double> coords);

/// Nearest-point map onto a fixed lattice.
using Quantizer = std::function<DyadicVector(const DyadicVector&)>;

/// Total order on candidates for the closest point to t: smaller distance
/// first, then smaller norm, then lexicographically smaller.
bool precedes(const DyadicVector& t, const DyadicVector& a, const DyadicVector& b);

/// Componentwise rounding; exact halves go toward zero.
IntVector q_zn(const DyadicVector& t);

/// Nearest point of D_n (n >= 2): round, and if the coordinate sum is odd
/// move one worst-rounded coordinate to its other neighbour.
IntVector q_dn(const DyadicVector& t);

/// Nearest point of E8 = D8 u (D8 + (1/2)^8).
DyadicVector q_e8(const DyadicVector& t);

/// Nearest point of BW16 = RM(1,4) + 2 D16 over the 32 first-order Reed-Muller codewords.
IntVector q_bw16(const DyadicVector& t);

/// argmin over g of g + sub(t - g).
DyadicVector coset_decode(const Quantizer& sub, std::span<const DyadicVector> reps, const DyadicVector& t);

/// c * base(t / c); c must be a power of two.
DyadicVector q_scaled(const Quantizer& base, const Dyadic& c, const DyadicVector& t);

/// Applies block to consecutive slices of length block_dim.
DyadicVector q_product(const Quantizer& block, std::size_t block_dim, const DyadicVector& t);

/// t - Q(t).
DyadicVector mod_lattice(const DyadicVector& t, const Quantizer& q);

/// Structured quantizer for a catalog lattice. Lattices without a structured
/// decoder fall back to BruteForceCvp when their coset count is small, and
/// otherwise throw std::runtime_error.
Quantizer quantizer_for(const LatticeSpec& spec);

/// Exact closest point search by enumerating the cosets of Lambda / M Z^n,
/// where M is the shaping period of the basis. Each coset is searched
/// coordinatewise, so the result is exactly optimal under `precedes`.
class BruteForceCvp {
 public:
  static constexpr std::size_t kDefaultMaxCosets = std::size_t{1} << 22;

  explicit BruteForceCvp(const RectangularBasis& basis, std::size_t max_cosets = kDefaultMaxCosets);

  DyadicVector operator()(const DyadicVector& t) const;
  std::size_t coset_count() const { return count_; }
  std::size_t dim() const { return n_; }

 private:
  std::size_t n_ = 0;
  int scale_ = 0;             // representatives are stored as integers at 2^-scale_
  std::int64_t modulus_ = 0;  // M * 2^scale_
  std::size_t count_ = 0;
  std::vector<std::uint16_t> reps_;  // count_ x n_ residues in [0, modulus_)
};

DyadicVector brute_force_cvp(const RectangularBasis& basis, const DyadicVector& t,
                             std::size_t max_cosets = BruteForceCvp::kDefaultMaxCosets);

}  // namespace latticode
