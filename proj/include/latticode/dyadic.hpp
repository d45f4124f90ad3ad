#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace latticode {

using IntVector = std::vector<std::int64_t>;

// Overflow-checked 64-bit integer arithmetic. Every helper throws
// std::overflow_error instead of wrapping.
namespace checked {
std::int64_t add(std::int64_t a, std::int64_t b);
std::int64_t sub(std::int64_t a, std::int64_t b);
std::int64_t mul(std::int64_t a, std::int64_t b);
std::int64_t shl(std::int64_t a, int bits);
std::int64_t narrow(__int128 v);
}  // namespace checked

// floor(a / 2^bits) and the matching non-negative remainder.
std::int64_t floor_shift(std::int64_t a, int bits);
// Canonical residue of a modulo m, in [0, m).
std::int64_t floor_mod(std::int64_t a, std::int64_t m);
bool is_power_of_two(std::int64_t v);
int exact_log2(std::int64_t v);  // throws unless v is a power of two

/// A dyadic rational num / 2^log2_den, kept in lowest terms.
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t num, int log2_den = 0);

  static Dyadic pow2(int exponent);

  std::int64_t num() const { return num_; }
  int log2_den() const { return log2_den_; }
  bool is_integer() const { return log2_den_ == 0; }
  bool is_positive() const { return num_ > 0; }
  // Numerator after rescaling to denominator 2^scale (scale >= log2_den()).
  std::int64_t at_scale(int scale) const;
  double to_double() const;
  std::string to_string() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator*(const Dyadic& a, const Dyadic& b);
  friend Dyadic operator-(const Dyadic& a) { return Dyadic(checked::sub(0, a.num_), a.log2_den_); }
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  std::int64_t num_ = 0;
  int log2_den_ = 0;
};

/// General rational with positive denominator, lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);
  Rational(const Dyadic& d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Vector of dyadic rationals sharing one power-of-two denominator.
class DyadicVector {
 public:
  DyadicVector() = default;
  explicit DyadicVector(IntVector numerators, int log2_den = 0);
  static DyadicVector zeros(std::size_t n) { return DyadicVector(IntVector(n, 0)); }
  static DyadicVector from_dyadics(std::span<const Dyadic> entries);

  std::size_t size() const { return num_.size(); }
  bool empty() const { return num_.empty(); }
  const IntVector& numerators() const { return num_; }
  int log2_den() const { return log2_den_; }
  Dyadic operator[](std::size_t i) const { return Dyadic(num_[i], log2_den_); }

  bool is_integral() const { return log2_den_ == 0; }
  // Integer entries; throws std::domain_error when some entry is fractional.
  IntVector to_integers() const;
  // Numerators after rescaling to 2^scale; scale must be >= log2_den().
  IntVector at_scale(int scale) const;
  // Multiply every entry by 2^k (k may be negative).
  DyadicVector scaled_pow2(int k) const;
  DyadicVector slice(std::size_t offset, std::size_t count) const;
  std::vector<double> to_doubles() const;
  std::string to_string() const;

  friend DyadicVector operator+(const DyadicVector& a, const DyadicVector& b);
  friend DyadicVector operator-(const DyadicVector& a, const DyadicVector& b);
  friend bool operator==(const DyadicVector&, const DyadicVector&) = default;
  // Lexicographic order by value.
  friend std::strong_ordering operator<=>(const DyadicVector& a, const DyadicVector& b);

 private:
  void canonicalize();

  IntVector num_;
  int log2_den_ = 0;
};

DyadicVector concat(std::span<const DyadicVector> parts);

/// Exact squared Euclidean length, num / 2^log2_den, in 128-bit precision.
struct SquaredLength {
  __int128 num = 0;
  int log2_den = 0;
  double to_double() const;
  friend std::strong_ordering operator<=>(const SquaredLength& a, const SquaredLength& b);
  friend bool operator==(const SquaredLength& a, const SquaredLength& b) {
    return (a <=> b) == std::strong_ordering::equal;
  }
};

SquaredLength squared_norm(const DyadicVector& v);
SquaredLength squared_distance(const DyadicVector& a, const DyadicVector& b);

}  // namespace latticode
