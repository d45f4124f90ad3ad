#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "latticode/dyadic.hpp"

namespace latticode {

/// Dense matrix of dyadic rationals: integer numerators over one shared 2^log2_den.
///
/// Stored row-major and kept canonical (the denominator exponent is minimal).
/// Lattice bases use the column convention: column j is the j-th basis vector,
/// so lattice points are `m * z` for integer coefficient vectors z.
class DyadicMatrix {
 public:
  DyadicMatrix() = default;
  DyadicMatrix(std::size_t rows, std::size_t cols, IntVector numerators, int log2_den = 0);
  // Integer rows, optionally divided by 2^log2_den.
  DyadicMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows, int log2_den = 0);

  static DyadicMatrix identity(std::size_t n);
  static DyadicMatrix zeros(std::size_t rows, std::size_t cols);
  static DyadicMatrix diagonal(std::span<const Dyadic> diag);
  static DyadicMatrix from_columns(std::span<const DyadicVector> columns);
  static DyadicMatrix block_diagonal(const DyadicMatrix& block, std::size_t copies);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  int log2_den() const { return log2_den_; }
  bool is_integral() const { return log2_den_ == 0; }
  const IntVector& numerators() const { return num_; }
  std::int64_t numerator(std::size_t r, std::size_t c) const { return num_[r * cols_ + c]; }
  Dyadic at(std::size_t r, std::size_t c) const { return Dyadic(numerator(r, c), log2_den_); }
  DyadicVector column(std::size_t c) const;

  DyadicMatrix transpose() const;
  // m * diag(d)
  DyadicMatrix scale_columns(std::span<const Dyadic> d) const;

  friend DyadicMatrix operator*(const DyadicMatrix& a, const DyadicMatrix& b);
  friend bool operator==(const DyadicMatrix&, const DyadicMatrix&) = default;

 private:
  void canonicalize();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVector num_;
  int log2_den_ = 0;
};

/// Exact determinant of the numerator matrix by integer row elimination, scaled back.
Dyadic det_exact(const DyadicMatrix& m);

/// Exact inverse. Throws std::domain_error for singular input or when some
/// inverse entry is not a dyadic rational.
DyadicMatrix inverse_exact(const DyadicMatrix& m);

/// Integer entries and determinant +1 or -1. Non-square input throws.
bool is_unimodular(const DyadicMatrix& m);

DyadicVector matvec(const DyadicMatrix& m, const DyadicVector& v);
DyadicVector matvec(const DyadicMatrix& m, const IntVector& v);

/// Reduce each entry into [0, moduli[i]). The entries must be integers
/// (std::domain_error otherwise); moduli must be >= 1.
IntVector mod_per_coordinate(const DyadicVector& v, std::span<const std::int64_t> moduli);

}  // namespace latticode
